#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "asymptopia/quadrature.hpp"

namespace asymptopia {

/// Rotation-invariant momentum data (g~(|p|), h~(|p|)) of one building block
/// of the charge space.
///
/// The element it represents is gamma = i w^{-3/2} g + w^{-1/2} h with w = |p|.
/// `charge()` is \int d^3x g = (2 pi)^{3/2} g~(0), fixed analytically when the
/// profile is built. A profile is test-class when g~ vanishes at the origin, so
/// that the vector lies in the test space L and has a finite norm.
class RadialProfile {
 public:
  using Fn = std::function<double(double)>;

  RadialProfile(std::string id, Fn g, Fn h, double charge, bool test_class);

  const std::string& id() const { return id_; }
  // Process-unique number; never reused, unlike addresses.
  std::uint64_t serial() const { return serial_; }
  double g(double r) const { return g_(r); }
  double h(double r) const { return h_(r); }
  double charge() const { return charge_; }
  bool test_class() const { return test_class_; }

 private:
  std::string id_;
  std::uint64_t serial_;
  Fn g_;
  Fn h_;
  double charge_;
  bool test_class_;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

// g~(p) = q (2 pi)^{-3/2} exp(-p^2 s^2 / 2), h~ = 0. Charge q.
ProfilePtr gaussian_charge(std::string id, double q, double s);
// g~ = 0, h~(p) = c exp(-p^2 t^2 / 2). Test class.
ProfilePtr gaussian_h(std::string id, double c, double t);

enum class Channel { G, H };

/// Smooth bump exp(-1/(1-(r/R)^2)) on [0, R) in position space, transformed
/// with RadialFourier. For the g channel `amplitude` is the charge \int g d^3x;
/// for the h channel it is h~(0), mirroring gaussian_h.
ProfilePtr bump_profile(std::string id, Channel channel, double amplitude, double support,
                        std::size_t panels = 200);

// Profile of i*f: (g, h) -> (w h, -g / w). DomainError unless g~(0) == 0.
ProfilePtr complex_structure(const ProfilePtr& profile);

struct Translation {
  double time = 0.0;
  Vec3 space{0.0, 0.0, 0.0};
};

Translation operator+(const Translation& a, const Translation& b);
Translation operator-(const Translation& a);

enum class FieldClass { Test, Charge };

struct Component {
  double coeff = 0.0;
  ProfilePtr profile;
  Translation shift;
};

struct NodeSamples {
  std::vector<Complex> g;
  std::vector<Complex> h;
};

/// Element of the charge space L_Gamma (or of its subspace L when
/// klass() == Test), written as a finite real combination of translated radial
/// profiles. Components are kept in a canonical order with equal
/// (profile, translation) pairs merged, so two vectors built along different
/// formal routes compare equal exactly when their expressions agree.
class FieldVector {
 public:
  explicit FieldVector(GridPtr grid);
  FieldVector(GridPtr grid, ProfilePtr profile);

  const MomentumGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const Component> components() const { return components_; }
  double charge() const { return charge_; }
  FieldClass klass() const { return klass_; }
  bool is_zero() const { return components_.empty(); }

  // Momentum-space values at an arbitrary point.
  Complex g_at(const Vec3& p) const;
  Complex h_at(const Vec3& p) const;
  // Values at every grid node.
  NodeSamples samples() const;

  std::string expression() const;

  friend bool operator==(const FieldVector& a, const FieldVector& b);

 private:
  friend FieldVector combine(const FieldVector&, double, const FieldVector&, double, FieldClass);
  friend FieldVector translate(const FieldVector&, const Translation&);
  friend FieldVector times_i(const FieldVector&);
  friend FieldVector intertwiner_label(const FieldVector&, const FieldVector&);

  void canonicalize();

  GridPtr grid_;
  std::vector<Component> components_;
  double charge_ = 0.0;
  FieldClass klass_ = FieldClass::Test;
};

void require_same_grid(const FieldVector& x, const FieldVector& y, const char* op);

FieldVector add(const FieldVector& x, const FieldVector& y);
FieldVector subtract(const FieldVector& x, const FieldVector& y);
FieldVector scale(double c, const FieldVector& x);
FieldVector negate(const FieldVector& x);

// Sum that may be marked test-class: target - source for equal charges. This
// is the only route by which a difference of charged vectors enters L.
FieldVector intertwiner_label(const FieldVector& target, const FieldVector& source);

/// Spacetime translate. The spatial part multiplies g~, h~ by e^{-ip.a}; the
/// time part evolves with the free massless dynamics,
/// g~ -> cos(w a0) g~ + w sin(w a0) h~, h~ -> cos(w a0) h~ - sin(w a0) g~ / w.
FieldVector translate(const FieldVector& x, const Translation& a);

// Multiplication by i on L. DomainError if any component profile is charged.
FieldVector times_i(const FieldVector& f);

// (f, f') = \int d^3p conj(f~(p)) f~'(p), f~ = w^{-1/2} h~ + i w^{-3/2} g~.
// DomainError for charge-class arguments.
Complex scalar_product(const FieldVector& f, const FieldVector& f2);

// sigma(x, y) = \int d^3p w^{-2} (g~_x(-p) h~_y(p) - g~_y(-p) h~_x(p)).
double symplectic(const FieldVector& x, const FieldVector& y);

// Same form evaluated as a literal node sum over the grid samples. Accurate
// only while the grid resolves the translation phases; used as a cross-check.
double grid_symplectic(const FieldVector& x, const FieldVector& y);

// (f, f) / 4, so that the vacuum expectation of W(f) is exp(-vacuum_exponent).
double vacuum_exponent(const FieldVector& f);

// Number of composite Gauss-Legendre panels the radial route uses on [0, r_max]
// for an integrand oscillating with the given angular frequency.
std::size_t radial_panels(const MomentumGrid& grid, double frequency);

}  // namespace asymptopia
