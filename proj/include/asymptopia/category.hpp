#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asymptopia/field.hpp"
#include "asymptopia/weyl.hpp"

namespace asymptopia {

/// Object of the tensor category: the automorphism gamma(W(f)) =
/// e^{i sigma(gamma, f)} W(f) generated by a field vector. Objects form an
/// abelian monoid under addition of their data.
struct ChargeAutomorphism {
  FieldVector data;
  std::string name;

  explicit ChargeAutomorphism(FieldVector d, std::string n = {});
  double charge() const { return data.charge(); }
  LabelId id() const { return label_id(data); }
  friend bool operator==(const ChargeAutomorphism& a, const ChargeAutomorphism& b) { return a.data == b.data; }
};

ChargeAutomorphism zero_object(GridPtr grid);
ChargeAutomorphism translate(const ChargeAutomorphism& g, const Translation& a);

// Arrow coeff * W(target - source) between objects of equal charge.
struct Intertwiner {
  ChargeAutomorphism source;
  ChargeAutomorphism target;
  Complex coeff;
  FieldVector label;

  WeylElement element() const { return WeylElement::generator(label, coeff); }
};

// DomainError when the charges differ.
Intertwiner make_intertwiner(const ChargeAutomorphism& source, const ChargeAutomorphism& target,
                             Complex coeff = {1.0, 0.0});
// Unit arrow when the charges agree, nothing otherwise.
std::optional<Intertwiner> hom_basis(const ChargeAutomorphism& source, const ChargeAutomorphism& target);
Intertwiner identity_arrow(const ChargeAutomorphism& g);

// S o R. UsageError unless target(R) == source(S).
Intertwiner compose(const Intertwiner& s, const Intertwiner& r);
Intertwiner adjoint(const Intertwiner& r);

ChargeAutomorphism tensor_obj(const ChargeAutomorphism& g, const ChargeAutomorphism& d);
// R x S = R gamma(S) for R: gamma -> gamma', S: delta -> delta'.
Intertwiner tensor_mor(const Intertwiner& r, const Intertwiner& s);

WeylElement auto_action(const ChargeAutomorphism& g, const WeylElement& a);

// eps(gamma, delta) = e^{-i sigma(gamma, delta)} W(0), from gamma delta to delta gamma.
Intertwiner braiding_exact(const ChargeAutomorphism& g, const ChargeAutomorphism& d);

// |coeff(a) - coeff(b)| for parallel arrows.
double arrow_distance(const Intertwiner& a, const Intertwiner& b);

/// Open spacelike cone of directions around `axis`, with time components
/// a0 = time_slope * |a|^time_exponent. Optional jitter directions replace the
/// axis at successive steps and must lie strictly inside the cone.
struct ConeSpec {
  std::string name;
  Vec3 axis{1.0, 0.0, 0.0};
  double half_angle = kPi / 6.0;
  double time_slope = 0.0;
  double time_exponent = 0.0;
  std::vector<Vec3> jitter;

  // ConfigurationError on a degenerate axis, half-angle outside (0, pi/2),
  // negative slope, exponent outside [0, 1) or jitter outside the cone.
  void validate() const;
  Vec3 unit_axis() const;
  Translation translation(double radius, std::size_t step = 0) const;
  ConeSpec opposite() const;
};

double angle_between(const Vec3& a, const Vec3& b);

// steps + 1 cones rotating the axis of `start` onto its opposite in equal steps.
std::vector<ConeSpec> rotation_chain(const ConeSpec& start, std::size_t steps);
// ConfigurationError unless consecutive cones overlap.
void check_overlap(const std::vector<ConeSpec>& chain);

struct BraidingOptions {
  // Unit-modulus rephasing of the transporters U_a and V_b, one angle per radius.
  std::vector<double> u_phases;
  std::vector<double> v_phases;
  // Extrapolate the last two phases linearly in 1/radius.
  bool richardson = false;
};

struct BraidingSweep {
  std::vector<double> radii;
  std::vector<Complex> phases;
  Complex limit;
};

/// F(V* x U*) o F(U x V) with U = W(gamma_a - gamma), a in the cone, and
/// V = W(delta_b - delta), b in the opposite cone at the same radius. Every
/// phase is cross-checked against
/// exp(i[sigma(gamma, delta_b - delta) - sigma(delta_b, gamma_a - gamma)]).
BraidingSweep braiding_asymptotic(const ChargeAutomorphism& g, const ChargeAutomorphism& d, const ConeSpec& cone,
                                  const std::vector<double>& radii, const BraidingOptions& options = {});

std::pair<double, double> hexagon_residuals(const ChargeAutomorphism& g, const ChargeAutomorphism& d,
                                            const ChargeAutomorphism& t);
double naturality_residual(const Intertwiner& r, const Intertwiner& s);
// |eps(gamma, delta) o eps(delta, gamma) - 1|.
double symmetry_residual(const ChargeAutomorphism& g, const ChargeAutomorphism& d);

std::vector<BraidingSweep> cone_homotopy(const ChargeAutomorphism& g, const ChargeAutomorphism& d,
                                         const std::vector<ConeSpec>& chain, const std::vector<double>& radii);

// ||U_a^* W(f) U_a - gamma(W(f))|| = |e^{i sigma(gamma_a, f)} - 1|.
double implementation_residual(const ChargeAutomorphism& g, const Translation& a, const FieldVector& f);
// commutator_norm for chargeless labels; DomainError otherwise.
double abelianness_residual(const FieldVector& x, const FieldVector& y);

// Transport R: gamma -> gamma' and S: delta -> delta' by U_a, U'_{a'} and
// V_b, V'_{b'} and compare the two tensor orderings of U'RU^* and V'SV^*.
struct TransportShifts {
  Translation a, a_prime, b, b_prime;
};
double tensor_abelianness_residual(const Intertwiner& r, const Intertwiner& s, const TransportShifts& shifts);

// |U_1^* S U_1 - U_2^* S U_2| with U_i = W(gamma_{a_i} - gamma), a_i at the
// given radius in cone_i.
double extension_residual(const ChargeAutomorphism& g, const Intertwiner& s, const ConeSpec& cone1,
                          const ConeSpec& cone2, double radius);

}  // namespace asymptopia
