#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace asymptopia {

using Vec3 = std::array<double, 3>;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double c, const Vec3& a);

// sin(x)/x with the removable singularity filled in.
double sinc(double x);

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b]. Nodes are mirrored exactly about the
// midpoint.
Rule1D gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

// `panels` equal sub-intervals of [a, b], each carrying an `order`-point
// Gauss-Legendre rule.
Rule1D composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b);

/// Product quadrature over the momentum ball |p| <= r_max.
///
/// Node (i, j) sits at p = r_i * u_j with weight w_i * r_i^2 * v_j. The radial
/// part is Gauss-Legendre on (0, r_max], so p = 0 is never a node. The angular
/// part is a Gauss-Legendre(cos theta) x uniform(phi) rule that is closed under
/// u -> -u with equal weights; antipode(j) gives the paired index.
class MomentumGrid {
 public:
  std::size_t n_radial() const { return radial_.nodes.size(); }
  std::size_t n_angular() const { return angular_nodes_.size(); }
  std::size_t size() const { return n_radial() * n_angular(); }
  int angular_order() const { return angular_order_; }
  double r_max() const { return r_max_; }

  std::span<const double> radial_nodes() const { return radial_.nodes; }
  std::span<const double> radial_weights() const { return radial_.weights; }
  std::span<const Vec3> angular_nodes() const { return angular_nodes_; }
  std::span<const double> angular_weights() const { return angular_weights_; }

  std::size_t index(std::size_t radial, std::size_t angular) const {
    return radial * n_angular() + angular;
  }
  std::size_t antipode(std::size_t angular) const { return antipode_[angular]; }
  // Flat node index of -p for the node with flat index k.
  std::size_t antipode_index(std::size_t k) const;
  Vec3 momentum(std::size_t radial, std::size_t angular) const;

  // Relative error of the quadrature of 1 against (4/3) pi r_max^3.
  double ball_volume_error() const;
  // FNV-1a over the node and weight bytes; identifies a grid in reports.
  std::uint64_t checksum() const;

  bool same_layout(const MomentumGrid& other) const;

 private:
  friend std::shared_ptr<const MomentumGrid> build_grid(std::size_t, int, double);
  MomentumGrid() = default;

  Rule1D radial_;
  std::vector<Vec3> angular_nodes_;
  std::vector<double> angular_weights_;
  std::vector<std::size_t> antipode_;
  int angular_order_ = 0;
  double r_max_ = 0.0;
};

using GridPtr = std::shared_ptr<const MomentumGrid>;

// Throws ConfigurationError for n_radial < 4, angular_order < 1 or r_max <= 0.
GridPtr build_grid(std::size_t n_radial, int angular_order, double r_max);

// sum_ij w_i r_i^2 v_j samples[index(i, j)]. Throws UsageError on size mismatch.
Complex integrate(const MomentumGrid& grid, std::span<const Complex> samples);

/// Fourier transform of a radial position-space profile supported in [0, R].
///
/// Convention: f~(p) = (2 pi)^(-3/2) \int e^{-ip.x} f(x) d^3x, which for radial
/// f reduces to (2 pi)^(-3/2) 4 pi \int_0^R r^2 j0(|p| r) f(r) dr. The 1-D
/// integral uses `panels` Gauss-Legendre panels of 8 points each.
class RadialFourier {
 public:
  RadialFourier(std::function<double(double)> profile, double support, std::size_t panels = 200);

  double operator()(double p) const;
  double support() const { return support_; }
  // (2 pi)^(3/2) f~(0), i.e. \int f d^3x.
  double total_integral() const;

 private:
  double support_;
  std::vector<double> nodes_;
  std::vector<double> weighted_;  // w_k r_k^2 f(r_k) times the prefactor
};

std::vector<Complex> radial_fourier(std::function<double(double)> profile, double support,
                                    const MomentumGrid& grid, std::size_t panels = 200);

}  // namespace asymptopia
