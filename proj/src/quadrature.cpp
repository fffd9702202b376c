#include "asymptopia/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "asymptopia/errors.hpp"

namespace asymptopia {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

Rule1D gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw ConfigurationError("gauss_legendre: need at least one node");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Newton on P_n starting from the Tricomi estimate.
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jj = static_cast<double>(j);
        p1 = ((2.0 * jj - 1.0) * z * p2 - (jj - 1.0) * p3) / jj;
      }
      dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    if (2 * i + 1 == n) z = 0.0;
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

Rule1D composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b) {
  if (panels == 0) throw ConfigurationError("composite_gauss_legendre: need at least one panel");
  const Rule1D base = gauss_legendre(order);
  Rule1D rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    for (std::size_t j = 0; j < order; ++j) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[j] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[j]);
    }
  }
  return rule;
}

std::size_t MomentumGrid::antipode_index(std::size_t k) const {
  const std::size_t na = n_angular();
  return (k / na) * na + antipode_[k % na];
}

Vec3 MomentumGrid::momentum(std::size_t radial, std::size_t angular) const {
  return radial_.nodes[radial] * angular_nodes_[angular];
}

double MomentumGrid::ball_volume_error() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_radial(); ++i) {
    const double r = radial_.nodes[i];
    for (std::size_t j = 0; j < n_angular(); ++j) sum += radial_.weights[i] * r * r * angular_weights_[j];
  }
  const double exact = 4.0 / 3.0 * kPi * r_max_ * r_max_ * r_max_;
  return std::abs(sum - exact) / exact;
}

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

}  // namespace

std::uint64_t MomentumGrid::checksum() const {
  std::uint64_t h = 14695981039346656037ULL;
  fnv_mix(h, radial_.nodes.data(), radial_.nodes.size() * sizeof(double));
  fnv_mix(h, radial_.weights.data(), radial_.weights.size() * sizeof(double));
  fnv_mix(h, angular_nodes_.data(), angular_nodes_.size() * sizeof(Vec3));
  fnv_mix(h, angular_weights_.data(), angular_weights_.size() * sizeof(double));
  return h;
}

bool MomentumGrid::same_layout(const MomentumGrid& other) const {
  return this == &other || (n_radial() == other.n_radial() && angular_order_ == other.angular_order_ &&
                            r_max_ == other.r_max_);
}

GridPtr build_grid(std::size_t n_radial, int angular_order, double r_max) {
  if (n_radial < 4) throw ConfigurationError("build_grid: n_radial must be >= 4, got " + std::to_string(n_radial));
  if (angular_order < 1)
    throw ConfigurationError("build_grid: angular order must be >= 1, got " + std::to_string(angular_order));
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ConfigurationError("build_grid: r_max must be positive");

  auto grid = std::shared_ptr<MomentumGrid>(new MomentumGrid());
  grid->radial_ = gauss_legendre(n_radial, 0.0, r_max);
  grid->angular_order_ = angular_order;
  grid->r_max_ = r_max;

  const std::size_t n_theta = static_cast<std::size_t>(angular_order / 2) + 1;
  const std::size_t n_phi = 2 * n_theta;
  const Rule1D cos_rule = gauss_legendre(n_theta);
  const std::size_t na = n_theta * n_phi;
  grid->angular_nodes_.resize(na);
  grid->angular_weights_.resize(na);
  grid->antipode_.resize(na);

  // cos(theta) index t pairs with n_theta-1-t, phi index m with m + n_phi/2.
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  for (std::size_t t = 0; t < n_theta; ++t) {
    for (std::size_t m = 0; m < n_phi; ++m) {
      const std::size_t j = t * n_phi + m;
      const std::size_t tj = n_theta - 1 - t;
      const std::size_t mj = (m + n_phi / 2) % n_phi;
      const std::size_t jp = tj * n_phi + mj;
      grid->antipode_[j] = jp;
      grid->angular_weights_[j] = cos_rule.weights[t] * dphi;
      const double c = cos_rule.nodes[t];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double phi = (static_cast<double>(m) + 0.5) * dphi;
      grid->angular_nodes_[j] = {s * std::cos(phi), s * std::sin(phi), c};
    }
  }
  // Exact antipodal pairing: overwrite the second member of each pair.
  for (std::size_t j = 0; j < na; ++j) {
    const std::size_t jp = grid->antipode_[j];
    if (jp > j) {
      const Vec3& u = grid->angular_nodes_[j];
      grid->angular_nodes_[jp] = {-u[0], -u[1], -u[2]};
      grid->angular_weights_[jp] = grid->angular_weights_[j];
    }
  }
  return grid;
}

Complex integrate(const MomentumGrid& grid, std::span<const Complex> samples) {
  if (samples.size() != grid.size())
    throw UsageError("integrate: " + std::to_string(samples.size()) + " samples for " +
                     std::to_string(grid.size()) + " nodes");
  const auto rn = grid.radial_nodes();
  const auto rw = grid.radial_weights();
  const auto aw = grid.angular_weights();
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < grid.n_radial(); ++i) {
    Complex shell{0.0, 0.0};
    for (std::size_t j = 0; j < grid.n_angular(); ++j) shell += aw[j] * samples[grid.index(i, j)];
    total += rw[i] * rn[i] * rn[i] * shell;
  }
  return total;
}

RadialFourier::RadialFourier(std::function<double(double)> profile, double support, std::size_t panels)
    : support_(support) {
  if (!(support > 0.0) || !std::isfinite(support))
    throw ConfigurationError("radial_fourier: support radius must be positive");
  if (panels == 0) throw ConfigurationError("radial_fourier: need at least one panel");
  const Rule1D rule = composite_gauss_legendre(panels, 8, 0.0, support);
  const double prefactor = 4.0 * kPi * std::pow(2.0 * kPi, -1.5);
  nodes_ = rule.nodes;
  weighted_.resize(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double r = rule.nodes[k];
    weighted_[k] = prefactor * rule.weights[k] * r * r * profile(r);
  }
}

double RadialFourier::operator()(double p) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weighted_[k] * sinc(p * nodes_[k]);
  return sum;
}

double RadialFourier::total_integral() const { return std::pow(2.0 * kPi, 1.5) * (*this)(0.0); }

std::vector<Complex> radial_fourier(std::function<double(double)> profile, double support, const MomentumGrid& grid,
                                    std::size_t panels) {
  const RadialFourier transform(std::move(profile), support, panels);
  std::vector<Complex> samples(grid.size());
  const auto rn = grid.radial_nodes();
  for (std::size_t i = 0; i < grid.n_radial(); ++i) {
    const double value = transform(rn[i]);
    for (std::size_t j = 0; j < grid.n_angular(); ++j) samples[grid.index(i, j)] = {value, 0.0};
  }
  return samples;
}

}  // namespace asymptopia
