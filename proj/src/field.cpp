#include "asymptopia/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include "asymptopia/errors.hpp"

namespace asymptopia {

namespace {

constexpr std::size_t kRadialOrder = 16;

double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

const Rule1D& base_rule() {
  static const Rule1D rule = gauss_legendre(kRadialOrder);
  return rule;
}

// Time-evolved radial data of one component at momentum magnitude r.
struct Evolved {
  double g;
  double h;
};

Evolved evolve(const Component& c, double r) {
  const double g = c.profile->g(r);
  const double h = c.profile->h(r);
  const double t = c.shift.time;
  if (t == 0.0) return {g, h};
  const double cs = std::cos(r * t);
  const double sn = std::sin(r * t);
  return {cs * g + r * sn * h, cs * h - sn * g / r};
}

auto key(const Component& c) {
  return std::tie(c.profile->id(), c.shift.time, c.shift.space[0], c.shift.space[1], c.shift.space[2]);
}

bool same_place(const Component& a, const Component& b) { return key(a) == key(b); }

// Composite rule on [0, r_max] for the given oscillation frequency, as
// (node, weight) pairs.
Rule1D radial_rule(const MomentumGrid& grid, double frequency) {
  const std::size_t panels = radial_panels(grid, frequency);
  const Rule1D& base = base_rule();
  Rule1D rule;
  rule.nodes.reserve(panels * kRadialOrder);
  rule.weights.reserve(panels * kRadialOrder);
  const double width = grid.r_max() / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = width * static_cast<double>(k);
    for (std::size_t j = 0; j < kRadialOrder; ++j) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[j] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[j]);
    }
  }
  return rule;
}

std::uint64_t next_serial() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

// 4 pi \int_0^{r_max} dr j0(r d) [G_k H_l - G_l H_k] for unit coefficients.
// Memoized so repeated pairs reuse the identical value, which also keeps
// sigma exactly bilinear across formal rearrangements.
double pair_integral(const MomentumGrid& grid, const Component& ck, const Component& cl) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, double, double, double, double, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, double> cache;
  const double d = norm(cl.shift.space - ck.shift.space);
  const Key key{ck.profile->serial(), cl.profile->serial(), ck.shift.time, cl.shift.time, d, grid.r_max(),
                grid.n_radial()};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double freq = d + std::abs(ck.shift.time) + std::abs(cl.shift.time);
  const Rule1D rule = radial_rule(grid, freq);
  double sum = 0.0;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double r = rule.nodes[n];
    const Evolved ek = evolve(ck, r);
    const Evolved el = evolve(cl, r);
    sum += rule.weights[n] * sinc(r * d) * (ek.g * el.h - el.g * ek.h);
  }
  const double value = 4.0 * kPi * sum;
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 4000000) cache.clear();
  cache.emplace(key, value);
  return value;
}

void require_test(const FieldVector& f, const char* op) {
  if (f.klass() != FieldClass::Test)
    throw DomainError(std::string(op) + ": charge-class argument " + f.expression() + " has divergent norm");
}

}  // namespace

RadialProfile::RadialProfile(std::string id, Fn g, Fn h, double charge, bool test_class)
    : id_(std::move(id)),
      serial_(next_serial()),
      g_(std::move(g)),
      h_(std::move(h)),
      charge_(charge),
      test_class_(test_class) {
  if (id_.empty()) throw ConfigurationError("profile id must not be empty");
}

ProfilePtr gaussian_charge(std::string id, double q, double s) {
  if (!(s > 0.0)) throw ConfigurationError("gaussian_charge: width must be positive");
  const double amp = q * std::pow(2.0 * kPi, -1.5);
  return std::make_shared<RadialProfile>(
      std::move(id), [amp, s](double r) { return amp * std::exp(-0.5 * r * r * s * s); },
      [](double) { return 0.0; }, q, q == 0.0);
}

ProfilePtr gaussian_h(std::string id, double c, double t) {
  if (!(t > 0.0)) throw ConfigurationError("gaussian_h: width must be positive");
  return std::make_shared<RadialProfile>(
      std::move(id), [](double) { return 0.0; },
      [c, t](double r) { return c * std::exp(-0.5 * r * r * t * t); }, 0.0, true);
}

ProfilePtr bump_profile(std::string id, Channel channel, double amplitude, double support, std::size_t panels) {
  if (panels < 200) throw ConfigurationError("bump_profile: at least 200 panels required");
  auto bump = [support](double r) {
    const double x = r / support;
    return x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
  };
  auto transform = std::make_shared<const RadialFourier>(bump, support, panels);
  const double at_zero = (*transform)(0.0);
  if (channel == Channel::G) {
    // Normalize so that \int g d^3x = amplitude.
    const double factor = amplitude / transform->total_integral();
    return std::make_shared<RadialProfile>(
        std::move(id), [transform, factor](double r) { return factor * (*transform)(r); },
        [](double) { return 0.0; }, amplitude, amplitude == 0.0);
  }
  const double factor = amplitude / at_zero;
  return std::make_shared<RadialProfile>(
      std::move(id), [](double) { return 0.0; },
      [transform, factor](double r) { return factor * (*transform)(r); }, 0.0, true);
}

ProfilePtr complex_structure(const ProfilePtr& profile) {
  if (!profile->test_class())
    throw DomainError("complex_structure: profile " + profile->id() + " carries charge; i*gamma is not defined");
  ProfilePtr base = profile;
  return std::make_shared<RadialProfile>(
      "J(" + profile->id() + ")", [base](double r) { return r * base->h(r); },
      [base](double r) { return -base->g(r) / r; }, 0.0, true);
}

Translation operator+(const Translation& a, const Translation& b) {
  return {a.time + b.time, a.space + b.space};
}

Translation operator-(const Translation& a) {
  return {clean_zero(-a.time), {clean_zero(-a.space[0]), clean_zero(-a.space[1]), clean_zero(-a.space[2])}};
}

FieldVector::FieldVector(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw UsageError("FieldVector: null grid");
}

FieldVector::FieldVector(GridPtr grid, ProfilePtr profile) : FieldVector(std::move(grid)) {
  if (!profile) throw UsageError("FieldVector: null profile");
  klass_ = profile->test_class() ? FieldClass::Test : FieldClass::Charge;
  components_.push_back({1.0, std::move(profile), {}});
  canonicalize();
}

void FieldVector::canonicalize() {
  for (auto& c : components_) {
    c.shift.time = clean_zero(c.shift.time);
    for (double& x : c.shift.space) x = clean_zero(x);
  }
  std::stable_sort(components_.begin(), components_.end(),
                   [](const Component& a, const Component& b) { return key(a) < key(b); });
  std::vector<Component> merged;
  merged.reserve(components_.size());
  for (const auto& c : components_) {
    if (!merged.empty() && same_place(merged.back(), c)) {
      merged.back().coeff += c.coeff;
    } else {
      merged.push_back(c);
    }
  }
  components_.clear();
  for (auto& c : merged) {
    if (c.coeff != 0.0) components_.push_back(std::move(c));
  }
  charge_ = 0.0;
  for (const auto& c : components_) charge_ += c.coeff * c.profile->charge();
  if (components_.empty()) {
    klass_ = FieldClass::Test;
    charge_ = 0.0;
  }
  if (klass_ == FieldClass::Test) charge_ = 0.0;
}

Complex FieldVector::g_at(const Vec3& p) const {
  const double r = norm(p);
  Complex sum{0.0, 0.0};
  for (const auto& c : components_) {
    const Evolved e = evolve(c, r);
    sum += c.coeff * e.g * std::polar(1.0, -dot(p, c.shift.space));
  }
  return sum;
}

Complex FieldVector::h_at(const Vec3& p) const {
  const double r = norm(p);
  Complex sum{0.0, 0.0};
  for (const auto& c : components_) {
    const Evolved e = evolve(c, r);
    sum += c.coeff * e.h * std::polar(1.0, -dot(p, c.shift.space));
  }
  return sum;
}

NodeSamples FieldVector::samples() const {
  const MomentumGrid& grid = *grid_;
  NodeSamples out;
  out.g.assign(grid.size(), Complex{0.0, 0.0});
  out.h.assign(grid.size(), Complex{0.0, 0.0});
  const auto rn = grid.radial_nodes();
  const auto un = grid.angular_nodes();
  for (const auto& c : components_) {
    for (std::size_t i = 0; i < grid.n_radial(); ++i) {
      const double r = rn[i];
      const Evolved e = evolve(c, r);
      for (std::size_t j = 0; j < grid.n_angular(); ++j) {
        // Conjugate pairs share one phase evaluation so hermitian symmetry is exact.
        const std::size_t jp = grid.antipode(j);
        if (jp < j) continue;
        const Complex phase = std::polar(1.0, -r * dot(un[j], c.shift.space));
        out.g[grid.index(i, j)] += c.coeff * e.g * phase;
        out.h[grid.index(i, j)] += c.coeff * e.h * phase;
        if (jp != j) {
          out.g[grid.index(i, jp)] += c.coeff * e.g * std::conj(phase);
          out.h[grid.index(i, jp)] += c.coeff * e.h * std::conj(phase);
        }
      }
    }
  }
  return out;
}

std::string FieldVector::expression() const {
  if (components_.empty()) return "0";
  std::string out;
  char buf[160];
  for (const auto& c : components_) {
    std::snprintf(buf, sizeof buf, "%s%.17g*%s", out.empty() ? "" : " + ", c.coeff, c.profile->id().c_str());
    out += buf;
    const auto& a = c.shift;
    if (a.time != 0.0 || a.space[0] != 0.0 || a.space[1] != 0.0 || a.space[2] != 0.0) {
      std::snprintf(buf, sizeof buf, "@(%.17g;%.17g,%.17g,%.17g)", a.time, a.space[0], a.space[1], a.space[2]);
      out += buf;
    }
  }
  return out;
}

bool operator==(const FieldVector& a, const FieldVector& b) {
  if (!a.grid_->same_layout(*b.grid_) || a.klass_ != b.klass_) return false;
  if (a.components_.size() != b.components_.size()) return false;
  for (std::size_t k = 0; k < a.components_.size(); ++k) {
    const auto& x = a.components_[k];
    const auto& y = b.components_[k];
    if (!same_place(x, y) || x.coeff != y.coeff) return false;
  }
  return true;
}

void require_same_grid(const FieldVector& x, const FieldVector& y, const char* op) {
  if (!x.grid().same_layout(y.grid())) throw UsageError(std::string(op) + ": field vectors live on different grids");
}

FieldVector combine(const FieldVector& x, double a, const FieldVector& y, double b, FieldClass forced) {
  require_same_grid(x, y, "add");
  FieldVector out(x.grid_ptr());
  for (const auto& c : x.components_) out.components_.push_back({a * c.coeff, c.profile, c.shift});
  for (const auto& c : y.components_) out.components_.push_back({b * c.coeff, c.profile, c.shift});
  const bool both_test = x.klass() == FieldClass::Test && y.klass() == FieldClass::Test;
  out.klass_ = (forced == FieldClass::Test || both_test) ? FieldClass::Test : FieldClass::Charge;
  out.canonicalize();
  return out;
}

FieldVector add(const FieldVector& x, const FieldVector& y) { return combine(x, 1.0, y, 1.0, FieldClass::Charge); }

FieldVector subtract(const FieldVector& x, const FieldVector& y) {
  return combine(x, 1.0, y, -1.0, FieldClass::Charge);
}

FieldVector scale(double c, const FieldVector& x) {
  if (c == 0.0) return FieldVector(x.grid_ptr());
  FieldVector zero(x.grid_ptr());
  FieldVector out = combine(x, c, zero, 0.0, x.klass());
  return out;
}

FieldVector negate(const FieldVector& x) { return scale(-1.0, x); }

FieldVector intertwiner_label(const FieldVector& target, const FieldVector& source) {
  require_same_grid(target, source, "intertwiner_label");
  const double qt = target.charge();
  const double qs = source.charge();
  if (std::abs(qt - qs) > 1e-12 * std::max({1.0, std::abs(qt), std::abs(qs)}))
    throw DomainError("intertwiner_label: charges differ (" + std::to_string(qt) + " vs " + std::to_string(qs) + ")");
  return combine(target, 1.0, source, -1.0, FieldClass::Test);
}

FieldVector translate(const FieldVector& x, const Translation& a) {
  FieldVector out(x.grid_ptr());
  out.klass_ = x.klass_;
  for (const auto& c : x.components_) out.components_.push_back({c.coeff, c.profile, c.shift + a});
  out.canonicalize();
  return out;
}

FieldVector times_i(const FieldVector& f) {
  FieldVector out(f.grid_ptr());
  out.klass_ = FieldClass::Test;
  for (const auto& c : f.components_) out.components_.push_back({c.coeff, complex_structure(c.profile), c.shift});
  out.canonicalize();
  return out;
}

std::size_t radial_panels(const MomentumGrid& grid, double frequency) {
  const std::size_t floor_panels = std::max<std::size_t>(8, (grid.n_radial() + 7) / 8);
  const double needed = std::ceil(grid.r_max() * std::abs(frequency) / kPi);
  return std::max(floor_panels, static_cast<std::size_t>(needed));
}

double symplectic(const FieldVector& x, const FieldVector& y) {
  require_same_grid(x, y, "symplectic");
  const MomentumGrid& grid = x.grid();
  // The angular average of e^{ip.d} over the sphere of radius r is j0(r|d|),
  // so each component pair reduces to a 1-D radial integral. The r^2 Jacobian
  // cancels the w^{-2} weight.
  double total = 0.0;
  for (const auto& ck : x.components())
    for (const auto& cl : y.components()) total += ck.coeff * cl.coeff * pair_integral(grid, ck, cl);
  return total;
}

Complex scalar_product(const FieldVector& f, const FieldVector& f2) {
  require_same_grid(f, f2, "scalar_product");
  require_test(f, "scalar_product");
  require_test(f2, "scalar_product");
  const MomentumGrid& grid = f.grid();
  // One rule for every pair: the w^{-3} g g terms of individual components are
  // singular at the origin and only cancel once summed node by node.
  double freq = 0.0;
  for (const auto& ck : f.components())
    for (const auto& cl : f2.components())
      freq = std::max(freq, norm(cl.shift.space - ck.shift.space) + std::abs(ck.shift.time) + std::abs(cl.shift.time));
  const Rule1D rule = radial_rule(grid, freq);
  double re = 0.0, im = 0.0;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double r = rule.nodes[n];
    double node_re = 0.0, node_im = 0.0;
    for (const auto& ck : f.components()) {
      const Evolved ek = evolve(ck, r);
      for (const auto& cl : f2.components()) {
        const Evolved el = evolve(cl, r);
        const double j0 = sinc(r * norm(cl.shift.space - ck.shift.space));
        const double c = ck.coeff * cl.coeff * j0;
        node_re += c * (r * ek.h * el.h + ek.g * el.g / r);
        node_im += c * (ek.h * el.g - ek.g * el.h);
      }
    }
    re += rule.weights[n] * node_re;
    im += rule.weights[n] * node_im;
  }
  return {4.0 * kPi * re, 4.0 * kPi * im};
}

double grid_symplectic(const FieldVector& x, const FieldVector& y) {
  require_same_grid(x, y, "grid_symplectic");
  const MomentumGrid& grid = x.grid();
  const NodeSamples sx = x.samples();
  const NodeSamples sy = y.samples();
  const auto rw = grid.radial_weights();
  const auto aw = grid.angular_weights();
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < grid.n_radial(); ++i) {
    Complex shell{0.0, 0.0};
    for (std::size_t j = 0; j < grid.n_angular(); ++j) {
      const std::size_t k = grid.index(i, j);
      const std::size_t kp = grid.antipode_index(k);
      shell += aw[j] * (sx.g[kp] * sy.h[k] - sy.g[kp] * sx.h[k]);
    }
    total += rw[i] * shell;
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real())))
    throw UsageError("grid_symplectic: imaginary residue " + std::to_string(total.imag()));
  return total.real();
}

double vacuum_exponent(const FieldVector& f) {
  require_test(f, "vacuum_exponent");
  return scalar_product(f, f).real() / 4.0;
}

}  // namespace asymptopia
