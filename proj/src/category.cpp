#include "asymptopia/category.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asymptopia/errors.hpp"

namespace asymptopia {

namespace {

constexpr double kClosedFormTolerance = 1e-12;

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return (1.0 / n) * v;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_parallel(const Intertwiner& a, const Intertwiner& b, const char* op) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw UsageError(std::string(op) + ": arrows are not parallel");
}

}  // namespace

ChargeAutomorphism::ChargeAutomorphism(FieldVector d, std::string n) : data(std::move(d)), name(std::move(n)) {
  if (name.empty()) name = data.expression();
}

ChargeAutomorphism zero_object(GridPtr grid) { return ChargeAutomorphism(FieldVector(std::move(grid)), "iota"); }

ChargeAutomorphism translate(const ChargeAutomorphism& g, const Translation& a) {
  return ChargeAutomorphism(translate(g.data, a));
}

Intertwiner make_intertwiner(const ChargeAutomorphism& source, const ChargeAutomorphism& target, Complex coeff) {
  return {source, target, coeff, intertwiner_label(target.data, source.data)};
}

std::optional<Intertwiner> hom_basis(const ChargeAutomorphism& source, const ChargeAutomorphism& target) {
  require_same_grid(source.data, target.data, "hom_basis");
  try {
    return make_intertwiner(source, target);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

Intertwiner identity_arrow(const ChargeAutomorphism& g) { return make_intertwiner(g, g); }

Intertwiner compose(const Intertwiner& s, const Intertwiner& r) {
  if (!(r.target == s.source))
    throw UsageError("compose: target " + r.target.name + " does not match source " + s.source.name);
  const double phase = 0.5 * symplectic(s.label, r.label);
  return make_intertwiner(r.source, s.target, s.coeff * r.coeff * std::polar(1.0, phase));
}

Intertwiner adjoint(const Intertwiner& r) { return make_intertwiner(r.target, r.source, std::conj(r.coeff)); }

ChargeAutomorphism tensor_obj(const ChargeAutomorphism& g, const ChargeAutomorphism& d) {
  return ChargeAutomorphism(add(g.data, d.data));
}

Intertwiner tensor_mor(const Intertwiner& r, const Intertwiner& s) {
  const double phase = symplectic(r.source.data, s.label) + 0.5 * symplectic(r.label, s.label);
  return make_intertwiner(tensor_obj(r.source, s.source), tensor_obj(r.target, s.target),
                          r.coeff * s.coeff * std::polar(1.0, phase));
}

WeylElement auto_action(const ChargeAutomorphism& g, const WeylElement& a) {
  std::vector<WeylTerm> terms = a.terms();
  for (auto& t : terms) t.coeff *= std::polar(1.0, symplectic(g.data, t.label));
  return weyl_from_terms(a.grid_ptr(), std::move(terms));
}

Intertwiner braiding_exact(const ChargeAutomorphism& g, const ChargeAutomorphism& d) {
  return make_intertwiner(tensor_obj(g, d), tensor_obj(d, g), std::polar(1.0, -symplectic(g.data, d.data)));
}

double arrow_distance(const Intertwiner& a, const Intertwiner& b) {
  require_parallel(a, b, "arrow_distance");
  return std::abs(a.coeff - b.coeff);
}

void ConeSpec::validate() const {
  const double n = norm(axis);
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigurationError("cone " + name + ": axis must be a nonzero vector");
  if (!(half_angle > 0.0 && half_angle < kPi / 2.0))
    throw ConfigurationError("cone " + name + ": half-angle must lie in (0, pi/2)");
  if (!(time_slope >= 0.0) || !std::isfinite(time_slope))
    throw ConfigurationError("cone " + name + ": time slope must be >= 0");
  if (!(time_exponent >= 0.0 && time_exponent < 1.0))
    throw ConfigurationError("cone " + name + ": time exponent must lie in [0, 1)");
  for (const auto& j : jitter) {
    if (!(norm(j) > 0.0)) throw ConfigurationError("cone " + name + ": jitter direction must be nonzero");
    if (!(angle_between(j, axis) < half_angle))
      throw ConfigurationError("cone " + name + ": jitter direction lies outside the cone");
  }
}

Vec3 ConeSpec::unit_axis() const { return normalized(axis); }

Translation ConeSpec::translation(double radius, std::size_t step) const {
  const Vec3 dir = jitter.empty() ? unit_axis() : normalized(jitter[step % jitter.size()]);
  const double a0 = time_slope == 0.0 ? 0.0 : time_slope * std::pow(radius, time_exponent);
  return {a0, radius * dir};
}

ConeSpec ConeSpec::opposite() const {
  ConeSpec out = *this;
  out.name = "-" + name;
  out.axis = -1.0 * axis;
  for (auto& j : out.jitter) j = -1.0 * j;
  return out;
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<ConeSpec> rotation_chain(const ConeSpec& start, std::size_t steps) {
  start.validate();
  if (steps == 0) throw ConfigurationError("rotation_chain: need at least one step");
  const Vec3 u = start.unit_axis();
  // Rotate about the unit vector perpendicular to u built from the least aligned basis vector.
  std::size_t least = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(u[k]) < std::abs(u[least])) least = k;
  Vec3 basis{0.0, 0.0, 0.0};
  basis[least] = 1.0;
  const Vec3 e = normalized(cross(u, basis));
  const Vec3 w = cross(e, u);
  std::vector<ConeSpec> chain;
  for (std::size_t k = 0; k <= steps; ++k) {
    ConeSpec c = start;
    c.jitter.clear();
    c.name = start.name + "[" + std::to_string(k) + "]";
    const double theta = kPi * static_cast<double>(k) / static_cast<double>(steps);
    if (k == 0) {
      c.axis = u;
    } else if (k == steps) {
      c.axis = -1.0 * u;
    } else {
      c.axis = std::cos(theta) * u + std::sin(theta) * w;
    }
    chain.push_back(std::move(c));
  }
  return chain;
}

void check_overlap(const std::vector<ConeSpec>& chain) {
  for (const auto& c : chain) c.validate();
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const double gap = angle_between(chain[k - 1].axis, chain[k].axis);
    if (!(gap < chain[k - 1].half_angle + chain[k].half_angle))
      throw ConfigurationError("cones " + chain[k - 1].name + " and " + chain[k].name + " do not overlap");
  }
}

BraidingSweep braiding_asymptotic(const ChargeAutomorphism& g, const ChargeAutomorphism& d, const ConeSpec& cone,
                                  const std::vector<double>& radii, const BraidingOptions& options) {
  cone.validate();
  if (radii.size() < 3) throw ConfigurationError("braiding_asymptotic: need at least three radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || !std::isfinite(radii[k]))
      throw ConfigurationError("braiding_asymptotic: radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw ConfigurationError("braiding_asymptotic: radii must be strictly increasing");
  }
  const auto gauge = [](const std::vector<double>& phases, std::size_t k) {
    return phases.empty() ? Complex{1.0, 0.0} : std::polar(1.0, phases.at(k));
  };
  const ConeSpec far = cone.opposite();
  BraidingSweep out;
  out.radii = radii;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const ChargeAutomorphism ga = translate(g, cone.translation(radii[k], k));
    const ChargeAutomorphism db = translate(d, far.translation(radii[k], k));
    const Intertwiner u = make_intertwiner(g, ga, gauge(options.u_phases, k));
    const Intertwiner v = make_intertwiner(d, db, gauge(options.v_phases, k));
    const Intertwiner forward = tensor_mor(u, v);
    const Intertwiner back = tensor_mor(adjoint(v), adjoint(u));
    const Intertwiner eps = compose(back, forward);
    if (!eps.label.is_zero()) throw std::logic_error("braiding_asymptotic: braiding label is not zero");
    const Complex closed = std::polar(1.0, symplectic(g.data, v.label) - symplectic(db.data, u.label));
    if (std::abs(eps.coeff - closed) > kClosedFormTolerance)
      throw std::logic_error("braiding_asymptotic: categorical and closed-form phases disagree");
    out.phases.push_back(eps.coeff);
  }
  out.limit = out.phases.back();
  if (options.richardson) {
    const std::size_t n = radii.size();
    const double r1 = radii[n - 2], r2 = radii[n - 1];
    out.limit = (r2 * out.phases[n - 1] - r1 * out.phases[n - 2]) / (r2 - r1);
  }
  return out;
}

std::pair<double, double> hexagon_residuals(const ChargeAutomorphism& g, const ChargeAutomorphism& d,
                                            const ChargeAutomorphism& t) {
  const Intertwiner lhs1 = braiding_exact(tensor_obj(g, d), t);
  const Intertwiner rhs1 = compose(tensor_mor(braiding_exact(g, t), identity_arrow(d)),
                                   tensor_mor(identity_arrow(g), braiding_exact(d, t)));
  const Intertwiner lhs2 = braiding_exact(g, tensor_obj(d, t));
  const Intertwiner rhs2 = compose(tensor_mor(identity_arrow(d), braiding_exact(g, t)),
                                   tensor_mor(braiding_exact(g, d), identity_arrow(t)));
  return {arrow_distance(lhs1, rhs1), arrow_distance(lhs2, rhs2)};
}

double naturality_residual(const Intertwiner& r, const Intertwiner& s) {
  const Intertwiner lhs = compose(braiding_exact(r.target, s.target), tensor_mor(r, s));
  const Intertwiner rhs = compose(tensor_mor(s, r), braiding_exact(r.source, s.source));
  return arrow_distance(lhs, rhs);
}

double symmetry_residual(const ChargeAutomorphism& g, const ChargeAutomorphism& d) {
  const Intertwiner loop = compose(braiding_exact(d, g), braiding_exact(g, d));
  return arrow_distance(loop, identity_arrow(tensor_obj(g, d)));
}

std::vector<BraidingSweep> cone_homotopy(const ChargeAutomorphism& g, const ChargeAutomorphism& d,
                                         const std::vector<ConeSpec>& chain, const std::vector<double>& radii) {
  if (chain.empty()) throw ConfigurationError("cone_homotopy: empty chain");
  check_overlap(chain);
  std::vector<BraidingSweep> out;
  out.reserve(chain.size());
  for (const auto& cone : chain) out.push_back(braiding_asymptotic(g, d, cone, radii));
  return out;
}

double implementation_residual(const ChargeAutomorphism& g, const Translation& a, const FieldVector& f) {
  if (f.klass() != FieldClass::Test) throw DomainError("implementation_residual: f must be test-class");
  const WeylElement u = make_intertwiner(g, translate(g, a)).element();
  const WeylElement wf = WeylElement::generator(f);
  const WeylElement moved = weyl_mul(weyl_mul(star(u), wf), u);
  return coefficient_distance(moved, auto_action(g, wf));
}

double abelianness_residual(const FieldVector& x, const FieldVector& y) {
  if (x.klass() != FieldClass::Test || y.klass() != FieldClass::Test)
    throw DomainError("abelianness_residual: labels must be chargeless");
  return commutator_norm(x, y);
}

double tensor_abelianness_residual(const Intertwiner& r, const Intertwiner& s, const TransportShifts& shifts) {
  const Intertwiner u = make_intertwiner(r.source, translate(r.source, shifts.a));
  const Intertwiner u2 = make_intertwiner(r.target, translate(r.target, shifts.a_prime));
  const Intertwiner v = make_intertwiner(s.source, translate(s.source, shifts.b));
  const Intertwiner v2 = make_intertwiner(s.target, translate(s.target, shifts.b_prime));
  const Intertwiner x = compose(u2, compose(r, adjoint(u)));
  const Intertwiner y = compose(v2, compose(s, adjoint(v)));
  return arrow_distance(tensor_mor(x, y), tensor_mor(y, x));
}

double extension_residual(const ChargeAutomorphism& g, const Intertwiner& s, const ConeSpec& cone1,
                          const ConeSpec& cone2, double radius) {
  cone1.validate();
  cone2.validate();
  const WeylElement se = s.element();
  const auto conjugated = [&](const ConeSpec& cone) {
    const WeylElement u = make_intertwiner(g, translate(g, cone.translation(radius))).element();
    return weyl_mul(weyl_mul(star(u), se), u);
  };
  return coefficient_distance(conjugated(cone1), conjugated(cone2));
}

}  // namespace asymptopia
