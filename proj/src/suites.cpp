#include "asymptopia/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "asymptopia/errors.hpp"
#include "asymptopia/seqalg.hpp"
#include "asymptopia/weyl.hpp"

namespace asymptopia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kLawChecks = 17;
constexpr std::size_t kSeqalgChecks = 12;
constexpr std::size_t kDecayChecks = 4;

std::string pair_name(const std::string& a, const std::string& b) { return a + "|" + b; }

ReportRow decrease_row(std::string id, std::string pair, std::string cone, double radius, double first, double last) {
  return {std::move(id), std::move(pair), std::move(cone), radius, {first, last}, last, first, last < first};
}

// Threshold applies at the last radius only.
double sweep_threshold(std::size_t k, std::size_t n, double tol) { return k + 1 == n ? tol : kInf; }

// Random objects, arrows and labels for the law sweeps. Profile ids are
// unique per sampler through the prefix and counter.
class LawSampler {
 public:
  LawSampler(const Experiment& e, std::uint64_t stream, std::string prefix)
      : grid_(e.grid), rng_(e.config.seed * 1000003ULL + stream), prefix_(std::move(prefix)) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  Vec3 shift(double span) { return {uniform(-span, span), uniform(-span, span), uniform(-span, span)}; }
  Complex coeff() { return std::polar(uniform(0.5, 2.0), uniform(-kPi, kPi)); }

  ChargeAutomorphism object() {
    static constexpr double kCharges[] = {-1.0, 1.0, 2.0};
    const std::string idx = next_id();
    const double q = kCharges[std::uniform_int_distribution<int>(0, 2)(rng_)];
    const double s = uniform(0.8, 1.5);
    const double c = uniform(-1.0, 1.0);
    const double t = uniform(0.8, 1.5);
    const FieldVector data = add(FieldVector(grid_, gaussian_charge(idx + ".g", q, s)),
                                 FieldVector(grid_, gaussian_h(idx + ".h", c, t)));
    return ChargeAutomorphism(translate(data, Translation{0.0, shift(3.0)}), idx);
  }

  ChargeAutomorphism moved(const ChargeAutomorphism& g) { return translate(g, Translation{0.0, shift(3.0)}); }

  Intertwiner arrow(const ChargeAutomorphism& source, const ChargeAutomorphism& target) {
    return make_intertwiner(source, target, coeff());
  }

  FieldVector test_label() {
    const std::string idx = next_id();
    const Translation where{0.0, shift(3.0)};
    switch (counter_ % 3) {
      case 0:
        return translate(FieldVector(grid_, gaussian_h(idx, uniform(-1.0, 1.0), uniform(0.8, 1.5))), where);
      case 1: {
        const ChargeAutomorphism g = object();
        return intertwiner_label(moved(g).data, g.data);
      }
      default:
        return translate(times_i(FieldVector(grid_, gaussian_h(idx, uniform(-1.0, 1.0), uniform(0.8, 1.5)))),
                         where);
    }
  }

  // Any label of the charge space, charged or not.
  FieldVector label() { return uniform(0.0, 1.0) < 0.5 ? object().data : test_label(); }

  WeylElement generator() { return WeylElement::generator(label(), coeff()); }

 private:
  std::string next_id() { return prefix_ + "." + std::to_string(counter_++); }

  GridPtr grid_;
  std::mt19937_64 rng_;
  std::string prefix_;
  std::size_t counter_ = 0;
};

template <class F>
double sweep(std::size_t n, F&& residual) {
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, residual());
  return worst;
}

void law_rows(const Experiment& e, std::vector<ReportRow>& rows) {
  const Tolerances& tol = e.config.tolerances;
  const std::size_t n = e.config.experiment.random_samples;
  const std::size_t n_small = std::max<std::size_t>(1, n / 10);
  const std::string all = "random";
  std::uint64_t stream = 0;
  const auto add_law = [&](const std::string& id, double residual, double threshold, Complex value = {}) {
    rows.push_back(bounded_row("laws." + id, all, "", std::nullopt, value, residual, threshold));
  };

  {
    LawSampler s(e, ++stream, "law.assoc");
    add_law("weyl_associativity", sweep(n, [&] {
              const WeylElement a = s.generator(), b = s.generator(), c = s.generator();
              return coefficient_distance(weyl_mul(weyl_mul(a, b), c), weyl_mul(a, weyl_mul(b, c)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.exchange");
    add_law("weyl_exchange", sweep(n, [&] {
              const FieldVector x = s.label(), y = s.label();
              const WeylElement wx = WeylElement::generator(x), wy = WeylElement::generator(y);
              return coefficient_distance(weyl_mul(wx, wy),
                                          weyl_scale(std::polar(1.0, symplectic(x, y)), weyl_mul(wy, wx)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.unit");
    add_law("weyl_unit_modulus", sweep(n, [&] {
              WeylElement p = WeylElement::generator(s.label());
              for (int k = 0; k < 4; ++k) p = weyl_mul(p, WeylElement::generator(s.label()));
              if (p.terms().size() != 1) return 1.0;
              return std::abs(std::abs(p.terms().front().coeff) - 1.0);
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.star");
    add_law("weyl_star", sweep(n, [&] {
              const WeylElement a = weyl_add(s.generator(), s.generator());
              const WeylElement b = weyl_add(s.generator(), s.generator());
              return std::max(coefficient_distance(star(weyl_mul(a, b)), weyl_mul(star(b), star(a))),
                              coefficient_distance(star(star(a)), a));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.auto");
    add_law("auto_homomorphism", sweep(n, [&] {
              const ChargeAutomorphism g = s.object();
              const WeylElement a = s.generator(), b = s.generator();
              return coefficient_distance(weyl_mul(auto_action(g, a), auto_action(g, b)),
                                          auto_action(g, weyl_mul(a, b)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.cat");
    add_law("category_associativity", sweep(n, [&] {
              const ChargeAutomorphism g0 = s.object();
              const ChargeAutomorphism g1 = s.moved(g0), g2 = s.moved(g0), g3 = s.moved(g0);
              const Intertwiner r1 = s.arrow(g0, g1), r2 = s.arrow(g1, g2), r3 = s.arrow(g2, g3);
              return arrow_distance(compose(compose(r3, r2), r1), compose(r3, compose(r2, r1)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.unitlaw");
    add_law("category_unit", sweep(n, [&] {
              const ChargeAutomorphism g0 = s.object();
              const Intertwiner r = s.arrow(g0, s.moved(g0));
              return std::max(arrow_distance(compose(identity_arrow(r.target), r), r),
                              arrow_distance(compose(r, identity_arrow(r.source)), r));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.interchange");
    add_law("interchange", sweep(n, [&] {
              const ChargeAutomorphism g = s.object(), d = s.object();
              const ChargeAutomorphism g1 = s.moved(g), g2 = s.moved(g), d1 = s.moved(d), d2 = s.moved(d);
              const Intertwiner r1 = s.arrow(g, g1), r = s.arrow(g1, g2);
              const Intertwiner s1 = s.arrow(d, d1), s2 = s.arrow(d1, d2);
              return arrow_distance(tensor_mor(compose(r, r1), compose(s2, s1)),
                                    compose(tensor_mor(r, s2), tensor_mor(r1, s1)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.hex");
    double h1 = 0.0, h2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [a, b] = hexagon_residuals(s.object(), s.object(), s.object());
      h1 = std::max(h1, a);
      h2 = std::max(h2, b);
    }
    add_law("hexagon_1", h1, tol.laws);
    add_law("hexagon_2", h2, tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.nat");
    add_law("naturality", sweep(n, [&] {
              const ChargeAutomorphism g = s.object(), d = s.object();
              return naturality_residual(s.arrow(g, s.moved(g)), s.arrow(d, s.moved(d)));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.sym");
    add_law("symmetry", sweep(n, [&] { return symmetry_residual(s.object(), s.object()); }), tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.rel");
    add_law("intertwiner_relation", sweep(n, [&] {
              const ChargeAutomorphism g = s.object();
              const Intertwiner r = s.arrow(g, s.moved(g));
              const WeylElement wf = WeylElement::generator(s.test_label());
              return coefficient_distance(weyl_mul(r.element(), auto_action(r.source, wf)),
                                          weyl_mul(auto_action(r.target, wf), r.element()));
            }),
            tol.laws);
  }
  {
    LawSampler s(e, ++stream, "law.gram");
    double lowest = kInf;
    for (std::size_t k = 0; k < n_small; ++k) {
      std::vector<FieldVector> labels;
      for (int j = 0; j < 8; ++j) labels.push_back(s.test_label());
      lowest = std::min(lowest, min_eigenvalue(gram_matrix(labels)));
    }
    add_law("gram_psd", std::max(0.0, -lowest), tol.gram, {lowest, 0.0});
  }
  {
    const FieldVector x(e.grid, gaussian_charge("law.pi.g", 1.0, 1.0));
    const FieldVector y(e.grid, gaussian_h("law.pi.h", 1.0, 1.0));
    const FieldVector xs = scale(kPi / symplectic(x, y), x);
    const double c = commutator_norm(xs, y);
    add_law("commutator_pi", std::abs(c - 2.0), tol.commutator, {c, 0.0});
  }
  {
    LawSampler s(e, ++stream, "law.consistency");
    add_law("sigma_consistency", sweep(n_small, [&] {
              const FieldVector x = s.test_label(), y = s.test_label();
              return std::abs(symplectic(x, y) + scalar_product(x, y).imag());
            }),
            tol.consistency);
  }
  {
    const double a = symplectic(e.first().data, e.second().data);
    const double b = grid_symplectic(e.first().data, e.second().data);
    add_law("grid_cross_check", std::abs(a - b), tol.consistency, {a, b});
  }
  const auto closed = closed_form_sigma(e.charge_configs.at(e.config.experiment.pair[0]),
                                        e.charge_configs.at(e.config.experiment.pair[1]));
  if (closed) {
    const double sigma = symplectic(e.first().data, e.second().data);
    rows.push_back(bounded_row("laws.sigma_oracle", pair_name(e.config.experiment.pair[0], e.config.experiment.pair[1]),
                               "", std::nullopt, {sigma, *closed}, std::abs(sigma - *closed), tol.sigma_oracle));
  }
}

void braiding_rows(const Experiment& e, std::vector<ReportRow>& rows) {
  const RunConfig& c = e.config;
  const Tolerances& tol = c.tolerances;
  const ConeSpec& cone = e.cone();
  const std::size_t nr = c.radii.size();
  std::uint64_t stream = 100;
  for (const auto& ca : c.charges) {
    for (const auto& cb : c.charges) {
      if (ca.name == cb.name) continue;
      const ChargeAutomorphism& g = e.charges.at(ca.name);
      const ChargeAutomorphism& d = e.charges.at(cb.name);
      const std::string pair = pair_name(ca.name, cb.name);
      const double sigma = symplectic(g.data, d.data);
      const auto closed = closed_form_sigma(ca, cb);
      if (closed) {
        rows.push_back(bounded_row("braiding.sigma", pair, "", std::nullopt, {sigma, *closed},
                                   std::abs(sigma - *closed), tol.sigma_oracle));
      } else {
        const double grid_value = grid_symplectic(g.data, d.data);
        rows.push_back(bounded_row("braiding.sigma", pair, "", std::nullopt, {sigma, grid_value},
                                   std::abs(sigma - grid_value), tol.consistency));
      }
      const Complex exact = std::polar(1.0, -sigma);
      const Intertwiner eps = braiding_exact(g, d);
      rows.push_back(
          bounded_row("braiding.exact", pair, "", std::nullopt, eps.coeff, std::abs(eps.coeff - exact), tol.laws));

      BraidingOptions options;
      options.richardson = c.experiment.richardson;
      const BraidingSweep sweep_result = braiding_asymptotic(g, d, cone, c.radii, options);
      std::vector<double> errors;
      for (std::size_t k = 0; k < nr; ++k) {
        const double err = std::abs(sweep_result.phases[k] - exact);
        errors.push_back(err);
        rows.push_back(bounded_row("braiding.asymptotic", pair, cone.name, c.radii[k], sweep_result.phases[k], err,
                                   sweep_threshold(k, nr, tol.braiding)));
      }
      rows.push_back(decrease_row("braiding.decrease", pair, cone.name, c.radii.back(), errors.front(), errors.back()));
      rows.push_back(bounded_row("braiding.limit", pair, cone.name, c.radii.back(), sweep_result.limit,
                                 std::abs(sweep_result.limit - exact), tol.braiding));

      LawSampler s(e, ++stream, "gauge");
      BraidingOptions gauge;
      for (std::size_t k = 0; k < nr; ++k) {
        gauge.u_phases.push_back(s.uniform(-kPi, kPi));
        gauge.v_phases.push_back(s.uniform(-kPi, kPi));
      }
      const BraidingSweep rephased = braiding_asymptotic(g, d, cone, c.radii, gauge);
      double drift = 0.0;
      for (std::size_t k = 0; k < nr; ++k)
        drift = std::max(drift, std::abs(rephased.phases[k] - sweep_result.phases[k]));
      rows.push_back(
          bounded_row("braiding.gauge_invariance", pair, cone.name, std::nullopt, {drift, 0.0}, drift, tol.laws));
    }
  }
}

void homotopy_rows(const Experiment& e, std::vector<ReportRow>& rows) {
  const RunConfig& c = e.config;
  const std::string pair = pair_name(c.experiment.pair[0], c.experiment.pair[1]);
  const std::vector<ConeSpec> chain = rotation_chain(e.cone(), c.experiment.homotopy_steps);
  const std::vector<BraidingSweep> sweeps = cone_homotopy(e.first(), e.second(), chain, c.radii);
  const Complex exact = braiding_exact(e.first(), e.second()).coeff;
  double spread = 0.0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    rows.push_back(bounded_row("homotopy.limit", pair, chain[k].name, c.radii.back(), sweeps[k].limit,
                               std::abs(sweeps[k].limit - exact), c.tolerances.homotopy));
    for (std::size_t j = 0; j < k; ++j) spread = std::max(spread, std::abs(sweeps[k].limit - sweeps[j].limit));
  }
  rows.push_back(bounded_row("homotopy.spread", pair, chain.front().name + ".." + chain.back().name, c.radii.back(),
                             {spread, 0.0}, spread, c.tolerances.homotopy));
}

void decay_rows(const Experiment& e, std::vector<ReportRow>& rows) {
  const RunConfig& c = e.config;
  const ChargeAutomorphism& g = e.first();
  const ChargeAutomorphism& d = e.second();
  const ConeSpec& cone = e.cone();
  const ConeSpec far = cone.opposite();
  const Translation offset{0.0, c.experiment.probe_offset};
  const std::string pair = pair_name(c.experiment.pair[0], c.experiment.pair[1]);
  const FieldVector probe = probe_label(e);
  const FieldVector f = d.data.klass() == FieldClass::Test ? d.data : probe;
  const Intertwiner moved_g = make_intertwiner(g, translate(g, offset));
  const Intertwiner moved_d = make_intertwiner(d, translate(d, offset));
  const Intertwiner unit_d = identity_arrow(d);
  const std::size_t nr = c.radii.size();

  struct Series {
    const char* id;
    std::vector<double> values;
  };
  Series series[kDecayChecks] = {{"decay.implementation", {}},
                                 {"decay.abelianness", {}},
                                 {"decay.tensor_abelianness", {}},
                                 {"decay.extension", {}}};
  for (std::size_t k = 0; k < nr; ++k) {
    const double r = c.radii[k];
    const Translation a = cone.translation(r, k);
    const Translation b = far.translation(r, k);
    series[0].values.push_back(implementation_residual(g, a, f));
    const Intertwiner u = make_intertwiner(g, translate(g, a));
    const Intertwiner v = make_intertwiner(g, translate(g, b));
    series[1].values.push_back(abelianness_residual(compose(v, adjoint(u)).label, probe));
    series[2].values.push_back(tensor_abelianness_residual(moved_g, unit_d, {a, a, b, b}));
    series[3].values.push_back(extension_residual(g, moved_d, cone, far, r));
  }
  for (const auto& s : series) {
    for (std::size_t k = 0; k < nr; ++k)
      rows.push_back(bounded_row(s.id, pair, cone.name, c.radii[k], {s.values[k], 0.0}, s.values[k],
                                 sweep_threshold(k, nr, c.tolerances.decay)));
    rows.push_back(decrease_row(std::string(s.id) + ".decrease", pair, cone.name, c.radii.back(), s.values.front(),
                                s.values.back()));
  }
}

Eigen::MatrixXcd random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(dim, rng));
  return qr.householderQ();
}

void seqalg_rows(const Experiment& e, std::vector<ReportRow>& rows) {
  const RunConfig& c = e.config;
  const TailPolicy& p = c.tail_policy;
  const Tolerances& tol = c.tolerances;
  std::mt19937_64 rng(c.seed * 1000003ULL + 7);
  const auto alg2 = std::make_shared<const MatrixAlgebra>(2);
  const auto alg3 = std::make_shared<const MatrixAlgebra>(3);
  const auto add_row = [&](const std::string& id, Complex value, double residual, double threshold) {
    rows.push_back(bounded_row("seqalg." + id, "", "", std::nullopt, value, residual, threshold));
  };

  Eigen::MatrixXcd swap(2, 2), skew(2, 2), pauli_z(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  skew << 0.0, 2.0, 1.0, 0.0;
  pauli_z << 1.0, 0.0, 0.0, -1.0;
  const Eigen::MatrixXcd u3 = random_unitary(3, rng);
  const Eigen::MatrixXcd v3 = random_unitary(3, rng);
  Eigen::MatrixXcd e3 = random_matrix(3, rng);
  e3 /= alg3->norm(e3);
  const Eigen::Vector3d lambdas(std::uniform_real_distribution<double>(-kPi, kPi)(rng),
                                std::uniform_real_distribution<double>(-kPi, kPi)(rng),
                                std::uniform_real_distribution<double>(-kPi, kPi)(rng));

  const MatrixSequence swap_seq(alg2, [swap, skew](std::size_t n) { return n < 5 ? skew : swap; }, 2.0);
  const std::vector<MatrixSequence> corpus = {
      swap_seq,
      MatrixSequence(alg3, [u3](std::size_t n) { return Eigen::MatrixXcd((1.0 + std::exp(-0.5 * n)) * u3); },
                     1.0 + std::exp(-0.5)),
      MatrixSequence(alg3, [u3, e3](std::size_t n) { return Eigen::MatrixXcd(u3 + std::exp(-0.5 * n) * e3); },
                     1.0 + std::exp(-0.5)),
      MatrixSequence(alg3,
                     [v3, lambdas](std::size_t n) {
                       Eigen::VectorXcd phases(3);
                       for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, lambdas(k) * static_cast<double>(n));
                       const double grow = 1.0 + std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 2000)));
                       return Eigen::MatrixXcd(grow * v3 * phases.asDiagonal() * v3.adjoint());
                     },
                     1.5),
  };

  std::vector<std::size_t> probe_indices = p.sample_indices();
  for (std::size_t n = 1; n <= 8; ++n) probe_indices.push_back(n);

  double unitarity = 0.0, null_distance = 0.0, ratio = 0.0;
  std::vector<MatrixSequence> polar;
  for (const auto& s : corpus) {
    polar.push_back(polar_unitarize(s, p));
    const MatrixSequence& u = polar.back();
    for (std::size_t n : probe_indices)
      unitarity = std::max(unitarity, u.algebra().norm(u.at(n).adjoint() * u.at(n) - u.algebra().unit()));
    null_distance = std::max(null_distance, limsup_norm(seq_sub(u, s), p));
    ratio = std::max(ratio, polar_bound_ratio(s, u, p));
  }
  add_row("polar_unitary", {unitarity, 0.0}, unitarity, tol.unitarity);
  add_row("polar_null_distance", {null_distance, 0.0}, null_distance, p.tolerance);
  add_row("polar_bound_ratio", {ratio, 0.0}, ratio, tol.polar_ratio);

  double swap_error = 0.0;
  for (std::size_t n : probe_indices) swap_error = std::max(swap_error, alg2->norm(polar.front().at(n) - swap));
  add_row("polar_example", {swap_error, 0.0}, swap_error, tol.unitarity);

  bool rejected = false;
  try {
    polar_unitarize(MatrixSequence::constant(alg2, 2.0 * alg2->unit()), p);
  } catch (const DomainError&) {
    rejected = true;
  }
  add_row("polar_domain_error", {rejected ? 1.0 : 0.0, 0.0}, rejected ? 0.0 : 1.0, 0.0);

  {
    // 1/n convergence needs a window starting at 3/tau.
    TailPolicy slow = p;
    slow.window_start = static_cast<std::size_t>(std::ceil(3.0 / p.tolerance));
    const Eigen::MatrixXcd u2 = random_unitary(2, rng);
    const MatrixSequence s(
        alg2, [u2](std::size_t n) { return Eigen::MatrixXcd((1.0 + 1.0 / static_cast<double>(n)) * u2); }, 2.0);
    const MatrixSequence u = polar_unitarize(s, slow);
    double drift = 0.0;
    for (std::size_t n : probe_indices) drift = std::max(drift, alg2->norm(u.at(n) - u2));
    const double distance = limsup_norm(seq_sub(u, s), slow);
    add_row("polar_scalar_example", {distance, drift}, std::max(drift, distance), p.tolerance);
  }

  const std::vector<ProbeMap> maps = probe_maps(c.experiment.stability_probes, c.seed);
  const Eigen::MatrixXcd a3 = random_matrix(3, rng);
  {
    const StabilityProbe probe = probe_stability(MatrixSequence::constant(alg3, a3), p, maps);
    add_row("stability_forward", {static_cast<double>(probe.probes), static_cast<double>(probe.failures)},
            static_cast<double>(probe.failures), 0.0);
  }
  {
    const MatrixSequence alternating(
        alg3, [a3](std::size_t n) { return Eigen::MatrixXcd(n % 2 == 1 ? a3 : Eigen::MatrixXcd(2.0 * a3)); },
        2.0 * alg3->norm(a3));
    const StabilityProbe probe = probe_stability(alternating, p, maps);
    add_row("stability_converse", {static_cast<double>(probe.probes), static_cast<double>(probe.failures)},
            probe.stable() ? 1.0 : 0.0, 0.0);
  }
  Eigen::MatrixXcd a2(2, 2);
  a2 << 1.0, 2.0, 0.0, 3.0;
  {
    const MatrixSequence central(
        alg2, [](std::size_t n) { return Eigen::MatrixXcd(std::polar(1.0, 0.7 * static_cast<double>(n)) *
                                                          Eigen::MatrixXcd::Identity(2, 2)); },
        1.0);
    const MatrixSequence image = adjoint_morphism(central, a2, p);
    const StabilityProbe probe = probe_stability(image, p, maps);
    const double distance = limsup_norm(seq_sub(image, MatrixSequence::constant(alg2, a2)), p);
    add_row("center_constant", {distance, static_cast<double>(probe.failures)},
            probe.stable() ? distance : 1.0, p.tolerance);
  }
  {
    const MatrixSequence flip(alg2, [swap, pauli_z](std::size_t n) { return n % 2 == 1 ? swap : pauli_z; }, 1.0);
    const StabilityProbe probe = probe_stability(adjoint_morphism(flip, a2, p), p, maps);
    add_row("noncommuting_unstable", {static_cast<double>(probe.probes), static_cast<double>(probe.failures)},
            probe.stable() ? 1.0 : 0.0, 0.0);
  }
  {
    const MatrixSequence null_seq(
        alg3, [e3](std::size_t n) { return Eigen::MatrixXcd(std::exp(-static_cast<double>(n)) * e3); }, 1.0);
    const MatrixSequence bounded(
        alg3, [a3](std::size_t n) { return Eigen::MatrixXcd(n % 2 == 1 ? a3 : Eigen::MatrixXcd(-a3)); },
        alg3->norm(a3));
    const double worst = std::max(limsup_norm(seq_mul(null_seq, bounded), p), limsup_norm(seq_mul(bounded, null_seq), p));
    add_row("ideal", {worst, 0.0}, worst, p.tolerance);
  }
  {
    const auto weyl = std::make_shared<const WeylPhaseAlgebra>(e.grid);
    const FieldVector x = e.second().data;
    using WeylSequence = SequenceElement<WeylPhaseAlgebra>;
    const WeylSequence s(
        weyl, [x](std::size_t n) { return WeylPhase{std::polar(1.0, std::exp(-static_cast<double>(n))), x}; }, 1.0);
    const WeylSequence t = WeylSequence::constant(weyl, WeylPhase{{1.0, 0.0}, x});
    const WeylSequence one = WeylSequence::constant(weyl, weyl->unit());
    const double worst = std::max(limsup_norm(seq_sub(s, t), p), limsup_norm(seq_sub(seq_mul(s, seq_star(s)), one), p));
    add_row("weyl_phase", {worst, 0.0}, worst, p.tolerance);
  }
}

}  // namespace

ProfilePtr make_profile(const ChargeConfig& q) {
  if (q.kind == "gaussian-momentum")
    return q.channel == "g" ? gaussian_charge(q.name, q.amplitude, q.width) : gaussian_h(q.name, q.amplitude, q.width);
  if (q.kind == "bump-position")
    return bump_profile(q.name, q.channel == "g" ? Channel::G : Channel::H, q.amplitude, q.width);
  throw ConfigurationError("charge " + q.name + ": unknown kind '" + q.kind + "'");
}

ConeSpec make_cone(const ConeConfig& k) {
  ConeSpec c;
  c.name = k.name;
  c.axis = k.axis;
  c.half_angle = k.half_angle_deg * kPi / 180.0;
  c.time_slope = k.time_slope;
  c.time_exponent = k.time_exponent;
  c.jitter = k.jitter;
  c.validate();
  return c;
}

Experiment build_experiment(const RunConfig& config) {
  validate(config);
  Experiment e{config, build_grid(config.grid.n_radial, config.grid.angular_order, config.grid.r_max), {}, {}, {}};
  for (const auto& q : config.charges) {
    e.charges.emplace(q.name, ChargeAutomorphism(FieldVector(e.grid, make_profile(q)), q.name));
    e.charge_configs.emplace(q.name, q);
  }
  for (const auto& k : config.cones) e.cones.emplace(k.name, make_cone(k));
  return e;
}

std::optional<double> closed_form_sigma(const ChargeConfig& a, const ChargeConfig& b) {
  if (a.kind != "gaussian-momentum" || b.kind != "gaussian-momentum" || a.channel == b.channel) return std::nullopt;
  const double value = a.amplitude * b.amplitude / std::sqrt(a.width * a.width + b.width * b.width);
  return a.channel == "g" ? value : -value;
}

FieldVector probe_label(const Experiment& e) {
  const FieldVector& d = e.second().data;
  return intertwiner_label(translate(d, Translation{0.0, e.config.experiment.probe_offset}), d);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"laws", "braiding", "homotopy", "decay", "seqalg", "all"};
  return names;
}

std::size_t plan_rows(const Experiment& e, const std::string& suite) {
  const RunConfig& c = e.config;
  const std::size_t nr = c.radii.size();
  const std::size_t nq = c.charges.size();
  const bool oracle = closed_form_sigma(e.charge_configs.at(c.experiment.pair[0]),
                                        e.charge_configs.at(c.experiment.pair[1]))
                          .has_value();
  if (suite == "laws") return kLawChecks + (oracle ? 1 : 0);
  if (suite == "braiding") return nq * (nq - 1) * (nr + 5);
  if (suite == "homotopy") return c.experiment.homotopy_steps + 2;
  if (suite == "decay") return kDecayChecks * (nr + 1);
  if (suite == "seqalg") return kSeqalgChecks;
  if (suite == "all") {
    std::size_t total = 0;
    for (const auto& s : suite_names())
      if (s != "all") total += plan_rows(e, s);
    return total;
  }
  throw UsageError("unknown suite '" + suite + "'");
}

Report run_suite(const Experiment& e, const std::string& suite) {
  Report report;
  report.suite = suite;
  report.config_hash = config_hash(e.config);
  report.grid_checksum = e.grid->checksum();
  report.tail_policy = e.config.tail_policy;
  report.planned_rows = plan_rows(e, suite);
  const bool every = suite == "all";
  if (every || suite == "laws") law_rows(e, report.rows);
  if (every || suite == "braiding") braiding_rows(e, report.rows);
  if (every || suite == "homotopy") homotopy_rows(e, report.rows);
  if (every || suite == "decay") decay_rows(e, report.rows);
  if (every || suite == "seqalg") seqalg_rows(e, report.rows);
  report.normalize();
  if (report.rows.size() != report.planned_rows)
    throw std::logic_error("run_suite: emitted " + std::to_string(report.rows.size()) + " rows, planned " +
                           std::to_string(report.planned_rows));
  return report;
}

}  // namespace asymptopia
