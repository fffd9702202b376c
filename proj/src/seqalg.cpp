#include "asymptopia/seqalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "asymptopia/weyl.hpp"

namespace asymptopia {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kSingularCutoff = 1e-8;

double unitarity_defect(const MatrixAlgebra& alg, const Eigen::MatrixXcd& u) {
  return alg.norm(u.adjoint() * u - alg.unit());
}

}  // namespace

void TailPolicy::validate() const {
  if (window_start < 1) throw ConfigurationError("tail policy: window_start must be >= 1");
  if (sample_count < 8) throw ConfigurationError("tail policy: sample_count must be >= 8");
  if (!(tolerance > 0.0)) throw ConfigurationError("tail policy: tolerance must be > 0");
}

std::vector<std::size_t> TailPolicy::sample_indices() const {
  validate();
  std::vector<std::size_t> out;
  const std::size_t consecutive = std::max<std::size_t>(2, sample_count / 2);
  for (std::size_t k = 0; k < consecutive; ++k) out.push_back(window_start + k);
  std::size_t next = window_start;
  while (out.size() < sample_count) {
    next *= 2;
    if (next > out.back()) out.push_back(next);
  }
  return out;
}

MatrixAlgebra::MatrixAlgebra(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > 8) throw ConfigurationError("MatrixAlgebra: dimension must lie in [1, 8]");
}

MatrixAlgebra::Element MatrixAlgebra::zero() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  return Element::Zero(d, d);
}

MatrixAlgebra::Element MatrixAlgebra::unit() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  return Element::Identity(d, d);
}

double MatrixAlgebra::norm(const Element& a) const {
  if (a.size() == 0) return 0.0;
  const Eigen::JacobiSVD<Element> svd(a);
  return svd.singularValues()(0);
}

WeylPhaseAlgebra::WeylPhaseAlgebra(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw UsageError("WeylPhaseAlgebra: null grid");
}

WeylPhase WeylPhaseAlgebra::zero() const { return {{0.0, 0.0}, FieldVector(grid_)}; }
WeylPhase WeylPhaseAlgebra::unit() const { return {{1.0, 0.0}, FieldVector(grid_)}; }

WeylPhase WeylPhaseAlgebra::add(const WeylPhase& a, const WeylPhase& b) const {
  if (a.coeff == 0.0) return b;
  if (b.coeff == 0.0) return a;
  if (!(label_id(a.label) == label_id(b.label)))
    throw UsageError("WeylPhaseAlgebra: sums of distinct generators are not represented");
  return {a.coeff + b.coeff, a.label};
}

WeylPhase WeylPhaseAlgebra::sub(const WeylPhase& a, const WeylPhase& b) const { return add(a, scale(-1.0, b)); }

WeylPhase WeylPhaseAlgebra::scale(Complex c, const WeylPhase& a) const { return {c * a.coeff, a.label}; }

WeylPhase WeylPhaseAlgebra::mul(const WeylPhase& a, const WeylPhase& b) const {
  const double s = symplectic(a.label, b.label);
  return {a.coeff * b.coeff * std::polar(1.0, 0.5 * s), asymptopia::add(a.label, b.label)};
}

WeylPhase WeylPhaseAlgebra::star(const WeylPhase& a) const { return {std::conj(a.coeff), negate(a.label)}; }

void require_increasing(const IndexMap& map) {
  // Dense check on small indices, then around every power of two up to 2^24.
  for (std::size_t n = 1; n < 256; ++n)
    if (!(map(n + 1) > map(n))) throw UsageError("subsequence: index map is not strictly increasing");
  for (std::size_t n = 256; n <= (std::size_t{1} << 24); n *= 2)
    if (!(map(n + 1) > map(n)) || !(map(n) > map(n - 1)))
      throw UsageError("subsequence: index map is not strictly increasing");
}

std::vector<ProbeMap> probe_maps(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> slope(1, 4);
  std::uniform_int_distribution<std::size_t> offset(0, 16);
  std::vector<ProbeMap> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t a = slope(rng);
    const std::size_t b = offset(rng);
    out.push_back({std::to_string(a) + "n+" + std::to_string(b), [a, b](std::size_t n) { return a * n + b; }});
  }
  out.push_back({"2n", [](std::size_t n) { return 2 * n; }});
  out.push_back({"2n+1", [](std::size_t n) { return 2 * n + 1; }});
  return out;
}

Eigen::MatrixXcd polar_factor(const Eigen::MatrixXcd& b) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) < kSingularCutoff)
    return Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  return svd.matrixU() * svd.matrixV().adjoint();
}

MatrixSequence polar_unitarize(const MatrixSequence& s, const TailPolicy& p) {
  const auto alg = s.algebra_ptr();
  const MatrixSequence one = MatrixSequence::constant(alg, alg->unit());
  const MatrixSequence st = seq_star(s);
  if (!is_null(seq_sub(seq_mul(st, s), one), p) || !is_null(seq_sub(seq_mul(s, st), one), p))
    throw DomainError("polar_unitarize: sequence is not almost unitary under the tail policy");
  return MatrixSequence(alg, [s](std::size_t n) { return polar_factor(s.at(n)); }, 1.0);
}

double polar_bound_ratio(const MatrixSequence& s, const MatrixSequence& u, const TailPolicy& p) {
  const MatrixAlgebra& alg = s.algebra();
  double worst = 0.0;
  for (std::size_t n : p.sample_indices()) {
    const Eigen::MatrixXcd b = s.at(n);
    const double defect = alg.norm(b.adjoint() * b - alg.unit());
    // Below this the ratio compares rounding noise with rounding noise.
    if (defect < 1e-12) continue;
    worst = std::max(worst, alg.norm(u.at(n) - b) / defect);
  }
  return worst;
}

MatrixSequence adjoint_morphism(const MatrixSequence& u, const Eigen::MatrixXcd& a, const TailPolicy& p) {
  const auto alg = u.algebra_ptr();
  const auto check = [alg](const Eigen::MatrixXcd& un, std::size_t n) {
    if (unitarity_defect(*alg, un) > kUnitaryTolerance)
      throw DomainError("adjoint_morphism: entry " + std::to_string(n) + " is not unitary");
  };
  for (std::size_t n : p.sample_indices()) check(u.at(n), n);
  const double bound = alg->norm(a);
  return MatrixSequence(
      alg,
      [u, a, check](std::size_t n) {
        const Eigen::MatrixXcd un = u.at(n);
        check(un, n);
        return Eigen::MatrixXcd(un.adjoint() * a * un);
      },
      bound);
}

}  // namespace asymptopia
