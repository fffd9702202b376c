#include "asymptopia/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "asymptopia/errors.hpp"

namespace asymptopia {

namespace {

constexpr double kDropBelow = 1e-14;

void require_same_grid(const WeylElement& a, const WeylElement& b, const char* op) {
  if (!a.grid().same_layout(b.grid())) throw UsageError(std::string(op) + ": Weyl elements live on different grids");
}

}  // namespace

LabelId label_id(const FieldVector& x) { return {x.expression()}; }

WeylElement::WeylElement(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw UsageError("WeylElement: null grid");
}

WeylElement WeylElement::generator(const FieldVector& x, Complex coeff) {
  return weyl_from_terms(x.grid_ptr(), {{coeff, x}});
}

WeylElement WeylElement::identity(GridPtr grid) {
  FieldVector zero(grid);
  return generator(zero);
}

Complex WeylElement::coefficient(const FieldVector& x) const {
  const LabelId id = label_id(x);
  for (const auto& t : terms_)
    if (label_id(t.label) == id) return t.coeff;
  return {0.0, 0.0};
}

WeylElement weyl_from_terms(GridPtr grid, std::vector<WeylTerm> terms) {
  WeylElement out(std::move(grid));
  std::map<LabelId, WeylTerm> merged;
  for (auto& t : terms) {
    if (!out.grid().same_layout(t.label.grid())) throw UsageError("weyl: label on a different grid");
    LabelId id = label_id(t.label);
    auto it = merged.find(id);
    if (it == merged.end()) {
      merged.emplace(std::move(id), std::move(t));
    } else {
      it->second.coeff += t.coeff;
      // A label certified test-class along one route stays test-class.
      if (t.label.klass() == FieldClass::Test) it->second.label = t.label;
    }
  }
  for (auto& [id, t] : merged)
    if (std::abs(t.coeff) >= kDropBelow) out.terms_.push_back(std::move(t));
  return out;
}

WeylElement weyl_add(const WeylElement& a, const WeylElement& b) {
  require_same_grid(a, b, "weyl_add");
  std::vector<WeylTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return weyl_from_terms(a.grid_ptr(), std::move(terms));
}

WeylElement weyl_scale(Complex c, const WeylElement& a) {
  std::vector<WeylTerm> terms = a.terms();
  for (auto& t : terms) t.coeff *= c;
  return weyl_from_terms(a.grid_ptr(), std::move(terms));
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
  require_same_grid(a, b, "weyl_mul");
  std::vector<WeylTerm> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      const double s = symplectic(x.label, y.label);
      terms.push_back({x.coeff * y.coeff * std::polar(1.0, 0.5 * s), add(x.label, y.label)});
    }
  }
  return weyl_from_terms(a.grid_ptr(), std::move(terms));
}

WeylElement star(const WeylElement& a) {
  std::vector<WeylTerm> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({std::conj(t.coeff), negate(t.label)});
  return weyl_from_terms(a.grid_ptr(), std::move(terms));
}

double coefficient_distance(const WeylElement& a, const WeylElement& b) {
  require_same_grid(a, b, "coefficient_distance");
  std::map<LabelId, Complex> diff;
  for (const auto& t : a.terms()) diff[label_id(t.label)] += t.coeff;
  for (const auto& t : b.terms()) diff[label_id(t.label)] -= t.coeff;
  double worst = 0.0;
  for (const auto& [id, d] : diff) worst = std::max(worst, std::abs(d));
  return worst;
}

double commutator_norm(const FieldVector& x, const FieldVector& y) {
  return std::abs(std::polar(1.0, symplectic(x, y)) - 1.0);
}

Complex vacuum_state(const WeylElement& a) {
  Complex sum{0.0, 0.0};
  for (const auto& t : a.terms()) {
    if (t.label.klass() != FieldClass::Test)
      throw DomainError("vacuum_state: label " + t.label.expression() + " is charge-class");
    sum += t.coeff * std::exp(-vacuum_exponent(t.label));
  }
  return sum;
}

Eigen::MatrixXcd gram_matrix(const std::vector<FieldVector>& labels) {
  if (labels.size() > 16) throw UsageError("gram_matrix: at most 16 labels");
  for (const auto& x : labels)
    if (x.klass() != FieldClass::Test) throw DomainError("gram_matrix: label " + x.expression() + " is charge-class");
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const WeylElement wk_star = star(WeylElement::generator(labels[static_cast<std::size_t>(k)]));
    for (Eigen::Index l = 0; l < n; ++l)
      g(k, l) = vacuum_state(weyl_mul(wk_star, WeylElement::generator(labels[static_cast<std::size_t>(l)])));
  }
  return g;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace asymptopia
