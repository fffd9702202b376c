#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asymptopia/field.hpp"

namespace asymptopia {

// Symbolic identity of a Weyl label: the canonical expression of the field
// vector. Two labels are equal iff their expressions are.
struct LabelId {
  std::string key;
  friend bool operator==(const LabelId&, const LabelId&) = default;
  friend auto operator<=>(const LabelId&, const LabelId&) = default;
};

LabelId label_id(const FieldVector& x);

struct WeylTerm {
  Complex coeff;
  FieldVector label;
};

/// Finite combination sum_k c_k W(x_k). Terms are sorted by LabelId, distinct,
/// and carry no coefficient below 1e-14 in modulus.
///
/// Products follow W(x) W(y) = e^{i sigma(x,y)/2} W(x+y), so that
/// W(x) W(y) = e^{i sigma(x,y)} W(y) W(x).
class WeylElement {
 public:
  explicit WeylElement(GridPtr grid);

  static WeylElement generator(const FieldVector& x, Complex coeff = {1.0, 0.0});
  static WeylElement identity(GridPtr grid);

  const MomentumGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<WeylTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of W(x); zero when absent.
  Complex coefficient(const FieldVector& x) const;

 private:
  friend WeylElement weyl_from_terms(GridPtr, std::vector<WeylTerm>);
  GridPtr grid_;
  std::vector<WeylTerm> terms_;
};

// Merges equal labels and drops negligible coefficients.
WeylElement weyl_from_terms(GridPtr grid, std::vector<WeylTerm> terms);

WeylElement weyl_add(const WeylElement& a, const WeylElement& b);
WeylElement weyl_scale(Complex c, const WeylElement& a);
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
// (c, x) -> (conj c, -x).
WeylElement star(const WeylElement& a);

// Largest coefficient difference over the union of labels.
double coefficient_distance(const WeylElement& a, const WeylElement& b);

// ||[W(x), W(y)]|| = |e^{i sigma(x,y)} - 1|.
double commutator_norm(const FieldVector& x, const FieldVector& y);

// sum_k c_k exp(-(x_k, x_k)/4). DomainError for charge-class labels.
Complex vacuum_state(const WeylElement& a);

// G_kl = vacuum_state(W(x_k)^* W(x_l)). At most 16 test-class labels.
Eigen::MatrixXcd gram_matrix(const std::vector<FieldVector>& labels);

double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

}  // namespace asymptopia
