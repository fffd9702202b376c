#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asymptopia/errors.hpp"
#include "asymptopia/field.hpp"

namespace asymptopia {

// Finite stand-in for limsup_n: K sample indices starting at N0.
struct TailPolicy {
  std::size_t window_start = 32;
  std::size_t sample_count = 16;
  double tolerance = 1e-6;

  // ConfigurationError unless N0 >= 1, K >= 8, tau > 0.
  void validate() const;
  // max(2, K/2) consecutive indices from N0, then N0 * 2^j until K are chosen.
  std::vector<std::size_t> sample_indices() const;
};

/// Complex d x d matrices with the operator norm.
class MatrixAlgebra {
 public:
  using Element = Eigen::MatrixXcd;

  explicit MatrixAlgebra(std::size_t dim);
  std::size_t dim() const { return dim_; }

  Element zero() const;
  Element unit() const;
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element scale(Complex c, const Element& a) const { return c * a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element star(const Element& a) const { return a.adjoint(); }
  double norm(const Element& a) const;

 private:
  std::size_t dim_;
};

struct WeylPhase {
  Complex coeff;
  FieldVector label;
};

/// Single Weyl generators c W(x) with norm |c|. Sums are defined only for
/// equal labels or when one summand vanishes.
class WeylPhaseAlgebra {
 public:
  using Element = WeylPhase;

  explicit WeylPhaseAlgebra(GridPtr grid);

  Element zero() const;
  Element unit() const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(Complex c, const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element star(const Element& a) const;
  double norm(const Element& a) const { return std::abs(a.coeff); }

 private:
  GridPtr grid_;
};

/// Bounded sequence n -> B_n (n >= 1) in a normed *-algebra. Entries are
/// memoized and checked against the certified bound on first evaluation. The
/// memo is shared by copies and guarded by a mutex, so concurrent readers see
/// the values a sequential evaluation would produce.
template <class Algebra>
class SequenceElement {
 public:
  using Element = typename Algebra::Element;
  using Generator = std::function<Element(std::size_t)>;

  SequenceElement(std::shared_ptr<const Algebra> algebra, Generator generator, double bound)
      : algebra_(std::move(algebra)), state_(std::make_shared<State>()) {
    if (!algebra_) throw UsageError("SequenceElement: null algebra");
    if (!(bound >= 0.0)) throw UsageError("SequenceElement: bound must be >= 0");
    state_->generator = std::move(generator);
    state_->bound = bound;
  }

  static SequenceElement constant(std::shared_ptr<const Algebra> algebra, const Element& value) {
    const double b = algebra->norm(value);
    return SequenceElement(std::move(algebra), [value](std::size_t) { return value; }, b);
  }

  const Algebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
  double bound() const { return state_->bound; }

  Element at(std::size_t n) const {
    {
      std::lock_guard<std::mutex> lock(state_->mutex);
      auto it = state_->memo.find(n);
      if (it != state_->memo.end()) return it->second;
    }
    Element value = state_->generator(n);
    const double nv = algebra_->norm(value);
    if (nv > state_->bound * (1.0 + 1e-12) + 1e-15)
      throw DomainError("SequenceElement: entry " + std::to_string(n) + " has norm " + std::to_string(nv) +
                        " above the bound " + std::to_string(state_->bound));
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->memo.emplace(n, std::move(value)).first->second;
  }

 private:
  struct State {
    Generator generator;
    double bound = 0.0;
    std::mutex mutex;
    std::map<std::size_t, Element> memo;
  };

  std::shared_ptr<const Algebra> algebra_;
  std::shared_ptr<State> state_;
};

template <class A>
SequenceElement<A> seq_add(const SequenceElement<A>& s, const SequenceElement<A>& t) {
  auto alg = s.algebra_ptr();
  return SequenceElement<A>(alg, [alg, s, t](std::size_t n) { return alg->add(s.at(n), t.at(n)); },
                            s.bound() + t.bound());
}

template <class A>
SequenceElement<A> seq_sub(const SequenceElement<A>& s, const SequenceElement<A>& t) {
  auto alg = s.algebra_ptr();
  return SequenceElement<A>(alg, [alg, s, t](std::size_t n) { return alg->sub(s.at(n), t.at(n)); },
                            s.bound() + t.bound());
}

template <class A>
SequenceElement<A> seq_mul(const SequenceElement<A>& s, const SequenceElement<A>& t) {
  auto alg = s.algebra_ptr();
  return SequenceElement<A>(alg, [alg, s, t](std::size_t n) { return alg->mul(s.at(n), t.at(n)); },
                            s.bound() * t.bound());
}

template <class A>
SequenceElement<A> seq_star(const SequenceElement<A>& s) {
  auto alg = s.algebra_ptr();
  return SequenceElement<A>(alg, [alg, s](std::size_t n) { return alg->star(s.at(n)); }, s.bound());
}

template <class A>
SequenceElement<A> seq_scale(Complex c, const SequenceElement<A>& s) {
  auto alg = s.algebra_ptr();
  return SequenceElement<A>(alg, [alg, c, s](std::size_t n) { return alg->scale(c, s.at(n)); },
                            std::abs(c) * s.bound());
}

// max of ||B_n|| over the policy's sample indices.
template <class A>
double limsup_norm(const SequenceElement<A>& s, const TailPolicy& p) {
  p.validate();
  double worst = 0.0;
  for (std::size_t n : p.sample_indices()) worst = std::max(worst, s.algebra().norm(s.at(n)));
  return worst;
}

template <class A>
bool is_null(const SequenceElement<A>& s, const TailPolicy& p) {
  return limsup_norm(s, p) <= p.tolerance;
}

template <class A>
bool equivalent(const SequenceElement<A>& s, const SequenceElement<A>& t, const TailPolicy& p) {
  return is_null(seq_sub(s, t), p);
}

using IndexMap = std::function<std::size_t(std::size_t)>;

// UsageError unless the map is strictly increasing on the probed indices: every
// n < 256 and the neighbours of each power of two up to 2^24. A drop elsewhere
// goes unnoticed.
void require_increasing(const IndexMap& map);

template <class A>
SequenceElement<A> subsequence(const SequenceElement<A>& s, IndexMap map) {
  require_increasing(map);
  return SequenceElement<A>(s.algebra_ptr(), [s, map](std::size_t n) { return s.at(map(n)); }, s.bound());
}

struct ProbeMap {
  std::string name;
  IndexMap map;
};

// `count` random affine maps n -> a n + b (1 <= a <= 4, 0 <= b <= 16) followed
// by the even and odd maps n -> 2n, n -> 2n + 1.
std::vector<ProbeMap> probe_maps(std::size_t count, std::uint64_t seed);

struct StabilityProbe {
  std::size_t probes = 0;
  std::size_t failures = 0;
  bool stable() const { return failures == 0; }
};

// Tests whether {s} is closed under the probe subsequences up to null
// sequences, the finite witness of s being equivalent to a constant.
template <class A>
StabilityProbe probe_stability(const SequenceElement<A>& s, const TailPolicy& p, const std::vector<ProbeMap>& maps) {
  StabilityProbe out;
  for (const auto& m : maps) {
    ++out.probes;
    if (!equivalent(subsequence(s, m.map), s, p)) ++out.failures;
  }
  return out;
}

using MatrixSequence = SequenceElement<MatrixAlgebra>;

// Unitary factor of the polar decomposition, or the identity when the smallest
// singular value is below 1e-8.
Eigen::MatrixXcd polar_factor(const Eigen::MatrixXcd& b);

// U_n = B_n |B_n|^{-1}. DomainError unless s^* s - 1 and s s^* - 1 are null.
MatrixSequence polar_unitarize(const MatrixSequence& s, const TailPolicy& p);

// max over samples of ||U_n - B_n|| / ||B_n^* B_n - 1||, skipping samples whose
// defect is below 1e-12.
double polar_bound_ratio(const MatrixSequence& s, const MatrixSequence& u, const TailPolicy& p);

// n -> u_n^* A u_n. DomainError for entries that are not unitary to 1e-10;
// the policy's sample indices are checked eagerly, others on evaluation.
MatrixSequence adjoint_morphism(const MatrixSequence& u, const Eigen::MatrixXcd& a, const TailPolicy& p = {});

}  // namespace asymptopia
