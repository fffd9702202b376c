#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asymptopia/errors.hpp"
#include "asymptopia/weyl.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace asymptopia;

namespace {

const GridPtr& grid() { return gen::default_grid(); }
FieldVector charge_g(const std::string& id, double q = 1.0) { return FieldVector(grid(), gaussian_charge(id, q, 1.0)); }
FieldVector test_h(const std::string& id, double c = 1.0) { return FieldVector(grid(), gaussian_h(id, c, 1.0)); }
WeylElement W(const FieldVector& x, Complex c = 1.0) { return WeylElement::generator(x, c); }

}  // namespace

TEST_CASE("W(x) W(-x) is the unit") {
  const FieldVector x = add(charge_g("u1"), test_h("u2"));
  const WeylElement p = weyl_mul(W(x), W(negate(x)));
  CHECK(p.terms().size() == 1);
  CHECK(p.terms()[0].label.is_zero());
  CHECK(std::abs(p.terms()[0].coeff - 1.0) < 1e-15);
}

TEST_CASE("product phase and exchange relation") {
  const FieldVector x = charge_g("ex");
  const FieldVector y = test_h("ey");
  const double s = symplectic(x, y);
  const WeylElement xy = weyl_mul(W(x), W(y));
  const WeylElement yx = weyl_mul(W(y), W(x));
  CHECK(std::abs(xy.coefficient(add(x, y)) - std::polar(1.0, s / 2.0)) < 1e-15);
  CHECK(std::abs(xy.coefficient(add(x, y)) - std::polar(1.0, s) * yx.coefficient(add(x, y))) < 1e-14);
}

TEST_CASE("multiplication is associative") {
  gen::Source src(1001, "as");
  for (int trial = 0; trial < 30; ++trial) {
    const WeylElement a = W(src.any_vector(grid()), src.coeff());
    const WeylElement b = weyl_add(W(src.any_vector(grid()), src.coeff()), W(src.any_vector(grid()), src.coeff()));
    const WeylElement c = W(src.any_vector(grid()), src.coeff());
    const WeylElement lhs = weyl_mul(weyl_mul(a, b), c);
    const WeylElement rhs = weyl_mul(a, weyl_mul(b, c));
    CHECK(coefficient_distance(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("star is an antilinear involutive antihomomorphism") {
  gen::Source src(1002, "st");
  CHECK(coefficient_distance(star(WeylElement::identity(grid())), WeylElement::identity(grid())) == 0.0);
  for (int trial = 0; trial < 30; ++trial) {
    const WeylElement a = weyl_add(W(src.any_vector(grid()), src.coeff()), W(src.any_vector(grid()), src.coeff()));
    const WeylElement b = W(src.any_vector(grid()), src.coeff());
    const Complex c = src.coeff();
    CHECK(coefficient_distance(star(star(a)), a) == 0.0);
    CHECK(coefficient_distance(star(weyl_mul(a, b)), weyl_mul(star(b), star(a))) <= 1e-12);
    CHECK(coefficient_distance(star(weyl_scale(c, a)), weyl_scale(std::conj(c), star(a))) <= 1e-15);
  }
}

TEST_CASE("generators are unitary") {
  gen::Source src(1003, "un");
  for (int trial = 0; trial < 20; ++trial) {
    const WeylElement w = W(src.any_vector(grid()));
    CHECK(coefficient_distance(weyl_mul(star(w), w), WeylElement::identity(grid())) <= 1e-15);
    CHECK(coefficient_distance(weyl_mul(w, star(w)), WeylElement::identity(grid())) <= 1e-15);
  }
}

TEST_CASE("equal labels merge and cancel") {
  const FieldVector x = test_h("mg");
  CHECK(weyl_add(W(x), W(x, -1.0)).is_zero());
  const WeylElement two = weyl_add(W(x), W(x));
  CHECK(two.terms().size() == 1);
  CHECK(two.coefficient(x) == Complex(2.0));
  CHECK(W(x, 1e-15).is_zero());
}

TEST_CASE("commutator norm") {
  const FieldVector x = charge_g("cx");
  const FieldVector y = test_h("cy");
  CHECK(commutator_norm(x, x) < 1e-12);
  const double s = symplectic(x, y);
  CHECK(std::abs(commutator_norm(x, scale(kPi / s, y)) - 2.0) < 1e-10);
  // |e^{i/sqrt 2} - 1| = 2 sin(1/(2 sqrt 2)).
  const double expected = oracle::phase_distance(1.0 / std::sqrt(2.0));
  CHECK(expected == doctest::Approx(0.6924671875610711).epsilon(1e-14));
  CHECK(std::abs(commutator_norm(x, y) - expected) < 1e-5);
}

TEST_CASE("vacuum state") {
  const FieldVector f = test_h("vf");
  CHECK(vacuum_state(WeylElement::identity(grid())) == Complex(1.0));
  CHECK(vacuum_state(weyl_add(W(f), W(f, -1.0))) == Complex(0.0));
  CHECK(std::abs(vacuum_state(weyl_mul(star(W(f)), W(f))) - 1.0) < 1e-15);
  CHECK(std::abs(vacuum_state(W(f)) - std::exp(-kPi / 2.0)) < 1e-8);
  CHECK_THROWS_AS(vacuum_state(W(charge_g("vc"))), DomainError);
}

TEST_CASE("Gram matrices") {
  const FieldVector f = test_h("gf");
  const Eigen::MatrixXcd single = gram_matrix({f});
  CHECK(single.rows() == 1);
  CHECK(std::abs(single(0, 0) - 1.0) < 1e-15);
  const Eigen::MatrixXcd two = gram_matrix({FieldVector(grid()), f});
  CHECK(std::abs(two(0, 1) - std::exp(-vacuum_exponent(f))) < 1e-14);
  CHECK(std::abs(two(1, 0) - std::exp(-vacuum_exponent(f))) < 1e-14);

  gen::Source src(1004, "gr");
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<FieldVector> labels;
    for (int k = 0; k < 8; ++k) labels.push_back(src.test_vector(grid()));
    const Eigen::MatrixXcd g = gram_matrix(labels);
    CHECK((g - g.adjoint()).norm() < 1e-12);
    CHECK(min_eigenvalue(g) >= -1e-10);
  }
  CHECK_THROWS_AS(gram_matrix({f, charge_g("gc")}), DomainError);
  CHECK_THROWS_AS(gram_matrix(std::vector<FieldVector>(17, f)), UsageError);
}

TEST_CASE("elements on different grids do not mix") {
  const GridPtr other = build_grid(16, 7, 5.0);
  const WeylElement a = W(test_h("d1"));
  const WeylElement b = WeylElement::generator(FieldVector(other, gaussian_h("d2", 1.0, 1.0)));
  CHECK_THROWS_AS(weyl_mul(a, b), UsageError);
  CHECK_THROWS_AS(weyl_add(a, b), UsageError);
}
