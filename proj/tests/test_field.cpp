#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asymptopia/errors.hpp"
#include "asymptopia/field.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace asymptopia;

namespace {

const GridPtr& grid() {
  static const GridPtr g = build_grid(64, 26, 10.0);
  return g;
}

FieldVector charge_g(const std::string& id, double q = 1.0, double s = 1.0) {
  return FieldVector(grid(), gaussian_charge(id, q, s));
}
FieldVector test_h(const std::string& id, double c = 1.0, double t = 1.0) {
  return FieldVector(grid(), gaussian_h(id, c, t));
}
Translation space(double x, double y = 0.0, double z = 0.0) { return Translation{0.0, {x, y, z}}; }

}  // namespace

TEST_CASE("Gaussian pair symplectic form") {
  const FieldVector x = charge_g("x");
  const FieldVector y = test_h("y");
  const double closed = oracle::gaussian_pair_sigma_closed(1, 1, 1, 1);
  CHECK(std::abs(closed - oracle::gaussian_pair_sigma(1, 1, 1, 1)) < 1e-10);
  CHECK(std::abs(symplectic(x, y) - 0.70711) < 1e-5);
  CHECK(std::abs(symplectic(x, y) - closed) < 1e-6);
  CHECK(std::abs(symplectic(y, x) + closed) < 1e-6);
}

TEST_CASE("Gaussian pair symplectic form over a parameter range") {
  for (double q : {-2.0, 0.5, 3.0})
    for (double s : {0.6, 1.0, 1.7})
      for (double t : {0.8, 1.3}) {
        const double c = 0.7;
        const FieldVector x = charge_g("x" + std::to_string(q) + std::to_string(s) + std::to_string(t), q, s);
        const FieldVector y = test_h("y" + std::to_string(t), c, t);
        CHECK(std::abs(symplectic(x, y) - oracle::gaussian_pair_sigma(q, s, c, t)) < 1e-6);
      }
}

TEST_CASE("symplectic form vanishes on the diagonal and between h-only vectors") {
  const FieldVector x = add(charge_g("a"), translate(test_h("b"), space(0.3, 1.0)));
  CHECK(std::abs(symplectic(x, x)) < 1e-12);
  CHECK(symplectic(test_h("c"), translate(test_h("d", 2.0), space(1.0))) == 0.0);
}

TEST_CASE("translated Gaussian pair follows the erf closed form") {
  const FieldVector x = charge_g("x");
  const FieldVector y = test_h("y");
  for (double d : {0.5, 2.0, 5.0, 10.0, 20.0, 40.0}) {
    const double expected = oracle::gaussian_pair_sigma_closed(1, 1, 1, 1, d);
    CHECK(std::abs(expected - oracle::gaussian_pair_sigma(1, 1, 1, 1, d)) < 1e-9);
    CHECK(std::abs(symplectic(translate(x, space(0.0, d)), y) - expected) < 1e-9);
  }
  // Frozen from the closed form: sqrt(pi/2) erf(10) / 20. The decay is only
  // 1/|a|, so the value is about 9% of sigma(x, y), not 2%.
  const double at20 = symplectic(translate(x, space(0.0, 20.0)), y);
  CHECK(at20 == doctest::Approx(0.0626657068657750).epsilon(1e-9));
  const double at40 = symplectic(translate(x, space(0.0, 40.0)), y);
  CHECK(at20 / at40 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("symplectic form is bilinear and antisymmetric") {
  gen::Source src(101, "bl");
  for (int trial = 0; trial < 25; ++trial) {
    const FieldVector x = src.any_vector(grid());
    const FieldVector y = src.any_vector(grid());
    const FieldVector z = src.any_vector(grid());
    const double a = src.uniform(-2.0, 2.0);
    const double lhs = symplectic(add(scale(a, x), y), z);
    const double rhs = a * symplectic(x, z) + symplectic(y, z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    CHECK(std::abs(symplectic(x, y) + symplectic(y, x)) < 1e-12);
  }
}

TEST_CASE("symplectic form is invariant under a common spatial translation") {
  gen::Source src(202, "inv");
  for (int trial = 0; trial < 20; ++trial) {
    const FieldVector x = src.any_vector(grid());
    const FieldVector y = src.any_vector(grid());
    const Translation a = space(src.uniform(-8, 8), src.uniform(-8, 8), src.uniform(-8, 8));
    CHECK(std::abs(symplectic(translate(x, a), translate(y, a)) - symplectic(x, y)) < 1e-10);
  }
}

TEST_CASE("symplectic form is invariant under a common time translation") {
  gen::Source src(303, "time");
  for (int trial = 0; trial < 20; ++trial) {
    const FieldVector x = src.any_vector(grid());
    const FieldVector y = src.any_vector(grid());
    const Translation a{src.uniform(-3, 3), {0.0, 0.0, 0.0}};
    CHECK(std::abs(symplectic(translate(x, a), translate(y, a)) - symplectic(x, y)) < 1e-10);
  }
}

TEST_CASE("symplectic form agrees with minus the imaginary part of the scalar product") {
  gen::Source src(404, "im");
  for (int trial = 0; trial < 25; ++trial) {
    const FieldVector f = src.test_vector(grid());
    const FieldVector h = src.test_vector(grid());
    CHECK(std::abs(symplectic(f, h) + scalar_product(f, h).imag()) < 1e-8);
  }
}

TEST_CASE("grid node sum agrees with the radial route") {
  const FieldVector x = add(charge_g("gx", 1.0, 1.2), test_h("gh", 0.4));
  const FieldVector y = add(charge_g("gy", -1.0, 0.9), test_h("gk", 1.1, 1.3));
  CHECK(std::abs(grid_symplectic(x, y) - symplectic(x, y)) < 1e-10);
  const FieldVector yt = translate(y, space(0.6, -0.4, 0.5));
  CHECK(std::abs(grid_symplectic(x, yt) - symplectic(x, yt)) < 1e-6);
}

TEST_CASE("scalar product") {
  const FieldVector f = test_h("sp");
  CHECK(scalar_product(f, f).real() == doctest::Approx(2.0 * kPi).epsilon(1e-8));
  CHECK(std::abs(scalar_product(f, f).imag()) < 1e-12);
  CHECK(scalar_product(f, f).real() == doctest::Approx(oracle::gaussian_h_norm(1, 1)).epsilon(1e-8));
  const FieldVector g = test_h("sq", 0.8, 1.4);
  CHECK(scalar_product(g, g).real() == doctest::Approx(oracle::gaussian_h_norm(0.8, 1.4)).epsilon(1e-8));
  CHECK_THROWS_AS(scalar_product(charge_g("sc"), f), DomainError);
  CHECK_THROWS_AS(scalar_product(f, charge_g("sd")), DomainError);
}

TEST_CASE("scalar product is positive, hermitian and sesquilinear") {
  gen::Source src(505, "herm");
  for (int trial = 0; trial < 25; ++trial) {
    const FieldVector f = src.test_vector(grid());
    const FieldVector h = src.test_vector(grid());
    const Complex ff = scalar_product(f, f);
    CHECK(ff.real() > 0.0);
    CHECK(std::abs(ff.imag()) < 1e-10 * ff.real());
    CHECK(std::abs(scalar_product(f, h) - std::conj(scalar_product(h, f))) < 1e-10);
    const Complex fif = scalar_product(f, times_i(f));
    CHECK(std::abs(fif - Complex(0.0, 1.0) * ff) < 1e-10 * ff.real());
  }
}

TEST_CASE("vacuum exponent") {
  CHECK(vacuum_exponent(FieldVector(grid())) == 0.0);
  const FieldVector f = test_h("ve");
  CHECK(vacuum_exponent(f) == doctest::Approx(2.0 * kPi / 4.0).epsilon(1e-8));
  CHECK(vacuum_exponent(times_i(f)) == doctest::Approx(vacuum_exponent(f)).epsilon(1e-12));
  CHECK_THROWS_AS(vacuum_exponent(charge_g("vc")), DomainError);
}

TEST_CASE("translation by zero is the identity and shifts compose") {
  const FieldVector x = add(charge_g("tz"), test_h("th"));
  CHECK(translate(x, Translation{}) == x);
  const Translation a{0.5, {1.0, -2.0, 0.25}};
  const Translation b{-0.25, {0.5, 0.5, 3.0}};
  CHECK(translate(translate(x, a), b) == translate(x, a + b));
  CHECK(translate(translate(x, a), -a) == x);
}

TEST_CASE("spatial translation multiplies by a plane wave") {
  const FieldVector x = add(charge_g("pw"), test_h("ph", 0.5, 1.3));
  const Vec3 a{1.0, -0.5, 2.0};
  const FieldVector xa = translate(x, space(a[0], a[1], a[2]));
  for (const Vec3 p : {Vec3{0.3, 0.1, -0.7}, Vec3{2.0, 1.0, 0.5}, Vec3{-1.0, 3.0, 0.0}}) {
    const Complex phase = std::polar(1.0, -dot(p, a));
    CHECK(std::abs(xa.g_at(p) - phase * x.g_at(p)) < 1e-14);
    CHECK(std::abs(xa.h_at(p) - phase * x.h_at(p)) < 1e-14);
  }
}

TEST_CASE("time translation multiplies the test function by e^{i w t}") {
  const FieldVector f = add(test_h("tf"), translate(times_i(test_h("tg", 0.7, 1.2)), space(0.5, 0.5)));
  const double t = 0.8;
  const FieldVector ft = translate(f, Translation{t, {0.0, 0.0, 0.0}});
  const auto tilde = [](const FieldVector& v, const Vec3& p) {
    const double w = norm(p);
    return v.h_at(p) / std::sqrt(w) + Complex(0.0, 1.0) * v.g_at(p) / std::pow(w, 1.5);
  };
  for (const Vec3 p : {Vec3{0.3, 0.1, -0.7}, Vec3{2.0, 1.0, 0.5}, Vec3{0.0, 0.0, 4.0}}) {
    const Complex expected = std::polar(1.0, norm(p) * t) * tilde(f, p);
    CHECK(std::abs(tilde(ft, p) - expected) < 1e-12);
  }
}

TEST_CASE("translation preserves the charge") {
  const FieldVector x = charge_g("tc", 2.0);
  CHECK(translate(x, space(3.0)).charge() == 2.0);
  CHECK(translate(x, Translation{1.5, {1.0, 0.0, 0.0}}).charge() == 2.0);
}

TEST_CASE("samples are hermitian under p -> -p") {
  gen::Source src(606, "hs");
  for (int trial = 0; trial < 5; ++trial) {
    const FieldVector x = translate(src.any_vector(grid()), Translation{src.uniform(-1, 1), src.shift(2.0)});
    const NodeSamples s = x.samples();
    for (std::size_t k = 0; k < grid()->size(); k += 7) {
      const std::size_t kp = grid()->antipode_index(k);
      CHECK(std::abs(s.g[kp] - std::conj(s.g[k])) < 1e-10);
      CHECK(std::abs(s.h[kp] - std::conj(s.h[k])) < 1e-10);
    }
  }
}

TEST_CASE("vector space bookkeeping") {
  const FieldVector x = add(charge_g("bk"), test_h("bh"));
  const FieldVector zero = add(x, negate(x));
  CHECK(zero.is_zero());
  CHECK(zero.charge() == 0.0);
  CHECK(zero.klass() == FieldClass::Test);
  CHECK(scale(2.0, charge_g("b2")).charge() == 2.0);
  CHECK(scale(2.0, charge_g("b3")).klass() == FieldClass::Charge);
  CHECK(add(charge_g("b4"), charge_g("b5")).charge() == 2.0);
  CHECK(add(test_h("b6"), test_h("b7")).klass() == FieldClass::Test);
  CHECK(scale(0.0, x).is_zero());
}

TEST_CASE("intertwiner labels are chargeless test vectors") {
  const FieldVector g = charge_g("il");
  const FieldVector moved = translate(g, space(4.0));
  const FieldVector label = intertwiner_label(moved, g);
  CHECK(label.klass() == FieldClass::Test);
  CHECK(label.charge() == 0.0);
  CHECK(scalar_product(label, label).real() > 0.0);
  CHECK_THROWS_AS(intertwiner_label(charge_g("i2", 2.0), g), DomainError);
  // A plain difference of charged vectors stays charge-class.
  CHECK(subtract(moved, g).klass() == FieldClass::Charge);
}

TEST_CASE("mismatched grids are usage errors") {
  const GridPtr other = build_grid(32, 13, 8.0);
  const FieldVector a = test_h("ma");
  const FieldVector b(other, gaussian_h("mb", 1.0, 1.0));
  CHECK_THROWS_AS(add(a, b), UsageError);
  CHECK_THROWS_AS(symplectic(a, b), UsageError);
  CHECK_THROWS_AS(scalar_product(a, b), UsageError);
}

TEST_CASE("multiplication by i") {
  const FieldVector f = test_h("mi", 0.9, 1.1);
  const FieldVector iif = times_i(times_i(f));
  for (const Vec3 p : {Vec3{0.4, 0.0, 0.1}, Vec3{1.0, 2.0, -1.0}}) {
    CHECK(std::abs(iif.g_at(p) + f.g_at(p)) < 1e-14);
    CHECK(std::abs(iif.h_at(p) + f.h_at(p)) < 1e-14);
  }
  CHECK_THROWS_AS(times_i(charge_g("mc")), DomainError);
}

TEST_CASE("bump profiles") {
  const ProfilePtr g = bump_profile("bg", Channel::G, 1.5, 2.0);
  CHECK(g->charge() == 1.5);
  CHECK(!g->test_class());
  CHECK(g->g(0.0) * std::pow(2.0 * kPi, 1.5) == doctest::Approx(1.5).epsilon(1e-8));
  const ProfilePtr h = bump_profile("bh", Channel::H, 0.5, 2.0);
  CHECK(h->test_class());
  CHECK(h->h(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(bump_profile("bx", Channel::G, 1.0, 2.0, 100), ConfigurationError);
  const FieldVector x(grid(), g);
  const FieldVector y(grid(), h);
  CHECK(std::abs(grid_symplectic(x, y) - symplectic(x, y)) < 1e-10);
}

TEST_CASE("expressions identify vectors") {
  const FieldVector a = add(test_h("e1"), translate(test_h("e2"), space(1.0)));
  const FieldVector b = add(translate(test_h("e2"), space(1.0)), test_h("e1"));
  CHECK(a.expression() == b.expression());
  CHECK(a == b);
  CHECK(!(a == test_h("e1")));
}

TEST_CASE("radial panel count follows the oscillation frequency") {
  const GridPtr g = grid();
  CHECK(radial_panels(*g, 0.0) == 8);
  CHECK(radial_panels(*g, 100.0) == static_cast<std::size_t>(std::ceil(1000.0 / kPi)));
}
