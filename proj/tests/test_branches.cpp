#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "zdcm/branches.hpp"
#include "zdcm/error.hpp"
#include "zdcm/roots.hpp"

using namespace zdcm;
using namespace zdcm::testing;

namespace {

const double s2 = std::sqrt(2.0);

bool near_critical(double x, const std::vector<double>& cv, double eps) {
  return std::any_of(cv.begin(), cv.end(), [&](double c) { return std::abs(x - c) < eps; });
}

}  // namespace

TEST_CASE("branch polynomial for the single-pole datum") {
  const auto u = figure1();
  CHECK(branch_polynomial(u, 2.0, -3.0, SignMode::focusing) == ComplexPolynomial{-1.0, 1.0, 3.0, 1.0});
  CHECK(branch_polynomial(u, 2.0, 1.0, SignMode::focusing) == ComplexPolynomial{-5.0, 1.0, -1.0, 1.0});
  // t = 0: (y - x)(y^2 + 1)
  CHECK(branch_polynomial(u, 0.0, 5.0, SignMode::focusing) == ComplexPolynomial{-5.0, 1.0, -5.0, 1.0});
  for (const auto& w : test_data()) {
    const auto p = branch_polynomial(w, 1.3, 0.4, SignMode::defocusing);
    CHECK(p.degree() == 2 * w.order() + 1);
    CHECK(p.leading() == cplx(1.0));
    CHECK(p.max_abs_imag_coeff() == 0.0);
  }
}

TEST_CASE("classify: three real roots at (2, -3)") {
  const auto bs = branches(figure1(), 2.0, -3.0, SignMode::focusing);
  REQUIRE(bs.real_roots.size() == 3);
  CHECK(std::abs(bs.real_roots[0] - (-1 - s2)) < 1e-10);
  CHECK(std::abs(bs.real_roots[1] - (-1.0)) < 1e-10);
  CHECK(std::abs(bs.real_roots[2] - (-1 + s2)) < 1e-10);
  CHECK(bs.ell == 1);
  CHECK(bs.upper_roots.empty());
  CHECK_FALSE(bs.degenerate);
  CHECK(bs.gamma_prime[0] > 0);
  CHECK(bs.gamma_prime[1] < 0);
  CHECK(bs.gamma_prime[2] > 0);
}

TEST_CASE("classify: one real root and a conjugate pair at (2, 1)") {
  // y^3 - y^2 + y - 5: the real root r solves it; dividing out (y - r) leaves
  // y^2 + (r - 1) y + 5/r, whose roots are the pair.
  const auto bs = branches(figure1(), 2.0, 1.0, SignMode::focusing);
  REQUIRE(bs.real_roots.size() == 1);
  const double r = bs.real_roots[0];
  CHECK(std::abs(r * r * r - r * r + r - 5) < 1e-12);
  CHECK(r == doctest::Approx(1.8816).epsilon(2e-4));
  REQUIRE(bs.upper_roots.size() == 1);
  const cplx w = bs.upper_roots[0];
  CHECK(std::abs(w - cplx(-0.4408, 1.5700)) < 1e-3);
  const double b = r - 1, c = 5 / r;
  const cplx expect = (-b + std::sqrt(cplx(b * b - 4 * c))) / 2.0;
  CHECK(std::abs(w - cplx(expect.real(), std::abs(expect.imag()))) < 1e-12);
  CHECK(bs.ell == 0);
}

TEST_CASE("classify at t = 0") {
  const auto bs = branches(figure1(), 0.0, 5.0, SignMode::focusing);
  REQUIRE(bs.real_roots.size() == 1);
  CHECK(std::abs(bs.real_roots[0] - 5.0) < 1e-12);
  REQUIRE(bs.upper_roots.size() == 1);
  CHECK(std::abs(bs.upper_roots[0] - cplx(0, 1)) < 1e-12);
}

TEST_CASE("classify rejects an unpaired complex root") {
  const std::vector<cplx> roots{cplx(1.0), cplx(0.0, 1.0), cplx(0.3, -1.0)};
  CHECK_THROWS_AS(classify(roots, 2.0, 1.0, figure1(), SignMode::focusing), Error);
}

TEST_CASE("scan_roots_general agrees with the polynomial roots") {
  const RealFunction v0 = [](double y) { return 1.0 / (1.0 + y * y); };
  const RealFunction dv0 = [](double y) { return -2.0 * y / ((1.0 + y * y) * (1.0 + y * y)); };
  const auto u = figure1();
  const Window win = default_window(u);
  const auto bs = scan_roots_general(v0, dv0, 2.0, -3.0, SignMode::focusing, win);
  REQUIRE(bs.real_roots.size() == 3);
  CHECK(std::abs(bs.real_roots[0] - (-1 - s2)) < 1e-8);
  CHECK(std::abs(bs.real_roots[1] + 1.0) < 1e-8);
  CHECK(std::abs(bs.real_roots[2] - (-1 + s2)) < 1e-8);
  CHECK(bs.upper_roots.empty());

  const auto t0 = scan_roots_general(v0, dv0, 0.0, 2.5, SignMode::focusing, win);
  REQUIRE(t0.real_roots.size() == 1);
  CHECK(std::abs(t0.real_roots[0] - 2.5) < 1e-10);

  try {
    scan_roots_general(v0, dv0, 2.0, -3.0, SignMode::focusing, {-1.0, 1.0});
    FAIL("expected WindowTooNarrow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooNarrow);
  }

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> tx(-6, 6), tt(-3, 3);
  for (const auto& w : test_data()) {
    const auto pr = modulus_squared_extension(w);
    const RealFunction v = [&](double y) { return pr(y).real(); };
    const RealFunction dv = [&](double y) { return pr.derivative(y).real(); };
    for (int i = 0; i < 20; ++i) {
      const double t = tt(rng), x = tx(rng);
      const auto a = branches(w, t, x, SignMode::focusing);
      if (a.degenerate) continue;
      const auto b = scan_roots_general(v, dv, t, x, SignMode::focusing, default_window(w));
      REQUIRE(a.real_roots.size() == b.real_roots.size());
      for (std::size_t k = 0; k < a.real_roots.size(); ++k) CHECK(std::abs(a.real_roots[k] - b.real_roots[k]) < 1e-8);
    }
  }
}

TEST_CASE("shock time of the single-pole datum") {
  const auto u = figure1();
  const double t_star = shock_time(u, SignMode::focusing, default_window(u));
  CHECK(std::abs(t_star - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-8);
  // Defocusing: sup of -2 v0' is reached at y = +1/sqrt 3, same value.
  CHECK(std::abs(shock_time(u, SignMode::defocusing, default_window(u)) - t_star) < 1e-8);

  const auto zero = make_rational(ComplexPolynomial{}, {cplx(0, -1)});
  CHECK(std::isinf(shock_time(zero, SignMode::focusing, default_window(zero))));
}

TEST_CASE("critical values") {
  const auto u = figure1();
  const Window win = default_window(u);
  CHECK(critical_values(u, 0.5, SignMode::focusing, win).empty());
  CHECK(critical_values(u, 0.0, SignMode::focusing, win).empty());

  const auto cv = critical_values(u, 2.0, SignMode::focusing, win);
  REQUIRE(cv.size() == 2);
  CHECK(cv[0] < -3.0);
  CHECK(cv[1] > -3.0);
  for (double c : cv) {
    CHECK(branches(u, 2.0, c - 1e-3, SignMode::focusing).real_roots.size() !=
          branches(u, 2.0, c + 1e-3, SignMode::focusing).real_roots.size());
  }

  for (const auto& w : test_data()) {
    const auto pr = modulus_squared_extension(w);
    const RealFunction v = [&](double y) { return pr(y).real(); };
    const RealFunction dv = [&](double y) { return pr.derivative(y).real(); };
    for (SignMode s : {SignMode::focusing, SignMode::defocusing}) {
      const auto a = critical_values(w, 2.0, s, default_window(w));
      const auto b = critical_values_general(v, dv, 2.0, s, default_window(w));
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-6);
    }
  }
}

TEST_CASE("burgers branches at (2, -3)") {
  const auto u = figure1();
  const auto v = burgers_branches(branches(u, 2.0, -3.0, SignMode::focusing), u);
  REQUIRE(v.size() == 3);
  CHECK(std::abs(v[0] - 1.0 / (4 + 2 * s2)) < 1e-12);
  CHECK(std::abs(v[1] - 0.5) < 1e-12);
  CHECK(std::abs(v[2] - 1.0 / (4 - 2 * s2)) < 1e-12);
  CHECK(std::abs(v[0] * v[2] / v[1] - 0.25) < 1e-12);

  const auto v0 = burgers_branches(branches(u, 0.0, 0.7, SignMode::focusing), u);
  REQUIRE(v0.size() == 1);
  CHECK(std::abs(v0[0] - 1.0 / (1 + 0.49)) < 1e-12);
}

TEST_CASE("random (t, x): parity, conjugate closure, product identity, alternation") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> tt(-3.0, 3.0), tx(-10.0, 10.0);
  int checked = 0;
  for (const auto& u : test_data()) {
    for (SignMode s : {SignMode::focusing, SignMode::defocusing}) {
      for (int i = 0; i < 300; ++i) {
        const double t = tt(rng), x = tx(rng);
        if (near_critical(x, critical_values(u, t, s, default_window(u)), 1e-4)) continue;
        const auto p = branch_polynomial(u, t, x, s);
        const auto roots = polynomial_roots(p);
        for (cplx r : roots) {
          double best = 1e300;
          for (cplx w : roots) best = std::min(best, std::abs(std::conj(r) - w));
          CHECK(best < 1e-8 * (1 + std::abs(r)));
        }
        cplx prod = 1.0;
        for (cplx r : roots) prod *= x - r;
        const cplx pp = u.numerator()(x) * std::conj(u.numerator()(x));
        CHECK(std::abs(prod + pm(s) * 2 * t * pp) <= 1e-8 * (1e-300 + std::abs(2 * t * pp)));

        const auto bs = classify(roots, t, x, u, s);
        CHECK(bs.real_roots.size() % 2 == 1);
        CHECK(bs.real_roots.size() + 2 * bs.upper_roots.size() == static_cast<std::size_t>(2 * u.order() + 1));
        if (!bs.degenerate)
          for (std::size_t k = 0; k < bs.gamma_prime.size(); ++k) CHECK((bs.gamma_prime[k] > 0) == (k % 2 == 0));
        for (double y : bs.real_roots) {
          const double gamma = y - pm(s) * 2 * t * std::norm(eval(u, y));
          CHECK(std::abs(gamma - x) <= 1e-8 * (1 + std::abs(x)));
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 1500);
}
