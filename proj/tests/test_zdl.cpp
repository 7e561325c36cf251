#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "zdcm/branches.hpp"
#include "zdcm/error.hpp"
#include "zdcm/operator.hpp"
#include "zdcm/zdl.hpp"

using namespace zdcm;
using namespace zdcm::testing;
using std::numbers::pi;

namespace {

// Conjugate-pair member of y^3 - y^2 + y - 5 in the upper half-plane, from
// the real root r by deflation: y^2 + (r - 1) y + 5/r.
cplx upper_root_x1(double r) {
  const double b = r - 1, c = 5 / r;
  const cplx w = (-b + std::sqrt(cplx(b * b - 4 * c))) / 2.0;
  return {w.real(), std::abs(w.imag())};
}

double real_root_x1() {
  // Bisection on y^3 - y^2 + y - 5 over [1, 3]; monotone there.
  double lo = 1, hi = 3;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m * m * m - m * m + m - 5 > 0 ? hi : lo) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("benchmark (2, -3): all closed forms give -1/2") {
  const auto u = figure1();
  const auto bs = branches(u, 2.0, -3.0, SignMode::focusing);
  const auto r = zd_rational(u, bs);
  CHECK(std::abs(r.value - (-0.5)) < 1e-12);
  CHECK(r.ell == 1);
  CHECK(std::abs(zd_determinant(u, bs).value + 0.5) < 1e-9);
  CHECK(std::abs(finite_rank_zd(u, bs).value + 0.5) < 1e-10);
  const auto b = zd_branch(line_data(u), bs);
  CHECK(std::abs(b.modulus - 0.5) < 1e-12);
  CHECK(std::abs(b.value + 0.5) < 1e-6);
  // e^{i phi} (-i) (1/2) = -1/2  =>  e^{i phi} = -i
  const double phi = phase_integral(line_data(u), bs);
  CHECK(std::abs(std::exp(cplx(0, phi)) - cplx(0, -1)) < 1e-6);
}

TEST_CASE("benchmark (2, 1): single branch") {
  const auto u = figure1();
  const double r = real_root_x1();
  const cplx expect = 1.0 / (1.0 - std::conj(upper_root_x1(r)));
  const auto bs = branches(u, 2.0, 1.0, SignMode::focusing);
  CHECK(std::abs(zd_rational(u, bs).value - expect) < 1e-12);
  CHECK(std::abs(expect - cplx(0.3173, -0.3458)) < 1e-3);
  CHECK(std::abs(zd_determinant(u, bs).value - expect) < 1e-8);
  CHECK(std::abs(finite_rank_zd(u, bs).value - expect) < 1e-9);
  const auto b = zd_branch(line_data(u), bs);
  CHECK(std::abs(b.modulus - 1.0 / std::sqrt(1 + r * r)) < 1e-12);
  CHECK(std::abs(b.value - expect) < 1e-6);
  CHECK(std::abs(phase_integral(line_data(u), bs) - std::arg(expect)) < 1e-6);
  CHECK(std::arg(expect) == doctest::Approx(-0.8273).epsilon(1e-3));
}

TEST_CASE("t = 0 returns u0") {
  for (const auto& u : test_data()) {
    for (SignMode s : {SignMode::focusing, SignMode::defocusing}) {
      for (double x : linspace(-10, 10, 41)) {
        const auto bs = branches(u, 0.0, x, s);
        const cplx u0 = eval(u, x);
        CHECK(std::abs(zd_rational(u, bs).value - u0) < 1e-10);
        CHECK(std::abs(zd_determinant(u, bs).value - u0) < 1e-10);
        CHECK(std::abs(finite_rank_zd(u, bs).value - u0) < 1e-10);
        CHECK(std::abs(zd_branch(line_data(u), bs).value - u0) < 1e-10);
      }
    }
  }
  // With t = 0 the bracket is identically 1 and the integral vanishes.
  const auto u = figure1();
  const auto bs = branches(u, 0.0, 1.5, SignMode::focusing);
  CHECK(std::abs(phase_integral(line_data(u), bs) - std::arg(eval(u, 1.5))) < 1e-12);
}

TEST_CASE("sample invariants") {
  const auto s = ZDSample::make(1.0, 2.0, cplx(-3.0, -0.0), 0, Route::rational);
  CHECK(s.modulus == 3.0);
  CHECK(s.phase > 0);
  CHECK(std::abs(s.phase - pi) < 1e-15);
  CHECK(parse_route("branch") == Route::branch_phase);
  CHECK(parse_route("operator") == Route::resolvent);
  CHECK(std::string(to_string(Route::determinant)) == "determinant");
  CHECK_THROWS_AS(parse_route("fastest"), Error);
}

TEST_CASE("route equivalence, max principle and modulus bound on fields") {
  const auto xs = linspace(-10, 10, 201);
  for (const auto& u : test_data()) {
    const double linf = linf_norm(u);
    for (SignMode s : {SignMode::focusing, SignMode::defocusing}) {
      for (double t : {0.25, 2.0, -2.0}) {
        const auto fr = zd_field(u, t, xs, s, Route::rational);
        const auto fd = zd_field(u, t, xs, s, Route::determinant);
        const auto fb = zd_field(u, t, xs, s, Route::branch_phase);
        CHECK(fr.valid_count() >= 190);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const auto& a = fr.points[i];
          CHECK_FALSE(a.hard_error);
          if (!a.sample) continue;
          REQUIRE(fd.points[i].sample);
          REQUIRE(fb.points[i].sample);
          CHECK(std::abs(a.sample->value - fd.points[i].sample->value) <= 1e-8);
          CHECK(std::abs(a.sample->value - fb.points[i].sample->value) <= 1e-6);
          CHECK(a.sample->modulus <= linf + 1e-9);
          const auto bs = branches(u, t, xs[i], s);
          const double end_max =
              std::max(std::abs(eval(u, bs.real_roots.front())), std::abs(eval(u, bs.real_roots.back())));
          CHECK(a.sample->modulus <= end_max + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("field bookkeeping") {
  const auto u = figure1();
  const auto xs = linspace(-10, 10, 201);
  const auto f = zd_field(u, 2.0, xs, SignMode::focusing, Route::rational);
  CHECK(f.points.size() == 201);
  CHECK(f.valid_count() >= 199);
  const auto f0 = zd_field(u, 0.0, xs, SignMode::focusing, Route::rational);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(f0.points[i].sample->value - eval(u, xs[i])) < 1e-14);

  // A grid point on a critical value is excluded, or nudged when asked.
  const auto cv = critical_values(u, 2.0, SignMode::focusing, default_window(u));
  const std::vector<double> at{cv[0]};
  const auto ex = zd_field(u, 2.0, at, SignMode::focusing, Route::rational);
  CHECK_FALSE(ex.points[0].sample);
  CHECK(ex.points[0].excluded_reason == "near_critical");
  REQUIRE(ex.points[0].critical_value);
  CHECK(*ex.points[0].critical_value == cv[0]);
  QuadConfig nudge;
  nudge.nudge = true;
  const auto nu = zd_field(u, 2.0, at, SignMode::focusing, Route::rational, nudge);
  REQUIRE(nu.points[0].sample);
  CHECK(nu.points[0].sample->x == doctest::Approx(cv[0] + 1e-6).epsilon(1e-12));

  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(zd_field(u, 2.0, unsorted, SignMode::focusing, Route::rational), Error);
}

TEST_CASE("L2 bound on a wide grid") {
  const auto xs = linspace(-400, 400, 16001);
  const double dx = xs[1] - xs[0];
  for (const auto& u : test_data()) {
    const auto f = zd_field(u, 2.0, xs, SignMode::focusing, Route::rational);
    double sum = 0.0;
    for (const auto& p : f.points)
      if (p.sample) sum += dx * p.sample->modulus * p.sample->modulus;
    CHECK(std::sqrt(sum) <= std::sqrt(l2_norm_sq(u)) + 1e-3);
  }
}

TEST_CASE("Burgers residual before the shock") {
  const auto u = figure1();
  const auto xs = linspace(-4, 4, 81);
  const auto r1 = burgers_residual(u, SignMode::focusing, 0.25, xs, 1e-3, 1e-3);
  const auto r2 = burgers_residual(u, SignMode::focusing, 0.25, xs, 5e-4, 5e-4);
  CHECK(r1.max_abs <= 1e-4);
  CHECK(r1.max_abs / r2.max_abs == doctest::Approx(4.0).epsilon(0.15));

  const auto tiny = make_rational(ComplexPolynomial{1e-6}, {cplx(0, -1)});
  CHECK(burgers_residual(tiny, SignMode::focusing, 0.25, xs, 1e-3, 1e-3).max_abs <= 1e-10);

  try {
    burgers_residual(u, SignMode::focusing, 0.77, xs, 1e-3, 1e-3);
    FAIL("expected StencilCrossesShock");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StencilCrossesShock);
  }
}

TEST_CASE("zd_point throws on degenerate points") {
  const auto u = figure1();
  const auto cv = critical_values(u, 2.0, SignMode::focusing, default_window(u));
  CHECK_THROWS_AS(zd_point(u, 2.0, cv[1], SignMode::focusing, Route::rational), Error);
  CHECK(std::abs(zd_point(u, 2.0, -3.0, SignMode::focusing, Route::determinant).value + 0.5) < 1e-9);
}
