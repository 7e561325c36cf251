#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "zdcm/error.hpp"
#include "zdcm/polynomial.hpp"
#include "zdcm/roots.hpp"

using namespace zdcm;

namespace {

std::vector<cplx> sorted_by_re(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  return v;
}

}  // namespace

TEST_CASE("polynomial construction trims and evaluates") {
  ComplexPolynomial p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  CHECK(p(3.0) == cplx(7.0));
  CHECK(ComplexPolynomial{}.is_zero());
  CHECK(ComplexPolynomial{0.0}.degree() == -1);

  const ComplexPolynomial q = ComplexPolynomial{1.0, 1.0} * ComplexPolynomial{-1.0, 1.0};
  CHECK(q == ComplexPolynomial{-1.0, 0.0, 1.0});
  CHECK(q.derivative() == ComplexPolynomial{0.0, 2.0});
}

TEST_CASE("conj_coeffs reflects through the real axis") {
  const ComplexPolynomial p{cplx(1, 2), cplx(0, -3), cplx(4, 1)};
  const cplx z(0.7, -1.3);
  CHECK(std::abs(p.conj_coeffs()(z) - std::conj(p(std::conj(z)))) < 1e-14);
}

TEST_CASE("from_roots gives a monic polynomial vanishing at the roots") {
  const std::vector<cplx> r{cplx(1, 1), cplx(-2, 0), cplx(0.5, -3)};
  const ComplexPolynomial p = ComplexPolynomial::from_roots(r);
  CHECK(p.degree() == 3);
  CHECK(p.leading() == cplx(1.0));
  for (cplx z : r) CHECK(std::abs(p(z)) < 1e-13);
}

TEST_CASE("roots of the factored cubic") {
  // y^3 + 3y^2 + y - 1 = (y + 1)(y^2 + 2y - 1)
  auto r = sorted_by_re(polynomial_roots(ComplexPolynomial{-1.0, 1.0, 3.0, 1.0}));
  REQUIRE(r.size() == 3);
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(r[0] - cplx(-1.0 - s2)) < 1e-13);
  CHECK(std::abs(r[1] - cplx(-1.0)) < 1e-13);
  CHECK(std::abs(r[2] - cplx(-1.0 + s2)) < 1e-13);
}

TEST_CASE("roots of small polynomials") {
  auto lin = polynomial_roots(ComplexPolynomial{-2.0, 1.0});
  REQUIRE(lin.size() == 1);
  CHECK(std::abs(lin[0] - 2.0) < 1e-15);

  auto quad = sorted_by_re(polynomial_roots(ComplexPolynomial{1.0, 0.0, 1.0}));
  REQUIRE(quad.size() == 2);
  CHECK(std::abs(quad[0] - cplx(0, -1)) < 1e-14);
  CHECK(std::abs(quad[1] - cplx(0, 1)) < 1e-14);

  CHECK_THROWS_AS(polynomial_roots(ComplexPolynomial{3.0}), Error);
}

TEST_CASE("random polynomials: roots recovered and residual small") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 9;
    std::vector<cplx> r;
    for (int k = 0; k < n; ++k) r.emplace_back(3 * g(rng), 3 * g(rng));
    const ComplexPolynomial p = ComplexPolynomial::from_roots(r);
    const auto found = polynomial_roots(p);
    REQUIRE(found.size() == r.size());
    for (cplx z : found) CHECK(std::abs(p(z)) <= 1e-10 * p.norm_inf() * std::pow(1 + std::abs(z), n));
    for (cplx z : r) {
      double best = 1e300;
      for (cplx w : found) best = std::min(best, std::abs(z - w));
      CHECK(best < 1e-8 * (1 + std::abs(z)));
    }
  }
}
