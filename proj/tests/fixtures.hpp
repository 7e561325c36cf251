#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "zdcm/hardy.hpp"

namespace zdcm::testing {

inline RationalHardyFunction figure1() { return make_rational(ComplexPolynomial{1.0}, {cplx(0.0, -1.0)}); }

inline RationalHardyFunction two_pole() {
  return make_rational(ComplexPolynomial{cplx(0.3, 0.2), 0.5}, {cplx(0.0, -1.0), cplx(1.5, -0.7)});
}

inline RationalHardyFunction three_pole() {
  return make_rational(ComplexPolynomial{0.6, cplx(0.0, -0.2), 0.3},
                       {cplx(0.0, -0.8), cplx(-1.0, -1.2), cplx(2.0, -0.5)});
}

inline std::vector<RationalHardyFunction> test_data() { return {figure1(), two_pole(), three_pole()}; }

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

// Real-line integral by Boost's tanh-sinh rule on (-inf, inf); independent of the
// library's own Gauss-Kronrod code.
template <class F>
double line_integral(F f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double x) { return f(x); }, -std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity());
}

template <class F>
double interval_integral(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

}  // namespace zdcm::testing
