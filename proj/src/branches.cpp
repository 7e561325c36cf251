#include "zdcm/branches.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "zdcm/error.hpp"
#include "zdcm/roots.hpp"

namespace zdcm {
namespace {

constexpr double kRootGap = 1e-6;
constexpr double kFlatSlope = 1e-6;

void finish(BranchSet& bs) {
  bs.ell = static_cast<int>(bs.real_roots.size() / 2);
  if (bs.real_roots.size() % 2 == 0) bs.degenerate = true;
  for (std::size_t k = 1; k < bs.real_roots.size(); ++k)
    if (bs.real_roots[k] - bs.real_roots[k - 1] < kRootGap) bs.degenerate = true;
  for (double g : bs.gamma_prime)
    if (std::abs(g) < kFlatSlope) bs.degenerate = true;
}

// Real zero of f in [a, b] given a sign change.
double bracket_solve(const RealFunction& f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  boost::uintmax_t iters = 200;
  auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-14 * std::max(1.0, std::abs(lo)); };
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

Window default_window(const RationalHardyFunction& u) {
  double m = 0.0;
  for (const cplx& p : u.pole_params()) m = std::max(m, std::abs(p));
  const double w = std::max(50.0, 10.0 * m);
  return {-w, w};
}

ComplexPolynomial branch_polynomial(const RationalHardyFunction& u, double t, double x, SignMode sign) {
  const ComplexPolynomial qq = u.denominator() * u.denominator().conj_coeffs();
  const ComplexPolynomial pp = u.numerator() * u.numerator().conj_coeffs();
  ComplexPolynomial b = ComplexPolynomial::linear_root(x) * qq - pp * cplx(pm(sign) * 2.0 * t);
  return b.realified(1e-12);
}

BranchSet classify(std::span<const cplx> roots, double t, double x, const RationalHardyFunction& u, SignMode sign,
                   double tol_im) {
  BranchSet bs;
  bs.t = t;
  bs.x = x;
  bs.sign = sign;
  std::vector<cplx> complex_roots;
  for (const cplx& r : roots) {
    if (std::abs(r.imag()) <= tol_im * (1.0 + std::abs(r)))
      bs.real_roots.push_back(r.real());
    else
      complex_roots.push_back(r);
  }
  std::vector<bool> used(complex_roots.size(), false);
  for (std::size_t i = 0; i < complex_roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const cplx r = complex_roots[i];
    std::size_t best = complex_roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < complex_roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(complex_roots[j] - std::conj(r));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == complex_roots.size() || best_dist > 1e-6 * (1.0 + std::abs(r)))
      throw Error(ErrorCode::UnpairedComplexRoot, "root (" + std::to_string(r.real()) + "," +
                                                      std::to_string(r.imag()) + ") has no conjugate partner");
    used[best] = true;
    const cplx avg = 0.5 * (r + std::conj(complex_roots[best]));
    bs.upper_roots.push_back(avg.imag() > 0.0 ? avg : std::conj(avg));
  }
  std::sort(bs.real_roots.begin(), bs.real_roots.end());
  std::sort(bs.upper_roots.begin(), bs.upper_roots.end(),
            [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });

  const PolynomialRatio v0 = modulus_squared_extension(u);
  for (double y : bs.real_roots) bs.gamma_prime.push_back(1.0 - pm(sign) * 2.0 * t * v0.derivative(y).real());
  finish(bs);
  return bs;
}

BranchSet branches(const RationalHardyFunction& u, double t, double x, SignMode sign) {
  const ComplexPolynomial b = branch_polynomial(u, t, x, sign);
  const std::vector<cplx> roots = polynomial_roots(b);
  return classify(roots, t, x, u, sign);
}

BranchSet scan_roots_general(const RealFunction& v0, const RealFunction& dv0, double t, double x, SignMode sign,
                             Window window, int n_scan) {
  if (n_scan < 1 || !(window.hi > window.lo)) throw Error(ErrorCode::InvalidArgument, "bad scan window");
  const double s = pm(sign) * 2.0 * t;
  const RealFunction g = [&](double y) { return y - s * v0(y) - x; };
  const double g_lo = g(window.lo);
  const double g_hi = g(window.hi);
  if (!(g_lo < 0.0) || !(g_hi > 0.0))
    throw Error(ErrorCode::WindowTooNarrow, "gamma_t - x does not change sign across [" +
                                                std::to_string(window.lo) + ", " + std::to_string(window.hi) + "]");
  BranchSet bs;
  bs.t = t;
  bs.x = x;
  bs.sign = sign;
  const double h = (window.hi - window.lo) / n_scan;
  double a = window.lo, ga = g_lo;
  for (int i = 1; i <= n_scan; ++i) {
    const double b = i == n_scan ? window.hi : window.lo + i * h;
    const double gb = g(b);
    if (gb == 0.0 && i < n_scan) {
      bs.real_roots.push_back(b);
      // A zero panel end never forms a sign change with its neighbour.
      a = b;
      ga = 0.0;
      continue;
    }
    if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) bs.real_roots.push_back(bracket_solve(g, a, b, ga, gb));
    a = b;
    ga = gb;
  }
  if (bs.real_roots.size() % 2 == 0)
    throw Error(ErrorCode::EvenRootCount, std::to_string(bs.real_roots.size()) + " roots found; raise n_scan");
  for (double y : bs.real_roots) bs.gamma_prime.push_back(1.0 - s * dv0(y));
  finish(bs);
  return bs;
}

double shock_time(const RationalHardyFunction& u, SignMode sign, Window window, int n_scan) {
  if (u.numerator().is_zero()) return std::numeric_limits<double>::infinity();
  const PolynomialRatio v0 = modulus_squared_extension(u);
  auto rate = [&](double y) { return pm(sign) * 2.0 * v0.derivative(y).real(); };
  const double h = (window.hi - window.lo) / n_scan;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n_scan; ++i) {
    const double r = rate(window.lo + i * h);
    if (r > best_val) {
      best_val = r;
      best = i;
    }
  }
  const double lo = std::max(window.lo, window.lo + (best - 1) * h);
  const double hi = std::min(window.hi, window.lo + (best + 1) * h);
  auto refined = boost::math::tools::brent_find_minima([&](double y) { return -rate(y); }, lo, hi, 52);
  const double sup = std::max(best_val, -refined.second);
  if (!(sup > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / sup;
}

std::vector<double> critical_values(const RationalHardyFunction& u, double t, SignMode sign, Window window) {
  std::vector<double> out;
  if (t == 0.0 || u.numerator().is_zero()) return out;
  const PolynomialRatio v0 = modulus_squared_extension(u);
  const ComplexPolynomial wr = v0.num.derivative() * v0.den - v0.num * v0.den.derivative();
  const ComplexPolynomial numer = (v0.den * v0.den - wr * cplx(pm(sign) * 2.0 * t)).realified(1e-12);
  for (const cplx& r : polynomial_roots(numer)) {
    if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real()))) continue;
    const double y = r.real();
    if (y < window.lo || y > window.hi) continue;
    out.push_back(y - pm(sign) * 2.0 * t * v0(y).real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> critical_values_general(const RealFunction& v0, const RealFunction& dv0, double t,
                                            SignMode sign, Window window, int n_scan) {
  std::vector<double> out;
  if (t == 0.0) return out;
  const double s = pm(sign) * 2.0 * t;
  const RealFunction gp = [&](double y) { return 1.0 - s * dv0(y); };
  const double h = (window.hi - window.lo) / n_scan;
  double a = window.lo, ga = gp(a);
  for (int i = 1; i <= n_scan; ++i) {
    const double b = window.lo + i * h;
    const double gb = gp(b);
    if ((ga < 0.0 && gb >= 0.0) || (ga > 0.0 && gb <= 0.0)) {
      const double y = bracket_solve(gp, a, b, ga, gb);
      out.push_back(y - s * v0(y));
    }
    a = b;
    ga = gb;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> burgers_branches(const BranchSet& bs, const RationalHardyFunction& u) {
  if (bs.degenerate) throw Error(ErrorCode::DegenerateBranchSet, "burgers_branches at a degenerate point");
  const PolynomialRatio v0 = modulus_squared_extension(u);
  std::vector<double> out;
  for (double y : bs.real_roots) out.push_back(v0(y).real());
  return out;
}

}  // namespace zdcm
