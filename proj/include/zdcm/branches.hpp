#pragma once

#include <functional>
#include <span>
#include <vector>

#include "zdcm/hardy.hpp"
#include "zdcm/polynomial.hpp"

namespace zdcm {

/// Roots of the characteristic equation y -/+ 2t v0(y) = x at one (t, x).
/// With gamma_t(y) = y -/+ 2t v0(y), the real roots y_0 < ... < y_{2l} alternate
/// between increasing (even index) and decreasing (odd index) crossings.
struct BranchSet {
  double t = 0.0;
  double x = 0.0;
  SignMode sign = SignMode::focusing;
  std::vector<double> real_roots;
  /// One member (Im > 0) of each non-real conjugate pair.
  std::vector<cplx> upper_roots;
  int ell = 0;
  bool degenerate = false;
  /// gamma_t'(y_k) at each real root.
  std::vector<double> gamma_prime;
};

struct Window {
  double lo;
  double hi;
};

/// [-max(50, 10 max|p_k|), +max(50, 10 max|p_k|)].
Window default_window(const RationalHardyFunction& u);
inline constexpr int kDefaultScanPanels = 20000;

/// (y - x) Q Qbar -/+ 2t P Pbar: monic, degree 2N+1, imaginary parts dropped.
ComplexPolynomial branch_polynomial(const RationalHardyFunction& u, double t, double x, SignMode sign);

/// Snaps near-real roots (|Im| <= tol_im (1+|y|)) to the axis, pairs the rest
/// by conjugation and evaluates gamma_t' at the real ones.
BranchSet classify(std::span<const cplx> roots, double t, double x, const RationalHardyFunction& u, SignMode sign,
                   double tol_im = 1e-8);

/// classify(polynomial_roots(branch_polynomial(...))).
BranchSet branches(const RationalHardyFunction& u, double t, double x, SignMode sign);

using RealFunction = std::function<double(double)>;

/// Real roots of y -/+ 2t v0(y) = x for general decaying v0 by sign-change
/// bracketing on n_scan panels of the window and a bracketing solver.
BranchSet scan_roots_general(const RealFunction& v0, const RealFunction& dv0, double t, double x, SignMode sign,
                             Window window, int n_scan = kDefaultScanPanels);

/// First time gamma_t' vanishes: 1 / sup(+/- 2 v0'); +inf when that sup is <= 0.
double shock_time(const RationalHardyFunction& u, SignMode sign, Window window, int n_scan = kDefaultScanPanels);

/// gamma_t(y*) for the real zeros y* of gamma_t' inside the window, ascending.
/// Rational data: zeros of the numerator D^2 -/+ 2t (N'D - N D') of gamma_t'.
std::vector<double> critical_values(const RationalHardyFunction& u, double t, SignMode sign, Window window);

/// Same for general data, by bracketing sign changes of gamma_t' on n_scan panels.
std::vector<double> critical_values_general(const RealFunction& v0, const RealFunction& dv0, double t,
                                            SignMode sign, Window window, int n_scan = kDefaultScanPanels);

/// v0(y_k) at every real root: the values of the multivalued Burgers solution.
std::vector<double> burgers_branches(const BranchSet& bs, const RationalHardyFunction& u);

}  // namespace zdcm
