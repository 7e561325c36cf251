#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zdcm/polynomial.hpp"

namespace zdcm {

/// Sign of the nonlinearity. Focusing takes the upper sign of every ± / ∓
/// in the equations, defocusing the lower one.
enum class SignMode { focusing, defocusing };

/// +1 for focusing, -1 for defocusing: the value of the upper/lower "±".
constexpr double pm(SignMode s) { return s == SignMode::focusing ? 1.0 : -1.0; }

const char* to_string(SignMode s);
SignMode parse_sign(std::string_view text);

/// u0(y) = P(y) / Q(y) with Q(y) = prod_k (y + conj(p_k)) and Im p_k < 0, so
/// the poles -conj(p_k) lie in the lower half-plane and u0 is holomorphic in
/// the upper one. Immutable once built by make_rational().
class RationalHardyFunction {
 public:
  const ComplexPolynomial& numerator() const { return numerator_; }
  /// Q(y) = prod_k (y + conj(p_k)).
  const ComplexPolynomial& denominator() const { return denominator_; }
  const std::vector<cplx>& pole_params() const { return poles_; }
  /// c_k in u0(y) = sum_k c_k / (y + conj(p_k)).
  const std::vector<cplx>& residues() const { return residues_; }
  int order() const { return static_cast<int>(poles_.size()); }
  /// Pole location -conj(p_k) of u0 (in the lower half-plane).
  cplx pole(int k) const { return -std::conj(poles_[static_cast<std::size_t>(k)]); }

  /// Same as eval(*this, z).
  cplx operator()(cplx z) const;

 private:
  friend RationalHardyFunction make_rational(ComplexPolynomial numerator, std::vector<cplx> pole_params);
  ComplexPolynomial numerator_;
  ComplexPolynomial denominator_;
  std::vector<cplx> poles_;
  std::vector<cplx> residues_;
};

/// Validates the data and caches the partial-fraction residues.
/// Throws PoleInUpperHalfPlane, RepeatedPole or DegreeTooHigh.
RationalHardyFunction make_rational(ComplexPolynomial numerator, std::vector<cplx> pole_params);

/// P(z) / Q(z); throws EvalAtPole within 1e-12 of a pole.
cplx eval(const RationalHardyFunction& u, cplx z);

/// Partial-fraction form sum_k c_k / (z + conj(p_k)); test oracle for residues.
cplx eval_partial_fractions(const RationalHardyFunction& u, cplx z);

/// v0 = P Pbar / (Q Qbar), the holomorphic continuation of |u0|^2 off the real axis.
PolynomialRatio modulus_squared_extension(const RationalHardyFunction& u);

/// ||u0||^2 on the real line by residues in the upper half-plane:
/// 2 pi i sum_k conj(c_k) u0(-p_k).
double l2_norm_sq(const RationalHardyFunction& u);

/// sup_y |u0(y)| over the real line (critical points of |u0|^2).
double linf_norm(const RationalHardyFunction& u);

/// Fourier transform with the convention û(ξ) = ∫ u(x) e^{-iξx} dx, evaluated
/// for ξ >= 0 in closed form: -2πi sum_k c_k exp(iξ conj(p_k)). û vanishes for ξ < 0.
cplx fourier_halfline(const RationalHardyFunction& u, double xi);
std::vector<cplx> fourier_halfline(const RationalHardyFunction& u, std::span<const double> xi);

using LineFunction = std::function<cplx(double)>;

struct PvOptions {
  /// Truncation of the s-integral; chosen by doubling when absent.
  std::optional<double> truncation;
  /// Bound on |h(x+S)| + |h(x-S)| used as the tail estimate.
  double tail_tol = 1e-8;
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
};

/// Szegő projection of h at a real point via the principal-value form
/// h(x)/2 - (i/2π) ∫_0^S (h(x+s) - h(x-s))/s ds.
/// Throws TailNotNegligible if h is not small at distance S from x.
cplx szego_project_pv(const LineFunction& h, double x, const PvOptions& opts = {});

/// Uniform-grid tabulation of a complex function on [x0, x0 + (n-1) dx],
/// cubic B-spline interpolated inside and zero outside.
class TabulatedLineFunction {
 public:
  TabulatedLineFunction(double x0, double dx, std::span<const cplx> values);
  cplx operator()(double x) const;
  double x_min() const { return x0_; }
  double x_max() const { return x0_ + dx_ * static_cast<double>(n_ - 1); }

 private:
  struct Impl;
  double x0_, dx_;
  std::size_t n_;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace zdcm
