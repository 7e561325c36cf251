#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace zdcm {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients stored in ascending degree
/// order. Trailing zero coefficients are trimmed on construction so that the
/// leading coefficient is nonzero; the zero polynomial has no coefficients.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> coeffs);
  ComplexPolynomial(std::initializer_list<cplx> coeffs);

  /// Monic polynomial with the given roots.
  static ComplexPolynomial from_roots(std::span<const cplx> roots);
  static ComplexPolynomial constant(cplx c) { return ComplexPolynomial({c}); }
  /// y - a
  static ComplexPolynomial linear_root(cplx a) { return ComplexPolynomial({-a, 1.0}); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int n) const;
  cplx leading() const;

  cplx operator()(cplx z) const;

  ComplexPolynomial derivative() const;
  /// Polynomial with conjugated coefficients, so that conj(P(conj z)) = conj_coeffs(P)(z).
  ComplexPolynomial conj_coeffs() const;
  /// Drops imaginary parts that are below `tol` relative to the largest coefficient.
  ComplexPolynomial realified(double tol) const;
  double max_abs_imag_coeff() const;
  double norm_inf() const;

  ComplexPolynomial& operator+=(const ComplexPolynomial& rhs);
  ComplexPolynomial& operator-=(const ComplexPolynomial& rhs);
  ComplexPolynomial& operator*=(cplx s);

  friend ComplexPolynomial operator+(ComplexPolynomial a, const ComplexPolynomial& b) { return a += b; }
  friend ComplexPolynomial operator-(ComplexPolynomial a, const ComplexPolynomial& b) { return a -= b; }
  friend ComplexPolynomial operator*(ComplexPolynomial a, cplx s) { return a *= s; }
  friend ComplexPolynomial operator*(cplx s, ComplexPolynomial a) { return a *= s; }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Ratio of two polynomials; used for v0 = P Pbar / (Q Qbar) and its derivatives.
struct PolynomialRatio {
  ComplexPolynomial num;
  ComplexPolynomial den;

  cplx operator()(cplx z) const { return num(z) / den(z); }
  /// First derivative (N'D - ND') / D^2 at z.
  cplx derivative(cplx z) const;
};

}  // namespace zdcm
