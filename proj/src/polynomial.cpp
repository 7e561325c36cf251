#include "zdcm/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace zdcm {

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPolynomial::ComplexPolynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

void ComplexPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{0.0, 0.0}) coeffs_.pop_back();
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) {
      next[n + 1] += c[n];
      next[n] -= r * c[n];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

cplx ComplexPolynomial::coeff(int n) const {
  if (n < 0 || n >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(n)];
}

cplx ComplexPolynomial::leading() const { return coeffs_.empty() ? cplx{0.0} : coeffs_.back(); }

cplx ComplexPolynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs_[n];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::conj_coeffs() const {
  std::vector<cplx> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](cplx a) { return std::conj(a); });
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::realified(double tol) const {
  const double scale = norm_inf();
  std::vector<cplx> c(coeffs_);
  for (cplx& a : c)
    if (std::abs(a.imag()) <= tol * scale) a = a.real();
  return ComplexPolynomial(std::move(c));
}

double ComplexPolynomial::max_abs_imag_coeff() const {
  double m = 0.0;
  for (const cplx& a : coeffs_) m = std::max(m, std::abs(a.imag()));
  return m;
}

double ComplexPolynomial::norm_inf() const {
  double m = 0.0;
  for (const cplx& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

ComplexPolynomial& ComplexPolynomial::operator+=(const ComplexPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t n = 0; n < rhs.coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator-=(const ComplexPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t n = 0; n < rhs.coeffs_.size(); ++n) coeffs_[n] -= rhs.coeffs_[n];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator*=(cplx s) {
  for (cplx& a : coeffs_) a *= s;
  trim();
  return *this;
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPolynomial(std::move(c));
}

cplx PolynomialRatio::derivative(cplx z) const {
  const cplx d = den(z);
  return (num.derivative()(z) * d - num(z) * den.derivative()(z)) / (d * d);
}

}  // namespace zdcm
