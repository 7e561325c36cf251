#include "zdcm/hardy.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "zdcm/error.hpp"
#include "zdcm/quadrature.hpp"
#include "zdcm/roots.hpp"

namespace zdcm {

using std::numbers::pi;

const char* to_string(SignMode s) { return s == SignMode::focusing ? "focusing" : "defocusing"; }

SignMode parse_sign(std::string_view text) {
  if (text == "focusing" || text == "+") return SignMode::focusing;
  if (text == "defocusing" || text == "-") return SignMode::defocusing;
  throw Error(ErrorCode::InvalidArgument, "unknown sign mode '" + std::string(text) + "'");
}

RationalHardyFunction make_rational(ComplexPolynomial numerator, std::vector<cplx> pole_params) {
  const int n = static_cast<int>(pole_params.size());
  for (const cplx& p : pole_params)
    if (!(p.imag() < 0.0))
      throw Error(ErrorCode::PoleInUpperHalfPlane,
                  "pole parameter p = (" + std::to_string(p.real()) + "," + std::to_string(p.imag()) +
                      ") needs Im p < 0");
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(pole_params[j] - pole_params[k]) < 1e-10)
        throw Error(ErrorCode::RepeatedPole, "pole parameters " + std::to_string(j) + " and " +
                                                 std::to_string(k) + " coincide");
  if (numerator.degree() > n - 1)
    throw Error(ErrorCode::DegreeTooHigh, "numerator degree " + std::to_string(numerator.degree()) +
                                              " exceeds N-1 = " + std::to_string(n - 1));

  RationalHardyFunction u;
  std::vector<cplx> locations(pole_params.size());
  std::transform(pole_params.begin(), pole_params.end(), locations.begin(),
                 [](cplx p) { return -std::conj(p); });
  u.denominator_ = ComplexPolynomial::from_roots(locations);
  u.numerator_ = std::move(numerator);
  u.residues_.resize(pole_params.size());
  for (int k = 0; k < n; ++k) {
    const cplx yk = locations[k];
    cplx denom = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != k) denom *= yk - locations[j];
    u.residues_[k] = u.numerator_(yk) / denom;
  }
  u.poles_ = std::move(pole_params);
  return u;
}

cplx RationalHardyFunction::operator()(cplx z) const { return eval(*this, z); }

cplx eval(const RationalHardyFunction& u, cplx z) {
  for (int k = 0; k < u.order(); ++k)
    if (std::abs(z - u.pole(k)) <= 1e-12 * (1.0 + std::abs(u.pole(k))))
      throw Error(ErrorCode::EvalAtPole, "evaluation at pole " + std::to_string(k));
  return u.numerator()(z) / u.denominator()(z);
}

cplx eval_partial_fractions(const RationalHardyFunction& u, cplx z) {
  cplx acc = 0.0;
  for (int k = 0; k < u.order(); ++k) acc += u.residues()[k] / (z - u.pole(k));
  return acc;
}

PolynomialRatio modulus_squared_extension(const RationalHardyFunction& u) {
  return {u.numerator() * u.numerator().conj_coeffs(), u.denominator() * u.denominator().conj_coeffs()};
}

double l2_norm_sq(const RationalHardyFunction& u) {
  cplx acc = 0.0;
  for (int k = 0; k < u.order(); ++k) acc += std::conj(u.residues()[k]) * eval(u, -u.pole_params()[k]);
  acc *= cplx(0.0, 2.0 * pi);
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
    throw Error(ErrorCode::ResidueFormulaInconsistent,
                "imaginary part " + std::to_string(acc.imag()) + " of the residue sum");
  return acc.real();
}

double linf_norm(const RationalHardyFunction& u) {
  if (u.numerator().is_zero()) return 0.0;
  const PolynomialRatio v0 = modulus_squared_extension(u);
  const ComplexPolynomial crit =
      v0.num.derivative() * v0.den - v0.num * v0.den.derivative();
  double best = 0.0;
  if (crit.degree() >= 1) {
    for (const cplx& r : polynomial_roots(crit)) {
      if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r.real()))) continue;
      best = std::max(best, std::abs(v0(r.real())));
    }
  }
  return std::sqrt(best);
}

cplx fourier_halfline(const RationalHardyFunction& u, double xi) {
  if (xi < 0.0) throw Error(ErrorCode::InvalidArgument, "fourier_halfline needs xi >= 0");
  cplx acc = 0.0;
  for (int k = 0; k < u.order(); ++k)
    acc += u.residues()[k] * std::exp(cplx(0.0, xi) * std::conj(u.pole_params()[k]));
  return cplx(0.0, -2.0 * pi) * acc;
}

std::vector<cplx> fourier_halfline(const RationalHardyFunction& u, std::span<const double> xi) {
  std::vector<cplx> out(xi.size());
  std::transform(xi.begin(), xi.end(), out.begin(), [&](double x) { return fourier_halfline(u, x); });
  return out;
}

cplx szego_project_pv(const LineFunction& h, double x, const PvOptions& opts) {
  auto tail = [&](double s) { return std::abs(h(x + s)) + std::abs(h(x - s)); };
  double span;
  if (opts.truncation) {
    span = *opts.truncation;
    if (!(span > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation must be positive");
    if (tail(span) > opts.tail_tol)
      throw Error(ErrorCode::TailNotNegligible, "|h| at distance " + std::to_string(span) + " is " +
                                                    std::to_string(tail(span)));
  } else {
    span = 64.0;
    while (tail(span) > opts.tail_tol) {
      span *= 2.0;
      if (span > 1e12) throw Error(ErrorCode::TailNotNegligible, "h does not decay within 1e12");
    }
  }

  constexpr double s_min = 1e-6;
  auto integrand = [&](double s) {
    s = std::max(s, s_min);
    return (h(x + s) - h(x - s)) / s;
  };

  std::vector<double> breaks{0.0};
  for (double b = 1.0; b < span; b *= 2.0) breaks.push_back(b);
  breaks.push_back(span);
  const double panel_tol = opts.abs_tol / static_cast<double>(breaks.size());
  cplx integral = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto r = quad::integrate<cplx>(integrand, breaks[i], breaks[i + 1], panel_tol, opts.rel_tol);
    integral += r.value;
  }
  return 0.5 * h(x) - cplx(0.0, 1.0 / (2.0 * pi)) * integral;
}

struct TabulatedLineFunction::Impl {
  boost::math::interpolators::cardinal_cubic_b_spline<double> re, im;
};

TabulatedLineFunction::TabulatedLineFunction(double x0, double dx, std::span<const cplx> values)
    : x0_(x0), dx_(dx), n_(values.size()) {
  if (values.size() < 4 || !(dx > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tabulation needs >= 4 samples and dx > 0");
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  impl_ = std::make_shared<const Impl>(Impl{{re.begin(), re.end(), x0, dx}, {im.begin(), im.end(), x0, dx}});
}

cplx TabulatedLineFunction::operator()(double x) const {
  if (x < x_min() || x > x_max()) return 0.0;
  return {impl_->re(x), impl_->im(x)};
}

}  // namespace zdcm
