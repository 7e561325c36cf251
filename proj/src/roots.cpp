#include "zdcm/roots.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "zdcm/error.hpp"

namespace zdcm {
namespace {

// Parlett–Reinsch diagonal similarity with powers of two; keeps the
// companion eigenproblem well conditioned when coefficients span many decades.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

cplx polish(const ComplexPolynomial& p, const ComplexPolynomial& dp, cplx r) {
  double res = std::abs(p(r));
  for (int it = 0; it < 60 && res > 0.0; ++it) {
    const cplx d = dp(r);
    if (d == cplx{0.0}) break;
    const cplx step = p(r) / d;
    const cplx next = r - step;
    const double next_res = std::abs(p(next));
    if (!(next_res < res)) break;
    r = next;
    res = next_res;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(r))) break;
  }
  return r;
}

}  // namespace

std::vector<cplx> polynomial_roots(const ComplexPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "polynomial_roots needs degree >= 1");
  const cplx lead = p.leading();
  if (n == 1) return {-p.coeff(0) / lead};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenSolverFailure, "companion eigensolver did not converge");

  const ComplexPolynomial dp = p.derivative();
  const Eigen::VectorXcd& raw = solver.eigenvalues();
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i) nearest = std::min(nearest, std::abs(raw(i) - raw(j)));
    const cplx polished = polish(p, dp, raw(i));
    // Newton may slide onto a neighbouring root of a tight cluster.
    roots[static_cast<std::size_t>(i)] = std::abs(polished - raw(i)) < 0.25 * nearest ? polished : raw(i);
  }
  return roots;
}

}  // namespace zdcm
