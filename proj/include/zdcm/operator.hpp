#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "zdcm/branches.hpp"
#include "zdcm/hardy.hpp"
#include "zdcm/zdl.hpp"

namespace zdcm {

/// Fourier half-line discretization on xi_j = j h, j = 0..M-1, h = Xi/(M-1).
///
/// X* acts on the Fourier side as i d/dxi; it is stored through its banded
/// stencil, a second-order forward difference with zero ghosts past Xi, so
/// that resolvents integrate from large xi toward xi = 0. The Toeplitz
/// product is h K with K = B B^*, where B is the lower-triangular Toeplitz
/// matrix of midpoint samples (sqrt(h)/2pi) u0_hat((i - 1/2) h).
///
/// Past the point where u0_hat is negligible, the coupled systems solved by
/// the resolvent routes carry a weak absorbing term -i sigma(xi) on the
/// diagonal. For l >= 1 the solution contains modes that leave toward large
/// xi and decay only like exp(-delta xi / |gamma_t'|); a hard cut at Xi would
/// reflect them back to xi = 0. The bare X* resolvent does not use it.
struct HalfLineOptions {
  /// Peak of the quadratic absorbing ramp; 0 disables it.
  double absorber_strength = 1.0;
  /// The ramp starts where |u0_hat| first stays below this fraction of its peak.
  double absorber_tol = 1e-6;
  /// Run the resolvent-identity self-test at z = i.
  bool self_test = true;
};

class HalfLineOperator {
 public:
  int size() const { return m_; }
  double xi_max() const { return xi_max_; }
  double step() const { return h_; }
  const std::vector<double>& xi() const { return xi_; }
  const Eigen::MatrixXcd& toeplitz_prod() const { return toeplitz_; }
  const Eigen::VectorXcd& u0_hat() const { return u0_hat_; }
  /// Diagonal of the dispersion multiplier D (= xi_j).
  const std::vector<double>& dispersion() const { return xi_; }
  /// sigma(xi_j) of the absorbing layer (zero outside it).
  const std::vector<double>& absorber() const { return absorber_; }

  /// Stencil weights of X* on row j at columns j, j+1, j+2.
  static constexpr int kBand = 3;
  cplx xstar_weight(int offset) const;
  Eigen::MatrixXcd xstar_dense() const;
  Eigen::VectorXcd apply_xstar(const Eigen::VectorXcd& f) const;

 private:
  friend HalfLineOperator build_halfline(const RationalHardyFunction& u, double xi_max, int m,
                                         const HalfLineOptions& opts);
  int m_ = 0;
  double xi_max_ = 0.0;
  double h_ = 0.0;
  std::vector<double> xi_;
  std::vector<double> absorber_;
  Eigen::MatrixXcd toeplitz_;
  Eigen::VectorXcd u0_hat_;
};

/// Throws GridTooCoarse when u0_hat has not decayed to 1e-8 of its peak by
/// Xi, or when the resolvent identity at z = i misses u0(i) by more than 5e-2.
HalfLineOperator build_halfline(const RationalHardyFunction& u, double xi_max, int m,
                                const HalfLineOptions& opts = {});

/// Quadratic extrapolation of f_hat through the first three nodes to xi = 0+.
cplx extract_I_plus(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat);

/// (X* - z)^{-1} f_hat by back substitution (the stencil is upper triangular).
Eigen::VectorXcd xstar_resolvent(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat, cplx z);

/// (1/2pi i) I+((X* - z)^{-1} f_hat): reproduces f(z) for f in the Hardy space.
cplx resolvent_identity(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat, cplx z);

struct ResolveOptions {
  double delta = 0.05;
  /// Combine the solves at delta and delta/2 as 2 v(delta/2) - v(delta).
  bool richardson = true;
};

/// (1/2pi i) I+[(X* -/+ 2t T - z)^{-1} u0_hat] at z = x + i delta, dense LU.
ZDSample resolve_zd_operator(const HalfLineOperator& op, double t, double x, SignMode sign,
                             const ResolveOptions& opts = {});

/// Same with X* replaced by X* + 2 t eps D: an estimate of u^eps(t, x).
cplx resolve_ueps_operator(const HalfLineOperator& op, double t, double eps, double x, SignMode sign,
                           const ResolveOptions& opts = {});

/// Resolvent route over a grid; failures are recorded per point.
ZDField zd_field_operator(const HalfLineOperator& op, double t, std::span<const double> xs, SignMode sign,
                          const ResolveOptions& opts = {});

/// Exact finite-rank form: solve for (ZD, f(-p_0), ..., f(-p_{N-1})) from
/// ZD + (+/-2t) sum_j u0(Y) conj(c_j) f_j / (Y + p_j) = u0(Y) on the N+1
/// points Y = {even-index real roots} + {upper roots}.
ZDSample finite_rank_zd(const RationalHardyFunction& u, const BranchSet& bs);

}  // namespace zdcm
