#include "zdcm/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zdcm/error.hpp"

namespace zdcm {

using std::numbers::pi;

cplx HalfLineOperator::xstar_weight(int offset) const {
  static constexpr double stencil[kBand] = {-3.0, 4.0, -1.0};
  return cplx(0.0, stencil[offset] / (2.0 * h_));
}

Eigen::MatrixXcd HalfLineOperator::xstar_dense() const {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m_, m_);
  for (int j = 0; j < m_; ++j)
    for (int o = 0; o < kBand && j + o < m_; ++o) a(j, j + o) = xstar_weight(o);
  return a;
}

Eigen::VectorXcd HalfLineOperator::apply_xstar(const Eigen::VectorXcd& f) const {
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m_);
  for (int j = 0; j < m_; ++j)
    for (int o = 0; o < kBand && j + o < m_; ++o) g(j) += xstar_weight(o) * f(j + o);
  return g;
}

HalfLineOperator build_halfline(const RationalHardyFunction& u, double xi_max, int m, const HalfLineOptions& opts) {
  if (m < 64) throw Error(ErrorCode::InvalidArgument, "half-line grid needs M >= 64");
  if (!(xi_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "half-line grid needs Xi > 0");
  HalfLineOperator op;
  op.m_ = m;
  op.xi_max_ = xi_max;
  op.h_ = xi_max / (m - 1);
  op.xi_.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) op.xi_[static_cast<std::size_t>(j)] = j * op.h_;
  op.xi_.back() = xi_max;

  const std::vector<cplx> hat = fourier_halfline(u, op.xi_);
  op.u0_hat_ = Eigen::Map<const Eigen::VectorXcd>(hat.data(), m);
  double peak = 0.0;
  for (const cplx& v : hat) peak = std::max(peak, std::abs(v));
  if (peak > 0.0 && std::abs(hat.back()) > 1e-8 * peak)
    throw Error(ErrorCode::GridTooCoarse,
                "|u0_hat(Xi)| = " + std::to_string(std::abs(hat.back())) + " has not decayed; enlarge Xi");

  op.absorber_.assign(static_cast<std::size_t>(m), 0.0);
  if (opts.absorber_strength > 0.0 && peak > 0.0) {
    int start = m - 1;
    while (start > 0 && std::abs(hat[static_cast<std::size_t>(start - 1)]) <= opts.absorber_tol * peak) --start;
    const double xi_s = op.xi_[static_cast<std::size_t>(start)];
    for (int j = start + 1; j < m; ++j) {
      const double r = (op.xi_[static_cast<std::size_t>(j)] - xi_s) / (xi_max - xi_s);
      op.absorber_[static_cast<std::size_t>(j)] = opts.absorber_strength * r * r;
    }
  }

  // Midpoint samples b_i, i = 1..M-1, and K_{j+1,k+1} = K_{j,k} + b_{j+1} conj(b_{k+1}).
  const double h = op.h_;
  std::vector<cplx> b(static_cast<std::size_t>(m), 0.0);
  for (int i = 1; i < m; ++i) b[static_cast<std::size_t>(i)] = std::sqrt(h) / (2.0 * pi) * fourier_halfline(u, (i - 0.5) * h);
  op.toeplitz_ = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd& k = op.toeplitz_;
  for (int j = 1; j < m; ++j) {
    for (int c = 1; c <= j; ++c) {
      k(j, c) = k(j - 1, c - 1) + b[static_cast<std::size_t>(j)] * std::conj(b[static_cast<std::size_t>(c)]);
      k(c, j) = std::conj(k(j, c));
    }
  }
  k *= h;

  if (opts.self_test && !u.numerator().is_zero()) {
    const cplx z(0.0, 1.0);
    const cplx got = resolvent_identity(op, op.u0_hat_, z);
    const cplx want = eval(u, z);
    const double err = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    if (err > 5e-2)
      throw Error(ErrorCode::GridTooCoarse, "resolvent identity at z=i off by " + std::to_string(err));
  }
  return op;
}

cplx extract_I_plus(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat) {
  const std::vector<double>& xi = op.xi();
  const double x0 = xi[0], x1 = xi[1], x2 = xi[2];
  // Lagrange weights at xi = 0.
  const double w0 = (0.0 - x1) * (0.0 - x2) / ((x0 - x1) * (x0 - x2));
  const double w1 = (0.0 - x0) * (0.0 - x2) / ((x1 - x0) * (x1 - x2));
  const double w2 = (0.0 - x0) * (0.0 - x1) / ((x2 - x0) * (x2 - x1));
  return w0 * f_hat(0) + w1 * f_hat(1) + w2 * f_hat(2);
}

Eigen::VectorXcd xstar_resolvent(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat, cplx z) {
  const int m = op.size();
  Eigen::VectorXcd g(m);
  const cplx diag = op.xstar_weight(0) - z;
  for (int j = m - 1; j >= 0; --j) {
    cplx rhs = f_hat(j);
    for (int o = 1; o < HalfLineOperator::kBand && j + o < m; ++o) rhs -= op.xstar_weight(o) * g(j + o);
    g(j) = rhs / diag;
  }
  return g;
}

cplx resolvent_identity(const HalfLineOperator& op, const Eigen::VectorXcd& f_hat, cplx z) {
  return extract_I_plus(op, xstar_resolvent(op, f_hat, z)) / cplx(0.0, 2.0 * pi);
}

namespace {

// (X* + 2t eps D -/+ 2t T - z)^{-1} u0_hat, read through I+.
cplx solve_at(const HalfLineOperator& op, double t, double eps, SignMode sign, cplx z) {
  const int m = op.size();
  Eigen::MatrixXcd a = op.toeplitz_prod() * cplx(-pm(sign) * 2.0 * t);
  for (int j = 0; j < m; ++j) {
    a(j, j) += 2.0 * t * eps * op.dispersion()[static_cast<std::size_t>(j)] - z -
               cplx(0.0, op.absorber()[static_cast<std::size_t>(j)]);
    for (int o = 0; o < HalfLineOperator::kBand && j + o < m; ++o) a(j, j + o) += op.xstar_weight(o);
  }
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw Error(ErrorCode::LinearSolveSingular,
                "rcond " + std::to_string(rcond) + " at z = " + std::to_string(z.real()) + "+" +
                    std::to_string(z.imag()) + "i; retry with a larger delta");
  const Eigen::VectorXcd f = lu.solve(op.u0_hat());
  return extract_I_plus(op, f) / cplx(0.0, 2.0 * pi);
}

cplx resolve(const HalfLineOperator& op, double t, double eps, double x, SignMode sign, const ResolveOptions& opts) {
  if (!(opts.delta >= 1e-3 && opts.delta <= 1e-1))
    throw Error(ErrorCode::InvalidArgument, "delta must lie in [1e-3, 1e-1]");
  const cplx v = solve_at(op, t, eps, sign, cplx(x, opts.delta));
  if (!opts.richardson) return v;
  const cplx v_half = solve_at(op, t, eps, sign, cplx(x, 0.5 * opts.delta));
  return 2.0 * v_half - v;
}

}  // namespace

ZDSample resolve_zd_operator(const HalfLineOperator& op, double t, double x, SignMode sign,
                             const ResolveOptions& opts) {
  return ZDSample::make(t, x, resolve(op, t, 0.0, x, sign, opts), std::nullopt, Route::resolvent);
}

cplx resolve_ueps_operator(const HalfLineOperator& op, double t, double eps, double x, SignMode sign,
                           const ResolveOptions& opts) {
  return resolve(op, t, eps, x, sign, opts);
}

ZDField zd_field_operator(const HalfLineOperator& op, double t, std::span<const double> xs, SignMode sign,
                          const ResolveOptions& opts) {
  ZDField field;
  field.t = t;
  field.xs.assign(xs.begin(), xs.end());
  for (double x : xs) {
    FieldPoint pt;
    pt.x = x;
    try {
      pt.sample = resolve_zd_operator(op, t, x, sign, opts);
    } catch (const Error& e) {
      pt.excluded_reason = std::string(to_string(e.code()));
      pt.hard_error = true;
    }
    field.points.push_back(std::move(pt));
  }
  return field;
}

ZDSample finite_rank_zd(const RationalHardyFunction& u, const BranchSet& bs) {
  if (bs.degenerate) throw Error(ErrorCode::DegenerateBranchSet, "finite_rank_zd at a degenerate point");
  if (bs.t == 0.0) return ZDSample::make(bs.t, bs.x, eval(u, bs.x), 0, Route::determinant);
  std::vector<cplx> ys;
  for (std::size_t k = 0; k < bs.real_roots.size(); k += 2) ys.emplace_back(bs.real_roots[k]);
  ys.insert(ys.end(), bs.upper_roots.begin(), bs.upper_roots.end());
  const int n = u.order();
  if (static_cast<int>(ys.size()) != n + 1)
    throw Error(ErrorCode::SingularSystem, std::to_string(ys.size()) + " rows for " + std::to_string(n + 1) + " unknowns");
  const double s = pm(bs.sign) * 2.0 * bs.t;
  Eigen::MatrixXcd a(n + 1, n + 1);
  Eigen::VectorXcd rhs(n + 1);
  for (int r = 0; r <= n; ++r) {
    const cplx y = ys[static_cast<std::size_t>(r)];
    const cplx uy = eval(u, y);
    rhs(r) = uy;
    a(r, 0) = 1.0;
    for (int j = 0; j < n; ++j) {
      const cplx gap = y + u.pole_params()[static_cast<std::size_t>(j)];
      if (std::abs(gap) < 1e-12) throw Error(ErrorCode::SingularSystem, "root coincides with -p_" + std::to_string(j));
      a(r, j + 1) = s * uy * std::conj(u.residues()[static_cast<std::size_t>(j)]) / gap;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) throw Error(ErrorCode::SingularSystem, "finite-rank system is singular");
  const Eigen::VectorXcd sol = lu.solve(rhs);
  // Labelled with the determinant route: both read the same Cramer system.
  return ZDSample::make(bs.t, bs.x, sol(0), bs.ell, Route::determinant);
}

}  // namespace zdcm
