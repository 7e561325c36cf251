#include "zdcm/zdl.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zdcm/error.hpp"
#include "zdcm/quadrature.hpp"

namespace zdcm {

using std::numbers::pi;

const char* to_string(Route r) {
  switch (r) {
    case Route::rational: return "rational";
    case Route::determinant: return "determinant";
    case Route::branch_phase: return "branch";
    case Route::resolvent: return "operator";
  }
  return "?";
}

Route parse_route(std::string_view text) {
  if (text == "rational") return Route::rational;
  if (text == "determinant") return Route::determinant;
  if (text == "branch" || text == "branch_phase") return Route::branch_phase;
  if (text == "operator") return Route::resolvent;
  throw Error(ErrorCode::InvalidArgument, "unknown route '" + std::string(text) + "'");
}

ZDSample ZDSample::make(double t, double x, cplx value, std::optional<int> ell, Route route) {
  ZDSample s;
  s.t = t;
  s.x = x;
  s.value = value;
  s.modulus = std::abs(value);
  s.phase = std::arg(value);
  if (s.phase <= -pi) s.phase += 2.0 * pi;
  s.ell = ell;
  s.route = route;
  return s;
}

std::size_t ZDField::valid_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const FieldPoint& p) {
    return p.sample.has_value();
  }));
}

LineData line_data(const RationalHardyFunction& u) {
  return {[u](double y) { return std::norm(eval(u, y)); }, [u](double y) { return std::arg(eval(u, y)); }};
}

namespace {

void require_regular(const BranchSet& bs) {
  if (bs.degenerate)
    throw Error(ErrorCode::DegenerateBranchSet,
                "degenerate branch set at t=" + std::to_string(bs.t) + ", x=" + std::to_string(bs.x));
}

std::vector<cplx> even_points(const BranchSet& bs) {
  std::vector<cplx> ys;
  for (std::size_t k = 0; k < bs.real_roots.size(); k += 2) ys.emplace_back(bs.real_roots[k]);
  ys.insert(ys.end(), bs.upper_roots.begin(), bs.upper_roots.end());
  return ys;
}

}  // namespace

ZDSample zd_rational(const RationalHardyFunction& u, const BranchSet& bs) {
  require_regular(bs);
  const double x = bs.x;
  cplx denom = 1.0;
  for (std::size_t k = 1; k < bs.real_roots.size(); k += 2) denom *= x - bs.real_roots[k];
  for (const cplx& w : bs.upper_roots) denom *= x - std::conj(w);
  return ZDSample::make(bs.t, x, u.numerator()(x) / denom, bs.ell, Route::rational);
}

ZDSample zd_determinant(const RationalHardyFunction& u, const BranchSet& bs) {
  require_regular(bs);
  if (bs.t == 0.0) return ZDSample::make(bs.t, bs.x, eval(u, bs.x), 0, Route::determinant);
  const std::vector<cplx> ys = even_points(bs);
  const int n = u.order();
  if (static_cast<int>(ys.size()) != n + 1)
    throw Error(ErrorCode::SingularDenominatorDeterminant,
                std::to_string(ys.size()) + " even-index roots for order " + std::to_string(n));
  Eigen::MatrixXcd num(n + 1, n + 1), den(n + 1, n + 1);
  cplx prod = 1.0;
  for (int r = 0; r <= n; ++r) {
    const cplx y = ys[static_cast<std::size_t>(r)];
    const cplx uy = eval(u, y);
    prod *= uy;
    num(r, 0) = 1.0;
    den(r, 0) = 1.0;
    for (int j = 0; j < n; ++j) {
      const cplx gap = y + u.pole_params()[static_cast<std::size_t>(j)];
      if (std::abs(gap) < 1e-12)
        throw Error(ErrorCode::SingularDenominatorDeterminant, "root coincides with -p_" + std::to_string(j));
      num(r, j + 1) = 1.0 / gap;
      den(r, j + 1) = uy / gap;
    }
  }
  // Rows share a common scale in both matrices, so equilibrating them leaves the ratio unchanged.
  for (int r = 0; r <= n; ++r) {
    const double s = std::max(num.row(r).cwiseAbs().maxCoeff(), den.row(r).cwiseAbs().maxCoeff());
    num.row(r) /= s;
    den.row(r) /= s;
  }
  const cplx det_den = den.partialPivLu().determinant();
  const cplx det_num = num.partialPivLu().determinant();
  double scale = 1.0;
  for (int r = 0; r <= n; ++r) scale *= den.row(r).norm();
  if (!(std::abs(det_den) > 1e-14 * scale))
    throw Error(ErrorCode::SingularDenominatorDeterminant, "denominator determinant vanishes");
  return ZDSample::make(bs.t, bs.x, prod * det_num / det_den, bs.ell, Route::determinant);
}

double phase_integral(const LineData& data, const BranchSet& bs, const QuadConfig& quad, PhaseDiagnostics* diag) {
  require_regular(bs);
  const double x = bs.x;
  const double slope = pm(bs.sign) * 2.0 * bs.t;
  const std::vector<double>& ys = bs.real_roots;
  PhaseDiagnostics local;
  PhaseDiagnostics& d = diag ? *diag : local;

  auto raw_log_g = [&](double y) {
    const double num = y - slope * data.v0(y) - x;
    double lden = 0.0;
    bool den_negative = false;
    for (double yk : ys) {
      lden += std::log(std::abs(y - yk));
      if (y < yk) den_negative = !den_negative;
    }
    const double lg = std::log(std::abs(num)) - lden;
    if ((num > 0.0) == !den_negative && num != 0.0) return lg;
    if (num == 0.0 || std::exp(lg) < 1e-10) {
      ++d.clamped;
      return std::log(1e-300);
    }
    throw Error(ErrorCode::NegativeLogArgument,
                "G(" + std::to_string(y) + ") = -" + std::to_string(std::exp(lg)) + " at x=" + std::to_string(x));
  };

  // log G is smooth through each root; sample it off the 0/0 and interpolate.
  auto log_g = [&](double y) {
    ++d.evaluations;
    for (double yk : ys) {
      if (std::abs(y - yk) >= quad.cancel_eps) continue;
      const double e = quad.cancel_eps;
      const double a1 = raw_log_g(yk - e), b1 = raw_log_g(yk + e);
      const double a2 = raw_log_g(yk - 2 * e), b2 = raw_log_g(yk + 2 * e);
      const double v1 = a1 + (y - yk + e) / (2 * e) * (b1 - a1);
      const double v2 = a2 + (y - yk + 2 * e) / (4 * e) * (b2 - a2);
      if (std::abs(v1 - v2) > 1e-6 * (1.0 + std::abs(v1)))
        throw Error(ErrorCode::QuadratureNotConverged, "unstable cancellation at root " + std::to_string(yk));
      return v1;
    }
    return raw_log_g(y);
  };

  constexpr double s_min = 1e-6;
  auto log_bracket = [&](double s) { return log_g(x + s) - log_g(x - s); };
  auto integrand = [&](double s) {
    s = std::max(s, s_min);
    return log_bracket(s) / s;
  };

  std::vector<double> breaks{0.0};
  double scale = 1.0 + std::abs(x);
  for (double yk : ys) {
    breaks.push_back(std::abs(x - yk));
    scale = std::max(scale, 1.0 + std::abs(yk));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-12; }),
               breaks.end());
  const double s_max = 1e6 * scale;

  double total = 0.0;
  auto panel = [&](double a, double b) {
    auto r = quad::integrate<double>(integrand, a, b, quad.abs_tol, quad.rel_tol);
    if (!r.converged && r.abs_error > 1e3 * std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value)))
      throw Error(ErrorCode::QuadratureNotConverged,
                  "panel [" + std::to_string(a) + ", " + std::to_string(b) + "] error " + std::to_string(r.abs_error));
    total += r.value;
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) panel(breaks[i], breaks[i + 1]);
  double s = std::max(breaks.back(), 1.0);
  if (breaks.back() < s) panel(breaks.back(), s);
  double tail = log_bracket(s);
  while (std::abs(tail) >= quad.tail_tol && s < s_max) {
    panel(s, 2.0 * s);
    s *= 2.0;
    tail = log_bracket(s);
  }
  // The integrand decays like c/s^2, so the remainder past s is s * f(s).
  d.tail_correction = tail;
  total += tail;
  return data.arg_u0(x) + total / (2.0 * pi);
}

ZDSample zd_branch(const LineData& data, const BranchSet& bs, const QuadConfig& quad) {
  require_regular(bs);
  const double x = bs.x;
  if (bs.t == 0.0)
    return ZDSample::make(bs.t, x, std::polar(std::sqrt(data.v0(x)), data.arg_u0(x)), 0, Route::branch_phase);
  double log_mod = 0.0;
  for (std::size_t k = 0; k < bs.real_roots.size(); ++k) {
    const double lv = 0.5 * std::log(data.v0(bs.real_roots[k]));
    log_mod += k % 2 == 0 ? lv : -lv;
  }
  const double phi = phase_integral(data, bs, quad);
  const cplx unit(0.0, -pm(bs.sign) * (bs.t > 0.0 ? 1.0 : -1.0));
  cplx prefactor = 1.0;
  for (int k = 0; k < bs.ell; ++k) prefactor *= unit;
  return ZDSample::make(bs.t, x, std::polar(std::exp(log_mod), phi) * prefactor, bs.ell, Route::branch_phase);
}

ZDSample zd_point(const RationalHardyFunction& u, double t, double x, SignMode sign, Route route,
                  const QuadConfig& quad) {
  const BranchSet bs = branches(u, t, x, sign);
  switch (route) {
    case Route::rational: return zd_rational(u, bs);
    case Route::determinant: return zd_determinant(u, bs);
    case Route::branch_phase: return zd_branch(line_data(u), bs, quad);
    case Route::resolvent: break;
  }
  throw Error(ErrorCode::InvalidArgument, "zd_point handles the closed-form routes only");
}

ZDField zd_field(const RationalHardyFunction& u, double t, std::span<const double> xs, SignMode sign, Route route,
                 const QuadConfig& quad) {
  if (route == Route::resolvent)
    throw Error(ErrorCode::InvalidArgument, "use zd_field_operator for the resolvent route");
  if (!std::is_sorted(xs.begin(), xs.end())) throw Error(ErrorCode::InvalidArgument, "x grid must be ascending");
  ZDField field;
  field.t = t;
  field.xs.assign(xs.begin(), xs.end());
  const std::vector<double> crit = critical_values(u, t, sign, default_window(u));
  const LineData data = line_data(u);
  for (double x : xs) {
    FieldPoint pt;
    pt.x = x;
    double x_eval = x;
    for (double c : crit) {
      if (std::abs(x - c) < quad.crit_eps) {
        pt.critical_value = c;
        break;
      }
    }
    if (pt.critical_value) {
      if (!quad.nudge) {
        pt.excluded_reason = "near_critical";
        field.points.push_back(std::move(pt));
        continue;
      }
      x_eval = x + 1e-6;
    }
    try {
      const BranchSet bs = branches(u, t, x_eval, sign);
      if (bs.degenerate) {
        pt.excluded_reason = "degenerate";
      } else if (route == Route::rational) {
        pt.sample = zd_rational(u, bs);
      } else if (route == Route::determinant) {
        pt.sample = zd_determinant(u, bs);
      } else {
        pt.sample = zd_branch(data, bs, quad);
      }
    } catch (const Error& e) {
      pt.excluded_reason = std::string(to_string(e.code()));
      pt.hard_error = true;
    }
    field.points.push_back(std::move(pt));
  }
  return field;
}

BurgersResidual burgers_residual(const RationalHardyFunction& u, SignMode sign, double t, std::span<const double> xs,
                                 double h_t, double h_x) {
  const double t_star = shock_time(u, sign, default_window(u));
  if (!(t + h_t < t_star))
    throw Error(ErrorCode::StencilCrossesShock,
                "t + h_t = " + std::to_string(t + h_t) + " reaches the shock time " + std::to_string(t_star));
  auto v = [&](double tt, double xx) { return std::norm(zd_point(u, tt, xx, sign, Route::rational).value); };
  BurgersResidual out;
  for (double x : xs) {
    const double vt = (v(t + h_t, x) - v(t - h_t, x)) / (2.0 * h_t);
    const double vx = (v(t, x + h_x) - v(t, x - h_x)) / (2.0 * h_x);
    const double r = vt - pm(sign) * 2.0 * v(t, x) * vx;
    out.residual.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
  }
  return out;
}

}  // namespace zdcm
