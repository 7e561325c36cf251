#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zdcm/branches.hpp"
#include "zdcm/hardy.hpp"

namespace zdcm {

enum class Route { rational, determinant, branch_phase, resolvent };

/// "rational", "determinant", "branch", "operator".
const char* to_string(Route r);
Route parse_route(std::string_view text);

struct ZDSample {
  double t = 0.0;
  double x = 0.0;
  cplx value{};
  double modulus = 0.0;
  /// arg(value) in (-pi, pi].
  double phase = 0.0;
  /// Number of extra branch pairs; the resolvent route does not see branches.
  std::optional<int> ell;
  Route route = Route::rational;

  static ZDSample make(double t, double x, cplx value, std::optional<int> ell, Route route);
};

/// One grid point of a field: either a sample or the reason it was left out.
struct FieldPoint {
  double x = 0.0;
  std::optional<ZDSample> sample;
  std::string excluded_reason;
  /// Critical value responsible for a near-critical exclusion.
  std::optional<double> critical_value;
  /// True when the exclusion comes from a failed evaluation rather than a
  /// deliberate skip (near-critical or degenerate point).
  bool hard_error = false;
};

struct ZDField {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<FieldPoint> points;

  std::size_t valid_count() const;
};

struct QuadConfig {
  /// Offset used when a quadrature node lands on a removable 0/0 at a root.
  double cancel_eps = 1e-7;
  /// The s-integral stops once |log bracket| drops below this.
  double tail_tol = 1e-10;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// Grid points closer than this to a critical value are excluded.
  double crit_eps = 1e-4;
  /// Evaluate near-critical points at x + 1e-6 instead of excluding them.
  bool nudge = false;
};

/// v0 = |u0|^2 and arg u0 on the real line; all the branch route needs.
struct LineData {
  RealFunction v0;
  RealFunction arg_u0;
};

LineData line_data(const RationalHardyFunction& u);

/// P(x) / [prod_{odd real k} (x - y_k) * prod_{upper w} (x - conj w)].
ZDSample zd_rational(const RationalHardyFunction& u, const BranchSet& bs);

/// Cramer ratio of the (N+1)x(N+1) Cauchy-type determinants on the points
/// Y = {even-index real roots} + {upper roots}:
/// prod u0(Y) det[1, 1/(Y+p_j)] / det[1, u0(Y)/(Y+p_j)].
ZDSample zd_determinant(const RationalHardyFunction& u, const BranchSet& bs);

struct PhaseDiagnostics {
  int clamped = 0;
  int evaluations = 0;
  double tail_correction = 0.0;
};

/// phi(t, x) = arg u0(x) + (1/2pi) int_0^inf log B(s) ds / s with
/// B(s) = G(x+s)/G(x-s), G(y) = (gamma_t(y) - x) / prod_k (y - y_k) > 0.
double phase_integral(const LineData& data, const BranchSet& bs, const QuadConfig& quad = {},
                      PhaseDiagnostics* diag = nullptr);

/// e^{i phi} (-/+ i sgn t)^l prod_k |u0(y_k)|^{(-1)^k}; t = 0 returns u0(x).
ZDSample zd_branch(const LineData& data, const BranchSet& bs, const QuadConfig& quad = {});

/// Closed-form route over a grid. Near-critical and degenerate points are
/// excluded; per-point failures are recorded, never thrown.
ZDField zd_field(const RationalHardyFunction& u, double t, std::span<const double> xs, SignMode sign, Route route,
                 const QuadConfig& quad = {});

/// Single closed-form evaluation at (t, x); throws on degenerate points.
ZDSample zd_point(const RationalHardyFunction& u, double t, double x, SignMode sign, Route route,
                  const QuadConfig& quad = {});

struct BurgersResidual {
  std::vector<double> residual;
  double max_abs = 0.0;
};

/// r = v_t -/+ 2 v v_x for v = |ZD|^2 by centred differences.
/// Throws StencilCrossesShock when t + h_t reaches the shock time.
BurgersResidual burgers_residual(const RationalHardyFunction& u, SignMode sign, double t, std::span<const double> xs,
                                 double h_t, double h_x);

}  // namespace zdcm
