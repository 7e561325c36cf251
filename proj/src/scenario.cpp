#include "zdcm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "zdcm/branches.hpp"
#include "zdcm/error.hpp"
#include "zdcm/operator.hpp"
#include "zdcm/sim.hpp"

namespace zdcm {

namespace {

constexpr const char* kVersion = "zdcm 0.1.0";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view text, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigInvalid, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ConfigInvalid, "not a number: '" + s + "'");
  return v;
}

// Contiguous chunks of the grid evaluated on separate threads, reassembled in order.
ZDField parallel_field(const RationalHardyFunction& u, double t, const std::vector<double>& xs, SignMode sign,
                       Route route, const QuadConfig& quad) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, xs.size() / 16));
  if (workers <= 1) return zd_field(u, t, xs, sign, route, quad);
  std::vector<ZDField> parts(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (xs.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(xs.size(), w * chunk), hi = std::min(xs.size(), lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      parts[w] = zd_field(u, t, std::span<const double>(xs.data() + lo, hi - lo), sign, route, quad);
    });
  }
  for (std::thread& th : pool) th.join();
  ZDField field;
  field.t = t;
  field.xs = xs;
  for (ZDField& p : parts)
    for (FieldPoint& pt : p.points) field.points.push_back(std::move(pt));
  return field;
}

}  // namespace

cplx parse_complex(std::string_view token) {
  const std::vector<std::string> parts = split(token, ",");
  if (parts.empty() || parts.size() > 2)
    throw Error(ErrorCode::ConfigInvalid, "complex numbers are written re,im; got '" + std::string(token) + "'");
  return {parse_real(parts[0]), parts.size() == 2 ? parse_real(parts[1]) : 0.0};
}

std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  for (const std::string& tok : split(text, " \t;")) out.push_back(parse_complex(tok));
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& tok : split(text, " \t,;")) out.push_back(parse_real(tok));
  return out;
}

RationalHardyFunction scenario_u0(const Scenario& s) {
  std::optional<RationalHardyFunction> u;
  try {
    if (!s.preset.empty()) {
      if (s.preset != "figure1") throw Error(ErrorCode::ConfigInvalid, "unknown preset '" + s.preset + "'");
      if (!s.u0_num.empty() || !s.u0_poles.empty())
        throw Error(ErrorCode::ConfigInvalid, "--preset excludes --u0-num/--u0-poles");
      u = make_rational(ComplexPolynomial{1.0}, {cplx(0.0, -1.0)});
    } else {
      if (s.u0_poles.empty()) throw Error(ErrorCode::ConfigInvalid, "give --preset or --u0-poles");
      u = make_rational(ComplexPolynomial(s.u0_num), s.u0_poles);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
  if (s.sign == SignMode::focusing && !(l2_norm_sq(*u) < 2.0 * std::numbers::pi))
    throw Error(ErrorCode::ConfigInvalid,
                "focusing data needs ||u0||^2 < 2 pi; got " + std::to_string(l2_norm_sq(*u)));
  return *u;
}

std::vector<double> scenario_x_grid(const Scenario& s) {
  if (s.x_n < 1) throw Error(ErrorCode::ConfigInvalid, "x grid needs at least one point");
  if (s.x_n == 1) return {s.x_min};
  if (!(s.x_max > s.x_min)) throw Error(ErrorCode::ConfigInvalid, "x-max must exceed x-min");
  std::vector<double> xs(static_cast<std::size_t>(s.x_n));
  for (int i = 0; i < s.x_n; ++i) xs[static_cast<std::size_t>(i)] = s.x_min + (s.x_max - s.x_min) * i / (s.x_n - 1);
  return xs;
}

int run_zd(const Scenario& s, std::ostream& csv, std::ostream& log) {
  const RationalHardyFunction u = scenario_u0(s);
  const std::vector<double> xs = scenario_x_grid(s);
  std::vector<Route> routes;
  if (s.route == "all") {
    routes = {Route::rational, Route::determinant, Route::branch_phase};
  } else {
    try {
      routes = {parse_route(s.route)};
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigInvalid, e.what());
    }
  }
  QuadConfig quad = s.quad;
  quad.nudge = s.nudge;

  std::optional<HalfLineOperator> op;
  int status = kExitOk;
  csv << "t,x,re,im,modulus,phase,ell,route,excluded_reason\n";
  for (double t : s.ts) {
    std::map<Route, ZDField> fields;
    for (Route r : routes) {
      if (r == Route::resolvent) {
        if (!op) op = build_halfline(u, s.xi_max, s.op_modes);
        ResolveOptions ro;
        ro.delta = s.delta;
        fields[r] = zd_field_operator(*op, t, xs, s.sign, ro);
      } else {
        fields[r] = parallel_field(u, t, xs, s.sign, r, quad);
      }
    }
    for (Route r : routes) {
      for (const FieldPoint& pt : fields[r].points) {
        if (pt.hard_error) status = kExitPartial;
        if (pt.sample && pt.critical_value)
          log << "nudged x=" << num(pt.x) << " to " << num(pt.sample->x) << " (critical value "
              << num(*pt.critical_value) << ", t=" << num(t) << ")\n";
        csv << num(t) << ',' << num(pt.x) << ',';
        if (pt.sample) {
          const ZDSample& z = *pt.sample;
          csv << num(z.value.real()) << ',' << num(z.value.imag()) << ',' << num(z.modulus) << ',' << num(z.phase)
              << ',' << (z.ell ? std::to_string(*z.ell) : std::string()) << ',' << to_string(r) << ",\n";
        } else {
          csv << ",,,,," << to_string(r) << ',' << pt.excluded_reason << '\n';
        }
      }
    }
    if (s.route == "all") {
      double d_det = 0.0, d_branch = 0.0;
      const auto& a = fields[Route::rational].points;
      const auto& b = fields[Route::determinant].points;
      const auto& c = fields[Route::branch_phase].points;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].sample) continue;
        if (b[i].sample) d_det = std::max(d_det, std::abs(a[i].sample->value - b[i].sample->value));
        if (c[i].sample) d_branch = std::max(d_branch, std::abs(a[i].sample->value - c[i].sample->value));
      }
      log << "max_discrepancy t=" << num(t) << " rational-determinant=" << num(d_det)
          << " rational-branch=" << num(d_branch) << '\n';
    }
  }
  return status;
}

int run_sweep(const Scenario& s, std::ostream& csv, std::ostream& meta, std::ostream& log) {
  if (s.eps_list.empty()) throw Error(ErrorCode::ConfigInvalid, "sweep needs a non-empty --eps-list");
  if (s.ts.size() != 1) throw Error(ErrorCode::ConfigInvalid, "sweep takes exactly one --t");
  const RationalHardyFunction u = scenario_u0(s);
  const double t = s.ts.front();
  std::vector<TestFunction> tests;
  for (const auto& [c, w] : s.tests) tests.push_back(gaussian_test(c, w));
  const std::vector<cplx> ref = zd_pairings(u, t, s.sign, tests);
  SimConfig base;
  base.L = s.box_L;
  base.M = s.modes;
  base.dt = s.dt;
  base.sign = s.sign;
  std::vector<SweepRow> rows;
  try {
    rows = epsilon_sweep(u, s.sign, t, s.eps_list, tests, ref, base);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FocusingMassExceeded || e.code() == ErrorCode::BoxTooSmall)
      throw Error(ErrorCode::ConfigInvalid, e.what());
    throw;
  }

  csv << "eps";
  for (std::size_t i = 0; i < tests.size(); ++i) csv << ",err_" << i;
  csv << ",mass_drift\n";
  int status = kExitOk;
  nlohmann::ordered_json wall = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    csv << num(r.eps);
    for (double e : r.pairing_errors) csv << ',' << num(e);
    csv << ',' << num(r.mass_drift) << '\n';
    if (r.mass_drift > 1e-6) {
      log << "mass drift " << num(r.mass_drift) << " at eps=" << num(r.eps) << " exceeds 1e-6\n";
      status = kExitPartial;
    }
    wall.push_back({{"eps", r.eps}, {"wall_seconds", r.wall_seconds}});
  }
  nlohmann::ordered_json m = {{"version", kVersion}, {"runs", wall}};
  meta << m.dump(2) << '\n';
  return status;
}

int run_shock(const Scenario& s, std::ostream& json, std::ostream& log) {
  const RationalHardyFunction u = scenario_u0(s);
  const Window win = default_window(u);
  const std::vector<double> xs = scenario_x_grid(s);
  nlohmann::ordered_json out;
  const double t_star = shock_time(u, s.sign, win);
  out["t_star"] = std::isfinite(t_star) ? nlohmann::ordered_json(t_star) : nlohmann::ordered_json(nullptr);
  out["times"] = nlohmann::ordered_json::array();
  int status = kExitOk;
  for (double t : s.ts) {
    nlohmann::ordered_json entry;
    entry["t"] = t;
    entry["critical_values"] = critical_values(u, t, s.sign, win);
    std::map<int, int> hist;
    nlohmann::ordered_json profile = nlohmann::ordered_json::array();
    for (double x : xs) {
      try {
        const BranchSet bs = branches(u, t, x, s.sign);
        if (bs.degenerate) {
          profile.push_back({{"x", x}, {"ell", nullptr}});
          continue;
        }
        ++hist[bs.ell];
        profile.push_back({{"x", x}, {"ell", bs.ell}});
      } catch (const Error& e) {
        log << "x=" << num(x) << ": " << e.what() << '\n';
        profile.push_back({{"x", x}, {"ell", nullptr}});
        status = kExitPartial;
      }
    }
    nlohmann::ordered_json h = nlohmann::ordered_json::object();
    for (const auto& [ell, count] : hist) h[std::to_string(ell)] = count;
    entry["ell_histogram"] = h;
    entry["ell_profile"] = profile;
    out["times"].push_back(entry);
  }
  json << out.dump(2) << '\n';
  return status;
}

}  // namespace zdcm
