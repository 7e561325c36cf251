#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zdcm/hardy.hpp"
#include "zdcm/zdl.hpp"

namespace zdcm {

/// Everything a CLI run needs. Numbers not given on the command line keep
/// these defaults.
struct Scenario {
  std::string preset;
  std::vector<cplx> u0_num;
  std::vector<cplx> u0_poles;
  SignMode sign = SignMode::focusing;
  std::vector<double> ts{2.0};
  double x_min = -10.0;
  double x_max = 10.0;
  int x_n = 201;
  /// rational | determinant | branch | operator | all
  std::string route = "rational";
  bool nudge = false;
  QuadConfig quad;

  double xi_max = 40.0;
  int op_modes = 4096;
  double delta = 0.05;

  std::vector<double> eps_list;
  double box_L = 80.0;
  int modes = 2048;
  double dt = 0.0;
  /// Gaussian test functions as (center, width).
  std::vector<std::pair<double, double>> tests{{-2.0, 1.0}, {-1.0, 1.0}, {0.5, 1.0}};
};

/// "re,im" or "re" -> complex. Throws ConfigInvalid.
cplx parse_complex(std::string_view token);
/// Tokens separated by whitespace or ';'.
std::vector<cplx> parse_complex_list(std::string_view text);
/// Reals separated by whitespace, ',' or ';'.
std::vector<double> parse_real_list(std::string_view text);

/// u0 of the scenario ("figure1" = 1/(y+i)); validates focusing mass < 2 pi.
/// Throws ConfigInvalid.
RationalHardyFunction scenario_u0(const Scenario& s);
std::vector<double> scenario_x_grid(const Scenario& s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 2;
inline constexpr int kExitConfig = 64;

/// CSV t,x,re,im,modulus,phase,ell,route,excluded_reason; for route "all" the
/// three closed-form routes in long format and a max-discrepancy line on `log`.
int run_zd(const Scenario& s, std::ostream& csv, std::ostream& log);

/// CSV eps,err_0..err_{n-1},mass_drift; wall times go to the separate JSON `meta`.
int run_sweep(const Scenario& s, std::ostream& csv, std::ostream& meta, std::ostream& log);

/// JSON {t_star, times: [{t, critical_values, ell_histogram, ell_profile}]}.
int run_shock(const Scenario& s, std::ostream& json, std::ostream& log);

}  // namespace zdcm
