// zdcm: zero-dispersion limit fields, epsilon sweeps and shock reports.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "zdcm/error.hpp"
#include "zdcm/scenario.hpp"

using namespace zdcm;

namespace {

struct RawArgs {
  std::string u0_num, u0_poles, sign = "focusing", t, eps_list, out, tests;
  std::optional<double> x;
};

void add_common(CLI::App* cmd, Scenario& s, RawArgs& raw) {
  cmd->add_option("--preset", s.preset, "Named initial datum (figure1 = 1/(y+i))");
  cmd->add_option("--u0-num", raw.u0_num, "Numerator coefficients, low degree first, as 're,im' tokens");
  cmd->add_option("--u0-poles", raw.u0_poles, "Pole parameters p_k (Im p_k < 0) as 're,im' tokens");
  cmd->add_option("--sign", raw.sign, "focusing | defocusing")->capture_default_str();
  cmd->add_option("--t", raw.t, "Time or list of times")->capture_default_str();
  cmd->add_option("--x", raw.x, "Single x instead of a grid");
  cmd->add_option("--x-min", s.x_min)->capture_default_str();
  cmd->add_option("--x-max", s.x_max)->capture_default_str();
  cmd->add_option("--x-n", s.x_n)->capture_default_str();
  cmd->add_option("--out", raw.out, "Output file (stdout when omitted)");
  cmd->fallthrough();
}

void finish(Scenario& s, const RawArgs& raw) {
  if (!raw.u0_num.empty()) s.u0_num = parse_complex_list(raw.u0_num);
  if (!raw.u0_poles.empty()) s.u0_poles = parse_complex_list(raw.u0_poles);
  if (!raw.u0_poles.empty() && raw.u0_num.empty()) s.u0_num = {cplx(1.0, 0.0)};
  try {
    s.sign = parse_sign(raw.sign);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
  if (!raw.t.empty()) s.ts = parse_real_list(raw.t);
  if (s.ts.empty()) throw Error(ErrorCode::ConfigInvalid, "--t is empty");
  if (!raw.eps_list.empty()) s.eps_list = parse_real_list(raw.eps_list);
  if (!raw.tests.empty()) {
    const std::vector<double> v = parse_real_list(raw.tests);
    if (v.empty() || v.size() % 2 != 0) throw Error(ErrorCode::ConfigInvalid, "--tests takes center,width pairs");
    s.tests.clear();
    for (std::size_t i = 0; i < v.size(); i += 2) s.tests.emplace_back(v[i], v[i + 1]);
  }
  if (raw.x) {
    s.x_min = s.x_max = *raw.x;
    s.x_n = 1;
  }
}

std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path);
  return *holder;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zdcm: ZD fields, eps sweeps against the simulator, shock reports"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; keys sit under [zd], [sweep] or [shock], flags override them");

  Scenario s;
  RawArgs raw;

  CLI::App* zd = app.add_subcommand("zd", "ZD field on an x grid");
  add_common(zd, s, raw);
  zd->add_option("--route", s.route, "rational | determinant | branch | operator | all")->capture_default_str();
  zd->add_flag("--nudge", s.nudge, "Evaluate near-critical x at x + 1e-6 instead of excluding them");
  zd->add_option("--xi-max", s.xi_max, "Operator route: half-line truncation")->capture_default_str();
  zd->add_option("--op-modes", s.op_modes, "Operator route: grid size")->capture_default_str();
  zd->add_option("--delta", s.delta, "Operator route: imaginary offset of z")->capture_default_str();
  zd->add_option("--cancel-eps", s.quad.cancel_eps)->capture_default_str();
  zd->add_option("--crit-eps", s.quad.crit_eps, "Distance to a critical value that counts as near")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Weak-pairing errors of u^eps against ZD along an eps sequence");
  add_common(sweep, s, raw);
  sweep->add_option("--eps-list", raw.eps_list, "Descending positive eps values")->required();
  sweep->add_option("--box-L", s.box_L)->capture_default_str();
  sweep->add_option("--modes", s.modes)->capture_default_str();
  sweep->add_option("--dt", s.dt, "0 picks the default step")->capture_default_str();
  sweep->add_option("--tests", raw.tests, "Gaussian test functions as center,width pairs");

  CLI::App* shock = app.add_subcommand("shock", "Shock time, critical values and branch counts");
  add_common(shock, s, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    finish(s, raw);
    std::unique_ptr<std::ofstream> holder;
    std::ostream& out = open_out(raw.out, holder);
    if (zd->parsed()) return run_zd(s, out, std::cerr);
    if (sweep->parsed()) {
      std::unique_ptr<std::ofstream> meta;
      if (!raw.out.empty() && raw.out != "-") meta = std::make_unique<std::ofstream>(raw.out + ".meta.json");
      return run_sweep(s, out, meta ? static_cast<std::ostream&>(*meta) : std::cerr, std::cerr);
    }
    return run_shock(s, out, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigInvalid ? kExitConfig : 1;
  }
}
