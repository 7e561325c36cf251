#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zdcm/hardy.hpp"

namespace zdcm {

struct SimConfig {
  double L = 80.0;
  int M = 2048;
  double eps = 0.2;
  SignMode sign = SignMode::focusing;
  /// 0 selects the default 0.5 L / (pi M (1 + 2 sup|u0|^2)).
  double dt = 0.0;
  /// Focusing data must satisfy ||u0|| < sqrt(2 pi) - mass_margin.
  double mass_margin = 1e-3;
  /// Switch the cubic term off (linear Schrodinger flow only).
  bool nonlinear = true;
};

/// Periodic pseudospectral state of u^eps on [-L/2, L/2) with M points.
///
/// coeffs are FFTW-ordered: slot n holds wavenumber k_n = 2 pi n / L for
/// n < M/2 and 2 pi (n - M) / L otherwise. Only 0 <= n <= M/3 is ever
/// populated: the Szego projection keeps k >= 0 and the 2/3 rule caps the top.
/// Single owner; FFT scratch and plans live inside the state.
class SimState {
 public:
  SimState(const SimConfig& cfg, std::vector<cplx> physical_samples);
  SimState(const SimState& other);
  SimState& operator=(const SimState& other);
  SimState(SimState&&) noexcept;
  SimState& operator=(SimState&&) noexcept;
  ~SimState();

  double L() const { return cfg_.L; }
  int M() const { return cfg_.M; }
  double eps() const { return cfg_.eps; }
  SignMode sign() const { return cfg_.sign; }
  double t() const { return t_; }
  double dt() const { return cfg_.dt; }
  const SimConfig& config() const { return cfg_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Highest retained mode index (M/3).
  int top_mode() const { return cfg_.M / 3; }
  bool in_mask(int n) const { return n >= 0 && n <= top_mode(); }

  double dx() const { return cfg_.L / cfg_.M; }
  double x(int j) const { return -0.5 * cfg_.L + j * dx(); }
  double wavenumber(int n) const;

  /// u at the grid points x(j).
  std::vector<cplx> physical() const;
  /// dx * sum |u_j|^2, the discrete L^2 norm squared on the box.
  double mass() const;
  /// Mass recorded after every step (first entry at construction).
  const std::vector<double>& mass_series() const { return mass_series_; }
  /// Energy fraction of the initial samples at k < 0 or above the 2/3 cut, before masking.
  double init_leakage() const { return init_leakage_; }

  /// One integrating-factor RK4 step of length dt (defaults to the configured step).
  void step();
  void step(double dt);
  /// Advances to time T with a shortened final step.
  void evolve(double T);

  /// For checkpoint restore.
  void set_time(double t) { t_ = t; }

 private:
  struct Fft;
  std::vector<cplx> nonlinear_term(const std::vector<cplx>& a) const;
  void apply_mask(std::vector<cplx>& a) const;

  SimConfig cfg_;
  double t_ = 0.0;
  std::vector<cplx> coeffs_;
  std::vector<double> mass_series_;
  double init_leakage_ = 0.0;
  std::unique_ptr<Fft> fft_;
};

/// Samples u0 on the box through its exact periodization
/// sum_k c_k (pi/L) cot(pi (x + conj p_k) / L), which is again a Hardy function.
/// Throws BoxTooSmall (L < 40 max|p_k|) or FocusingMassExceeded.
SimState init_sim(const RationalHardyFunction& u, const SimConfig& cfg);

/// Default step 0.5 L / (pi M (1 + 2 sup|u0|^2)).
double default_dt(double L, int M, double linf);

struct TestFunction {
  LineFunction chi;
  /// Interval outside which chi is negligible.
  double support_lo;
  double support_hi;
};

TestFunction gaussian_test(double center, double width);

/// Trapezoid pairings <u^eps, chi> = dx sum u_j conj(chi(x_j)).
/// Throws TestFunctionLeavesBox when a support interval leaves the box.
std::vector<cplx> weak_pairings(const SimState& state, std::span<const TestFunction> tests);

/// <ZD(t), chi> by adaptive quadrature of the rational route, split at the
/// critical values so the integrand is smooth on each panel.
std::vector<cplx> zd_pairings(const RationalHardyFunction& u, double t, SignMode sign,
                              std::span<const TestFunction> tests);

struct SweepRow {
  double eps = 0.0;
  std::vector<double> pairing_errors;
  double mass_drift = 0.0;
  double wall_seconds = 0.0;
};

/// One simulation per eps (descending, positive), each evolved to t and paired against the tests.
std::vector<SweepRow> epsilon_sweep(const RationalHardyFunction& u, SignMode sign, double t,
                                    std::span<const double> eps_list, std::span<const TestFunction> tests,
                                    std::span<const cplx> zd_reference, const SimConfig& base);

/// Header length (uint64 LE), UTF-8 JSON header {L, M, eps, sign, t, dt},
/// then M pairs of little-endian float32 (re, im) of the physical samples.
void save_checkpoint(const SimState& state, const std::filesystem::path& path);
SimState load_checkpoint(const std::filesystem::path& path);

}  // namespace zdcm
