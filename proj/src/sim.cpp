#include "zdcm/sim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <numbers>

#include "zdcm/branches.hpp"
#include "zdcm/error.hpp"
#include "zdcm/quadrature.hpp"
#include "zdcm/zdl.hpp"

namespace zdcm {

using std::numbers::pi;

// In-place forward/backward plans over one scratch buffer. FFTW planning is
// not thread-safe; states are created from one thread at a time.
struct SimState::Fft {
  explicit Fft(int m) : n(m) {
    buf = fftw_alloc_complex(static_cast<std::size_t>(m));
    fwd = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(buf); }
  void forward(std::vector<cplx>& v) {
    std::copy(v.begin(), v.end(), data());
    fftw_execute(fwd);
    std::copy(data(), data() + n, v.begin());
  }
  // Unnormalized inverse followed by 1/M.
  void backward(std::vector<cplx>& v) {
    std::copy(v.begin(), v.end(), data());
    fftw_execute(bwd);
    const double s = 1.0 / n;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = data()[i] * s;
  }

  int n;
  fftw_complex* buf;
  fftw_plan fwd, bwd;
};

SimState::SimState(const SimConfig& cfg, std::vector<cplx> physical_samples)
    : cfg_(cfg), coeffs_(std::move(physical_samples)), fft_(std::make_unique<Fft>(cfg.M)) {
  if (cfg_.M < 16 || !std::has_single_bit(static_cast<unsigned>(cfg_.M)))
    throw Error(ErrorCode::InvalidArgument, "mode count must be a power of two >= 16");
  if (static_cast<int>(coeffs_.size()) != cfg_.M)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(cfg_.M) + " samples");
  if (!(cfg_.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "the simulator needs eps > 0");
  if (!(cfg_.L > 0.0) || !(cfg_.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "L and dt must be positive");
  fft_->forward(coeffs_);
  double total = 0.0, outside = 0.0;
  for (int n = 0; n < cfg_.M; ++n) {
    const double e = std::norm(coeffs_[static_cast<std::size_t>(n)]);
    total += e;
    if (!in_mask(n)) outside += e;
  }
  init_leakage_ = total > 0.0 ? outside / total : 0.0;
  apply_mask(coeffs_);
  mass_series_.push_back(mass());
}

SimState::SimState(const SimState& o)
    : cfg_(o.cfg_),
      t_(o.t_),
      coeffs_(o.coeffs_),
      mass_series_(o.mass_series_),
      init_leakage_(o.init_leakage_),
      fft_(std::make_unique<Fft>(o.cfg_.M)) {}

SimState& SimState::operator=(const SimState& o) {
  if (this != &o) {
    SimState tmp(o);
    *this = std::move(tmp);
  }
  return *this;
}

SimState::SimState(SimState&&) noexcept = default;
SimState& SimState::operator=(SimState&&) noexcept = default;
SimState::~SimState() = default;

double SimState::wavenumber(int n) const {
  const int m = cfg_.M;
  return 2.0 * pi * (n < m / 2 ? n : n - m) / cfg_.L;
}

void SimState::apply_mask(std::vector<cplx>& a) const {
  for (int n = 0; n < cfg_.M; ++n)
    if (!in_mask(n)) a[static_cast<std::size_t>(n)] = 0.0;
}

std::vector<cplx> SimState::physical() const {
  std::vector<cplx> u(coeffs_);
  fft_->backward(u);
  return u;
}

double SimState::mass() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::norm(c);
  return dx() * s / cfg_.M;
}

// +/- 2 P[(d/dx Pi |u|^2) u], P the Szego-plus-2/3 mask.
std::vector<cplx> SimState::nonlinear_term(const std::vector<cplx>& a) const {
  const std::size_t m = static_cast<std::size_t>(cfg_.M);
  std::vector<cplx> u(a);
  fft_->backward(u);
  std::vector<cplx> w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = std::norm(u[j]);
  fft_->forward(w);
  for (int n = 0; n < cfg_.M; ++n) {
    cplx& c = w[static_cast<std::size_t>(n)];
    c = in_mask(n) ? c * cplx(0.0, wavenumber(n)) : 0.0;
  }
  fft_->backward(w);
  for (std::size_t j = 0; j < m; ++j) w[j] *= u[j];
  fft_->forward(w);
  apply_mask(w);
  const double s = 2.0 * pm(cfg_.sign);
  for (cplx& c : w) c *= s;
  return w;
}

void SimState::step() { step(cfg_.dt); }

void SimState::step(double dt) {
  const std::size_t m = static_cast<std::size_t>(cfg_.M);
  std::vector<cplx> e(m);
  for (int n = 0; n < cfg_.M; ++n) {
    const double k = wavenumber(n);
    e[static_cast<std::size_t>(n)] = std::exp(cplx(0.0, -cfg_.eps * k * k * dt * 0.5));
  }
  const std::vector<cplx>& a = coeffs_;
  std::vector<cplx> next(m);
  if (!cfg_.nonlinear) {
    for (std::size_t n = 0; n < m; ++n) next[n] = e[n] * e[n] * a[n];
  } else {
    std::vector<cplx> tmp(m);
    const std::vector<cplx> k1 = nonlinear_term(a);
    for (std::size_t n = 0; n < m; ++n) tmp[n] = e[n] * (a[n] + 0.5 * dt * k1[n]);
    const std::vector<cplx> k2 = nonlinear_term(tmp);
    for (std::size_t n = 0; n < m; ++n) tmp[n] = e[n] * a[n] + 0.5 * dt * k2[n];
    const std::vector<cplx> k3 = nonlinear_term(tmp);
    for (std::size_t n = 0; n < m; ++n) tmp[n] = e[n] * e[n] * a[n] + dt * e[n] * k3[n];
    const std::vector<cplx> k4 = nonlinear_term(tmp);
    for (std::size_t n = 0; n < m; ++n)
      next[n] = e[n] * e[n] * a[n] + dt / 6.0 * (e[n] * e[n] * k1[n] + 2.0 * e[n] * (k2[n] + k3[n]) + k4[n]);
  }
  apply_mask(next);

  const double before = mass();
  std::swap(coeffs_, next);
  const double after = mass();
  if (before > 0.0 && std::abs(after - before) > 1e-6 * before) {
    std::swap(coeffs_, next);
    throw Error(ErrorCode::CFLViolation, "one step changed the mass by " +
                                             std::to_string(std::abs(after - before) / before) +
                                             " (relative); reduce dt");
  }
  t_ += dt;
  mass_series_.push_back(after);
}

void SimState::evolve(double T) {
  if (T < t_) throw Error(ErrorCode::InvalidArgument, "evolve target lies in the past");
  const double dt = cfg_.dt;
  while (T - t_ > dt * (1.0 + 1e-12)) step(dt);
  const double rest = T - t_;
  if (rest > 1e-14 * std::max(1.0, T)) step(rest);
  t_ = T;
}

double default_dt(double L, int M, double linf) { return 0.5 * L / (pi * M * (1.0 + 2.0 * linf * linf)); }

SimState init_sim(const RationalHardyFunction& u, const SimConfig& cfg_in) {
  SimConfig cfg = cfg_in;
  double scale = 0.0;
  for (const cplx& p : u.pole_params()) scale = std::max(scale, std::abs(p));
  if (cfg.L < 40.0 * scale)
    throw Error(ErrorCode::BoxTooSmall, "L = " + std::to_string(cfg.L) + " < 40 * " + std::to_string(scale));
  const double mass = l2_norm_sq(u);
  if (cfg.sign == SignMode::focusing && std::sqrt(mass) >= std::sqrt(2.0 * pi) - cfg.mass_margin)
    throw Error(ErrorCode::FocusingMassExceeded,
                "||u0||^2 = " + std::to_string(mass) + " is not below 2 pi in the focusing case");
  if (cfg.dt == 0.0) cfg.dt = default_dt(cfg.L, cfg.M, linf_norm(u));

  std::vector<cplx> samples(static_cast<std::size_t>(cfg.M));
  const double dx = cfg.L / cfg.M;
  for (int j = 0; j < cfg.M; ++j) {
    const double x = -0.5 * cfg.L + j * dx;
    cplx acc = 0.0;
    for (int k = 0; k < u.order(); ++k) {
      const cplx arg = pi * (x + std::conj(u.pole_params()[static_cast<std::size_t>(k)])) / cfg.L;
      acc += u.residues()[static_cast<std::size_t>(k)] * (pi / cfg.L) * std::cos(arg) / std::sin(arg);
    }
    samples[static_cast<std::size_t>(j)] = acc;
  }
  return SimState(cfg, std::move(samples));
}

TestFunction gaussian_test(double center, double width) {
  return {[center, width](double x) {
            const double r = (x - center) / width;
            return cplx(std::exp(-0.5 * r * r));
          },
          center - 9.0 * width, center + 9.0 * width};
}

std::vector<cplx> weak_pairings(const SimState& state, std::span<const TestFunction> tests) {
  const std::vector<cplx> u = state.physical();
  std::vector<cplx> out;
  for (const TestFunction& tf : tests) {
    if (tf.support_lo < -0.5 * state.L() || tf.support_hi > 0.5 * state.L())
      throw Error(ErrorCode::TestFunctionLeavesBox, "test support [" + std::to_string(tf.support_lo) + ", " +
                                                        std::to_string(tf.support_hi) + "] leaves the box");
    cplx acc = 0.0;
    for (int j = 0; j < state.M(); ++j) acc += u[static_cast<std::size_t>(j)] * std::conj(tf.chi(state.x(j)));
    out.push_back(acc * state.dx());
  }
  return out;
}

std::vector<cplx> zd_pairings(const RationalHardyFunction& u, double t, SignMode sign,
                              std::span<const TestFunction> tests) {
  const std::vector<double> crit = critical_values(u, t, sign, default_window(u));
  std::vector<cplx> out;
  for (const TestFunction& tf : tests) {
    std::vector<double> cuts{tf.support_lo};
    for (double c : crit)
      if (c > tf.support_lo && c < tf.support_hi) cuts.push_back(c);
    cuts.push_back(tf.support_hi);
    auto f = [&](double x) { return zd_point(u, t, x, sign, Route::rational).value * std::conj(tf.chi(x)); };
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      acc += quad::integrate<cplx>(f, cuts[i], cuts[i + 1], 1e-11, 1e-11, 4000).value;
    out.push_back(acc);
  }
  return out;
}

std::vector<SweepRow> epsilon_sweep(const RationalHardyFunction& u, SignMode sign, double t,
                                    std::span<const double> eps_list, std::span<const TestFunction> tests,
                                    std::span<const cplx> zd_reference, const SimConfig& base) {
  if (eps_list.empty()) throw Error(ErrorCode::ConfigInvalid, "empty eps list");
  if (zd_reference.size() != tests.size())
    throw Error(ErrorCode::InvalidArgument, "one reference pairing per test function is required");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw Error(ErrorCode::ConfigInvalid, "eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::ConfigInvalid, "eps list must descend");
  }
  std::vector<SweepRow> rows;
  for (double eps : eps_list) {
    const auto start = std::chrono::steady_clock::now();
    SimConfig cfg = base;
    cfg.eps = eps;
    cfg.sign = sign;
    SimState state = init_sim(u, cfg);
    state.evolve(t);
    const std::vector<cplx> pairs = weak_pairings(state, tests);
    SweepRow row;
    row.eps = eps;
    for (std::size_t i = 0; i < pairs.size(); ++i) row.pairing_errors.push_back(std::abs(pairs[i] - zd_reference[i]));
    const double m0 = state.mass_series().front();
    for (double m : state.mass_series()) row.mass_drift = std::max(row.mass_drift, std::abs(m - m0) / m0);
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void put_le(std::ostream& os, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::istream& is, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = is.get();
    if (c == EOF) throw Error(ErrorCode::InvalidArgument, "truncated checkpoint");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

}  // namespace

void save_checkpoint(const SimState& state, const std::filesystem::path& path) {
  nlohmann::json header = {{"L", state.L()},   {"M", state.M()}, {"eps", state.eps()},
                           {"sign", to_string(state.sign())}, {"t", state.t()}, {"dt", state.dt()}};
  const std::string text = header.dump();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  put_le(os, text.size(), 8);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const cplx& v : state.physical()) {
    put_le(os, std::bit_cast<std::uint32_t>(static_cast<float>(v.real())), 4);
    put_le(os, std::bit_cast<std::uint32_t>(static_cast<float>(v.imag())), 4);
  }
}

SimState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  const std::uint64_t len = get_le(is, 8);
  if (len > (1u << 20)) throw Error(ErrorCode::InvalidArgument, "implausible checkpoint header length");
  std::string text(len, '\0');
  is.read(text.data(), static_cast<std::streamsize>(len));
  const nlohmann::json header = nlohmann::json::parse(text);
  SimConfig cfg;
  cfg.L = header.at("L").get<double>();
  cfg.M = header.at("M").get<int>();
  cfg.eps = header.at("eps").get<double>();
  cfg.sign = parse_sign(header.at("sign").get<std::string>());
  cfg.dt = header.at("dt").get<double>();
  std::vector<cplx> samples(static_cast<std::size_t>(cfg.M));
  for (cplx& v : samples) {
    const float re = std::bit_cast<float>(static_cast<std::uint32_t>(get_le(is, 4)));
    const float im = std::bit_cast<float>(static_cast<std::uint32_t>(get_le(is, 4)));
    v = cplx(re, im);
  }
  SimState state(cfg, std::move(samples));
  state.set_time(header.at("t").get<double>());
  return state;
}

}  // namespace zdcm
