#pragma once

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace zdcm::quad {

/// Result of a Gauss–Kronrod integration. `abs_error` is the |K15 - G7|
/// estimate summed over the final panels.
template <class T>
struct Result {
  T value{};
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = r * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  return {a, b, kron * r, std::abs(kron * r - gauss * r)};
}

}  // namespace detail

/// Globally adaptive Gauss–Kronrod (7/15) integration of f over [a, b]:
/// bisects the panel with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |integral|).
template <class T, class F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_panels = 2000) {
  Result<T> res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::gk15<T>(f, a, b));
  res.evaluations = 15;
  T total = heap.top().value;
  double err = heap.top().error;
  int panels = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Resum to shed accumulated rounding from the incremental updates.
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  res.value = sum;
  res.abs_error = esum;
  res.converged = esum <= std::max(abs_tol, rel_tol * std::abs(sum));
  return res;
}

}  // namespace zdcm::quad
