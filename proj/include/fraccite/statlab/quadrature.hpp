#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace fraccite::stat {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

struct GkSegment {
  double a, b, value, error;
  bool operator<(const GkSegment& o) const { return error < o.error; }
};

// 7-point Gauss / 15-point Kronrod pair on [a, b].
template <typename F>
GkSegment gauss_kronrod15(F& f, double a, double b) {
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += wgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over consecutive breakpoints:
// the segment with the largest error estimate is bisected until the summed
// error falls below max(abs_tol, rel_tol * |value|).
template <typename F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, double abs_tol,
                           double rel_tol, int max_intervals = 2000) {
  std::priority_queue<detail::GkSegment> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    auto seg = detail::gauss_kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    value += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  int count = static_cast<int>(heap.size());
  while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::fabs(value)) &&
         count < max_intervals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    auto left = detail::gauss_kronrod15(f, worst.a, mid);
    auto right = detail::gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  return {value, error, count};
}

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol) {
  const double bp[2] = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(bp), abs_tol, rel_tol);
}

}  // namespace fraccite::stat
