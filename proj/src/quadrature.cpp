#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "error.hpp"

namespace garchlim {

namespace {

// 15-point Kronrod nodes (positive half) and weights, 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double error;
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);
  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) {
    throw std::domain_error("quadrature: integrand produced a non-finite value");
  }
  return Panel{lo, hi, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, double rel_tol,
                              std::span<const double> interior_breaks,
                              std::size_t max_panels) {
  if (!(hi > lo)) throw std::domain_error("quadrature: require hi > lo");
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) {
    throw std::domain_error("quadrature: tolerances must be positive");
  }

  std::vector<double> edges{lo};
  for (double b : interior_breaks) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());

  auto cmp = [](const Panel& a, const Panel& b) { return a.error < b.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

  double total = 0.0, toterr = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = eval_panel(f, edges[i], edges[i + 1]);
    total += p.value;
    toterr += p.error;
    heap.push(p);
  }

  std::size_t panels = heap.size();
  auto target = [&] { return std::max(abs_tol, rel_tol * std::fabs(total)); };

  while (toterr > target() && panels < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval at floating-point resolution; cannot subdivide further.
      heap.push(worst);
      break;
    }
    Panel left = eval_panel(f, worst.lo, mid);
    Panel right = eval_panel(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    toterr += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  if (toterr > target()) {
    throw ToleranceError("quadrature did not reach the requested tolerance", total, toterr);
  }
  return QuadResult{total, toterr, panels};
}

}  // namespace garchlim
