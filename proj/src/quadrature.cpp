#include "dressed/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

// Kronrod abscissae; odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWk[7];
  double g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXk[i];
    const double f1 = f(c - dx), f2 = f(c + dx);
    k += kWk[i] * (f1 + f2);
    if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
  }
  k *= h;
  g *= h;
  return {a, b, k, std::abs(k - g)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_panels,
                           std::span<const double> breakpoints) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, abs_tol, max_panels, breakpoints);
    r.value = -r.value;
    return r;
  }
  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> queue;
  double total = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
    total += p.value;
    error += p.error;
    queue.push(p);
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  auto target = [&] { return std::max(abs_tol, 50.0 * kEps * std::abs(total)); };
  while (error > target()) {
    if (queue.size() >= max_panels)
      throw QuadratureFailure("quadrature: error " + std::to_string(error) +
                              " above tolerance after " + std::to_string(queue.size()) +
                              " panels");
    Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw QuadratureFailure("quadrature: panel cannot be subdivided further");
    queue.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  QuadratureResult r;
  r.panels = queue.size();
  // Re-sum to shed the running-update rounding.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    r.value += p.value;
    r.error += p.error;
  }
  return r;
}

}  // namespace dressed
