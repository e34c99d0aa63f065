#include "dressed/drive.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

struct DriveSignal::Table {
  std::vector<double> t, j, gamma, dj, dgamma;
  std::vector<double> phase;  // unwrapped modulo pi, per node

  std::size_t interval(double x) const {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t k = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    return std::min(k, t.size() - 2);
  }
};

std::vector<double> fd_weights(double x0, std::span<const double> nodes) {
  // Fornberg's recursion, first derivative only.
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t k = 0; k < i; ++k) {
      const double c3 = nodes[i] - nodes[k];
      c2 *= c3;
      if (k == i - 1) {
        for (std::size_t m = mn; m >= 1; --m)
          c[i][m] = c1 * (static_cast<double>(m) * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t m = mn; m >= 1; --m)
        c[k][m] = (c4 * c[k][m] - static_cast<double>(m) * c[k][m - 1]) / c3;
      c[k][0] = c4 * c[k][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

namespace {

std::vector<double> fd_derivative(const std::vector<double>& t,
                                  const std::vector<double>& f) {
  const std::size_t n = t.size();
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t lo = k < 2 ? 0 : k - 2;
    if (lo + 5 > n) lo = n - 5;
    auto w = fd_weights(t[k], std::span<const double>(t).subspan(lo, 5));
    double acc = 0.0;
    for (std::size_t i = 0; i < 5; ++i) acc += w[i] * f[lo + i];
    d[k] = acc;
  }
  return d;
}

// Cubic Hermite value and derivative on [t0, t1].
std::pair<double, double> hermite(double x, double t0, double t1, double f0,
                                  double f1, double d0, double d1) {
  const double h = t1 - t0;
  const double s = (x - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double value = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
  const double dh00 = (6 * s2 - 6 * s) / h, dh10 = 3 * s2 - 4 * s + 1;
  const double dh01 = (-6 * s2 + 6 * s) / h, dh11 = 3 * s2 - 2 * s;
  const double deriv = dh00 * f0 + dh10 * d0 + dh01 * f1 + dh11 * d1;
  return {value, deriv};
}

// Representative of `angle + n pi` closest to `ref`.
double nearest_line_angle(double angle, double ref) {
  return angle + kPi * std::round((ref - angle) / kPi);
}

void validate_table(const std::vector<double>& t, const std::vector<double>& j,
                    const std::vector<double>& gamma) {
  if (t.size() < 5)
    throw ValidationError("tabulated drive: at least 5 nodes required");
  if (j.size() != t.size() || gamma.size() != t.size())
    throw ValidationError("tabulated drive: column lengths differ");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k]) || !std::isfinite(j[k]) || !std::isfinite(gamma[k]))
      throw ValidationError("tabulated drive: non-finite entry at row " + std::to_string(k));
    if (k > 0 && !(t[k] > t[k - 1]))
      throw ValidationError("tabulated drive: time grid not strictly increasing at row " +
                            std::to_string(k));
  }
}

}  // namespace

DriveSignal DriveSignal::cosine(double j0, double omega) {
  DriveSignal d;
  d.kind_ = DriveKind::Cosine;
  d.j0_ = j0;
  d.omega_ = omega;
  return d;
}

DriveSignal DriveSignal::rwa_pair(double j0, double omega) {
  DriveSignal d;
  d.kind_ = DriveKind::RwaPair;
  d.j0_ = j0;
  d.omega_ = omega;
  return d;
}

DriveSignal DriveSignal::constant(double j0, double gamma0) {
  DriveSignal d;
  d.kind_ = DriveKind::Constant;
  d.j0_ = j0;
  d.gamma0_ = gamma0;
  return d;
}

DriveSignal DriveSignal::tabulated(std::vector<double> t, std::vector<double> j,
                                   std::vector<double> gamma) {
  validate_table(t, j, gamma);
  auto dj = fd_derivative(t, j);
  auto dg = fd_derivative(t, gamma);
  return tabulated(std::move(t), std::move(j), std::move(gamma), std::move(dj),
                   std::move(dg), 0.0);
}

DriveSignal DriveSignal::tabulated(std::vector<double> t, std::vector<double> j,
                                   std::vector<double> gamma,
                                   std::vector<double> dj,
                                   std::vector<double> dgamma,
                                   double derivative_tol) {
  validate_table(t, j, gamma);
  if (dj.size() != t.size() || dgamma.size() != t.size())
    throw ValidationError("tabulated drive: derivative column lengths differ");
  if (derivative_tol > 0.0) {
    const auto fj = fd_derivative(t, j);
    const auto fg = fd_derivative(t, gamma);
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (std::abs(fj[k] - dj[k]) > derivative_tol ||
          std::abs(fg[k] - dgamma[k]) > derivative_tol)
        throw ValidationError(
            "tabulated drive: stored derivative disagrees with finite difference at row " +
            std::to_string(k));
    }
  }

  auto table = std::make_shared<Table>();
  table->phase.resize(t.size());
  double ref = std::atan2(gamma[0], j[0]);
  if (j[0] == 0.0 && gamma[0] == 0.0) ref = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (j[k] != 0.0 || gamma[k] != 0.0)
      ref = nearest_line_angle(std::atan2(gamma[k], j[k]), ref);
    table->phase[k] = ref;
  }
  table->t = std::move(t);
  table->j = std::move(j);
  table->gamma = std::move(gamma);
  table->dj = std::move(dj);
  table->dgamma = std::move(dgamma);

  DriveSignal d;
  d.kind_ = DriveKind::Tabulated;
  d.table_ = std::move(table);
  return d;
}

DriveSample DriveSignal::operator()(double t) const {
  switch (kind_) {
    case DriveKind::Cosine: {
      const double c = std::cos(omega_ * t), s = std::sin(omega_ * t);
      return {j0_ * c, 0.0, -j0_ * omega_ * s, 0.0};
    }
    case DriveKind::RwaPair: {
      const double c = std::cos(omega_ * t), s = std::sin(omega_ * t);
      return {j0_ * c, j0_ * s, -j0_ * omega_ * s, j0_ * omega_ * c};
    }
    case DriveKind::Constant:
      return {j0_, gamma0_, 0.0, 0.0};
    case DriveKind::Tabulated: {
      const Table& tb = *table_;
      if (t < tb.t.front() || t > tb.t.back())
        throw DomainError("tabulated drive evaluated outside its time grid at t=" +
                          std::to_string(t));
      const std::size_t k = tb.interval(t);
      auto [jv, jd] = hermite(t, tb.t[k], tb.t[k + 1], tb.j[k], tb.j[k + 1], tb.dj[k], tb.dj[k + 1]);
      auto [gv, gd] = hermite(t, tb.t[k], tb.t[k + 1], tb.gamma[k], tb.gamma[k + 1],
                              tb.dgamma[k], tb.dgamma[k + 1]);
      return {jv, gv, jd, gd};
    }
  }
  return {};
}

CarrierSample DriveSignal::carrier(double t) const {
  switch (kind_) {
    case DriveKind::Cosine: {
      const auto s = (*this)(t);
      return {s.j, s.dj, 0.0};
    }
    case DriveKind::RwaPair:
      return {j0_, 0.0, omega_ * t};
    case DriveKind::Constant: {
      const double mag = std::hypot(j0_, gamma0_);
      const double phase = mag > 0.0 ? std::atan2(gamma0_, j0_) : 0.0;
      return {mag, 0.0, phase};
    }
    case DriveKind::Tabulated: {
      const Table& tb = *table_;
      const auto s = (*this)(t);
      const std::size_t k = tb.interval(t);
      const double w = (t - tb.t[k]) / (tb.t[k + 1] - tb.t[k]);
      const double ref = (1.0 - w) * tb.phase[k] + w * tb.phase[k + 1];
      double phase = ref;
      if (s.j != 0.0 || s.gamma != 0.0)
        phase = nearest_line_angle(std::atan2(s.gamma, s.j), ref);
      const std::complex<double> rot = std::polar(1.0, -phase);
      const double amp = (std::complex<double>(s.j, s.gamma) * rot).real();
      const double rate = (std::complex<double>(s.dj, s.dgamma) * rot).real();
      return {amp, rate, phase};
    }
  }
  return {};
}

std::vector<double> DriveSignal::coupling_zeros(double t0, double t1) const {
  std::vector<double> zeros;
  if (!(t1 > t0)) return zeros;
  switch (kind_) {
    case DriveKind::Cosine: {
      if (j0_ == 0.0 || omega_ == 0.0) return zeros;
      const double period = kPi / omega_;
      double k = std::ceil(t0 / period - 0.5);
      for (;; k += 1.0) {
        const double z = (k + 0.5) * period;
        if (z > t1) break;
        if (z >= t0) zeros.push_back(z);
      }
      return zeros;
    }
    case DriveKind::RwaPair:
    case DriveKind::Constant:
      return zeros;
    case DriveKind::Tabulated: {
      const Table& tb = *table_;
      const double lo = std::max(t0, tb.t.front()), hi = std::min(t1, tb.t.back());
      if (!(hi > lo)) return zeros;
      std::vector<double> pts{lo};
      for (double x : tb.t)
        if (x > lo && x < hi) pts.push_back(x);
      pts.push_back(hi);
      double a = pts[0];
      double fa = carrier(a).amplitude;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        const double b = pts[i];
        const double fb = carrier(b).amplitude;
        if ((fa < 0.0) != (fb < 0.0)) {
          double l = a, r = b, fl = fa;
          for (int it = 0; it < 100 && r - l > 1e-15 * std::max(1.0, std::abs(r)); ++it) {
            const double m = 0.5 * (l + r);
            const double fm = carrier(m).amplitude;
            if ((fm < 0.0) == (fl < 0.0)) {
              l = m;
              fl = fm;
            } else {
              r = m;
            }
          }
          zeros.push_back(0.5 * (l + r));
        }
        a = b;
        fa = fb;
      }
      return zeros;
    }
  }
  return zeros;
}

double DriveSignal::max_coupling() const {
  switch (kind_) {
    case DriveKind::Cosine:
    case DriveKind::RwaPair:
      return std::abs(j0_);
    case DriveKind::Constant:
      return std::hypot(j0_, gamma0_);
    case DriveKind::Tabulated: {
      double m = 0.0;
      for (std::size_t k = 0; k < table_->t.size(); ++k)
        m = std::max(m, std::hypot(table_->j[k], table_->gamma[k]));
      return m;
    }
  }
  return 0.0;
}

double DriveSignal::t_min() const {
  return kind_ == DriveKind::Tabulated ? table_->t.front() : -HUGE_VAL;
}

double DriveSignal::t_max() const {
  return kind_ == DriveKind::Tabulated ? table_->t.back() : HUGE_VAL;
}

}  // namespace dressed
