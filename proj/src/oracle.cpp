#include "dressed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dressed/closed_form.hpp"
#include "dressed/errors.hpp"

namespace dressed {

namespace {

using Vec = Eigen::Vector2cd;
using Mat = Eigen::Matrix2cd;

constexpr complex kI{0.0, 1.0};

double offset(const AtomConfig& cfg) {
  return 0.5 * (cfg.e1 + cfg.e2 - cfg.hbar * cfg.omega_drive) / cfg.hbar;
}

struct Run {
  std::vector<double> times;
  std::vector<Vec> states;
  double max_drift = 0.0;
};

// Integrates with the scalar offset taken out of H; the recorded states have
// the exact factor exp(-i offset t) put back.
Run integrate_rk4(const AtomConfig& cfg, const DriveSignal& drive, const Vec& c0,
                  double h, std::size_t n, std::size_t stride) {
  const double off = offset(cfg);
  const Mat shift = off * Mat::Identity();
  auto rhs = [&](const Mat& hm, const Vec& c) -> Vec { return -kI * (hm * c); };

  Run run;
  run.times.reserve(n / stride + 2);
  run.states.reserve(n / stride + 2);
  run.times.push_back(0.0);
  run.states.push_back(c0);
  const double n0 = c0.norm();
  Vec c = c0;
  Mat h0 = hamiltonian(cfg, drive, 0.0) - shift;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * h;
    const Mat hmid = hamiltonian(cfg, drive, t + 0.5 * h) - shift;
    const Mat h1 = hamiltonian(cfg, drive, static_cast<double>(k + 1) * h) - shift;
    const Vec k1 = rhs(h0, c);
    const Vec k2 = rhs(hmid, c + 0.5 * h * k1);
    const Vec k3 = rhs(hmid, c + 0.5 * h * k2);
    const Vec k4 = rhs(h1, c + h * k3);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h0 = h1;
    run.max_drift = std::max(run.max_drift, std::abs(c.norm() - n0));
    if ((k + 1) % stride == 0 || k + 1 == n) {
      const double tn = static_cast<double>(k + 1) * h;
      run.times.push_back(tn);
      run.states.push_back(std::exp(-kI * (off * tn)) * c);
    }
  }
  return run;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y, bool* degenerate) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

Eigen::Matrix2cd hamiltonian(const AtomConfig& cfg, const DriveSignal& drive, double t) {
  const auto s = drive(t);
  Mat h;
  h(0, 0) = cfg.e1 / cfg.hbar;
  h(1, 1) = (cfg.e2 - cfg.hbar * cfg.omega_drive) / cfg.hbar;
  h(0, 1) = complex(s.j, s.gamma) / cfg.hbar;
  h(1, 0) = complex(s.j, -s.gamma) / cfg.hbar;
  return h;
}

double max_step(const AtomConfig& cfg, const DriveSignal& drive) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double wr_max = std::hypot(detuning(cfg), drive.max_coupling() / cfg.hbar);
  double bound = two_pi / cfg.omega_drive;
  if (wr_max > 0.0) bound = std::min(bound, two_pi / wr_max);
  return bound / 200.0;
}

std::vector<double> output_grid(double t_end, double dt, std::size_t stride) {
  std::vector<double> out;
  if (!(t_end > 0.0)) return out;
  const auto n = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9)), 1);
  const double h = t_end / static_cast<double>(n);
  stride = std::max<std::size_t>(stride, 1);
  out.push_back(0.0);
  for (std::size_t k = 1; k <= n; ++k)
    if (k % stride == 0 || k == n) out.push_back(static_cast<double>(k) * h);
  return out;
}

std::pair<complex, complex> dressed_amplitudes(const AtomConfig& cfg, const FrameQuantities& f,
                                               const StateVector& c) {
  const complex w = std::polar(1.0, -f.carrier_phase);
  const complex undo = std::exp(kI * (offset(cfg) * f.t));
  const complex ap = (w * f.sin_theta * c.c1 + f.cos_theta * c.c2) * undo;
  const complex am = (w * f.cos_theta * c.c1 - f.sin_theta * c.c2) * undo;
  return {ap, am};
}

PropagationResult propagate(const AtomConfig& cfg, const DriveSignal& drive,
                            const StateVector& c0, double t_end, double dt, BranchMode branch,
                            const PropagateOptions& opts) {
  cfg.validate();
  opts.tol.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("propagate: dt > 0 required");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw DomainError("propagate: t_end > 0 required");
  const double bound = max_step(cfg, drive);
  if (dt > bound * (1.0 + 1e-12))
    throw StepTooLarge("propagate: dt = " + std::to_string(dt) + " exceeds bound " +
                       std::to_string(bound));
  if (t_end > drive.t_max()) throw DomainError("propagate: t_end beyond the drive table");

  const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const std::size_t steps = std::max<std::size_t>(n, 1);
  const double h = t_end / static_cast<double>(steps);
  const std::size_t stride = std::max<std::size_t>(opts.output_stride, 1);
  const Vec v0(c0.c1, c0.c2);

  Run run = integrate_rk4(cfg, drive, v0, h, steps, stride);

  PropagationResult r;
  r.branch = branch;
  r.step_report.dt = h;
  r.step_report.steps = steps;
  r.step_report.max_norm_drift = run.max_drift;
  r.step_report.norm_flag = run.max_drift > opts.tol.norm_tol;
  if (opts.richardson) {
    Run fine = integrate_rk4(cfg, drive, v0, 0.5 * h, 2 * steps, 2 * stride);
    double err = 0.0;
    for (std::size_t i = 0; i < run.states.size(); ++i)
      err = std::max(err, (run.states[i] - fine.states[i]).norm());
    r.step_report.richardson_error = err / 15.0;
  }

  FrameTracker tracker(cfg, drive, branch, opts.tol);
  const std::size_t m = run.times.size();
  r.times = run.times;
  r.states.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const StateVector s{run.states[i](0), run.states[i](1)};
    const auto f = tracker.at(run.times[i]);
    const auto [ap, am] = dressed_amplitudes(cfg, f, s);
    const complex pp = std::sqrt(2.0) * ap, pm = std::sqrt(2.0) * am;
    r.states.push_back(s);
    r.dressed_a_plus.push_back(ap);
    r.dressed_a_minus.push_back(am);
    r.psi0_oracle.push_back((pp - pm) / (2.0 * kI));
    r.psi1_oracle.push_back(0.5 * (pp + pm));
    r.current.push_back(transition_current(s));
  }
  return r;
}

StateVector initial_state_for_psi_frame(const AtomConfig& cfg, const DriveSignal& drive,
                                        BranchMode branch, const Tolerances& tol) {
  const auto f = frame(cfg, drive, 0.0, branch, tol);
  const complex w = std::polar(1.0, f.carrier_phase);
  const double r = 1.0 / std::sqrt(2.0);
  return {w * (f.sin_theta + f.cos_theta) * r, (f.cos_theta - f.sin_theta) * r};
}

StateVector initial_state(InitialState kind, const AtomConfig& cfg, const DriveSignal& drive,
                          BranchMode branch, const Tolerances& tol) {
  switch (kind) {
    case InitialState::Ground:
      return {{1.0, 0.0}, {0.0, 0.0}};
    case InitialState::Excited:
      return {{0.0, 0.0}, {1.0, 0.0}};
    case InitialState::PsiFrame:
      break;
  }
  return initial_state_for_psi_frame(cfg, drive, branch, tol);
}

double ComparisonReport::value(Metric m) const {
  switch (m) {
    case Metric::MaxAbs:
      return max_abs;
    case Metric::Rms:
      return rms;
    case Metric::PhaseSlip:
      return phase_slip;
  }
  return max_abs;
}

ComparisonReport compare(const TimeSeries& a, const TimeSeries& b) {
  for (const char* col : {"t", "p0", "re_psi0", "im_psi0"})
    if (!a.has_column(col) || !b.has_column(col))
      throw GridMismatch(std::string("compare: missing column ") + col);
  if (a.rows() != b.rows())
    throw GridMismatch("compare: " + std::to_string(a.rows()) + " vs " +
                       std::to_string(b.rows()) + " rows");
  const auto ta = a.column("t"), tb = b.column("t");
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (std::abs(ta[i] - tb[i]) > 1e-12 * std::max(1.0, std::abs(ta[i])))
      throw GridMismatch("compare: time grids differ at row " + std::to_string(i));

  const auto pa = a.column("p0"), pb = b.column("p0");
  const auto ra = a.column("re_psi0"), ia = a.column("im_psi0");
  const auto rb = b.column("re_psi0"), ib = b.column("im_psi0");
  ComparisonReport rep;
  rep.samples = pa.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = std::abs(pa[i] - pb[i]);
    rep.max_abs = std::max(rep.max_abs, d);
    ss += d * d;
  }
  if (!pa.empty()) rep.rms = std::sqrt(ss / static_cast<double>(pa.size()));

  bool started = false;
  double acc = 0.0, last = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const complex za(ra[i], ia[i]), zb(rb[i], ib[i]);
    if (std::abs(za) <= 0.1 || std::abs(zb) <= 0.1) continue;
    const double d = std::arg(za) - std::arg(zb);
    if (!started) {
      started = true;
      last = d;
      continue;
    }
    acc += wrap(d - last);
    last = d;
    rep.phase_slip = std::max(rep.phase_slip, std::abs(acc));
  }
  return rep;
}

double compare(const TimeSeries& a, const TimeSeries& b, Metric metric) {
  return compare(a, b).value(metric);
}

TimeSeries oracle_psi_series(const PropagationResult& r) {
  TimeSeries ts({"t", "p0", "re_psi0", "im_psi0"});
  for (std::size_t i = 0; i < r.times.size(); ++i)
    ts.add_row({r.times[i], std::norm(r.psi0_oracle[i]), r.psi0_oracle[i].real(),
                r.psi0_oracle[i].imag()});
  return ts;
}

CurrentFit current_dynamics_check(const PropagationResult& result, const AtomConfig& cfg,
                                  const DriveSignal& drive, const Tolerances& tol) {
  CurrentFit fit;
  const auto& t = result.times;
  const std::size_t n = t.size();
  if (n < 9) throw InsufficientSpan("current check: fewer than 9 samples");

  double peak = 0.0;
  for (double j : result.current) peak = std::max(peak, std::abs(j));
  if (peak <= 1e-12) return fit;

  const auto z = phase_series(cfg, drive, t, result.branch, tol);
  double variation = 0.0;
  for (std::size_t i = 1; i < n; ++i) variation += std::abs(z[i].real() - z[i - 1].real());
  fit.periods = variation / std::numbers::pi;
  if (fit.periods < 5.0)
    throw InsufficientSpan("current check: only " + std::to_string(fit.periods) +
                           " periods of sin(2 Re Z) covered, need 5");

  std::vector<double> deriv, ref, cur;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const auto w = fd_weights(t[i], std::span<const double>(t).subspan(i - 2, 5));
    double d = 0.0;
    for (std::size_t k = 0; k < 5; ++k) d += w[k] * result.current[i - 2 + k];
    deriv.push_back(d);
    ref.push_back(std::sin(2.0 * z[i].real()));
    cur.push_back(result.current[i]);
  }
  fit.samples = deriv.size();
  bool degenerate = false;
  fit.rho_derivative = pearson(deriv, ref, &degenerate);
  fit.rho_current = pearson(cur, ref, nullptr);
  if (degenerate) {
    fit.rho_derivative = 0.0;
    return fit;
  }
  double sds = 0.0, sss = 0.0;
  for (std::size_t i = 0; i < deriv.size(); ++i) {
    sds += deriv[i] * ref[i];
    sss += ref[i] * ref[i];
  }
  fit.amplitude = sds / sss;
  fit.status = FitStatus::Ok;
  return fit;
}

ConvergenceReport convergence_order(const AtomConfig& cfg, const DriveSignal& drive,
                                    const StateVector& c0, double t_end, double dt,
                                    BranchMode branch, const Tolerances& tol) {
  PropagateOptions opts;
  opts.richardson = false;
  opts.output_stride = std::numeric_limits<std::size_t>::max();
  opts.tol = tol;
  auto final_state = [](const PropagationResult& r) {
    return Vec(r.states.back().c1, r.states.back().c2);
  };
  const auto r1 = propagate(cfg, drive, c0, t_end, dt, branch, opts);
  const auto r2 = propagate(cfg, drive, c0, t_end, dt / 2.0, branch, opts);
  const auto r4 = propagate(cfg, drive, c0, t_end, dt / 4.0, branch, opts);
  ConvergenceReport rep;
  rep.dt = r1.step_report.dt;
  rep.error_coarse = (final_state(r1) - final_state(r2)).norm();
  rep.error_fine = (final_state(r2) - final_state(r4)).norm();
  rep.order = std::log2(rep.error_coarse / rep.error_fine);
  rep.drift_coarse = r1.step_report.max_norm_drift;
  rep.drift_fine = r2.step_report.max_norm_drift;
  rep.drift_exponent = std::log2(rep.drift_coarse / rep.drift_fine);
  return rep;
}

}  // namespace dressed
