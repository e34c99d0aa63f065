#include "dressed/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

// Everything the frame formulas need at one instant, in natural units.
struct Instant {
  double wt;        // omega~
  double beta;      // signed coupling amplitude / hbar
  double dbeta;
  double phase;
  double jj;        // (J J' + G G') / hbar^2
  double wr;        // signed omega_R
  int sign;
};

double frequency_scale(const AtomConfig& cfg, const DriveSignal& drive) {
  return std::max(cfg.omega_drive, drive.max_coupling() / cfg.hbar);
}

Instant instant(const AtomConfig& cfg, const DriveSignal& drive, double t,
                BranchMode branch, const Tolerances& tol) {
  Instant in{};
  in.wt = detuning(cfg);
  const auto s = drive(t);
  const auto c = drive.carrier(t);
  in.beta = c.amplitude / cfg.hbar;
  in.dbeta = c.amplitude_rate / cfg.hbar;
  in.phase = c.phase;
  in.jj = (s.j * s.dj + s.gamma * s.dgamma) / (cfg.hbar * cfg.hbar);
  in.sign = (branch == BranchMode::SmoothContinuation &&
             branch_flips_active(cfg, drive, tol) && in.beta < 0.0)
                ? -1
                : 1;
  in.wr = in.sign * std::sqrt(in.wt * in.wt + in.beta * in.beta);
  return in;
}

// omega~ + omega_R without cancellation when the two have opposite signs.
double shifted_root(double wt, double wr, double beta) {
  if ((wt >= 0.0) == (wr >= 0.0) || wt == 0.0) return wt + wr;
  return beta * beta / (wr - wt);
}

double half_angle(const Instant& in, const Tolerances& tol) {
  if (std::abs(in.wr) < tol.deg_eps)
    throw DegenerateFrame("mixing angle undefined: omega_tilde and coupling both vanish");
  double a = std::atan2(in.beta / in.wr, in.wt / in.wr);
  if (in.wt < 0.0 && a < 0.0) a += 2.0 * std::numbers::pi;
  return 0.5 * a;
}

double connection_from(const Instant& in, const Tolerances& tol, bool* indeterminate) {
  if (std::abs(in.wr) < tol.deg_eps)
    throw DegenerateFrame("connection undefined: omega_tilde and coupling both vanish");
  const double u = shifted_root(in.wt, in.wr, in.beta);
  const double denom = u * u + in.beta * in.beta;
  const double bracket = denom < tol.deg_eps * tol.deg_eps
                             ? -in.wt / (2.0 * in.wr)
                             : 1.0 - u * (in.wt + 2.0 * in.wr) / denom;
  double prefactor = 0.0;
  if (std::abs(in.beta) >= tol.deg_eps) {
    prefactor = in.jj / (in.wr * in.beta);
  } else if (in.dbeta != 0.0) {
    // (j j' + g g') / |b| -> d(beta)/dt as the coupling passes through zero.
    prefactor = in.dbeta / in.wr;
  } else if (in.jj != 0.0 && indeterminate) {
    *indeterminate = true;
  }
  return -prefactor * bracket;
}

template <class F>
double central_derivative(F&& f, double t, double h) {
  // Sixth-order central difference.
  return (-f(t - 3 * h) + 9 * f(t - 2 * h) - 45 * f(t - h) + 45 * f(t + h) -
          9 * f(t + 2 * h) + f(t + 3 * h)) /
         (60.0 * h);
}

}  // namespace

void AtomConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(e1) || !finite(e2) || !finite(omega_drive) || !finite(j0) || !finite(hbar))
    throw ValidationError("atom config: all fields must be finite");
  if (!(omega_drive > 0.0)) throw ValidationError("atom config: omega_drive > 0 violated");
  if (!(j0 >= 0.0)) throw ValidationError("atom config: j0 >= 0 violated");
  if (!(hbar > 0.0)) throw ValidationError("atom config: hbar > 0 violated");
  if (!std::isfinite(e2 - hbar * omega_drive))
    throw ValidationError("atom config: V2 = e2 - hbar*omega_drive must be finite");
}

void Tolerances::validate() const {
  if (!(deg_eps > 0.0)) throw ValidationError("tolerances: deg_eps > 0 violated");
  if (!(rad_eps > 0.0)) throw ValidationError("tolerances: rad_eps > 0 violated");
  if (!(quad_tol > 0.0)) throw ValidationError("tolerances: quad_tol > 0 violated");
  if (!(norm_tol > 0.0)) throw ValidationError("tolerances: norm_tol > 0 violated");
  if (max_panels == 0) throw ValidationError("tolerances: max_panels > 0 violated");
}

double detuning(const AtomConfig& cfg) {
  return 0.5 * ((cfg.e2 - cfg.e1) / cfg.hbar - cfg.omega_drive);
}

bool branch_flips_active(const AtomConfig& cfg, const DriveSignal& drive,
                         const Tolerances& tol) {
  const double wt = detuning(cfg);
  const double scale = frequency_scale(cfg, drive);
  return wt * wt <= tol.rad_eps * scale * scale;
}

int branch_sign(const AtomConfig& cfg, const DriveSignal& drive, double t,
                BranchMode branch, const Tolerances& tol) {
  return instant(cfg, drive, t, branch, tol).sign;
}

double rabi_frequency(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol) {
  return instant(cfg, drive, t, branch, tol).wr;
}

double mixing_angle_value(const AtomConfig& cfg, const DriveSignal& drive, double t,
                          BranchMode branch, const Tolerances& tol) {
  return half_angle(instant(cfg, drive, t, branch, tol), tol);
}

MixingAngle mixing_angle(const AtomConfig& cfg, const DriveSignal& drive, double t,
                         BranchMode branch, const Tolerances& tol) {
  const double theta = mixing_angle_value(cfg, drive, t, branch, tol);
  return {std::cos(theta), std::sin(theta)};
}

double connection_dtheta(const AtomConfig& cfg, const DriveSignal& drive, double t,
                         BranchMode branch, const Tolerances& tol) {
  return connection_from(instant(cfg, drive, t, branch, tol), tol, nullptr);
}

double connection_dtheta_as_printed(const AtomConfig& cfg, const DriveSignal& drive,
                                    double t, BranchMode branch, const Tolerances& tol) {
  return -connection_dtheta(cfg, drive, t, branch, tol);
}

FrameQuantities frame(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol) {
  const Instant in = instant(cfg, drive, t, branch, tol);
  FrameQuantities f;
  f.t = t;
  f.omega_tilde = in.wt;
  f.omega_r = in.wr;
  f.branch_sign = in.sign;
  f.coupling = in.beta;
  f.carrier_phase = in.phase;
  const double theta = half_angle(in, tol);
  f.cos_theta = std::cos(theta);
  f.sin_theta = std::sin(theta);
  f.dtheta_dt = connection_from(in, tol, &f.indeterminate);
  return f;
}

IdentityResiduals identity_residuals(const AtomConfig& cfg, const DriveSignal& drive,
                                     double t, BranchMode branch, const Tolerances& tol) {
  IdentityResiduals r;
  r.t = t;
  const double wt = std::abs(detuning(cfg));
  const double jmax = drive.max_coupling() / cfg.hbar;
  double rate = std::max({cfg.omega_drive, wt, jmax});
  if (wt > 0.0) rate = std::max(rate, std::min(jmax * cfg.omega_drive / wt, 1e8));
  const double h = 1e-2 / rate;

  try {
    const Instant in = instant(cfg, drive, t, branch, tol);
    r.omega_r = in.wr;
    auto wr_at = [&](double x) { return instant(cfg, drive, x, branch, tol).wr; };
    auto beta_at = [&](double x) { return instant(cfg, drive, x, branch, tol).beta; };
    auto u_at = [&](double x) {
      const Instant i = instant(cfg, drive, x, branch, tol);
      return shifted_root(i.wt, i.wr, i.beta);
    };
    auto norm_at = [&](double x) {
      const Instant i = instant(cfg, drive, x, branch, tol);
      const double u = shifted_root(i.wt, i.wr, i.beta);
      return u * u + i.beta * i.beta;
    };
    auto cos_at = [&](double x) { return std::cos(mixing_angle_value(cfg, drive, x, branch, tol)); };
    auto sin_at = [&](double x) { return std::sin(mixing_angle_value(cfg, drive, x, branch, tol)); };

    const double dwr = central_derivative(wr_at, t, h);
    r.r1 = in.wr * dwr - in.jj;

    const double u = shifted_root(in.wt, in.wr, in.beta);
    const double m = u * u + in.beta * in.beta;
    const double dm = central_derivative(norm_at, t, h);
    const double lambda = m > 0.0 ? -0.5 * dm / m : 0.0;
    const double dbeta = central_derivative(beta_at, t, h);
    const double du = central_derivative(u_at, t, h);
    r.r2 = in.beta * (dbeta + lambda * in.beta) + u * (du + lambda * u);

    const double c = cos_at(t), s = sin_at(t);
    r.dtheta = connection_from(in, tol, nullptr);
    if (std::abs(s * c) > 1e-3) {
      const double dc = central_derivative(cos_at, t, h);
      const double ds = central_derivative(sin_at, t, h);
      r.dtheta_from_cos = dc / (-s);
      r.dtheta_from_sin = ds / c;
      r.r3 = *r.dtheta_from_cos - *r.dtheta_from_sin;
    }
  } catch (const DegenerateFrame&) {
    r.valid = false;
  }
  return r;
}

double dispersion_omega(const DispersionInput& d) {
  if (!(d.m > 0.0)) throw ValidationError("dispersion: m > 0 violated");
  return d.omega_drive + (d.hbar * d.k * d.k / (2.0 * d.m) - d.e_bar / d.hbar);
}

double transition_current(const StateVector& c) {
  return -(std::conj(c.c1) * c.c2).imag();
}

FrameTracker::FrameTracker(AtomConfig cfg, DriveSignal drive, BranchMode branch,
                           Tolerances tol)
    : cfg_(cfg), drive_(std::move(drive)), branch_(branch), tol_(tol) {}

FrameQuantities FrameTracker::at(double t) {
  try {
    FrameQuantities f = frame(cfg_, drive_, t, branch_, tol_);
    last_ = {f.cos_theta, f.sin_theta};
    return f;
  } catch (const DegenerateFrame&) {
    const Instant in = instant(cfg_, drive_, t, branch_, tol_);
    FrameQuantities f;
    f.t = t;
    f.omega_tilde = in.wt;
    f.omega_r = in.wr;
    f.branch_sign = in.sign;
    f.coupling = in.beta;
    f.carrier_phase = in.phase;
    f.cos_theta = last_.cos_theta;
    f.sin_theta = last_.sin_theta;
    f.dtheta_dt = 0.0;
    f.degenerate = true;
    return f;
  }
}

}  // namespace dressed
