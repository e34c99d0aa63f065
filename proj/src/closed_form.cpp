#include "dressed/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dressed/elliptic.hpp"
#include "dressed/errors.hpp"
#include "dressed/quadrature.hpp"

namespace dressed {

namespace {

void require_cosine(const DriveSignal& drive, const char* what) {
  if (drive.kind() != DriveKind::Cosine)
    throw DomainError(std::string(what) + ": requires a Cosine drive");
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("phase integral: t >= 0 required");
}

// theta' with the degenerate-frame convention of FrameTracker: the held angle
// does not move.
double safe_dtheta(const AtomConfig& cfg, const DriveSignal& drive, double t,
                   BranchMode branch, const Tolerances& tol) {
  try {
    return connection_dtheta(cfg, drive, t, branch, tol);
  } catch (const DegenerateFrame&) {
    return 0.0;
  }
}

std::vector<double> zeros_in(const std::vector<double>& zeros, double a, double b) {
  std::vector<double> out;
  auto lo = std::upper_bound(zeros.begin(), zeros.end(), a);
  auto hi = std::lower_bound(zeros.begin(), zeros.end(), b);
  out.assign(lo, hi);
  return out;
}

double real_part(const AtomConfig& cfg, const DriveSignal& drive, double a, double b,
                 BranchMode branch, const Tolerances& tol, double abs_tol,
                 const std::vector<double>& zeros) {
  auto f = [&](double s) { return rabi_frequency(cfg, drive, s, branch, tol); };
  return integrate(f, a, b, abs_tol, tol.max_panels, zeros).value;
}

double imag_part_quadrature(const AtomConfig& cfg, const DriveSignal& drive, double a,
                            double b, BranchMode branch, const Tolerances& tol,
                            double abs_tol, const std::vector<double>& zeros) {
  auto f = [&](double s) { return safe_dtheta(cfg, drive, s, branch, tol); };
  return integrate(f, a, b, abs_tol, tol.max_panels, zeros).value;
}

}  // namespace

PhaseIntegrand phase_integrand(const AtomConfig& cfg, const DriveSignal& drive, double t,
                               BranchMode branch, const Tolerances& tol) {
  return {t, rabi_frequency(cfg, drive, t, branch, tol),
          connection_dtheta(cfg, drive, t, branch, tol)};
}

bool frame_continuous(const AtomConfig& cfg, const DriveSignal& drive, double t0, double t1,
                      BranchMode branch, const Tolerances& tol) {
  if (!branch_flips_active(cfg, drive, tol)) return true;
  if (drive.coupling_zeros(t0, t1).empty()) return true;
  return branch == BranchMode::SmoothContinuation && detuning(cfg) == 0.0;
}

complex phase_integral(const AtomConfig& cfg, const DriveSignal& drive, double t,
                       BranchMode branch, const Tolerances& tol) {
  require_time(t);
  if (t == 0.0) return {};
  const auto zeros = drive.coupling_zeros(0.0, t);
  const double re = real_part(cfg, drive, 0.0, t, branch, tol, tol.quad_tol, zeros);
  if (frame_continuous(cfg, drive, 0.0, t, branch, tol)) {
    try {
      return {re, mixing_angle_value(cfg, drive, t, branch, tol) -
                      mixing_angle_value(cfg, drive, 0.0, branch, tol)};
    } catch (const DegenerateFrame&) {
    }
  }
  return {re, imag_part_quadrature(cfg, drive, 0.0, t, branch, tol, tol.quad_tol, zeros)};
}

complex phase_integral_quadrature(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                  BranchMode branch, const Tolerances& tol) {
  require_time(t);
  if (t == 0.0) return {};
  const auto zeros = drive.coupling_zeros(0.0, t);
  return {real_part(cfg, drive, 0.0, t, branch, tol, tol.quad_tol, zeros),
          imag_part_quadrature(cfg, drive, 0.0, t, branch, tol, tol.quad_tol, zeros)};
}

std::vector<complex> phase_series(const AtomConfig& cfg, const DriveSignal& drive,
                                  std::span<const double> times, BranchMode branch,
                                  const Tolerances& tol) {
  std::vector<complex> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    require_time(times[i]);
    if (i > 0 && !(times[i] > times[i - 1]))
      throw DomainError("phase series: times must be strictly increasing");
  }
  const double t_end = times.back();
  if (t_end == 0.0) return std::vector<complex>(times.size());

  const auto zeros = drive.coupling_zeros(0.0, t_end);
  const bool continuous = frame_continuous(cfg, drive, 0.0, t_end, branch, tol);
  double theta0 = 0.0;
  bool use_theta = continuous;
  if (use_theta) {
    try {
      theta0 = mixing_angle_value(cfg, drive, 0.0, branch, tol);
    } catch (const DegenerateFrame&) {
      use_theta = false;
    }
  }

  double re = 0.0, im = 0.0, prev = 0.0;
  for (double t : times) {
    if (t > prev) {
      const double budget = tol.quad_tol * (t - prev) / t_end;
      const auto local = zeros_in(zeros, prev, t);
      re += real_part(cfg, drive, prev, t, branch, tol, budget, local);
      if (!use_theta) im += imag_part_quadrature(cfg, drive, prev, t, branch, tol, budget, local);
    }
    if (use_theta) {
      try {
        im = mixing_angle_value(cfg, drive, t, branch, tol) - theta0;
      } catch (const DegenerateFrame&) {
        // held angle
      }
    }
    out.emplace_back(re, im);
    prev = t;
  }
  return out;
}

DressedSolution dressed_from_phase(double t, complex phase) {
  DressedSolution d;
  d.t = t;
  d.phase = phase;
  const complex i{0.0, 1.0};
  d.psi_plus = std::exp(-i * phase);
  d.psi_minus = std::exp(i * phase);
  d.psi0 = -std::sin(phase);
  d.psi1 = std::cos(phase);
  d.p0_raw = std::norm(d.psi0);
  d.p1_raw = std::norm(d.psi1);
  d.p0_norm = d.p0_raw / (d.p0_raw + d.p1_raw);
  return d;
}

DressedSolution dressed_solution(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                 BranchMode branch, const Tolerances& tol) {
  return dressed_from_phase(t, phase_integral(cfg, drive, t, branch, tol));
}

complex psi0_gamma_zero_integrand(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                  BranchMode branch, const Tolerances& tol) {
  require_cosine(drive, "psi0_gamma_zero_integrand");
  const double wt = detuning(cfg);
  const double j = drive.j0() / cfg.hbar;
  const double w = drive.omega();
  const double c = std::cos(w * t), s = std::sin(w * t);
  const double wr = rabi_frequency(cfg, drive, t, branch, tol);
  if (std::abs(wr) < tol.deg_eps)
    throw DegenerateFrame("Gamma = 0 integrand: radicand vanishes");
  const double re = std::sqrt(wt * wt + j * j * c * c);
  if (wt == 0.0) return {re, 0.0};
  const double shifted = wt + wr;
  if (shifted == 0.0) throw DegenerateFrame("Gamma = 0 integrand: omega~ + omega_R vanishes");
  const double inner = wt + j * j * c * c / shifted;
  if (inner == 0.0) throw DegenerateFrame("Gamma = 0 integrand: bracket vanishes");
  return {re, -wt * (j * w * s) / (2.0 * wr) / inner};
}

double resonant_amplitude(const AtomConfig& cfg) {
  const double wt = detuning(cfg);
  const double j = cfg.j0 / cfg.hbar;
  const double r = std::hypot(wt, j);
  return r == 0.0 ? 0.0 : j / r;
}

double elliptic_phase(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol) {
  require_cosine(drive, "elliptic_phase");
  if (branch == BranchMode::SmoothContinuation && branch_flips_active(cfg, drive, tol))
    throw DomainError("elliptic_phase: omega_R changes sign on this branch");
  const double wt = detuning(cfg);
  const double j = drive.j0() / cfg.hbar;
  const double r = std::hypot(wt, j);
  if (r == 0.0) return 0.0;
  return r / drive.omega() * ellip_e_incomplete({drive.omega() * t, std::min(1.0, j / r)});
}

double elliptic_phase_printed_prefactor(const AtomConfig& cfg, const DriveSignal& drive,
                                        double t) {
  require_cosine(drive, "elliptic_phase_printed_prefactor");
  const double a = resonant_amplitude({cfg.e1, cfg.e2, cfg.omega_drive, drive.j0(), cfg.hbar});
  if (a == 0.0) return 0.0;
  const double j = drive.j0() / cfg.hbar;
  return j * drive.omega() / a * ellip_e_incomplete({drive.omega() * t, std::min(1.0, a)});
}

double elliptic_companion_term(const AtomConfig& cfg, const DriveSignal& drive, double t) {
  require_cosine(drive, "elliptic_companion_term");
  const double wt = detuning(cfg);
  const double j = drive.j0() / cfg.hbar;
  const double r = std::hypot(wt, j);
  if (r == 0.0 || j == 0.0) return 0.0;
  if (wt == 0.0) throw DomainError("elliptic_companion_term: diverges for A = 1");
  const double a = j / r, ap = std::abs(wt) / r;
  return std::asinh(a * std::cos(drive.omega() * t) / ap) - std::asinh(a / ap);
}

double limit_form(const AtomConfig& cfg, const DriveSignal& drive, Regime regime, double t) {
  require_cosine(drive, "limit_form");
  const double wt = detuning(cfg);
  const double j = drive.j0() / cfg.hbar;
  const double w = drive.omega();
  if (regime == Regime::Resonant) {
    if (std::abs(wt) > 0.01 * j)
      throw RegimeMismatch("limit_form: Resonant needs |omega_tilde| <= 0.01 j0");
    return std::abs(std::sin(j / w * std::sin(w * t)));
  }
  if (std::abs(wt) < 100.0 * j)
    throw RegimeMismatch("limit_form: FarDetuned needs |omega_tilde| >= 100 j0");
  return std::abs(std::sin(wt * t));
}

}  // namespace dressed
