#pragma once

#include <span>
#include <vector>

#include "dressed/drive.hpp"
#include "dressed/model.hpp"

namespace dressed {

struct PhaseIntegrand {
  double t = 0.0;
  double omega_r = 0.0;
  double dtheta_dt = 0.0;
};

/// Observables built from the complex phase Z(t) = int_0^t (omega_R + i theta') dt'.
struct DressedSolution {
  double t = 0.0;
  complex phase{};
  complex psi_plus{1.0, 0.0};   // exp(-i Z)
  complex psi_minus{1.0, 0.0};  // exp(+i Z)
  complex psi0{};               // (psi_plus - psi_minus) / 2i = -sin Z
  complex psi1{1.0, 0.0};       // (psi_plus + psi_minus) / 2 = cos Z
  double p0_raw = 0.0;
  double p1_raw = 1.0;
  double p0_norm = 0.0;
};

PhaseIntegrand phase_integrand(const AtomConfig& cfg, const DriveSignal& drive, double t,
                               BranchMode branch, const Tolerances& tol = {});

/// True when theta(t) is continuous on [t0, t1] for this branch, so that
/// int theta' = theta(t1) - theta(t0).
bool frame_continuous(const AtomConfig& cfg, const DriveSignal& drive, double t0, double t1,
                      BranchMode branch, const Tolerances& tol = {});

/// Z(t). The real part is adaptive quadrature of omega_R with panel edges at
/// the coupling zeros; the imaginary part is theta(t) - theta(0) when the
/// frame is continuous, otherwise quadrature of theta'. Absolute tolerance
/// tol.quad_tol on each part.
complex phase_integral(const AtomConfig& cfg, const DriveSignal& drive, double t,
                       BranchMode branch, const Tolerances& tol = {});

/// Z(t) with both parts from quadrature (no theta shortcut).
complex phase_integral_quadrature(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                  BranchMode branch, const Tolerances& tol = {});

/// Z on an increasing grid of non-negative times, accumulated interval by
/// interval. The total error budget tol.quad_tol is shared over the grid.
std::vector<complex> phase_series(const AtomConfig& cfg, const DriveSignal& drive,
                                  std::span<const double> times, BranchMode branch,
                                  const Tolerances& tol = {});

DressedSolution dressed_from_phase(double t, complex phase);

DressedSolution dressed_solution(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                 BranchMode branch, const Tolerances& tol = {});

/// The long-form Gamma = 0 integrand
///   sqrt(w~^2 + j^2 cos^2) - i w~ (j Omega sin)/(2 w_R) [w~ + j^2 cos^2/(w~ + w_R)]^-1
/// evaluated term by term for a Cosine drive.
complex psi0_gamma_zero_integrand(const AtomConfig& cfg, const DriveSignal& drive, double t,
                                  BranchMode branch, const Tolerances& tol = {});

/// A = j0 / sqrt(w~^2 + j0^2), natural units; 0 when both vanish.
double resonant_amplitude(const AtomConfig& cfg);

/// int_0^t |omega_R| dt' = (sqrt(w~^2 + j0^2)/Omega) E(Omega t, A) for a Cosine
/// drive. Requires a branch on which omega_R >= 0 throughout.
double elliptic_phase(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol = {});

/// The same elliptic term with prefactor j0 Omega / A. Reporting only.
double elliptic_phase_printed_prefactor(const AtomConfig& cfg, const DriveSignal& drive,
                                        double t);

/// -A int_0^{Omega t} sin x / sqrt(1 - A^2 sin^2 x) dx, the companion term
/// of the elliptic representation, in closed form
/// asinh(A cos(Omega t)/A') - asinh(A/A'), A' = sqrt(1 - A^2). Needs A < 1.
double elliptic_companion_term(const AtomConfig& cfg, const DriveSignal& drive, double t);

enum class Regime { Resonant, FarDetuned };

/// Asymptotic |Psi0|: Resonant |sin((j0/Omega) sin(Omega t))| for
/// |w~| <= 0.01 j0; FarDetuned |sin(w~ t)| for |w~| >= 100 j0. Throws
/// RegimeMismatch outside those ranges.
double limit_form(const AtomConfig& cfg, const DriveSignal& drive, Regime regime, double t);

}  // namespace dressed
