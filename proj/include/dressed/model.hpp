#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include "dressed/drive.hpp"

namespace dressed {

using complex = std::complex<double>;

/// Fixed parameters of the driven two-level atom. Energies are given in
/// energy units and converted by `hbar`; the drive frequency is an angular
/// frequency. Level 2 carries the photon recoil: V2 = e2 - hbar * omega_drive.
struct AtomConfig {
  double e1 = 0.0;
  double e2 = 2.0;
  double omega_drive = 2.0;
  double j0 = 1.0;
  double hbar = 1.0;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  bool operator==(const AtomConfig&) const = default;
};

enum class BranchMode {
  /// omega_R >= 0 at every instant.
  PositiveRoot,
  /// omega_R changes sign where the radicand passes through zero, so the
  /// dressed eigenvalue curves stay smooth through level crossings.
  SmoothContinuation,
};

/// Numerical thresholds. `rad_eps` is relative to the squared frequency scale
/// max(omega_drive, max|J + i Gamma| / hbar).
struct Tolerances {
  double deg_eps = 1e-12;
  double rad_eps = 1e-12;
  double quad_tol = 1e-10;
  double norm_tol = 1e-8;
  std::size_t max_panels = std::size_t{1} << 15;

  void validate() const;
  bool operator==(const Tolerances&) const = default;
};

/// Instantaneous dressed-frame quantities, natural units (hbar = 1).
struct FrameQuantities {
  double t = 0.0;
  double omega_tilde = 0.0;
  double omega_r = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double dtheta_dt = 0.0;
  int branch_sign = 1;
  /// Signed coupling amplitude |J + i Gamma| / hbar, see CarrierSample.
  double coupling = 0.0;
  /// Carrier phase of J + i Gamma.
  double carrier_phase = 0.0;
  /// Set when the zero-coupling limit of the connection could not be resolved.
  bool indeterminate = false;
  /// Set by FrameTracker when the angle was carried forward.
  bool degenerate = false;
};

struct MixingAngle {
  double cos_theta = 1.0;
  double sin_theta = 0.0;
};

struct StateVector {
  complex c1{1.0, 0.0};
  complex c2{0.0, 0.0};

  double norm() const { return std::sqrt(std::norm(c1) + std::norm(c2)); }
};

struct DispersionInput {
  double k = 0.0;
  double m = 1.0;
  double e_bar = 0.0;
  double omega_drive = 1.0;
  double hbar = 1.0;
};

/// Residuals of the identities that hold for arbitrary J(t), Gamma(t).
/// Derivatives of composite quantities come from sixth-order central finite
/// differences of the model functions; drive derivatives are analytic.
struct IdentityResiduals {
  double t = 0.0;
  double r1 = 0.0;  // omega_R omega_R' - (j j' + g g')
  double r2 = 0.0;  // beta (d + Lambda) beta + u (d + Lambda) u, u = omega~ + omega_R
  std::optional<double> r3;            // only where |sin cos| > 1e-3
  std::optional<double> dtheta_from_cos;  // (d cos) / (-sin)
  std::optional<double> dtheta_from_sin;  // (d sin) / cos
  double dtheta = 0.0;                 // connection_dtheta
  double omega_r = 0.0;
  bool valid = true;                   // false if the stencil hit a degenerate frame
};

double detuning(const AtomConfig& cfg);

/// True when the radicand omega~^2 + (J^2+G^2)/hbar^2 may vanish, i.e. the
/// smooth-continuation branch is allowed to flip.
bool branch_flips_active(const AtomConfig& cfg, const DriveSignal& drive,
                         const Tolerances& tol = {});

int branch_sign(const AtomConfig& cfg, const DriveSignal& drive, double t,
                BranchMode branch, const Tolerances& tol = {});

double rabi_frequency(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol = {});

/// Throws DegenerateFrame where |omega_R| < deg_eps.
MixingAngle mixing_angle(const AtomConfig& cfg, const DriveSignal& drive, double t,
                         BranchMode branch, const Tolerances& tol = {});

/// Continuous angle theta(t) with cos/sin equal to mixing_angle().
double mixing_angle_value(const AtomConfig& cfg, const DriveSignal& drive, double t,
                          BranchMode branch, const Tolerances& tol = {});

/// d theta / dt from the connection formula, sign fixed so that it is the
/// time derivative of mixing_angle_value(). Throws DegenerateFrame.
double connection_dtheta(const AtomConfig& cfg, const DriveSignal& drive, double t,
                         BranchMode branch, const Tolerances& tol = {});

/// The connection formula with the overall sign it is usually printed with
/// (equal to -connection_dtheta). Only used for reporting.
double connection_dtheta_as_printed(const AtomConfig& cfg, const DriveSignal& drive,
                                    double t, BranchMode branch,
                                    const Tolerances& tol = {});

FrameQuantities frame(const AtomConfig& cfg, const DriveSignal& drive, double t,
                      BranchMode branch, const Tolerances& tol = {});

IdentityResiduals identity_residuals(const AtomConfig& cfg, const DriveSignal& drive,
                                     double t, BranchMode branch,
                                     const Tolerances& tol = {});

double dispersion_omega(const DispersionInput& d);

/// (i/2)(c1* c2 - c2* c1) = -Im(c1* c2).
double transition_current(const StateVector& c);

/// Sequential frame evaluation that holds the last well-defined angle across
/// degenerate instants (theta = 0 if the first instant is degenerate).
class FrameTracker {
 public:
  FrameTracker(AtomConfig cfg, DriveSignal drive, BranchMode branch, Tolerances tol = {});

  FrameQuantities at(double t);

 private:
  AtomConfig cfg_;
  DriveSignal drive_;
  BranchMode branch_;
  Tolerances tol_;
  MixingAngle last_{};
};

}  // namespace dressed
