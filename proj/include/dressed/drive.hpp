#pragma once

#include <memory>
#include <span>
#include <vector>

namespace dressed {

enum class DriveKind { Cosine, RwaPair, Constant, Tabulated };

/// Off-diagonal source (J, Gamma) and its time derivatives at one instant.
/// Units are energies (and energy/time); model code divides by hbar.
struct DriveSample {
  double j = 0.0;
  double gamma = 0.0;
  double dj = 0.0;
  double dgamma = 0.0;
};

/// The complex coupling b = J + i Gamma written as amplitude * exp(i phase),
/// with the phase continuous in time and the amplitude carrying the sign.
/// For a real drive the phase is 0 and the amplitude is J itself, so the
/// amplitude passes smoothly through the zeros of cos(Omega t).
struct CarrierSample {
  double amplitude = 0.0;
  double amplitude_rate = 0.0;
  double phase = 0.0;
};

/// The source pair (J(t), Gamma(t)). Cheap to copy; tabulated data is shared.
class DriveSignal {
 public:
  /// J = j0 cos(omega t), Gamma = 0.
  static DriveSignal cosine(double j0, double omega);
  /// J = j0 cos(omega t), Gamma = j0 sin(omega t).
  static DriveSignal rwa_pair(double j0, double omega);
  static DriveSignal constant(double j0, double gamma0);
  /// Derivatives from fourth-order finite differences on the (possibly
  /// non-uniform) grid. At least five strictly increasing nodes.
  static DriveSignal tabulated(std::vector<double> t, std::vector<double> j,
                               std::vector<double> gamma);
  /// As above, and checks the supplied derivatives against the finite
  /// differences to `derivative_tol` (absolute). The supplied values are kept.
  static DriveSignal tabulated(std::vector<double> t, std::vector<double> j,
                               std::vector<double> gamma,
                               std::vector<double> dj,
                               std::vector<double> dgamma,
                               double derivative_tol);

  DriveKind kind() const { return kind_; }
  double j0() const { return j0_; }
  double omega() const { return omega_; }
  double gamma0() const { return gamma0_; }

  DriveSample operator()(double t) const;
  CarrierSample carrier(double t) const;

  /// Times in [t0, t1] where the carrier amplitude changes sign.
  std::vector<double> coupling_zeros(double t0, double t1) const;

  /// Upper bound of |J + i Gamma| over the drive's support.
  double max_coupling() const;

  /// Time interval where the drive is defined (infinite for analytic kinds).
  double t_min() const;
  double t_max() const;

 private:
  struct Table;

  DriveKind kind_ = DriveKind::Constant;
  double j0_ = 0.0;
  double omega_ = 0.0;
  double gamma0_ = 0.0;
  std::shared_ptr<const Table> table_;
};

/// Five-point fourth-order first-derivative weights (Fornberg) at x0 for the
/// given nodes. Exposed for tests.
std::vector<double> fd_weights(double x0, std::span<const double> nodes);

}  // namespace dressed
