#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "dressed/drive.hpp"
#include "dressed/model.hpp"
#include "dressed/timeseries.hpp"

namespace dressed {

/// H(t) = [[V1, J + iG], [J - iG, V2]] / hbar with V1 = e1, V2 = e2 - hbar Omega.
Eigen::Matrix2cd hamiltonian(const AtomConfig& cfg, const DriveSignal& drive, double t);

struct StepReport {
  double dt = 0.0;  // step actually used (t_end / steps)
  std::size_t steps = 0;
  double max_norm_drift = 0.0;
  /// max |c_dt - c_dt/2| / 15 over the output grid; nullopt if not requested.
  std::optional<double> richardson_error;
  bool norm_flag = false;  // drift exceeded norm_tol
};

struct PropagationResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<complex> dressed_a_plus;
  std::vector<complex> dressed_a_minus;
  std::vector<complex> psi0_oracle;
  std::vector<complex> psi1_oracle;
  std::vector<double> current;
  StepReport step_report;
  BranchMode branch = BranchMode::SmoothContinuation;
};

struct PropagateOptions {
  std::size_t output_stride = 10;
  bool richardson = true;
  Tolerances tol{};
};

/// Largest admissible step, min(2 pi/Omega, 2 pi/max|omega_R|) / 200.
double max_step(const AtomConfig& cfg, const DriveSignal& drive);

/// Recorded times of propagate(): multiples of stride steps, t = 0 and t_end.
/// Empty for t_end == 0.
std::vector<double> output_grid(double t_end, double dt, std::size_t stride);

/// Fixed-step RK4 for i c' = H(t) c on [0, t_end]. The step is t_end / n with
/// n = ceil(t_end / dt). Every `output_stride`-th step is recorded, plus t = 0
/// and t_end. Throws StepTooLarge if dt exceeds max_step().
PropagationResult propagate(const AtomConfig& cfg, const DriveSignal& drive,
                            const StateVector& c0, double t_end, double dt, BranchMode branch,
                            const PropagateOptions& opts = {});

/// Dressed amplitudes <e+|c>, <e-|c> with the offset phase exp(-i(E1+E2-hbar Omega) t / 2hbar)
/// removed. e+ = (e^{i phi} sin, cos), e- = (e^{i phi} cos, -sin).
std::pair<complex, complex> dressed_amplitudes(const AtomConfig& cfg, const FrameQuantities& f,
                                               const StateVector& c);

enum class InitialState { PsiFrame, Ground, Excited };

/// (e+ + e-)/sqrt(2) at t = 0, so that a+(0) = a-(0) = 1/sqrt(2).
StateVector initial_state_for_psi_frame(const AtomConfig& cfg, const DriveSignal& drive,
                                        BranchMode branch, const Tolerances& tol = {});

StateVector initial_state(InitialState kind, const AtomConfig& cfg, const DriveSignal& drive,
                          BranchMode branch, const Tolerances& tol = {});

enum class Metric { MaxAbs, Rms, PhaseSlip };

struct ComparisonReport {
  double max_abs = 0.0;
  double rms = 0.0;
  double phase_slip = 0.0;
  std::size_t samples = 0;

  double value(Metric m) const;
};

/// Both series need columns t, p0, re_psi0, im_psi0 on identical grids
/// (GridMismatch otherwise). MaxAbs and Rms are over p0; PhaseSlip is the
/// largest drift of arg(psi0_a) - arg(psi0_b), unwrapped over the samples
/// where both |psi0| > 0.1, relative to the first such sample.
ComparisonReport compare(const TimeSeries& a, const TimeSeries& b);
double compare(const TimeSeries& a, const TimeSeries& b, Metric metric);

/// Oracle series in the layout expected by compare().
TimeSeries oracle_psi_series(const PropagationResult& r);

enum class FitStatus { Ok, NoOscillation };

struct CurrentFit {
  FitStatus status = FitStatus::NoOscillation;
  double rho_derivative = 0.0;  // corr(d current/dt, sin(2 Re Z))
  double amplitude = 0.0;       // least-squares amplitude of that fit
  double rho_current = 0.0;     // corr(current, sin(2 Re Z))
  double periods = 0.0;         // int |omega_R| dt / pi
  std::size_t samples = 0;
};

/// Fits the numerical time derivative of the transition current against
/// sin(2 Re Z(t)). Needs at least five periods; throws InsufficientSpan.
CurrentFit current_dynamics_check(const PropagationResult& result, const AtomConfig& cfg,
                                  const DriveSignal& drive, const Tolerances& tol = {});

struct ConvergenceReport {
  double dt = 0.0;
  double error_coarse = 0.0;  // |c_dt - c_dt/2| at t_end
  double error_fine = 0.0;    // |c_dt/2 - c_dt/4| at t_end
  double order = 0.0;
  double drift_coarse = 0.0;
  double drift_fine = 0.0;
  double drift_exponent = 0.0;
};

/// Step-halving estimate of the observed order, from runs at dt, dt/2, dt/4.
ConvergenceReport convergence_order(const AtomConfig& cfg, const DriveSignal& drive,
                                    const StateVector& c0, double t_end, double dt,
                                    BranchMode branch, const Tolerances& tol = {});

}  // namespace dressed
