#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dressed/drive.hpp"
#include "dressed/model.hpp"
#include "dressed/oracle.hpp"
#include "dressed/timeseries.hpp"

namespace dressed {

enum class DriveChoice { Cosine, Rwa, Constant, Tabulated };
enum class OutputKind { Frame, Closed, Oracle, Compare, Identities, Current };

struct DriveTable {
  std::vector<double> t, j, gamma;
  std::optional<std::vector<double>> dj, dgamma;
  double derivative_tol = 1e-6;

  bool operator==(const DriveTable&) const = default;
};

/// Flat scenario description.
///
///   key            default     meaning
///   e1, e2         0, 2        level energies
///   omega          2           drive angular frequency
///   j0             1           drive amplitude (>= 0)
///   hbar           1
///   drive          "cosine"    cosine | rwa | constant | tabulated
///   gamma0         0           Gamma for the constant drive
///   table          -           {t, j, gamma[, dj, dgamma, derivative_tol]}
///   branch         "smooth"    smooth | positive
///   t_end          10
///   dt             1e-3        RK4 step
///   output_stride  10          record every k-th step
///   initial_state  "psi"       psi | ground | excited
///   deg_eps, rad_eps, quad_tol, norm_tol, max_panels   see Tolerances
///   outputs        ["frame","closed","oracle","compare"]
///                  any of frame, closed, oracle, compare, identities, current
struct ScenarioConfig {
  AtomConfig atom{};
  DriveChoice drive = DriveChoice::Cosine;
  double gamma0 = 0.0;
  DriveTable table{};
  BranchMode branch = BranchMode::SmoothContinuation;
  double t_end = 10.0;
  double dt = 1e-3;
  std::size_t output_stride = 10;
  InitialState initial_state = InitialState::PsiFrame;
  Tolerances tol{};
  std::vector<OutputKind> outputs{OutputKind::Frame, OutputKind::Closed, OutputKind::Oracle,
                                  OutputKind::Compare};

  /// Throws ValidationError.
  void validate() const;
  DriveSignal make_drive() const;
  bool wants(OutputKind k) const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// JSON object. Unknown keys and wrongly typed values raise ParseError with
/// the line of the offending key; violated invariants raise ValidationError.
ScenarioConfig parse_config(std::string_view text);
std::string serialize_config(const ScenarioConfig& cfg);

std::string_view output_name(OutputKind k);

struct ScenarioResult {
  std::map<std::string, TimeSeries> series;  // by output name
  nlohmann::ordered_json report;
};

/// Evaluates the requested outputs on the oracle output grid. Errors carry
/// the name of the output being produced.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Plain table (no time ordering).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const;
  std::string to_csv() const;
};

struct SweepResult {
  Table summary;   // one row per value
  Table combined;  // all closed/oracle series stacked, first column the value
};

/// Names accepted by sweep(): omega_tilde (moves e2, keeping e1 and omega),
/// e1, e2, omega, j0, hbar, gamma0, t_end, dt.
const std::vector<std::string>& sweep_axes();

/// Applies one axis value; throws UnknownAxis.
ScenarioConfig with_axis(const ScenarioConfig& base, std::string_view axis, double value);

/// Runs one scenario per value. Where dt exceeds the oracle step bound for
/// a value, the bound is used instead (column dt_used).
SweepResult sweep(const ScenarioConfig& base, std::string_view axis,
                  const std::vector<double>& values);

}  // namespace dressed
