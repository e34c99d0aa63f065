#include "dressed/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "dressed/closed_form.hpp"
#include "dressed/errors.hpp"
#include "dressed/spectral.hpp"

namespace dressed {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "e1",      "e2",        "omega",         "j0",         "hbar",    "drive",
      "gamma0",  "table",     "branch",        "t_end",      "dt",      "output_stride",
      "initial_state", "deg_eps", "rad_eps",   "quad_tol",   "norm_tol", "max_panels",
      "outputs"};
  return keys;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::size_t key_line(std::string_view text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 0 : line_of(text, pos);
}

[[noreturn]] void key_error(std::string_view text, const std::string& key, const std::string& what) {
  const std::size_t line = key_line(text, key);
  throw ParseError((line ? "line " + std::to_string(line) + ": " : std::string()) + "key '" + key +
                   "': " + what);
}

constexpr std::pair<const char*, DriveChoice> kDrives[] = {{"cosine", DriveChoice::Cosine},
                                                           {"rwa", DriveChoice::Rwa},
                                                           {"constant", DriveChoice::Constant},
                                                           {"tabulated", DriveChoice::Tabulated}};
constexpr std::pair<const char*, BranchMode> kBranches[] = {
    {"smooth", BranchMode::SmoothContinuation}, {"positive", BranchMode::PositiveRoot}};
constexpr std::pair<const char*, InitialState> kInitial[] = {{"psi", InitialState::PsiFrame},
                                                             {"ground", InitialState::Ground},
                                                             {"excited", InitialState::Excited}};
constexpr std::pair<const char*, OutputKind> kOutputs[] = {
    {"frame", OutputKind::Frame},           {"closed", OutputKind::Closed},
    {"oracle", OutputKind::Oracle},         {"compare", OutputKind::Compare},
    {"identities", OutputKind::Identities}, {"current", OutputKind::Current}};

template <class E, std::size_t N>
const char* name_of(const std::pair<const char*, E> (&names)[N], E e) {
  for (const auto& [n, v] : names)
    if (v == e) return n;
  return "";
}

template <class E, std::size_t N>
E lookup(std::string_view text, const std::string& key, const json& v,
         const std::pair<const char*, E> (&names)[N]) {
  if (!v.is_string()) key_error(text, key, "expected a string");
  const auto s = v.get<std::string>();
  for (const auto& [n, e] : names)
    if (s == n) return e;
  key_error(text, key, "unknown value '" + s + "'");
}

double number(std::string_view text, const std::string& key, const json& v) {
  if (!v.is_number()) key_error(text, key, "expected a number");
  return v.get<double>();
}

std::size_t count(std::string_view text, const std::string& key, const json& v) {
  const double d = number(text, key, v);
  if (!(d >= 1.0) || d != std::floor(d) || d > 9.0e15)
    throw ValidationError(key + ": positive integer required");
  return static_cast<std::size_t>(d);
}

std::vector<double> numbers(std::string_view text, const std::string& key, const json& v) {
  if (!v.is_array()) key_error(text, key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) key_error(text, key, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

DriveTable parse_table(std::string_view text, const json& v) {
  if (!v.is_object()) key_error(text, "table", "expected an object");
  DriveTable t;
  for (const auto& [k, x] : v.items()) {
    if (k == "t") t.t = numbers(text, k, x);
    else if (k == "j") t.j = numbers(text, k, x);
    else if (k == "gamma") t.gamma = numbers(text, k, x);
    else if (k == "dj") t.dj = numbers(text, k, x);
    else if (k == "dgamma") t.dgamma = numbers(text, k, x);
    else if (k == "derivative_tol") t.derivative_tol = number(text, k, x);
    else key_error(text, k, "unknown key in table");
  }
  return t;
}

json table_json(const DriveTable& t) {
  json j;
  j["t"] = t.t;
  j["j"] = t.j;
  j["gamma"] = t.gamma;
  if (t.dj) j["dj"] = *t.dj;
  if (t.dgamma) j["dgamma"] = *t.dgamma;
  j["derivative_tol"] = t.derivative_tol;
  return j;
}

template <class F>
auto with_context(std::string_view what, F&& f) -> decltype(f()) {
  const std::string ctx = "output '" + std::string(what) + "': ";
  try {
    return f();
  } catch (const DegenerateFrame& e) {
    throw DegenerateFrame(ctx + e.what());
  } catch (const QuadratureFailure& e) {
    throw QuadratureFailure(ctx + e.what());
  } catch (const StepTooLarge& e) {
    throw StepTooLarge(ctx + e.what());
  } catch (const InsufficientSpan& e) {
    throw InsufficientSpan(ctx + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + e.what());
  } catch (const DomainError& e) {
    throw DomainError(ctx + e.what());
  } catch (const InputError& e) {
    throw InputError(ctx + e.what());
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void ScenarioConfig::validate() const {
  atom.validate();
  tol.validate();
  if (!std::isfinite(gamma0)) throw ValidationError("gamma0 must be finite");
  if (!std::isfinite(t_end) || t_end < 0.0) throw ValidationError("t_end >= 0 violated");
  if (!std::isfinite(dt) || !(dt > 0.0)) throw ValidationError("dt > 0 violated");
  if (output_stride < 1) throw ValidationError("output_stride >= 1 violated");
  if (drive == DriveChoice::Tabulated) {
    if (table.t.size() != table.j.size() || table.t.size() != table.gamma.size())
      throw ValidationError("table: t, j and gamma must have equal length");
    if (table.dj.has_value() != table.dgamma.has_value())
      throw ValidationError("table: dj and dgamma must be given together");
    if (!(table.derivative_tol > 0.0)) throw ValidationError("table: derivative_tol > 0 violated");
    if (t_end > 0.0 && !table.t.empty() && (table.t.front() > 0.0 || table.t.back() < t_end))
      throw ValidationError("table: must cover [0, t_end]");
    make_drive();
  }
}

DriveSignal ScenarioConfig::make_drive() const {
  switch (drive) {
    case DriveChoice::Cosine:
      return DriveSignal::cosine(atom.j0, atom.omega_drive);
    case DriveChoice::Rwa:
      return DriveSignal::rwa_pair(atom.j0, atom.omega_drive);
    case DriveChoice::Constant:
      return DriveSignal::constant(atom.j0, gamma0);
    case DriveChoice::Tabulated:
      break;
  }
  if (table.dj)
    return DriveSignal::tabulated(table.t, table.j, table.gamma, *table.dj, *table.dgamma,
                                  table.derivative_tol);
  return DriveSignal::tabulated(table.t, table.j, table.gamma);
}

bool ScenarioConfig::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

std::string_view output_name(OutputKind k) { return name_of(kOutputs, k); }

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte ? e.byte - 1 : 0)) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1: top level must be a JSON object");

  ScenarioConfig c;
  const auto& keys = known_keys();
  for (const auto& [k, v] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) key_error(text, k, "unknown key");
    if (k == "e1") c.atom.e1 = number(text, k, v);
    else if (k == "e2") c.atom.e2 = number(text, k, v);
    else if (k == "omega") c.atom.omega_drive = number(text, k, v);
    else if (k == "j0") c.atom.j0 = number(text, k, v);
    else if (k == "hbar") c.atom.hbar = number(text, k, v);
    else if (k == "drive") c.drive = lookup(text, k, v, kDrives);
    else if (k == "gamma0") c.gamma0 = number(text, k, v);
    else if (k == "table") c.table = parse_table(text, v);
    else if (k == "branch") c.branch = lookup(text, k, v, kBranches);
    else if (k == "t_end") c.t_end = number(text, k, v);
    else if (k == "dt") c.dt = number(text, k, v);
    else if (k == "output_stride") c.output_stride = count(text, k, v);
    else if (k == "initial_state") c.initial_state = lookup(text, k, v, kInitial);
    else if (k == "deg_eps") c.tol.deg_eps = number(text, k, v);
    else if (k == "rad_eps") c.tol.rad_eps = number(text, k, v);
    else if (k == "quad_tol") c.tol.quad_tol = number(text, k, v);
    else if (k == "norm_tol") c.tol.norm_tol = number(text, k, v);
    else if (k == "max_panels") c.tol.max_panels = count(text, k, v);
    else if (k == "outputs") {
      if (!v.is_array()) key_error(text, k, "expected an array of names");
      c.outputs.clear();
      for (const auto& o : v) {
        const auto kind = lookup(text, k, o, kOutputs);
        if (!c.wants(kind)) c.outputs.push_back(kind);
      }
    }
  }
  if (c.drive == DriveChoice::Tabulated && !doc.contains("table"))
    throw ValidationError("drive 'tabulated' requires a table");
  c.validate();
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["e1"] = c.atom.e1;
  j["e2"] = c.atom.e2;
  j["omega"] = c.atom.omega_drive;
  j["j0"] = c.atom.j0;
  j["hbar"] = c.atom.hbar;
  j["drive"] = name_of(kDrives, c.drive);
  j["gamma0"] = c.gamma0;
  if (c.drive == DriveChoice::Tabulated || c.table != DriveTable{}) j["table"] = table_json(c.table);
  j["branch"] = name_of(kBranches, c.branch);
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["output_stride"] = c.output_stride;
  j["initial_state"] = name_of(kInitial, c.initial_state);
  j["deg_eps"] = c.tol.deg_eps;
  j["rad_eps"] = c.tol.rad_eps;
  j["quad_tol"] = c.tol.quad_tol;
  j["norm_tol"] = c.tol.norm_tol;
  j["max_panels"] = c.tol.max_panels;
  json outs = json::array();
  for (auto o : c.outputs) outs.push_back(name_of(kOutputs, o));
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const DriveSignal drive = cfg.make_drive();
  const AtomConfig& atom = cfg.atom;
  const Tolerances& tol = cfg.tol;
  const auto grid = output_grid(cfg.t_end, cfg.dt, cfg.output_stride);

  ScenarioResult res;
  json& rep = res.report;
  rep["scenario"] = json::parse(serialize_config(cfg));
  rep["omega_tilde"] = detuning(atom);
  rep["branch_flips_active"] = branch_flips_active(atom, drive, tol);
  rep["samples"] = grid.size();
  rep["outputs"] = json::object();
  json& outs = rep["outputs"];

  const bool need_closed = cfg.wants(OutputKind::Closed) || cfg.wants(OutputKind::Compare) ||
                           cfg.wants(OutputKind::Current);
  const bool need_oracle = cfg.wants(OutputKind::Oracle) || cfg.wants(OutputKind::Compare) ||
                           cfg.wants(OutputKind::Current);

  if (cfg.wants(OutputKind::Frame)) {
    TimeSeries ts({"t", "omega_r", "cos_theta", "sin_theta", "dtheta_dt"});
    std::size_t degenerate = 0;
    with_context("frame", [&] {
      FrameTracker tracker(atom, drive, cfg.branch, tol);
      for (double t : grid) {
        const auto f = tracker.at(t);
        degenerate += f.degenerate;
        ts.add_row({t, f.omega_r, f.cos_theta, f.sin_theta, f.dtheta_dt});
      }
    });
    outs["frame"] = {{"degenerate_points", degenerate}};
    res.series.emplace("frame", std::move(ts));
  }

  std::vector<DressedSolution> closed;
  if (need_closed) {
    with_context("closed", [&] {
      const auto z = phase_series(atom, drive, grid, cfg.branch, tol);
      for (std::size_t i = 0; i < grid.size(); ++i) closed.push_back(dressed_from_phase(grid[i], z[i]));
    });
  }
  if (cfg.wants(OutputKind::Closed)) {
    TimeSeries ts({"t", "re_Z", "im_Z", "p0_raw", "p0_norm"});
    double peak_raw = 0.0, peak_norm = 0.0;
    for (const auto& d : closed) {
      ts.add_row({d.t, d.phase.real(), d.phase.imag(), d.p0_raw, d.p0_norm});
      peak_raw = std::max(peak_raw, d.p0_raw);
      peak_norm = std::max(peak_norm, d.p0_norm);
    }
    json c = {{"max_p0_raw", peak_raw}, {"max_p0_norm", peak_norm}};
    if (!closed.empty())
      c["final_phase"] = {closed.back().phase.real(), closed.back().phase.imag()};
    outs["closed"] = c;
    res.series.emplace("closed", std::move(ts));
  }

  std::optional<PropagationResult> prop;
  if (need_oracle && !grid.empty()) {
    with_context("oracle", [&] {
      const StateVector c0 = initial_state(cfg.initial_state, atom, drive, cfg.branch, tol);
      PropagateOptions opts;
      opts.output_stride = cfg.output_stride;
      opts.tol = tol;
      prop = propagate(atom, drive, c0, cfg.t_end, cfg.dt, cfg.branch, opts);
    });
  }
  if (cfg.wants(OutputKind::Oracle)) {
    TimeSeries ts({"t", "re_c1", "im_c1", "re_c2", "im_c2", "norm", "p0_oracle", "current"});
    if (prop) {
      for (std::size_t i = 0; i < prop->times.size(); ++i) {
        const auto& s = prop->states[i];
        ts.add_row({prop->times[i], s.c1.real(), s.c1.imag(), s.c2.real(), s.c2.imag(), s.norm(),
                    std::norm(prop->psi0_oracle[i]), prop->current[i]});
      }
      const auto& sr = prop->step_report;
      outs["oracle"] = {{"dt_used", sr.dt},
                        {"steps", sr.steps},
                        {"max_norm_drift", sr.max_norm_drift},
                        {"richardson_error", number_or_null(sr.richardson_error.value_or(kNaN))},
                        {"norm_flag", sr.norm_flag}};
    } else {
      outs["oracle"] = json::object();
    }
    res.series.emplace("oracle", std::move(ts));
  }

  if (cfg.wants(OutputKind::Compare)) {
    TimeSeries ts({"t", "closed_p0", "oracle_p0", "abs_diff"});
    TimeSeries ca({"t", "p0", "re_psi0", "im_psi0"});
    if (prop) {
      for (std::size_t i = 0; i < closed.size(); ++i) {
        const auto& d = closed[i];
        const double po = std::norm(prop->psi0_oracle[i]);
        ts.add_row({d.t, d.p0_norm, po, std::abs(d.p0_norm - po)});
        ca.add_row({d.t, d.p0_norm, d.psi0.real(), d.psi0.imag()});
      }
      const auto cmp = with_context("compare", [&] { return compare(ca, oracle_psi_series(*prop)); });
      outs["compare"] = {{"population", "closed p0_norm vs oracle |psi0|^2"},
                         {"max_abs", cmp.max_abs},
                         {"rms", cmp.rms},
                         {"phase_slip", cmp.phase_slip},
                         {"samples", cmp.samples}};
    } else {
      outs["compare"] = {{"samples", 0}};
    }
    res.series.emplace("compare", std::move(ts));
  }

  if (cfg.wants(OutputKind::Identities)) {
    TimeSeries ts({"t", "omega_r", "r1", "r2", "r3", "dtheta", "dtheta_from_cos", "dtheta_from_sin"});
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, s1 = 0.0, s2 = 0.0;
    std::size_t invalid = 0;
    for (double t : grid) {
      const auto r = identity_residuals(atom, drive, t, cfg.branch, tol);
      if (!r.valid) {
        ++invalid;
        ts.add_row({t, r.omega_r, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN});
        continue;
      }
      const double scale = std::max(1.0, r.omega_r * r.omega_r);
      m1 = std::max(m1, std::abs(r.r1));
      m2 = std::max(m2, std::abs(r.r2));
      s1 = std::max(s1, std::abs(r.r1) / scale);
      s2 = std::max(s2, std::abs(r.r2) / scale);
      if (r.r3) m3 = std::max(m3, std::abs(*r.r3));
      ts.add_row({t, r.omega_r, r.r1, r.r2, r.r3.value_or(kNaN), r.dtheta,
                  r.dtheta_from_cos.value_or(kNaN), r.dtheta_from_sin.value_or(kNaN)});
    }
    outs["identities"] = {{"max_abs_r1", m1},
                          {"max_abs_r2", m2},
                          {"max_abs_r3", m3},
                          {"max_scaled_r1", s1},
                          {"max_scaled_r2", s2},
                          {"threshold_scaled", 1e-8},
                          {"within_threshold", s1 <= 1e-8 && s2 <= 1e-8},
                          {"invalid_points", invalid}};
    res.series.emplace("identities", std::move(ts));
  }

  if (cfg.wants(OutputKind::Current)) {
    TimeSeries ts({"t", "current", "sin_2re_z"});
    if (prop) {
      for (std::size_t i = 0; i < closed.size(); ++i)
        ts.add_row({closed[i].t, prop->current[i], std::sin(2.0 * closed[i].phase.real())});
      const auto fit =
          with_context("current", [&] { return current_dynamics_check(*prop, atom, drive, tol); });
      outs["current"] = {{"status", fit.status == FitStatus::Ok ? "ok" : "no_oscillation"},
                         {"rho_derivative", fit.rho_derivative},
                         {"amplitude", fit.amplitude},
                         {"rho_current", fit.rho_current},
                         {"periods", fit.periods},
                         {"samples", fit.samples}};
    } else {
      outs["current"] = {{"samples", 0}};
    }
    res.series.emplace("current", std::move(ts));
  }
  return res;
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
}

std::string Table::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"omega_tilde", "e1",     "e2",    "omega", "j0",
                                                "hbar",        "gamma0", "t_end", "dt"};
  return axes;
}

ScenarioConfig with_axis(const ScenarioConfig& base, std::string_view axis, double value) {
  ScenarioConfig c = base;
  if (axis == "omega_tilde")
    c.atom.e2 = c.atom.e1 + c.atom.hbar * (c.atom.omega_drive + 2.0 * value);
  else if (axis == "e1") c.atom.e1 = value;
  else if (axis == "e2") c.atom.e2 = value;
  else if (axis == "omega") c.atom.omega_drive = value;
  else if (axis == "j0") c.atom.j0 = value;
  else if (axis == "hbar") c.atom.hbar = value;
  else if (axis == "gamma0") c.gamma0 = value;
  else if (axis == "t_end") c.t_end = value;
  else if (axis == "dt") c.dt = value;
  else throw UnknownAxis("unknown sweep axis '" + std::string(axis) + "'");
  c.validate();
  return c;
}

SweepResult sweep(const ScenarioConfig& base, std::string_view axis,
                  const std::vector<double>& values) {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end())
    throw UnknownAxis("unknown sweep axis '" + std::string(axis) + "'");
  const bool with_oracle = base.wants(OutputKind::Oracle) || base.wants(OutputKind::Compare);

  SweepResult out;
  out.summary.columns = {"value",        "omega_tilde",    "j0",
                         "omega",        "dt_used",        "max_abs",
                         "rms",          "phase_slip",     "peak_p0_closed",
                         "peak_p0_oracle", "dominant_frequency"};
  out.combined.columns = {"value", "t", "re_Z", "im_Z", "p0_raw", "p0_norm", "p0_oracle"};

  for (double v : values) {
    ScenarioConfig c = with_axis(base, axis, v);
    c.outputs = {OutputKind::Closed};
    if (with_oracle) {
      c.outputs.push_back(OutputKind::Oracle);
      c.outputs.push_back(OutputKind::Compare);
      c.dt = std::min(c.dt, max_step(c.atom, c.make_drive()));
    }
    const auto r = run_scenario(c);
    const auto& closed = r.series.at("closed");
    const auto times = closed.column("t");
    const auto p0 = closed.column("p0_norm");
    std::vector<double> p0o(p0.size(), kNaN);
    if (with_oracle) p0o = r.series.at("oracle").column("p0_oracle");

    double peak_c = 0.0, peak_o = with_oracle ? 0.0 : kNaN;
    for (std::size_t i = 0; i < p0.size(); ++i) {
      peak_c = std::max(peak_c, p0[i]);
      if (with_oracle) peak_o = std::max(peak_o, p0o[i]);
    }
    // Uniform part of the grid only; the last sample may be off-stride.
    double freq = kNaN;
    if (times.size() >= 5) {
      std::size_t n = times.size();
      const double step = times[1] - times[0];
      if (std::abs((times[n - 1] - times[n - 2]) - step) > 1e-9 * step) --n;
      freq = dominant_frequency(std::span<const double>(p0).first(n), step).frequency;
    }
    double max_abs = kNaN, rms = kNaN, slip = kNaN;
    if (with_oracle && r.report["outputs"]["compare"].contains("max_abs")) {
      max_abs = r.report["outputs"]["compare"]["max_abs"].get<double>();
      rms = r.report["outputs"]["compare"]["rms"].get<double>();
      slip = r.report["outputs"]["compare"]["phase_slip"].get<double>();
    }
    out.summary.rows.push_back({v, detuning(c.atom), c.atom.j0, c.atom.omega_drive, c.dt, max_abs,
                                rms, slip, peak_c, peak_o, freq});
    const auto re = closed.column("re_Z"), im = closed.column("im_Z"),
               raw = closed.column("p0_raw");
    for (std::size_t i = 0; i < times.size(); ++i)
      out.combined.rows.push_back({v, times[i], re[i], im[i], raw[i], p0[i], p0o[i]});
  }
  return out;
}

}  // namespace dressed
