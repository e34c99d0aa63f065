#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dressed/acceptance.hpp"
#include "dressed/errors.hpp"
#include "dressed/scenario.hpp"

namespace fs = std::filesystem;
using namespace dressed;

namespace {

struct Overrides {
  std::optional<double> deg_eps, rad_eps, quad_tol, norm_tol;
  std::optional<std::string> branch, initial_state;
};

ScenarioConfig load(const std::string& path, const Overrides& o) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ScenarioConfig c = parse_config(ss.str());
  if (o.deg_eps) c.tol.deg_eps = *o.deg_eps;
  if (o.rad_eps) c.tol.rad_eps = *o.rad_eps;
  if (o.quad_tol) c.tol.quad_tol = *o.quad_tol;
  if (o.norm_tol) c.tol.norm_tol = *o.norm_tol;
  if (o.branch) c.branch = *o.branch == "positive" ? BranchMode::PositiveRoot : BranchMode::SmoothContinuation;
  if (o.initial_state)
    c.initial_state = *o.initial_state == "ground"    ? InitialState::Ground
                      : *o.initial_state == "excited" ? InitialState::Excited
                                                      : InitialState::PsiFrame;
  c.validate();
  return c;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
}

template <class W>
void write_file(const fs::path& p, W&& writer) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  writer(out);
}

// "a,b,c" or "log:lo:hi:n" / "lin:lo:hi:n".
std::vector<double> parse_values(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ParseError("--values: not a number '" + s + "'");
    return v;
  };
  std::vector<std::string> parts;
  const bool ranged = text.rfind("log:", 0) == 0 || text.rfind("lin:", 0) == 0;
  std::stringstream ss(ranged ? text.substr(4) : text);
  std::string item;
  while (std::getline(ss, item, ranged ? ':' : ',')) parts.push_back(item);
  std::vector<double> out;
  if (ranged) {
    if (parts.size() != 3) throw ParseError("--values: expected " + text.substr(0, 3) + ":lo:hi:n");
    const double lo = to_double(parts[0]), hi = to_double(parts[1]);
    const double n = to_double(parts[2]);
    if (!(n >= 1) || n != static_cast<int>(n)) throw ParseError("--values: n must be a positive integer");
    const bool log = text[1] == 'o';
    if (log && !(lo > 0.0 && hi > 0.0)) throw ParseError("--values: log range needs positive ends");
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      out.push_back(log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
    }
  } else {
    for (const auto& p : parts) out.push_back(to_double(p));
  }
  if (out.empty()) throw ParseError("--values: empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dressed-state solver for the driven two-level atom"};
  app.require_subcommand(1);
  Overrides ov;
  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--deg-eps", ov.deg_eps, "degenerate-frame threshold");
    sub->add_option("--rad-eps", ov.rad_eps, "radicand threshold (relative)");
    sub->add_option("--quad-tol", ov.quad_tol, "quadrature absolute tolerance");
    sub->add_option("--norm-tol", ov.norm_tol, "oracle norm drift tolerance");
    sub->add_option("--branch", ov.branch, "smooth | positive")
        ->check(CLI::IsMember({"smooth", "positive"}));
    sub->add_option("--initial-state", ov.initial_state, "psi | ground | excited")
        ->check(CLI::IsMember({"psi", "ground", "excited"}));
  };

  std::string config, out_dir = ".", axis, values;
  bool fast = false;

  auto* run = app.add_subcommand("run", "evaluate a scenario and write CSV files");
  run->add_option("config", config, "scenario JSON")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  add_overrides(run);

  auto* sw = app.add_subcommand("sweep", "run a scenario over values of one parameter");
  sw->add_option("config", config, "scenario JSON")->required();
  sw->add_option("--axis", axis, "parameter to vary")->required();
  sw->add_option("--values", values, "a,b,c or log:lo:hi:n or lin:lo:hi:n")->required();
  sw->add_option("--out", out_dir, "output directory")->required();
  add_overrides(sw);

  auto* id = app.add_subcommand("identities", "print identity residual maxima");
  id->add_option("config", config, "scenario JSON")->required();
  id->add_option("--out", out_dir, "also write identities.csv here");
  add_overrides(id);

  auto* acc = app.add_subcommand("accept", "run the acceptance suite");
  acc->add_flag("--fast", fast, "shorter spans (smoke test only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const auto cfg = load(config, ov);
      const auto res = run_scenario(cfg);
      ensure_dir(out_dir);
      for (const auto& [name, ts] : res.series)
        write_file(fs::path(out_dir) / (name + ".csv"), [&](std::ostream& os) { ts.write_csv(os); });
      write_file(fs::path(out_dir) / "report.json",
                 [&](std::ostream& os) { os << res.report.dump(2) << '\n'; });
      std::cout << res.report["outputs"].dump(2) << '\n';
    } else if (*sw) {
      const auto cfg = load(config, ov);
      const auto res = sweep(cfg, axis, parse_values(values));
      ensure_dir(out_dir);
      write_file(fs::path(out_dir) / "summary.csv", [&](std::ostream& os) { res.summary.write_csv(os); });
      write_file(fs::path(out_dir) / "combined.csv", [&](std::ostream& os) { res.combined.write_csv(os); });
      res.summary.write_csv(std::cout);
    } else if (*id) {
      auto cfg = load(config, ov);
      cfg.outputs = {OutputKind::Identities};
      const auto res = run_scenario(cfg);
      if (id->count("--out")) {
        ensure_dir(out_dir);
        write_file(fs::path(out_dir) / "identities.csv",
                   [&](std::ostream& os) { res.series.at("identities").write_csv(os); });
      }
      std::cout << res.report["outputs"]["identities"].dump(2) << '\n';
    } else if (*acc) {
      const auto results = run_acceptance({fast});
      print_acceptance(std::cout, results);
      return all_passed(results) ? 0 : 3;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
