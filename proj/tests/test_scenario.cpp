#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "dressed/errors.hpp"
#include "dressed/scenario.hpp"
#include "support.hpp"

using namespace dressed;

TEST_CASE("parse: examples and defaults") {
  const auto c = parse_config(R"({"drive":"rwa","j0":1,"omega":1,"e1":0,"e2":2})");
  CHECK(c.drive == DriveChoice::Rwa);
  CHECK(detuning(c.atom) == doctest::Approx(0.5));
  CHECK(c.make_drive().kind() == DriveKind::RwaPair);

  const auto d = parse_config("{}");
  CHECK(d == ScenarioConfig{});
  CHECK(d.atom.omega_drive == 2.0);
  CHECK(d.outputs.size() == 4);

  const auto e = parse_config(R"({"branch":"positive","initial_state":"ground",
      "outputs":["identities","current"],"quad_tol":1e-12,"max_panels":50})");
  CHECK(e.branch == BranchMode::PositiveRoot);
  CHECK(e.initial_state == InitialState::Ground);
  CHECK(e.wants(OutputKind::Identities));
  CHECK_FALSE(e.wants(OutputKind::Frame));
  CHECK(e.tol.quad_tol == 1e-12);
  CHECK(e.tol.max_panels == 50);
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_config(R"({"j0":-1})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"omega":0})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"output_stride":2.5})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"drive":"tabulated"})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"drive":"square"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"j0":"big"})"), ParseError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_config("{\"j0\": 1,"), ParseError);
  try {
    parse_config("{\n  \"j0\": 1,\n  \"bogus\": 3\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
  }
}

TEST_CASE("serialize round trip") {
  ScenarioConfig c;
  c.drive = DriveChoice::Constant;
  c.gamma0 = 0.3;
  c.atom.e1 = -0.25;
  c.atom.j0 = 0.1 + 0.2;
  c.t_end = 3.0;
  c.output_stride = 7;
  c.branch = BranchMode::PositiveRoot;
  c.outputs = {OutputKind::Closed, OutputKind::Current};
  CHECK(parse_config(serialize_config(c)) == c);

  ScenarioConfig t;
  t.drive = DriveChoice::Tabulated;
  for (int k = 0; k <= 20; ++k) {
    t.table.t.push_back(0.6 * k);
    t.table.j.push_back(std::cos(0.6 * k));
    t.table.gamma.push_back(0.0);
  }
  CHECK(parse_config(serialize_config(t)) == t);
  CHECK(serialize_config(parse_config(serialize_config(t))) == serialize_config(t));
}

TEST_CASE("zero duration gives header-only series") {
  auto c = parse_config(R"({"t_end":0,"outputs":["frame","closed","oracle","compare","identities","current"]})");
  const auto r = run_scenario(c);
  REQUIRE(r.series.size() == 6);
  for (const auto& [name, ts] : r.series) {
    CHECK(ts.empty());
    const auto csv = ts.to_csv();
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
  }
  CHECK(r.series.at("closed").to_csv() == "t,re_Z,im_Z,p0_raw,p0_norm\n");
}

TEST_CASE("scenario runs are deterministic and well formed") {
  const auto c = parse_config(R"({"e2":2.5,"t_end":4,"dt":0.002,"outputs":
      ["frame","closed","oracle","compare","identities"]})");
  const auto a = run_scenario(c), b = run_scenario(c);
  for (const auto& [name, ts] : a.series) CHECK(ts.to_csv() == b.series.at(name).to_csv());
  CHECK(a.report.dump() == b.report.dump());
  const auto& closed = a.series.at("closed");
  const auto& oracle = a.series.at("oracle");
  CHECK(closed.times() == oracle.times());
  CHECK(closed.rows() == 201);
  CHECK(a.report["outputs"]["identities"]["within_threshold"].get<bool>());
  for (double n : oracle.column("norm")) CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(a.report["outputs"]["compare"]["samples"].get<std::size_t>() == 201);
}

TEST_CASE("csv numbers round-trip exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  TimeSeries ts({"t", "x"});
  ts.add_row({0.0, 1.0 / 3.0});
  CHECK(ts.to_csv() == "t,x\n0,0.33333333333333331\n");
  CHECK_THROWS_AS(ts.add_row({0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(ts.add_row({1.0}), ValidationError);
  CHECK_THROWS_AS(TimeSeries({"x", "t"}), ValidationError);
}

TEST_CASE("errors carry the output name") {
  auto c = parse_config(R"({"e2":2.5,"t_end":2,"outputs":["current"]})");
  try {
    run_scenario(c);
    FAIL("expected InsufficientSpan");
  } catch (const InsufficientSpan& e) {
    CHECK(std::string(e.what()).find("output 'current'") != std::string::npos);
  }
}

TEST_CASE("sweeps") {
  const auto base = parse_config(R"({"t_end":2,"dt":0.002,"outputs":["closed","oracle","compare"]})");
  CHECK_THROWS_AS(sweep(base, "colour", {1.0}), UnknownAxis);
  CHECK_THROWS_AS(with_axis(base, "", 1.0), UnknownAxis);
  CHECK(detuning(with_axis(base, "omega_tilde", 0.7).atom) == doctest::Approx(0.7));

  const auto one = sweep(base, "j0", {0.5});
  REQUIRE(one.summary.rows.size() == 1);
  CHECK(one.summary.columns.front() == "value");
  CHECK(one.summary.rows[0][0] == 0.5);
  const auto single = run_scenario(with_axis(base, "j0", 0.5));
  CHECK(one.combined.rows.size() == single.series.at("closed").rows());

  const auto many = sweep(base, "omega_tilde", {-0.5, 0.0, 0.5});
  CHECK(many.summary.rows.size() == 3);
  CHECK(many.combined.rows.size() == 3 * single.series.at("closed").rows());
  // Large coupling: the step is clamped to the oracle bound.
  const auto clamp = sweep(base, "j0", {400.0});
  const auto dt_col = std::find(clamp.summary.columns.begin(), clamp.summary.columns.end(), "dt_used") -
                      clamp.summary.columns.begin();
  CHECK(clamp.summary.rows[0][dt_col] < 0.002);
}
