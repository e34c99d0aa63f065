#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "dressed/closed_form.hpp"
#include "dressed/errors.hpp"
#include "dressed/oracle.hpp"
#include "support.hpp"

using namespace dressed;
using testing::atom;
using testing::pi;

namespace {

constexpr auto Smooth = BranchMode::SmoothContinuation;
const complex I{0.0, 1.0};

// Co-rotating frame: the pair drive becomes the static matrix
// [[e1, j0], [j0, e2 - 2 omega]].
StateVector corotating_exact(const AtomConfig& a, const StateVector& c0, double t) {
  Eigen::Matrix2cd m;
  m << a.e1, a.j0, a.j0, a.e2 - 2.0 * a.omega_drive;
  const Eigen::Matrix2cd u = (complex(0, -t) * m).exp();
  const Eigen::Vector2cd d = u * Eigen::Vector2cd(c0.c1, c0.c2);
  return {d(0), std::exp(-I * (a.omega_drive * t)) * d(1)};
}

}  // namespace

TEST_CASE("hamiltonian entries") {
  auto cfg = atom(0.5, 1.0, 1.0);
  cfg.e1 = 0.3;
  cfg.e2 = 2.3;
  const auto h = hamiltonian(cfg, DriveSignal::constant(0.8, 0.3), 1.0);
  CHECK(h(0, 0) == complex(0.3, 0));
  CHECK(std::abs(h(1, 1) - 1.3) <= 1e-15);
  CHECK(h(0, 1) == complex(0.8, 0.3));
  CHECK(h(1, 0) == complex(0.8, -0.3));
  cfg.hbar = 2.0;
  const auto h2 = hamiltonian(cfg, DriveSignal::rwa_pair(1.0, 1.0), 0.7);
  CHECK(std::abs(h2(0, 1) - std::polar(0.5, 0.7)) <= 1e-15);
  CHECK((h2 - h2.adjoint()).norm() <= 1e-15);
  CHECK(h2(1, 1).real() == doctest::Approx((2.3 - 2.0) / 2.0));
}

TEST_CASE("step bound and output grid") {
  const auto cfg = atom(0.5, 1.0, 1.0);
  const auto d = DriveSignal::cosine(1.0, 1.0);
  CHECK(max_step(cfg, d) == doctest::Approx(2 * pi / std::hypot(0.5, 1.0) / 200));
  CHECK_THROWS_AS(propagate(cfg, d, {1.0, 0.0}, 1.0, 0.1, Smooth), StepTooLarge);
  CHECK_THROWS_AS(propagate(cfg, d, {1.0, 0.0}, 1.0, 0.0, Smooth), DomainError);
  CHECK_THROWS_AS(propagate(cfg, d, {1.0, 0.0}, 0.0, 1e-3, Smooth), DomainError);
  const auto g = output_grid(1.0, 0.03, 10);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[1] == doctest::Approx(10.0 / 34));
  CHECK(output_grid(0.0, 0.01, 10).empty());
}

TEST_CASE("no coupling leaves populations stationary") {
  const auto cfg = atom(0.7, 0.0, 1.0);
  const auto d = DriveSignal::cosine(0.0, 1.0);
  const StateVector c0{0.6, complex(0, 0.8)};
  const auto r = propagate(cfg, d, c0, 10.0, 1e-3, Smooth);
  for (const auto& c : r.states) {
    CHECK(std::norm(c.c1) == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(std::norm(c.c2) == doctest::Approx(0.64).epsilon(1e-12));
  }
  CHECK(r.step_report.max_norm_drift <= 1e-12);
  REQUIRE(r.step_report.richardson_error.has_value());
  CHECK(*r.step_report.richardson_error <= 1e-12);
}

TEST_CASE("exact resonance with a cosine drive") {
  const auto cfg = atom(0.0, 1.2, 0.9);
  const auto d = DriveSignal::cosine(1.2, 0.9);
  const auto r = propagate(cfg, d, {1.0, 0.0}, 15.0, 1e-3, Smooth);
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const double t = r.times[i];
    CHECK(std::norm(r.states[i].c2) ==
          doctest::Approx(std::pow(std::sin(1.2 / 0.9 * std::sin(0.9 * t)), 2)).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("pair drive agrees with the co-rotating exact solution") {
  for (auto [wt, j0] : {std::pair{0.0, 1.0}, std::pair{0.6, 0.8}, std::pair{-0.3, 2.0}}) {
    const auto cfg = atom(wt, j0, 1.0);
    const auto d = DriveSignal::rwa_pair(j0, 1.0);
    const auto c0 = initial_state_for_psi_frame(cfg, d, Smooth);
    const auto r = propagate(cfg, d, c0, 20.0, 1e-3, Smooth);
    for (std::size_t i = 0; i < r.times.size(); i += 37) {
      const auto e = corotating_exact(cfg, c0, r.times[i]);
      CHECK(std::abs(r.states[i].c1 - e.c1) <= 1e-9);
      CHECK(std::abs(r.states[i].c2 - e.c2) <= 1e-9);
    }
  }
}

TEST_CASE("initial states and dressed projection at t = 0") {
  const auto cfg = atom(0.5, 1.0, 1.0);
  const auto d = DriveSignal::constant(0.8, 0.3);
  CHECK(initial_state(InitialState::Ground, cfg, d, Smooth).c1 == complex(1, 0));
  CHECK(initial_state(InitialState::Excited, cfg, d, Smooth).c2 == complex(1, 0));
  const auto c0 = initial_state(InitialState::PsiFrame, cfg, d, Smooth);
  CHECK(c0.norm() == doctest::Approx(1.0).epsilon(1e-15));
  const auto [ap, am] = dressed_amplitudes(cfg, frame(cfg, d, 0.0, Smooth), c0);
  CHECK(std::abs(ap - 1 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(am - 1 / std::sqrt(2.0)) <= 1e-15);
  const auto r = propagate(cfg, d, c0, 1.0, 1e-3, Smooth);
  CHECK(std::abs(r.psi0_oracle.front()) <= 1e-15);
  CHECK(std::abs(r.psi1_oracle.front() - 1.0) <= 1e-15);
}

TEST_CASE("constant drive: dressed amplitudes evolve as exp(-+ i omega_R t)") {
  const auto cfg = atom(0.5, 0.8, 1.0);
  const auto d = DriveSignal::constant(0.8, 0.3);
  const auto c0 = initial_state_for_psi_frame(cfg, d, Smooth);
  const auto r = propagate(cfg, d, c0, 10.0, 1e-3, Smooth);
  const double wr = std::sqrt(0.25 + 0.64 + 0.09);
  for (std::size_t i = 0; i < r.times.size(); i += 50) {
    const double t = r.times[i];
    CHECK(std::abs(r.dressed_a_plus[i] - std::exp(-I * (wr * t)) / std::sqrt(2.0)) <= 1e-9);
    CHECK(std::abs(r.dressed_a_minus[i] - std::exp(I * (wr * t)) / std::sqrt(2.0)) <= 1e-9);
    const auto s = dressed_solution(cfg, d, t, Smooth);
    CHECK(std::abs(r.psi0_oracle[i] - s.psi0) <= 1e-9);
  }
}

TEST_CASE("energy offset is a global phase") {
  auto a = atom(0.5, 1.0, 1.0);
  auto b = a;
  b.e1 += 3.7;
  b.e2 += 3.7;
  const auto d = DriveSignal::cosine(1.0, 1.0);
  const auto c0 = initial_state_for_psi_frame(a, d, Smooth);
  const auto ra = propagate(a, d, c0, 8.0, 1e-3, Smooth);
  const auto rb = propagate(b, d, c0, 8.0, 1e-3, Smooth);
  for (std::size_t i = 0; i < ra.times.size(); ++i) {
    const complex ph = std::exp(-I * (3.7 * ra.times[i]));
    CHECK(std::abs(rb.states[i].c1 - ph * ra.states[i].c1) <= 1e-9);
    CHECK(std::abs(rb.psi0_oracle[i] - ra.psi0_oracle[i]) <= 1e-9);
    CHECK(rb.current[i] == doctest::Approx(ra.current[i]).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("compare metrics") {
  TimeSeries a({"t", "p0", "re_psi0", "im_psi0"}), b = a, c({"t", "p0", "re_psi0", "im_psi0"});
  for (int k = 0; k < 100; ++k) {
    const double t = 0.1 * k;
    const complex z = 0.5 * std::polar(1.0, t), w = 0.5 * std::polar(1.0, 1.3 * t);
    a.add_row({t, 0.25, z.real(), z.imag()});
    b.add_row({t, 0.25 + (k == 40 ? 0.1 : 0.0), w.real(), w.imag()});
  }
  const auto rep = compare(a, b);
  CHECK(rep.samples == 100);
  CHECK(rep.max_abs == doctest::Approx(0.1));
  CHECK(rep.rms == doctest::Approx(0.01));
  CHECK(rep.phase_slip == doctest::Approx(0.3 * 9.9));
  CHECK(compare(a, a, Metric::PhaseSlip) == 0.0);
  CHECK(compare(a, a, Metric::MaxAbs) == 0.0);
  c.add_row({0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(compare(a, c), GridMismatch);
  TimeSeries shifted({"t", "p0", "re_psi0", "im_psi0"});
  for (int k = 0; k < 100; ++k) shifted.add_row({0.1 * k + 1e-6, 0, 0, 0});
  CHECK_THROWS_AS(compare(a, shifted), GridMismatch);
  CHECK_THROWS_AS(compare(a, TimeSeries({"t", "p0"})), GridMismatch);
}

TEST_CASE("current fit status") {
  const auto free = atom(0.5, 0.0, 1.0);
  const auto d0 = DriveSignal::cosine(0.0, 1.0);
  const auto r0 = propagate(free, d0, {1.0, 0.0}, 30.0, 1e-3, Smooth);
  CHECK(current_dynamics_check(r0, free, d0).status == FitStatus::NoOscillation);

  const auto cfg = atom(0.6, 0.8, 1.0);
  const auto d = DriveSignal::rwa_pair(0.8, 1.0);
  const auto c0 = initial_state_for_psi_frame(cfg, d, Smooth);
  const auto rs = propagate(cfg, d, c0, 3.0, 1e-3, Smooth);
  CHECK_THROWS_AS(current_dynamics_check(rs, cfg, d), InsufficientSpan);
  const auto rl = propagate(cfg, d, c0, 20.0, 1e-3, Smooth);
  const auto fit = current_dynamics_check(rl, cfg, d);
  CHECK(fit.status == FitStatus::Ok);
  CHECK(fit.periods == doctest::Approx(20.0 / pi).epsilon(1e-6));
  CHECK(std::abs(fit.rho_derivative) <= 1.0);
  for (std::size_t i = 0; i < rl.times.size(); ++i)
    CHECK(rl.current[i] == doctest::Approx(transition_current(rl.states[i])));
}

TEST_CASE("observed order of the integrator") {
  const auto cfg = atom(0.5, 1.0, 1.0);
  const auto d = DriveSignal::cosine(1.0, 1.0);
  const auto c0 = initial_state_for_psi_frame(cfg, d, Smooth);
  const auto rep = convergence_order(cfg, d, c0, 10.0, 0.02, Smooth);
  CHECK(rep.order == doctest::Approx(4.0).epsilon(0.05));
  CHECK(rep.error_fine < rep.error_coarse);
  CHECK(rep.drift_fine <= rep.drift_coarse);
}
