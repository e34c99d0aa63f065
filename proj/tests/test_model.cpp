#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "dressed/errors.hpp"
#include "dressed/model.hpp"
#include "support.hpp"

using namespace dressed;
using testing::atom;
using testing::pi;

namespace {

const auto kSmooth = BranchMode::SmoothContinuation;
const auto kPositive = BranchMode::PositiveRoot;

template <class F>
double fd4(F&& f, double t, double h) {
  return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("detuning from level energies") {
  CHECK(detuning({0, 2, 2, 1, 1}) == 0.0);
  CHECK(detuning({0, 3, 2, 1, 1}) == 0.5);
  CHECK(detuning({1, 1, 2, 1, 1}) == -1.0);
}

TEST_CASE("config validation names the invariant") {
  CHECK_THROWS_AS(AtomConfig({0, 2, 0, 1, 1}).validate(), ValidationError);
  CHECK_THROWS_AS(AtomConfig({0, 2, 2, -1, 1}).validate(), ValidationError);
  CHECK_THROWS_AS(AtomConfig({0, 2, 2, 1, 0}).validate(), ValidationError);
  CHECK_NOTHROW(AtomConfig{}.validate());
  Tolerances t;
  t.quad_tol = 0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("rabi frequency examples") {
  CHECK(rabi_frequency(atom(0, 1, 1), DriveSignal::constant(1, 0), 0.4, kPositive) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rabi_frequency(atom(3, 4, 1), DriveSignal::constant(4, 0), 0.0, kPositive) ==
        doctest::Approx(5.0).epsilon(1e-15));

  const auto a = atom(0, 1, 1);
  const auto d = DriveSignal::cosine(1, 1);
  CHECK(branch_flips_active(a, d));
  CHECK(rabi_frequency(a, d, 3 * pi / 4, kSmooth) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  CHECK(rabi_frequency(a, d, 3 * pi / 4, kPositive) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(branch_sign(a, d, 0.2, kSmooth) == 1);
  CHECK(branch_sign(a, d, 2.0, kSmooth) == -1);
  CHECK_FALSE(branch_flips_active(atom(0.5, 1, 1), d));
}

TEST_CASE("smooth branch follows the eigenvalue curves through the crossing") {
  // Oracle: order the eigenvalues of the offset-free Hamiltonian and track
  // them by continuity across the zero of cos(t).
  const auto a = atom(0, 1, 1);
  const auto d = DriveSignal::cosine(1, 1);
  double prev2 = 1.0, prev = std::cos(0.01);  // upper curve near t = 0
  for (double t = 0.02; t < 3.0; t += 0.01) {
    Eigen::Matrix2d h;
    h << 0, std::cos(t), std::cos(t), 0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
    const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(1);
    const double guess = 2 * prev - prev2;
    const double next = std::abs(lo - guess) < std::abs(hi - guess) ? lo : hi;
    CHECK(rabi_frequency(a, d, t, kSmooth) == doctest::Approx(next).epsilon(1e-12));
    prev2 = prev;
    prev = next;
  }
}

TEST_CASE("mixing angle examples") {
  auto m = mixing_angle(atom(1, 0, 1), DriveSignal::constant(0, 0), 0.0, kSmooth);
  CHECK(m.cos_theta == 1.0);
  CHECK(m.sin_theta == 0.0);

  m = mixing_angle(atom(0, 1, 1), DriveSignal::constant(1, 0), 0.0, kPositive);
  CHECK(m.cos_theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(m.sin_theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  m = mixing_angle(atom(3, 4, 1), DriveSignal::constant(4, 0), 0.0, kPositive);
  CHECK(m.cos_theta == doctest::Approx(8 / std::sqrt(80.0)).epsilon(1e-15));
  CHECK(m.sin_theta == doctest::Approx(4 / std::sqrt(80.0)).epsilon(1e-15));

  m = mixing_angle(atom(-1, 0, 1), DriveSignal::constant(0, 0), 0.0, kSmooth);
  CHECK(std::abs(m.cos_theta) < 1e-15);
  CHECK(m.sin_theta == 1.0);

  CHECK_THROWS_AS(mixing_angle(atom(0, 0, 1), DriveSignal::constant(0, 0), 0.0, kSmooth),
                  DegenerateFrame);
}

TEST_CASE("frame invariants on random parameters") {
  for (int i = 0; i < 300; ++i) {
    const double wt = testing::uniform(-3, 3), j0 = testing::uniform(0, 3);
    const double w = testing::uniform(0.2, 3), g0 = testing::uniform(-2, 2);
    const double t = testing::uniform(0, 20);
    const auto a = atom(wt, j0, w);
    for (const auto& d : {DriveSignal::cosine(j0, w), DriveSignal::rwa_pair(j0, w),
                          DriveSignal::constant(j0, g0)})
      for (auto b : {kSmooth, kPositive}) {
        const auto f = frame(a, d, t, b);
        CHECK(std::abs(f.cos_theta * f.cos_theta + f.sin_theta * f.sin_theta - 1.0) <= 1e-12);
        CHECK(std::abs(f.omega_r) >= std::abs(f.omega_tilde));
        const auto s = d(t);
        const double rad = wt * wt + s.j * s.j + s.gamma * s.gamma;
        CHECK(std::abs(f.omega_r * f.omega_r - rad) <= 1e-12 * rad);
      }
  }
}

TEST_CASE("dressed vectors diagonalize the instantaneous Hamiltonian") {
  // Independent oracle: Eigen's Hermitian eigensolver.
  for (int i = 0; i < 200; ++i) {
    const double wt = testing::uniform(-3, 3), j0 = testing::uniform(0.01, 3);
    const double w = testing::uniform(0.2, 3), g0 = testing::uniform(-2, 2);
    const double t = testing::uniform(0, 20);
    const auto a = atom(wt, j0, w);
    for (const auto& d : {DriveSignal::cosine(j0, w), DriveSignal::rwa_pair(j0, w),
                          DriveSignal::constant(j0, g0)}) {
      const auto s = d(t);
      Eigen::Matrix2cd h;
      h << -wt, complex(s.j, s.gamma), complex(s.j, -s.gamma), wt;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
      const auto f = frame(a, d, t, kPositive);
      CHECK(f.omega_r == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));
      const complex ph = std::polar(1.0, f.carrier_phase);
      Eigen::Vector2cd ep(ph * f.sin_theta, f.cos_theta), em(ph * f.cos_theta, -f.sin_theta);
      CHECK((h * ep - f.omega_r * ep).norm() <= 1e-12 * (1 + h.norm()));
      CHECK((h * em + f.omega_r * em).norm() <= 1e-12 * (1 + h.norm()));
      // Off-diagonal of U^dagger H U.
      CHECK(std::abs(em.dot(h * ep)) <= 1e-10 * h.norm());
    }
  }
}

TEST_CASE("connection frozen value and sign convention") {
  const auto a = atom(0.5, 1, 1);
  const auto d = DriveSignal::cosine(1, 1);
  const double v = connection_dtheta(a, d, 0.3, kSmooth);
  CHECK(v == doctest::Approx(-0.0635435600707509698971442543106).epsilon(1e-13));
  CHECK(connection_dtheta_as_printed(a, d, 0.3, kSmooth) == doctest::Approx(-v).epsilon(1e-15));
  auto theta = [&](double t) { return mixing_angle_value(a, d, t, kSmooth); };
  CHECK(std::abs(v - fd4(theta, 0.3, 1e-3)) <= 1e-7);
}

TEST_CASE("connection equals the derivative of the continuous angle") {
  for (int i = 0; i < 200; ++i) {
    const double wt = testing::uniform(-3, 3), j0 = testing::uniform(0, 3);
    const double w = testing::uniform(0.2, 3);
    const double t = testing::uniform(0.1, 20);
    const auto a = atom(wt, j0, w);
    const auto d = DriveSignal::cosine(j0, w);
    auto theta = [&](double s) { return mixing_angle_value(a, d, s, kSmooth); };
    const double scale = std::max({1.0, j0 * w, std::abs(wt)});
    const double h = 1e-3 / std::max({1.0, w, j0 * w / std::max(std::abs(wt), 1e-3)});
    const double fd = fd4(theta, t, h);
    CHECK(std::abs(connection_dtheta(a, d, t, kSmooth) - fd) <= 1e-6 * scale);
  }
}

TEST_CASE("connection vanishes for constant, rwa and resonant cosine drives") {
  for (double t = 0; t < 12; t += 0.37) {
    CHECK(std::abs(connection_dtheta(atom(0.5, 0.8, 1), DriveSignal::constant(0.8, 0.3), t, kSmooth)) <= 1e-12);
    CHECK(std::abs(connection_dtheta(atom(0.6, 0.8, 1), DriveSignal::rwa_pair(0.8, 1), t, kSmooth)) <= 1e-12);
    CHECK(std::abs(connection_dtheta(atom(0, 1, 1), DriveSignal::cosine(1, 1), t, kSmooth)) <= 1e-12);
  }
}

TEST_CASE("connection stays finite at coupling zeros") {
  const auto a = atom(0.5, 1, 1);
  const auto d = DriveSignal::cosine(1, 1);
  const double tz = pi / 2;
  const auto f = frame(a, d, tz, kSmooth);
  CHECK(std::isfinite(f.dtheta_dt));
  // d/dt theta at beta = 0 is beta'/(2 w~) for the half-angle map.
  CHECK(f.dtheta_dt == doctest::Approx(-1.0 / (2 * 0.5)).epsilon(1e-8));
  const double left = connection_dtheta(a, d, tz - 1e-7, kSmooth);
  const double right = connection_dtheta(a, d, tz + 1e-7, kSmooth);
  CHECK(std::abs(left - f.dtheta_dt) < 1e-6);
  CHECK(std::abs(right - f.dtheta_dt) < 1e-6);
}

TEST_CASE("identity residuals") {
  SUBCASE("constant drive") {
    const auto r = identity_residuals(atom(0.5, 0.8, 1), DriveSignal::constant(0.8, 0.3), 1.3, kSmooth);
    CHECK(r.valid);
    CHECK(std::abs(r.r1) <= 1e-14);
    CHECK(std::abs(r.r2) <= 1e-13);
    REQUIRE(r.r3);
    CHECK(std::abs(*r.r3) <= 1e-12);
  }
  SUBCASE("rwa drive") {
    for (double t = 0; t < 10; t += 0.77)
      CHECK(std::abs(identity_residuals(atom(0.6, 0.8, 1), DriveSignal::rwa_pair(0.8, 1), t, kSmooth).r1) <= 1e-12);
  }
  SUBCASE("cosine drive on [0, 10]") {
    const auto a = atom(0.7, 1.3, 2.1);
    const auto d = DriveSignal::cosine(1.3, 2.1);
    double m1 = 0, m2 = 0, m3 = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto r = identity_residuals(a, d, 10.0 * i / 999.0, kSmooth);
      REQUIRE(r.valid);
      m1 = std::max(m1, std::abs(r.r1));
      m2 = std::max(m2, std::abs(r.r2));
      if (r.r3) m3 = std::max(m3, std::abs(*r.r3));
    }
    CHECK(m1 <= 1e-8);
    CHECK(m2 <= 1e-8);
    CHECK(m3 <= 1e-8);
  }
  SUBCASE("degenerate frame is reported, not thrown") {
    const auto r = identity_residuals(atom(0, 0, 1), DriveSignal::constant(0, 0), 0.0, kSmooth);
    CHECK_FALSE(r.valid);
  }
}

TEST_CASE("frame tracker holds the angle across degenerate instants") {
  const auto a = atom(0, 1, 1);
  const auto d = DriveSignal::cosine(1, 1);
  FrameTracker tr(a, d, kSmooth);
  const auto before = tr.at(1.0);
  CHECK_FALSE(before.degenerate);
  const auto at = tr.at(pi / 2);
  CHECK(at.degenerate);
  CHECK(at.cos_theta == before.cos_theta);
  CHECK(at.sin_theta == before.sin_theta);
  CHECK(at.dtheta_dt == 0.0);

  FrameTracker first(atom(0, 0, 1), DriveSignal::constant(0, 0), kSmooth);
  const auto f0 = first.at(0.0);
  CHECK(f0.degenerate);
  CHECK(f0.cos_theta == 1.0);
  CHECK(f0.sin_theta == 0.0);
}

TEST_CASE("dispersion relation") {
  CHECK(dispersion_omega({0, 1, 0, 1, 1}) == 1.0);
  CHECK(dispersion_omega({0, 1, 2, 1, 1}) == -1.0);
  CHECK(dispersion_omega({2, 1, 0, 0, 1}) == 2.0);
  CHECK_THROWS_AS(dispersion_omega({1, 0, 0, 1, 1}), ValidationError);
}

TEST_CASE("transition current") {
  const double r = std::sqrt(0.5);
  CHECK(transition_current({{1, 0}, {0, 0}}) == 0.0);
  CHECK(transition_current({{r, 0}, {r, 0}}) == 0.0);
  CHECK(transition_current({{r, 0}, {0, r}}) == doctest::Approx(-0.5).epsilon(1e-15));
  const StateVector c{{0.3, -0.4}, {0.5, 0.7}};
  for (double phi : {0.3, 1.7, -2.9}) {
    const complex g = std::polar(1.0, phi);
    CHECK(std::abs(transition_current({g * c.c1, g * c.c2}) - transition_current(c)) <= 1e-14);
  }
}
