#include "dressed/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const double kTolRf = std::pow(3.0 * kEps * 0.01, 1.0 / 6.0);
const double kTolRd = std::pow(0.25 * kEps * 0.01, 1.0 / 6.0);

bool bad(double v) { return !std::isfinite(v) || v < 0.0; }

}  // namespace

// Duplication algorithms of B. C. Carlson, Numer. Algorithms 10 (1995) 13-26.

double carlson_rf(double x, double y, double z) {
  if (bad(x) || bad(y) || bad(z))
    throw DomainError("carlson_rf: arguments must be finite and non-negative");
  if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1)
    throw DomainError("carlson_rf: at most one argument may be zero");
  const double a0 = (x + y + z) / 3.0;
  double an = a0;
  const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / kTolRf;
  double x0 = x, y0 = y, z0 = z, mul = 1.0;
  while (q >= mul * std::abs(an)) {
    const double lam = std::sqrt(x0) * std::sqrt(y0) + std::sqrt(y0) * std::sqrt(z0) +
                       std::sqrt(z0) * std::sqrt(x0);
    an = (an + lam) / 4.0;
    x0 = (x0 + lam) / 4.0;
    y0 = (y0 + lam) / 4.0;
    z0 = (z0 + lam) / 4.0;
    mul *= 4.0;
  }
  const double xx = (a0 - x) / (mul * an);
  const double yy = (a0 - y) / (mul * an);
  const double zz = -xx - yy;
  const double e2 = xx * yy - zz * zz;
  const double e3 = xx * yy * zz;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
         std::sqrt(an);
}

double carlson_rd(double x, double y, double z) {
  if (bad(x) || bad(y) || !std::isfinite(z) || !(z > 0.0))
    throw DomainError("carlson_rd: need x, y >= 0 and z > 0");
  if (x == 0.0 && y == 0.0) throw DomainError("carlson_rd: x and y both zero");
  const double a0 = (x + y + 3.0 * z) / 5.0;
  double an = a0;
  const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / kTolRd;
  double x0 = x, y0 = y, z0 = z, mul = 1.0, s = 0.0;
  while (q >= mul * std::abs(an)) {
    const double lam = std::sqrt(x0) * std::sqrt(y0) + std::sqrt(y0) * std::sqrt(z0) +
                       std::sqrt(z0) * std::sqrt(x0);
    s += 1.0 / (mul * std::sqrt(z0) * (z0 + lam));
    an = (an + lam) / 4.0;
    x0 = (x0 + lam) / 4.0;
    y0 = (y0 + lam) / 4.0;
    z0 = (z0 + lam) / 4.0;
    mul *= 4.0;
  }
  const double xx = (a0 - x) / (mul * an);
  const double yy = (a0 - y) / (mul * an);
  const double zz = -(xx + yy) / 3.0;
  const double e2 = xx * yy - 6.0 * zz * zz;
  const double e3 = (3.0 * xx * yy - 8.0 * zz * zz) * zz;
  const double e4 = 3.0 * (xx * yy - zz * zz) * zz * zz;
  const double e5 = xx * yy * zz * zz * zz;
  return (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
          9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0) /
             (mul * an * std::sqrt(an)) +
         3.0 * s;
}

double ellip_e_complete(double k) {
  if (!std::isfinite(k) || k < 0.0 || k > 1.0)
    throw DomainError("ellip_e: modulus outside [0, 1]");
  if (k == 1.0) return 1.0;
  const double k2 = k * k;
  return carlson_rf(0.0, 1.0 - k2, 1.0) - k2 / 3.0 * carlson_rd(0.0, 1.0 - k2, 1.0);
}

double ellip_e_incomplete(const EllipticArg& a) {
  const double k = a.k;
  if (!std::isfinite(k) || k < 0.0 || k > 1.0)
    throw DomainError("ellip_e: modulus outside [0, 1]");
  if (!std::isfinite(a.phi)) throw DomainError("ellip_e: amplitude must be finite");
  if (k == 0.0) return a.phi;

  const double periods = std::round(a.phi / std::numbers::pi);
  const double r = a.phi - periods * std::numbers::pi;  // [-pi/2, pi/2]
  const double x = std::abs(r);
  double reduced;
  if (k == 1.0) {
    // Integrand |cos u|; exact on the first quadrant, including x = pi/2.
    reduced = std::sin(x);
  } else {
    const double s = std::sin(x), c = std::cos(x);
    const double k2 = k * k;
    const double y = 1.0 - k2 * s * s;
    reduced = s == 0.0 ? 0.0
                       : s * carlson_rf(c * c, y, 1.0) -
                             k2 / 3.0 * s * s * s * carlson_rd(c * c, y, 1.0);
  }
  return 2.0 * periods * ellip_e_complete(k) + std::copysign(reduced, r);
}

}  // namespace dressed
