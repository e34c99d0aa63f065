#pragma once

namespace dressed {

/// Amplitude and modulus of E(phi, k). The modulus must lie in [0, 1];
/// phi may be any finite angle.
struct EllipticArg {
  double phi = 0.0;
  double k = 0.0;
};

/// Carlson's symmetric integral of the first kind,
/// R_F(x,y,z) = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z)).
/// Arguments non-negative, at most one of them zero.
double carlson_rf(double x, double y, double z);

/// Carlson's symmetric integral of the second kind,
/// R_D(x,y,z) = 3/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z)^3).
/// z > 0, x and y non-negative, at most one of them zero.
double carlson_rd(double x, double y, double z);

/// Complete integral E(k) = E(pi/2, k).
double ellip_e_complete(double k);

/// E(phi, k) = int_0^phi sqrt(1 - k^2 sin^2 u) du for all real phi, using
/// E(phi + n pi, k) = E(phi, k) + 2 n E(k).
double ellip_e_incomplete(const EllipticArg& a);

}  // namespace dressed
