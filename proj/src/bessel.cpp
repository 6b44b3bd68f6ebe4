#include "arcdelta/bessel.hpp"

#include <cmath>

#include "arcdelta/errors.hpp"

namespace arcdelta {
namespace {

template <int N>
double poly_eval(const double (&c)[N], double x) {
  double r = c[N - 1];
  for (int i = N - 2; i >= 0; i--) r = r * x + c[i];
  return r;
}

// Large-argument rational minimax approximations of the exponentially scaled
// functions e^z K0(z) and e^z K1(z), valid for z >= 1. Coefficients from
// Boost.Math (bessel_k0.hpp / bessel_k1.hpp, double-precision branch),
// derived by John Maddock after Russon & Blair and Pavel Holoborodko.
const double k0_large_p[9] = {
    2.533141373155002416e-01, 3.628342133984595192e+00,  1.868441889406606057e+01,
    4.306243981063412784e+01, 4.424116209627428189e+01,  1.562095339356220468e+01,
    -1.810138978229410898e+00, -1.414237994269995877e+00, -9.369168119754924625e-02};
const double k0_large_q[9] = {
    1.000000000000000000e+00, 1.494194694879908328e+01, 8.265296455388554217e+01,
    2.162779506621866970e+02, 2.845145155184222157e+02, 1.851714491916334995e+02,
    5.486540717439723515e+01, 6.118075837628957015e+00, 1.586261269326235053e-01};
const double k1_large_p[9] = {
    -1.97028041029226295e-01, -2.32408961548087617e+00, -7.98269784507699938e+00,
    -2.39968410774221632e+00, 3.28314043780858713e+01,  5.67713761158496058e+01,
    3.30907788466509823e+01,  6.62582288933739787e+00,  3.08851840645286691e-01};
const double k1_large_q[9] = {
    1.00000000000000000e+00, 1.41811409298826118e+01, 7.35979466317556420e+01,
    1.77821793937080859e+02, 2.11014501598705982e+02, 1.19425262951064454e+02,
    2.88448064302447607e+01, 2.27912927104139732e+00, 2.50358186953478678e-02};
const double k1_large_y = 1.45034217834472656;

// e^z K_nu(z) for z > 2
double k0_scaled_large(double z) {
  double t = 1.0 / z;
  return (poly_eval(k0_large_p, t) / poly_eval(k0_large_q, t) + 1.0) / std::sqrt(z);
}
double k1_scaled_large(double z) {
  double t = 1.0 / z;
  return (poly_eval(k1_large_p, t) / poly_eval(k1_large_q, t) + k1_large_y) / std::sqrt(z);
}

// value = scaled * e^-z without intermediate underflow for large z
double descale(double scaled, double z) {
  if (z < 700.0) return scaled * std::exp(-z);
  double half = std::exp(-0.5 * z);
  return (scaled * half) * half;
}

// ascending-series sums shared by K0 and the smooth part:
//   i0sum   = I0(z) = sum u^k/(k!)^2,            u = z^2/4
//   hksum   = sum_{k>=1} H_k u^k/(k!)^2,         H_k = 1 + 1/2 + ... + 1/k
void k0_series_sums(double z, double& i0sum, double& hksum) {
  double u = 0.25 * z * z;
  double term = 1.0, hk = 0.0;
  i0sum = 1.0;
  hksum = 0.0;
  for (int k = 1; k <= 60; k++) {
    term *= u / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    i0sum += term;
    hksum += term * hk;
    if (term * (hk + 1.0) < 1e-18 * (i0sum + hksum)) break;
  }
}

}  // namespace

double bessel_i0(double z) {
  if (z < 0.0) fail(Errc::bad_argument, "bessel_i0: z must be >= 0");
  if (z <= 30.0) {
    double u = 0.25 * z * z, term = 1.0, sum = 1.0;
    for (int k = 1; k <= 80; k++) {
      term *= u / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  // Hankel expansion, plenty below 1e-13 at z > 30
  double sum = 1.0, term = 1.0;
  for (int k = 1; k <= 12; k++) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
    sum += term;
  }
  return sum * std::exp(z) / std::sqrt(2.0 * M_PI * z);
}

double bessel_i1(double z) {
  if (z < 0.0) fail(Errc::bad_argument, "bessel_i1: z must be >= 0");
  if (z <= 30.0) {
    double u = 0.25 * z * z, term = 0.5 * z, sum = term;
    for (int k = 1; k <= 80; k++) {
      term *= u / (static_cast<double>(k) * (k + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  double sum = 1.0, term = 1.0;
  for (int k = 1; k <= 12; k++) {
    term *= -(4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
    sum += term;
  }
  return sum * std::exp(z) / std::sqrt(2.0 * M_PI * z);
}

BesselEval bessel_k0(double z) {
  if (z <= 0.0) fail(Errc::bad_argument, "bessel_k0: z must be > 0");
  if (z <= 2.0) {
    double i0sum, hksum;
    k0_series_sums(z, i0sum, hksum);
    double v = -(std::log(0.5 * z) + euler_gamma) * i0sum + hksum;
    return {v, v * std::exp(z)};
  }
  double s = k0_scaled_large(z);
  return {descale(s, z), s};
}

BesselEval bessel_k1(double z) {
  if (z <= 0.0) fail(Errc::bad_argument, "bessel_k1: z must be > 0");
  if (z <= 2.0) {
    // K1(z) = 1/z + log(z/2) I1(z) - z/4 sum_k (H_k + H_{k+1} - 2 gamma) u^k / (k!(k+1)!)
    double u = 0.25 * z * z;
    double term = 1.0;  // u^k / (k!(k+1)!)
    double hk = 0.0, hk1 = 1.0;
    double sum = hk + hk1 - 2.0 * euler_gamma;
    for (int k = 1; k <= 60; k++) {
      term *= u / (static_cast<double>(k) * (k + 1.0));
      hk += 1.0 / k;
      hk1 += 1.0 / (k + 1.0);
      double c = hk + hk1 - 2.0 * euler_gamma;
      sum += term * c;
      if (term * (std::abs(c) + 1.0) < 1e-18 * std::abs(sum)) break;
    }
    double v = 1.0 / z + std::log(0.5 * z) * bessel_i1(z) - 0.25 * z * sum;
    return {v, v * std::exp(z)};
  }
  double s = k1_scaled_large(z);
  return {descale(s, z), s};
}

double k0_smooth_part(double z) {
  if (z < 0.0) fail(Errc::bad_argument, "k0_smooth_part: z must be >= 0");
  if (z == 0.0) return -euler_gamma;
  if (z <= 2.0) {
    double i0sum, hksum;
    k0_series_sums(z, i0sum, hksum);
    return -euler_gamma * i0sum + hksum;
  }
  return bessel_k0(z).value + bessel_i0(z) * std::log(0.5 * z);
}

}  // namespace arcdelta
