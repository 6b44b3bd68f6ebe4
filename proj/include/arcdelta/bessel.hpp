#ifndef ARCDELTA_BESSEL_HPP
#define ARCDELTA_BESSEL_HPP

namespace arcdelta {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Modified Bessel function value together with its exponentially scaled
// companion e^z K_nu(z). The plain value underflows near z ~ 745; the scaled
// one stays finite through the kernel assembly at large spectral parameters.
struct BesselEval {
  double value;
  double scaled_value;
};

// K0(z) and K1(z) for z > 0. Ascending series below z = 2, rational minimax
// approximation of the scaled function above. Relative error <= 1e-10 on
// [1e-8, 700] (in practice close to machine precision).
BesselEval bessel_k0(double z);
BesselEval bessel_k1(double z);

// I0(z) and I1(z) for z >= 0; ascending series, intended for moderate
// arguments (full accuracy for z <= 30, asymptotic branch beyond).
double bessel_i0(double z);
double bessel_i1(double z);

// Smooth remainder S(z) = K0(z) + I0(z) * log(z/2) used in the
// log-singularity subtraction; S(0) = -euler_gamma, analytic on [0, inf).
double k0_smooth_part(double z);

}  // namespace arcdelta

#endif
