#pragma once

namespace boltzgap::special {

/// Exponentially scaled modified Bessel function e^{-x} I0(x) for x >= 0.
/// Power series up to x = 30, asymptotic expansion above.
double i0e(double x);

/// Scaled complementary error function e^{x^2} erfc(x) for x >= 0.
double erfcx(double x);

}  // namespace boltzgap::special
