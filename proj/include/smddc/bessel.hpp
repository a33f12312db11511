#pragma once

namespace smddc {

/// Modified Bessel function of the second kind, order 1.
/// Power series for x <= 2, Steed's continued fraction (CF2) above.
/// Throws std::domain_error for x <= 0.
double bessel_k1(double x);

/// e^x * K1(x); finite for large x where K1 itself underflows.
double bessel_k1_scaled(double x);

/// x * K1(x) for x >= 0, with the limit value 1 at x = 0.
double x_k1(double x);

}  // namespace smddc
