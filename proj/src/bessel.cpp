#include "smddc/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace smddc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSplit = 2.0;

// x * K1(x) from the ascending series
//   K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k (psi(k+1) + psi(k+2)) (x^2/4)^k / (k! (k+1)!)
// Accurate on (0, 2]; the leading 1 carries the x -> 0 limit exactly.
double x_k1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
    double psi_k1 = -std::numbers::egamma;  // psi(k+1)
    double psi_k2 = 1.0 - std::numbers::egamma;  // psi(k+2)
    double i1_sum = 0.0;
    double psi_sum = 0.0;
    for (int k = 0; k < 60; ++k) {
        i1_sum += term;
        const double inc = (psi_k1 + psi_k2) * term;
        psi_sum += inc;
        if (term < kEps * i1_sum && std::abs(inc) < kEps * std::abs(psi_sum)) break;
        term *= q / ((k + 1.0) * (k + 2.0));
        psi_k1 += 1.0 / (k + 1.0);
        psi_k2 += 1.0 / (k + 2.0);
    }
    const double half = 0.5 * x;
    const double i1 = half * i1_sum;
    return 1.0 + x * std::log(half) * i1 - q * psi_sum;
}

// e^x K1(x) for x > 2 by Steed's method on the CF2 continued fraction (order 0,
// then the recurrence lifts to order 1).
double k1_scaled_cf2(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    h *= a1;
    const double k0_scaled = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    return k0_scaled * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: argument must be positive");
    if (x <= kSplit) return x_k1_series(x) / x;
    return std::exp(-x) * k1_scaled_cf2(x);
}

double bessel_k1_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1_scaled: argument must be positive");
    if (x <= kSplit) return std::exp(x) * x_k1_series(x) / x;
    return k1_scaled_cf2(x);
}

double x_k1(double x) {
    if (x < 0.0 || std::isnan(x)) throw std::domain_error("x_k1: argument must be non-negative");
    if (x == 0.0) return 1.0;
    if (x <= kSplit) return x_k1_series(x);
    if (std::isinf(x)) return 0.0;
    return x * std::exp(-x) * k1_scaled_cf2(x);
}

}  // namespace smddc
