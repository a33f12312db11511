#pragma once

#include <cmath>

namespace smddc {

template <class F>
double golden_section_minimize(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        // Interior points collapse once the bracket is a few ulps wide.
        if (!(c < d)) break;
    }
    double best = fc <= fd ? c : d;
    double fbest = fc <= fd ? fc : fd;
    if (const double fa = f(lo); fa < fbest) { best = lo; fbest = fa; }
    if (const double fb = f(hi); fb < fbest) best = hi;
    return best;
}

}  // namespace smddc
