#pragma once

// Test-side reference computations, independent of the library quadrature.

#include <cmath>
#include <functional>

namespace oracle {

// adaptive Simpson on [a, b]
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int panels = 64) {
    // initial panel split so compact supports are not missed
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        double x1 = a + (b - a) * k / panels;
        double x2 = a + (b - a) * (k + 1) / panels;
        double fa = f(x1), fb = f(x2), fm = f(0.5 * (x1 + x2));
        double whole = (x2 - x1) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(f, x1, x2, fa, fm, fb, whole, tol / panels, 40);
    }
    return total;
}

// bisection root solve for increasing g on [lo, hi]
inline double root(const std::function<double(double)>& g, double lo, double hi,
                   double tol = 1e-14) {
    double glo = g(lo);
    for (int i = 0; i < 200 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (glo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
