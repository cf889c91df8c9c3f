#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace vleb {

using cplx = std::complex<double>;

// Symbolic test functions: compactly supported leaves combined by complex
// scaling and summation.
//
//   CharFun(a,b)            indicator of (a,b)
//   PowerFun(x0,g,a,b)      |x-x0|^g on (a,b), g > -1
//   Bump(c,r)               exp(1 - 1/(1-u^2)), u=(x-c)/r, peak 1
//   PolyBump(c,r,coeffs)    P(u) times Bump (flat=false) or times the
//                           indicator of |u|<1 (flat=true)
struct FunctionExpr;
using ExprPtr = std::shared_ptr<const FunctionExpr>;

struct FunctionExpr {
    enum class Kind { Char, Power, Bump, PolyBump, Scale, Sum };
    Kind kind;

    // Char / Power support, Power singularity and exponent
    double a = 0.0, b = 0.0;
    double x0 = 0.0, gamma = 0.0;
    // Bump / PolyBump
    double center = 0.0, radius = 1.0;
    std::vector<double> coeffs;  // P(u) = sum coeffs[k] u^k
    bool flat = false;
    // Scale / Sum
    cplx scale = 1.0;
    std::vector<ExprPtr> children;

    cplx eval(double x) const;
    // interval hull of the support
    void support(double& lo, double& hi) const;
    // jump / edge / singular coordinates, unsorted with duplicates
    void collect_breakpoints(std::vector<double>& out) const;
    // power-type singular factors (gamma < 0 matters for quadrature)
    void collect_singularities(std::vector<std::pair<double, double>>& out) const;
    bool is_zero() const;
};

ExprPtr char_fun(double a, double b);
ExprPtr power_fun(double x0, double gamma, double a, double b);
ExprPtr bump(double center, double radius);
ExprPtr poly_bump(double center, double radius, std::vector<double> coeffs,
                  bool flat = false);
ExprPtr scale(cplx c, ExprPtr e);
ExprPtr sum(ExprPtr l, ExprPtr r);
ExprPtr sum(std::vector<ExprPtr> terms);

// smooth bump profile, peak 1 at u=0, support |u|<1
double bump_profile(double u);

}  // namespace vleb
