#pragma once

#include <vector>

#include "vleb/exponent.hpp"
#include "vleb/grid_function.hpp"
#include "vleb/weight.hpp"

namespace vleb {

struct ModularResult {
    double value = 0.0;  // +inf when divergent
    bool divergent = false;
    std::vector<double> trace;        // values across the grading-depth ladder
    std::vector<int> trace_depths;
    double desk_value = 0.0;          // deepest finite quadrature value
};

struct NormResult {
    double value = 0.0;  // +inf when the modular diverges for every scale
    bool divergent = false;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double modular_at_value = 0.0;
    double desk_value = 0.0;  // bisection on the finite desk-scale kernel
};

// integral of |f(x)/lambda|^{p(x)} dx over the grid, with singularity-graded
// refinement; divergence detected from the refinement trace
ModularResult modular(const GridFunction& f, const VariableExponent& p, double lambda);

// inf { lambda > 0 : modular(f/lambda) <= 1 } by bisection
NormResult luxemburg_norm(const GridFunction& f, const VariableExponent& p);

// ||f w||_{p(.)}; the grid should be graded toward the weight's nodes
NormResult weighted_norm(const GridFunction& f, const VariableExponent& p,
                         const WeightSpec& w);

struct HolderReport {
    double lhs = 0.0;  // integral of |f g|
    double rhs = 0.0;  // 2 ||f||_p ||g||_p'
    double ratio = 0.0;
    bool pass = true;
};

HolderReport holder_check(const GridFunction& f, const GridFunction& g,
                          const VariableExponent& p);

// max over the family of |integral of f g| with f normalized to unit weighted
// norm; a lower bound for the associate norm
double dual_norm_estimate(const GridFunction& g, const VariableExponent& p,
                          const WeightSpec& w, const std::vector<ExprPtr>& family);

}  // namespace vleb
