#pragma once

#include <memory>
#include <string>
#include <vector>

namespace vleb {

struct Grid;

// Variable exponent p: R -> (1, inf). Supported bodies: constant, piecewise
// constant, c0 + c1/log(e+|x|), and c0 + c1*atan(x)/pi (the last has no limit
// at infinity and exists to exercise the decay diagnostic). Conjugation wraps
// the body with the pointwise map p/(p-1).
struct VariableExponent {
    enum class Kind { Const, Piecewise, LogShift, Atan, Conjugated };
    Kind kind = Kind::Const;

    double value = 2.0;           // Const
    std::vector<double> breaks;   // Piecewise: plateau[i] on (breaks[i-1], breaks[i])
    std::vector<double> plateau;  // size = breaks.size() + 1
    double c0 = 2.0, c1 = 1.0;    // LogShift / Atan
    std::shared_ptr<const VariableExponent> inner;  // Conjugated

    double p_minus = 2.0;
    double p_plus = 2.0;
    double p_inf = 2.0;

    double operator()(double x) const;
    std::vector<double> breakpoints() const;
    bool is_constant() const;
    void validate() const;  // checks 1 < p_minus <= p_plus < inf, p_inf in range
};

VariableExponent const_exponent(double p);
VariableExponent piecewise_exponent(std::vector<double> breaks,
                                    std::vector<double> plateau);
VariableExponent logshift_exponent(double c0, double c1);
VariableExponent atan_exponent(double c0, double c1);

// pointwise p'(x) = p(x)/(p(x)-1); unwraps a double conjugation exactly
VariableExponent conjugate(const VariableExponent& p);

// observed min/max of p over the mesh; throws when the declared bounds of a
// constant or piecewise body disagree beyond 1e-9
std::pair<double, double> exponent_bounds(const VariableExponent& p, const Grid& g);

struct LogHolderDiagnostic {
    double c1_est = 0.0;   // sup |a(x)-a(y)| log(e + 1/|x-y|),  a = 1/p
    double c2_est = 0.0;   // sup |a(x)-a_inf| log(e + |x|)
    bool decay_ok = true;  // one-sided tail means of a agree to 1e-6
    double tail_mean_left = 0.0, tail_mean_right = 0.0;
};

LogHolderDiagnostic log_holder_diagnostic(const VariableExponent& p, const Grid& g,
                                          long pair_budget, unsigned seed = 42);

}  // namespace vleb
