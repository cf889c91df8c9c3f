#pragma once

#include <stdexcept>
#include <vector>

#include "vleb/expr.hpp"

namespace vleb {

struct VariableExponent;

struct PoleError : std::runtime_error {
    explicit PoleError(const char* what) : std::runtime_error(what) {}
};

// Weight on the line. Power form:
//   w(x) = |x - i|^lambda_inf * prod_j |x - node_j|^power_j,  |x-i| = sqrt(x^2+1).
// Generic form: a strictly positive expression, with a reciprocal flag so that
// inversion stays exactly involutive.
struct WeightSpec {
    enum class Kind { Power, Generic };
    Kind kind = Kind::Power;

    std::vector<double> nodes;   // strictly increasing
    std::vector<double> powers;  // same length
    double lambda_inf = 0.0;

    ExprPtr expr;           // Generic body
    bool inverted = false;  // Generic: evaluate 1/expr

    bool is_identity() const {
        return kind == Kind::Power && nodes.empty() && lambda_inf == 0.0;
    }
    // exponent of |x| as |x| -> inf (power form)
    double tail_exponent() const;
    void validate() const;
};

WeightSpec power_weight(std::vector<double> nodes, std::vector<double> powers,
                        double lambda_inf = 0.0);
WeightSpec generic_weight(ExprPtr expr);
WeightSpec unit_weight();

// throws PoleError at a node with negative total power
double eval_weight(const WeightSpec& w, double x);

WeightSpec invert(const WeightSpec& w);

struct KsReport {
    struct NodeCheck {
        double node;
        double quantity;  // 1/p(node) + power
        bool pass;
    };
    std::vector<NodeCheck> local_checks;
    double infinity_quantity = 0.0;  // 1/p(inf) + lambda_inf + sum powers
    bool infinity_pass = true;
    bool verdict = true;
    bool p_constant_outside_nodes = true;  // advisory only
};

// 0 < 1/p(node_j) + power_j < 1 for each node, and
// 0 < 1/p(inf) + lambda_inf + sum_j power_j < 1.
// Throws for generic weights (criterion inapplicable).
KsReport ks_criterion(const VariableExponent& p, const WeightSpec& w);

}  // namespace vleb
