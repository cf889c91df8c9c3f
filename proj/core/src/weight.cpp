#include "vleb/weight.hpp"

#include <algorithm>
#include <cmath>

#include "vleb/exponent.hpp"

namespace vleb {

double WeightSpec::tail_exponent() const {
    if (kind != Kind::Power) return 0.0;
    double s = lambda_inf;
    for (double p : powers) s += p;
    return s;
}

void WeightSpec::validate() const {
    if (kind == Kind::Power) {
        if (nodes.size() != powers.size())
            throw std::invalid_argument("weight: nodes and powers must pair up");
        for (size_t i = 1; i < nodes.size(); ++i)
            if (!(nodes[i - 1] < nodes[i]))
                throw std::invalid_argument("weight: nodes must strictly increase");
    } else {
        if (!expr) throw std::invalid_argument("weight: generic body missing");
    }
}

WeightSpec power_weight(std::vector<double> nodes, std::vector<double> powers,
                        double lambda_inf) {
    WeightSpec w;
    w.kind = WeightSpec::Kind::Power;
    w.nodes = std::move(nodes);
    w.powers = std::move(powers);
    w.lambda_inf = lambda_inf;
    w.validate();
    return w;
}

WeightSpec generic_weight(ExprPtr expr) {
    WeightSpec w;
    w.kind = WeightSpec::Kind::Generic;
    w.expr = std::move(expr);
    w.validate();
    return w;
}

WeightSpec unit_weight() { return power_weight({}, {}, 0.0); }

double eval_weight(const WeightSpec& w, double x) {
    if (w.kind == WeightSpec::Kind::Power) {
        double v = std::pow(x * x + 1.0, 0.5 * w.lambda_inf);
        for (size_t j = 0; j < w.nodes.size(); ++j) {
            double d = std::abs(x - w.nodes[j]);
            if (d == 0.0) {
                if (w.powers[j] < 0.0) throw PoleError("weight pole");
                if (w.powers[j] == 0.0) continue;
                return 0.0;
            }
            v *= std::pow(d, w.powers[j]);
        }
        return v;
    }
    double v = std::abs(w.expr->eval(x));
    if (w.inverted) {
        if (v == 0.0) throw PoleError("generic weight vanishes");
        return 1.0 / v;
    }
    return v;
}

WeightSpec invert(const WeightSpec& w) {
    WeightSpec r = w;
    if (w.kind == WeightSpec::Kind::Power) {
        for (double& p : r.powers) p = -p;
        r.lambda_inf = -w.lambda_inf;
    } else {
        r.inverted = !w.inverted;
    }
    return r;
}

KsReport ks_criterion(const VariableExponent& p, const WeightSpec& w) {
    if (w.kind != WeightSpec::Kind::Power)
        throw std::invalid_argument("ks_criterion: inapplicable to generic weights");
    KsReport r;
    double sum = w.lambda_inf;
    for (size_t j = 0; j < w.nodes.size(); ++j) {
        double q = 1.0 / p(w.nodes[j]) + w.powers[j];
        r.local_checks.push_back({w.nodes[j], q, q > 0.0 && q < 1.0});
        sum += w.powers[j];
    }
    r.infinity_quantity = 1.0 / p.p_inf + sum;
    r.infinity_pass = r.infinity_quantity > 0.0 && r.infinity_quantity < 1.0;
    r.verdict = r.infinity_pass;
    for (const auto& c : r.local_checks) r.verdict = r.verdict && c.pass;
    r.p_constant_outside_nodes = p.is_constant();
    return r;
}

}  // namespace vleb
