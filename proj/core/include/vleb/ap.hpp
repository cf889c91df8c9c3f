#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vleb/exponent.hpp"
#include "vleb/grid_function.hpp"
#include "vleb/norms.hpp"
#include "vleb/weight.hpp"

namespace vleb {

struct Interval {
    double a, b;
    double length() const { return b - a; }
};

struct ApIntervalValue {
    Interval q{0.0, 0.0};
    double value = 0.0;      // +inf when a norm factor diverges
    bool divergent = false;
    double desk_value = 0.0; // finite quadrature value at the deepest refinement
};

struct ApReport {
    std::vector<ApIntervalValue> per_interval;
    double sup_estimate = 0.0;  // max of finite per-interval values
    bool divergent = false;
    Interval argmax{0.0, 0.0};
    // sup of desk values across family refinement levels 3..levels; the
    // quadrature depth scales with the level, so a divergent weight shows
    // unbounded growth here
    std::vector<double> level_trace;
    // asymptotic functional on (-B, B) for B beyond the truncation, power
    // weights only
    std::vector<double> infinity_trace;
    int levels = 0;
    std::string qualifier;  // desk-scale caveat attached to every report
};

struct GridConfig {
    double half_width = 16.0;
    int n_points = 4097;
    int depth = 8;
};

// (1/|q|) ||w chi_q||_p ||w^{-1} chi_q||_p' on a grid graded toward the
// weight nodes
ApIntervalValue ap_functional(const VariableExponent& p, const WeightSpec& w,
                              Interval q, const GridConfig& cfg);

// dyadic lengths 2^k for k in [-levels, log2 L], centers on the coarse mesh
// of spacing L/16, node-centered and node-anchored intervals, plus [-L, L]
std::vector<Interval> interval_family(const WeightSpec& w, int levels, double L);

ApReport ap_estimate(const VariableExponent& p, const WeightSpec& w, int levels,
                     const GridConfig& cfg);

struct Classification {
    bool in_class = false;
    ApReport report;
    std::optional<KsReport> ks;  // attached for power weights
};

Classification classify(const VariableExponent& p, const WeightSpec& w, int levels,
                        const GridConfig& cfg);

}  // namespace vleb
