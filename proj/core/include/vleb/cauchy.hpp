#pragma once

#include "vleb/grid_function.hpp"

namespace vleb {

// Principal-value quadrature controls. The singularity is subtracted on a
// window of `window_cells` local cells around the evaluation point and the
// remainder integrated by symmetric pairs; `first_moment` adds the analytic
// 1/x tail of mass that previous applications pushed outside [-L, L].
struct PVQuadSpec {
    double window_cells = 4.0;
    enum class Tail { None, FirstMoment };
    Tail tail_mode = Tail::FirstMoment;

    void validate() const;
};

// closed form for the transform of an indicator: (1/(pi i)) ln|(b-x)/(a-x)|,
// valid inside and outside (a,b); throws at x = a or x = b
cplx cauchy_indicator(double a, double b, double x);

// (1/(pi i)) pv-integral of f(t)/(t - x) dt at every mesh point.
// Expression-backed inputs use per-leaf quadrature (exact logs for indicator
// pieces, Gauss rules for smooth leaves); operator outputs fall back to the
// piecewise-linear engine. Points within two cells of a log singularity are
// flagged in the output.
GridFunction cauchy_transform(const GridFunction& f, const PVQuadSpec& spec = {});

// engine evaluation of the transform of an expression at an arbitrary point
cplx cauchy_eval(const ExprPtr& f, const Grid& g, double x,
                 const PVQuadSpec& spec = {});

}  // namespace vleb
