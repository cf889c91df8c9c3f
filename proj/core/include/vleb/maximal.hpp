#pragma once

#include "vleb/grid_function.hpp"

namespace vleb {

// Hardy-Littlewood maximal function: at each mesh point, the largest average
// of |f| over the searched interval family (dyadic and 1.5*dyadic radii with
// mesh-point endpoints, two-sided combinations and one-sided intervals
// anchored at the point). Real, nonnegative output.
GridFunction maximal_function(const GridFunction& f);

// nonincreasing rearrangement at measure t, from cell-measure sums
double rearrangement(const GridFunction& f, double t);

// f#_delta: sup over the interval family of the best-constant L^delta mean
// deviation, raised to 1/delta. Operates on the real part of the values.
GridFunction sharp_maximal(const GridFunction& f, double delta);

// M#_lambda: sup over the interval family of the lambda|Q|-rearrangement of
// the best-constant deviation restricted to Q
GridFunction local_sharp_maximal(const GridFunction& f, double lambda);

// both sharp functions in one pass over a shared interval family and
// candidate set, so pointwise comparisons are like-discretized
void sharp_pair(const GridFunction& f, double delta, double lambda,
                GridFunction& sharp, GridFunction& local);

// inner objective ((1/|Q|) integral over Q of |f-c|^delta)^{1/delta} for one
// interval, exposed for oracle tests
double deviation_objective(const GridFunction& f, double qa, double qb, double c,
                           double delta);

}  // namespace vleb
