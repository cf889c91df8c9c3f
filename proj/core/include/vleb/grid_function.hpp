#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vleb/expr.hpp"
#include "vleb/grid.hpp"
#include "vleb/quadrature.hpp"

namespace vleb {

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid_ptr(double half_width, int n_points,
                      const std::vector<double>& singular_nodes = {}, int depth = 0);

// Mesh samples of a function, with optional pointwise provenance (the Field)
// enabling exact or refined quadrature, an exclusion mask for points sitting
// on log-type singularities of operator outputs, and a first-moment tail
// model for mass outside [-L, L].
struct GridFunction {
    GridPtr grid;
    std::vector<cplx> values;
    std::vector<uint8_t> excluded;  // same length as values
    ExprPtr expr;                   // symbolic provenance when sampled
    std::shared_ptr<const Field> field;
    std::optional<TailModel> tail;

    bool same_grid(const GridFunction& o) const { return grid == o.grid || grid->points == o.grid->points; }
    bool is_zero() const;
};

// pointwise evaluation at mesh nodes; a power-type singularity sitting on a
// node takes the value at the adjacent cell midpoint
GridFunction sample(const ExprPtr& e, GridPtr g);

GridFunction zero_function(GridPtr g);
GridFunction from_values(GridPtr g, std::vector<cplx> values);

cplx integrate(const GridFunction& f);
cplx inner_product(const GridFunction& f, const GridFunction& g);

GridFunction gf_add(const GridFunction& a, const GridFunction& b);
GridFunction gf_sub(const GridFunction& a, const GridFunction& b);
GridFunction gf_scale(cplx c, const GridFunction& a);

}  // namespace vleb
