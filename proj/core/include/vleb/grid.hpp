#pragma once

#include <vector>

namespace vleb {

// Mesh on the truncated line [-L, L]. Starts from a uniform partition of
// n points (n - 1 cells, n = 2^k + 1) and, for each grading node, splits the
// two adjacent cells geometrically so that cell widths halve per level toward
// the node. The node itself is inserted as a mesh point if it is not one.
struct Grid {
    double half_width = 16.0;            // L
    int n_base = 4097;                   // requested point count before grading
    int grading_depth = 8;
    std::vector<double> grading_nodes;   // sorted, deduplicated
    std::vector<double> points;          // strictly increasing, covers [-L, L]

    double coarse_cell() const { return 2.0 * half_width / (n_base - 1); }
    int cell_count() const { return static_cast<int>(points.size()) - 1; }

    // index of the cell containing x (clamped to [0, cell_count()-1])
    int locate(double x) const;
    // index of the mesh point nearest to x
    int nearest_point(double x) const;
};

Grid make_grid(double half_width, int n_points,
               const std::vector<double>& singular_nodes = {},
               int depth = 0);

}  // namespace vleb
