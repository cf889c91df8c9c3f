#include "vleb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vleb {

namespace {

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

int Grid::locate(double x) const {
    auto it = std::upper_bound(points.begin(), points.end(), x);
    int i = static_cast<int>(it - points.begin()) - 1;
    if (i < 0) i = 0;
    if (i > cell_count() - 1) i = cell_count() - 1;
    return i;
}

int Grid::nearest_point(double x) const {
    auto it = std::lower_bound(points.begin(), points.end(), x);
    if (it == points.begin()) return 0;
    if (it == points.end()) return static_cast<int>(points.size()) - 1;
    int i = static_cast<int>(it - points.begin());
    return (x - points[i - 1] <= points[i] - x) ? i - 1 : i;
}

Grid make_grid(double half_width, int n_points,
               const std::vector<double>& singular_nodes, int depth) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half width must be positive");
    if (n_points < 33)
        throw std::invalid_argument("make_grid: at least 33 mesh points required");
    if (!power_of_two(n_points - 1))
        throw std::invalid_argument("make_grid: point count must be a power of two plus one");
    if (depth < 0)
        throw std::invalid_argument("make_grid: negative grading depth");

    Grid g;
    g.half_width = half_width;
    g.n_base = n_points;
    g.grading_depth = depth;

    const double L = half_width;
    const double h = 2.0 * L / (n_points - 1);
    std::vector<double> pts(n_points);
    for (int i = 0; i < n_points; ++i) pts[i] = -L + h * i;
    pts.front() = -L;
    pts.back() = L;

    std::vector<double> nodes = singular_nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [&](double a, double b) { return std::abs(a - b) < 1e-14 * L; }),
                nodes.end());
    for (double s : nodes)
        if (s <= -L || s >= L)
            throw std::invalid_argument("make_grid: grading node outside (-L, L)");
    g.grading_nodes = nodes;

    if (depth > 0) {
        std::vector<double> extra;
        for (double s : nodes) {
            // ensure the node itself is a mesh point
            auto it = std::lower_bound(pts.begin(), pts.end(), s);
            bool present = (it != pts.end() && std::abs(*it - s) < 1e-13 * L) ||
                           (it != pts.begin() && std::abs(*(it - 1) - s) < 1e-13 * L);
            if (!present) extra.push_back(s);

            // split the adjacent cell on each side: insert s +/- w/2^k
            double lo = (it == pts.begin()) ? -L : *(it - 1);
            double hi = (it == pts.end()) ? L : *it;
            if (present) {
                // neighbours of the node
                int idx = static_cast<int>(it - pts.begin());
                if (it != pts.end() && std::abs(*it - s) < 1e-13 * L) {
                    lo = (idx > 0) ? pts[idx - 1] : -L;
                    hi = (idx + 1 < static_cast<int>(pts.size())) ? pts[idx + 1] : L;
                } else {
                    lo = (idx >= 2) ? pts[idx - 2] : -L;
                    hi = (idx < static_cast<int>(pts.size())) ? pts[idx] : L;
                }
            }
            double wl = s - lo, wr = hi - s;
            double fl = 0.5, fr = 0.5;
            for (int k = 0; k < depth; ++k) {
                if (wl > 0) extra.push_back(s - wl * fl);
                if (wr > 0) extra.push_back(s + wr * fr);
                fl *= 0.5;
                fr *= 0.5;
            }
        }
        pts.insert(pts.end(), extra.begin(), extra.end());
        std::sort(pts.begin(), pts.end());
        // tolerance relative to the local magnitude so deep grading toward a
        // node keeps its points
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [&](double a, double b) {
                                  double scale = std::max(std::abs(a), std::abs(b));
                                  return b - a <= 1e-15 * scale;
                              }),
                  pts.end());
    }

    g.points = std::move(pts);
    return g;
}

}  // namespace vleb
