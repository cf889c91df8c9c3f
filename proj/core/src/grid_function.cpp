#include "vleb/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vleb {

GridPtr make_grid_ptr(double half_width, int n_points,
                      const std::vector<double>& singular_nodes, int depth) {
    return std::make_shared<Grid>(make_grid(half_width, n_points, singular_nodes, depth));
}

bool GridFunction::is_zero() const {
    for (const auto& v : values)
        if (v != 0.0) return false;
    return true;
}

GridFunction sample(const ExprPtr& e, GridPtr g) {
    double lo, hi;
    e->support(lo, hi);
    if (lo < -g->half_width - 1e-12 || hi > g->half_width + 1e-12)
        throw std::invalid_argument("sample: expression support outside the domain");

    GridFunction f;
    f.grid = g;
    f.expr = e;
    f.field = std::make_shared<Field>(field_from_expr(e));
    const auto& pts = g->points;
    const int n = static_cast<int>(pts.size());
    f.values.resize(n);
    f.excluded.assign(n, 0);

    std::vector<std::pair<double, double>> sing;
    e->collect_singularities(sing);

    for (int i = 0; i < n; ++i) {
        double x = pts[i];
        bool on_pole = false;
        for (const auto& [pos, gam] : sing)
            if (gam < 0.0 && std::abs(x - pos) < 1e-13) on_pole = true;
        if (on_pole) {
            // adjacent cell midpoint convention
            double xm = (i + 1 < n) ? 0.5 * (x + pts[i + 1]) : 0.5 * (x + pts[i - 1]);
            f.values[i] = e->eval(xm);
        } else {
            f.values[i] = e->eval(x);
        }
    }
    return f;
}

GridFunction zero_function(GridPtr g) {
    GridFunction f;
    f.grid = g;
    f.values.assign(g->points.size(), 0.0);
    f.excluded.assign(g->points.size(), 0);
    return f;
}

GridFunction from_values(GridPtr g, std::vector<cplx> values) {
    if (values.size() != g->points.size())
        throw std::invalid_argument("from_values: length mismatch");
    GridFunction f;
    f.grid = g;
    f.values = std::move(values);
    f.excluded.assign(g->points.size(), 0);
    return f;
}

namespace {

Field ensure_field(const GridFunction& f) {
    if (f.field) return *f.field;
    return field_from_values(f.grid, std::make_shared<std::vector<cplx>>(f.values));
}

}  // namespace

cplx integrate(const GridFunction& f) {
    for (const auto& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("integrate: non-finite mesh value");
    Field fd = ensure_field(f);
    return integrate_field(fd, *f.grid);
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) throw std::invalid_argument("inner_product: grid mismatch");
    Field fa = ensure_field(f);
    Field fb = ensure_field(g);
    return integrate_product(fa, fb, *f.grid, /*conj_b=*/true);
}

namespace {

GridFunction combine(const GridFunction& a, const GridFunction& b, cplx cb) {
    if (!a.same_grid(b)) throw std::invalid_argument("grid mismatch");
    GridFunction r;
    r.grid = a.grid;
    r.values.resize(a.values.size());
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] + cb * b.values[i];
    r.excluded.assign(a.values.size(), 0);
    for (size_t i = 0; i < r.excluded.size(); ++i)
        r.excluded[i] = a.excluded[i] | (i < b.excluded.size() ? b.excluded[i] : 0);
    if (a.field && b.field)
        r.field = std::make_shared<Field>(field_sum(*a.field, field_scale(cb, *b.field)));
    if (a.expr && b.expr) r.expr = sum(a.expr, scale(cb, b.expr));
    if (a.tail || b.tail) {
        cplx t = (a.tail ? a.tail->coef : 0.0) + cb * (b.tail ? b.tail->coef : 0.0);
        r.tail = TailModel{t};
    }
    return r;
}

}  // namespace

GridFunction gf_add(const GridFunction& a, const GridFunction& b) { return combine(a, b, 1.0); }
GridFunction gf_sub(const GridFunction& a, const GridFunction& b) { return combine(a, b, -1.0); }

GridFunction gf_scale(cplx c, const GridFunction& a) {
    GridFunction r;
    r.grid = a.grid;
    r.values.resize(a.values.size());
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = c * a.values[i];
    r.excluded = a.excluded;
    if (a.field) r.field = std::make_shared<Field>(field_scale(c, *a.field));
    if (a.expr) r.expr = scale(c, a.expr);
    if (a.tail) r.tail = TailModel{c * a.tail->coef};
    return r;
}

}  // namespace vleb
