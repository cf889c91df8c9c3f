#include "vleb/cauchy.hpp"

#include "vleb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vleb {

namespace {

const cplx kInvPiI(0.0, -1.0 / M_PI);  // 1/(pi i)

struct ScaledLeaf {
    cplx scale;
    const FunctionExpr* leaf;
};

void collect_leaves(const ExprPtr& e, cplx s, std::vector<ScaledLeaf>& out) {
    switch (e->kind) {
        case FunctionExpr::Kind::Scale:
            collect_leaves(e->children[0], s * e->scale, out);
            return;
        case FunctionExpr::Kind::Sum:
            for (const auto& c : e->children) collect_leaves(c, s, out);
            return;
        default:
            out.push_back({s, e.get()});
            return;
    }
}

// asymptotic factor: integral of 1/(t (t - x)) over |t| > L
double tail_factor(double x, double L, double edge) {
    double c = std::min(std::max(x, -(L - edge)), L - edge);
    if (std::abs(c) < 1e-3 * L)
        return 2.0 / L + 2.0 * c * c / (3.0 * L * L * L);
    return std::log((L + c) / (L - c)) / c;
}

double local_cell(const Grid& g, double x) {
    int i = g.locate(x);
    double w = g.points[i + 1] - g.points[i];
    if (i + 2 < static_cast<int>(g.points.size()))
        w = std::max(w, g.points[i + 2] - g.points[i + 1]);
    if (i > 0) w = std::max(w, g.points[i] - g.points[i - 1]);
    return w;
}

// pv transform of a single smooth-or-power leaf at x: Gauss cells outside the
// subtraction window, symmetric pairs inside
cplx leaf_pv(const FunctionExpr& leaf, const Grid& g, double x, double h) {
    double lo, hi;
    leaf.support(lo, hi);
    lo = std::max(lo, -g.half_width);
    hi = std::min(hi, g.half_width);
    if (!(lo < hi)) return 0.0;

    const auto& rule6 = gauss_rule(6);
    cplx outer = 0.0;
    auto gl_piece = [&](double a, double b) {
        if (!(a < b)) return;
        double c = 0.5 * (a + b), hw = 0.5 * (b - a);
        cplx s = 0.0;
        for (const auto& [node, wt] : rule6) {
            double t = c + hw * node;
            s += wt * leaf.eval(t) / (t - x);
        }
        outer += s * hw;
    };

    const auto& pts = g.points;
    auto it = std::upper_bound(pts.begin(), pts.end(), lo);
    double prev = lo;
    for (; it != pts.end() && *it < hi; ++it) {
        double a = prev, b = *it;
        prev = b;
        // clip out the window
        if (b <= x - h || a >= x + h) {
            gl_piece(a, b);
        } else {
            gl_piece(a, std::min(b, x - h));
            gl_piece(std::max(a, x + h), b);
        }
    }
    {
        double a = prev, b = hi;
        if (b <= x - h || a >= x + h) {
            gl_piece(a, b);
        } else {
            gl_piece(a, std::min(b, x - h));
            gl_piece(std::max(a, x + h), b);
        }
    }

    // window: integral over (0, h] of (f(x+t) - f(x-t)) / t
    cplx window = 0.0;
    if (h > 0.0) {
        const auto& rule10 = gauss_rule(10);
        double c = 0.5 * h, hw = 0.5 * h;
        for (const auto& [node, wt] : rule10) {
            double t = c + hw * node;
            window += wt * (leaf.eval(x + t) - leaf.eval(x - t)) / t;
        }
        window *= hw;
    }
    return outer + window;
}

// log-type points of an expression: indicator edges, power support edges and
// the power node itself
std::vector<double> log_points_of(const std::vector<ScaledLeaf>& leaves) {
    std::vector<double> pts;
    for (const auto& sl : leaves) {
        switch (sl.leaf->kind) {
            case FunctionExpr::Kind::Char:
                pts.push_back(sl.leaf->a);
                pts.push_back(sl.leaf->b);
                break;
            case FunctionExpr::Kind::Power:
                pts.push_back(sl.leaf->a);
                pts.push_back(sl.leaf->b);
                if (sl.leaf->gamma < 0.0) pts.push_back(sl.leaf->x0);
                break;
            default:
                break;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

void PVQuadSpec::validate() const {
    if (!(window_cells >= 2.0))
        throw std::invalid_argument("pv window must span at least two cells");
}

cplx cauchy_eval(const ExprPtr& f, const Grid& g, double x, const PVQuadSpec& spec) {
    spec.validate();
    std::vector<ScaledLeaf> leaves;
    collect_leaves(f, 1.0, leaves);
    double h = spec.window_cells * local_cell(g, x);
    cplx v = 0.0;
    for (const auto& sl : leaves) {
        const FunctionExpr& lf = *sl.leaf;
        if (lf.kind == FunctionExpr::Kind::Char) {
            double xa = x;
            if (xa == lf.a || xa == lf.b) xa += 1e-9 * (lf.b - lf.a);
            v += sl.scale * cauchy_indicator(lf.a, lf.b, xa);
        } else {
            v += sl.scale * kInvPiI * leaf_pv(lf, g, x, h);
        }
    }
    return v;
}

cplx cauchy_indicator(double a, double b, double x) {
    if (!(a < b)) throw std::invalid_argument("cauchy_indicator: empty interval");
    if (x == a || x == b) throw std::invalid_argument("cauchy_indicator: log singularity");
    return kInvPiI * std::log(std::abs((b - x) / (a - x)));
}

GridFunction cauchy_transform(const GridFunction& f, const PVQuadSpec& spec) {
    spec.validate();
    const Grid& g = *f.grid;
    const auto& pts = g.points;
    const int n = static_cast<int>(pts.size());
    const double L = g.half_width;

    GridFunction out;
    out.grid = f.grid;
    out.values.assign(n, 0.0);
    out.excluded = f.excluded;
    out.excluded.resize(n, 0);

    cplx mass = integrate(f);

    if (f.expr) {
        std::vector<ScaledLeaf> leaves;
        collect_leaves(f.expr, 1.0, leaves);
        auto logs = log_points_of(leaves);

        bool all_char = true;
        for (const auto& sl : leaves)
            if (sl.leaf->kind != FunctionExpr::Kind::Char) all_char = false;

        parallel_for(n, [&](int i) {
            double x = pts[i];
            double h = spec.window_cells * local_cell(g, x);
            cplx v = 0.0;
            for (const auto& sl : leaves) {
                const FunctionExpr& lf = *sl.leaf;
                if (lf.kind == FunctionExpr::Kind::Char) {
                    double xa = x;
                    if (xa == lf.a || xa == lf.b) xa += 1e-9 * (lf.b - lf.a);
                    v += sl.scale * cauchy_indicator(lf.a, lf.b, xa);
                } else {
                    v += sl.scale * kInvPiI * leaf_pv(lf, g, x, h);
                }
            }
            out.values[i] = v;
        });

        for (double q : logs) {
            double w = 2.0 * local_cell(g, q);
            int i0 = g.nearest_point(q);
            for (int i = i0; i >= 0 && q - pts[i] <= w; --i) out.excluded[i] = 1;
            for (int i = i0; i < n && pts[i] - q <= w; ++i) out.excluded[i] = 1;
        }

        if (all_char && !leaves.empty()) {
            // closed-form evaluator: sums of indicator logs
            std::vector<std::pair<cplx, std::pair<double, double>>> segs;
            for (const auto& sl : leaves) segs.push_back({sl.scale, {sl.leaf->a, sl.leaf->b}});
            Field fd;
            fd.eval = [segs](double x) -> cplx {
                cplx s = 0.0;
                for (const auto& [sc, ab] : segs) {
                    double da = std::abs(ab.first - x), db = std::abs(ab.second - x);
                    if (da == 0.0 || db == 0.0) return 0.0;  // quadrature never lands here
                    s += sc * kInvPiI * std::log(db / da);
                }
                return s;
            };
            fd.breakpoints = logs;
            fd.sup_lo = -L;
            fd.sup_hi = L;
            fd.exact_piece = [](double, double) { return std::optional<cplx>{}; };
            fd.piece_model = [](double, double) { return PieceModel{}; };
            fd.has_smooth = true;
            out.field = std::make_shared<Field>(fd);
        }
    } else {
        // piecewise-linear engine on mesh values
        const auto& v = f.values;
        auto interp = [&](double x) -> cplx {
            if (x <= pts.front() || x >= pts.back()) return 0.0;
            int i = g.locate(x);
            double t = (x - pts[i]) / (pts[i + 1] - pts[i]);
            return v[i] * (1.0 - t) + v[i + 1] * t;
        };

        // cells adjacent to a provenance breakpoint hold integrable blowups;
        // a linear interpolant through them splashes spurious mass, so those
        // cells integrate the field with geometric refinement instead
        std::vector<double> special_q(std::max(0, n - 1),
                                      std::numeric_limits<double>::quiet_NaN());
        if (f.field) {
            for (double q : f.field->breakpoints) {
                int ci = g.locate(q);
                for (int c : {ci - 1, ci, ci + 1})
                    if (c >= 0 && c + 1 < n) special_q[c] = q;
            }
        }
        auto special_cell = [&](int i) -> const double* {
            return std::isnan(special_q[i]) ? nullptr : &special_q[i];
        };
        const auto& rule4 = gauss_rule(4);
        auto refined_piece = [&](double t1, double t2, double q, double x, cplx& acc) {
            // split at q if interior, refine geometrically toward it
            auto one_side = [&](double far, double near) {
                if (far == near) return;
                double prev = far;
                for (int k = 1; k <= 36; ++k) {
                    double cur = near + (far - near) * std::pow(0.5, k);
                    double a = std::min(prev, cur), b = std::max(prev, cur);
                    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
                    cplx s = 0.0;
                    for (const auto& [node, wt] : rule4) {
                        double t = c + hw * node;
                        s += wt * f.field->eval(t) / (t - x);
                    }
                    acc += s * hw;
                    prev = cur;
                }
            };
            if (q > t1 && q < t2) {
                one_side(t1, q);
                one_side(t2, q);
            } else if (q <= t1) {
                one_side(t2, t1);
            } else {
                one_side(t1, t2);
            }
        };

        parallel_for(n, [&](int ix) {
            double x = pts[ix];
            double wloc = local_cell(g, x);
            double h = std::min({spec.window_cells * wloc, L - x, x + L});
            if (h < 2.0 * wloc) out.excluded[ix] = 1;  // window cannot span two cells
            cplx acc = 0.0;

            auto linear_piece = [&](double t1, double t2, cplx v1, cplx v2) {
                if (!(t1 < t2)) return;
                double d1 = std::abs(t1 - x), d2 = std::abs(t2 - x);
                if (d1 < 1e-14 * L || d2 < 1e-14 * L) return;  // boundary sliver
                cplx beta = (v2 - v1) / (t2 - t1);
                cplx at_x = v1 + beta * (x - t1);
                acc += beta * (t2 - t1) + at_x * std::log(d2 / d1);
            };

            for (int i = 0; i + 1 < n; ++i) {
                double t1 = pts[i], t2 = pts[i + 1];
                const double* q = special_cell(i);
                if (!q && v[i] == 0.0 && v[i + 1] == 0.0) continue;
                if (t2 <= x - h || t1 >= x + h) {
                    if (q)
                        refined_piece(t1, t2, *q, x, acc);
                    else
                        linear_piece(t1, t2, v[i], v[i + 1]);
                    continue;
                }
                double cl = x - h, cr = x + h;
                if (q) {
                    if (t1 < cl) refined_piece(t1, cl, *q, x, acc);
                    if (t2 > cr) refined_piece(cr, t2, *q, x, acc);
                    continue;
                }
                if (t1 < cl) linear_piece(t1, cl, v[i], interp(cl));
                if (t2 > cr) linear_piece(cr, t2, interp(cr), v[i + 1]);
            }

            if (h >= 2.0 * wloc && x - h > pts.front() && x + h < pts.back()) {
                double near_q = std::numeric_limits<double>::quiet_NaN();
                if (f.field) {
                    for (double q : f.field->breakpoints)
                        if (std::abs(q - x) <= h + 2.0 * wloc &&
                            (std::isnan(near_q) || std::abs(q - x) < std::abs(near_q - x)))
                            near_q = q;
                }
                if (!std::isnan(near_q) && std::abs(near_q - x) > 1e-14) {
                    // window overlaps an integrable blowup of the provenance
                    // field: evaluate the subtracted integrand on refined
                    // pieces instead of interpolating through it
                    cplx fx = f.field->eval(x);
                    auto sub_piece = [&](double a, double b) {
                        if (!(a < b)) return;
                        double c = 0.5 * (a + b), hw = 0.5 * (b - a);
                        for (const auto& [node, wt] : rule4) {
                            double t = c + hw * node;
                            acc += wt * hw * (f.field->eval(t) - fx) / (t - x);
                        }
                    };
                    auto toward = [&](double far, double near) {
                        if (far == near) return;
                        double prev = far;
                        for (int k = 1; k <= 36; ++k) {
                            double cur = near + (far - near) * std::pow(0.5, k);
                            sub_piece(std::min(prev, cur), std::max(prev, cur));
                            prev = cur;
                        }
                    };
                    double wl = x - h, wr = x + h;
                    if (near_q > wl && near_q < wr) {
                        // split at the blowup and refine toward it from both sides
                        if (near_q < x) {
                            toward(wl, near_q);
                            toward(x - 1e-3 * wloc, near_q);
                            sub_piece(x - 1e-3 * wloc, wr);
                        } else {
                            sub_piece(wl, x + 1e-3 * wloc);
                            toward(x + 1e-3 * wloc, near_q);
                            toward(wr, near_q);
                        }
                    } else {
                        // blowup just outside the window: refine toward the
                        // nearer window edge
                        double edge = (std::abs(near_q - wl) < std::abs(near_q - wr)) ? wl : wr;
                        toward(edge == wl ? wr : wl, edge);
                    }
                } else {
                    // symmetric pairs on the window, trapezoid in the offset
                    const int m = 4;
                    double dt = h / m;
                    cplx g0 = (interp(x + dt) - interp(x - dt)) / dt;
                    cplx s = 0.5 * g0;
                    for (int k = 1; k < m; ++k)
                        s += (interp(x + k * dt) - interp(x - k * dt)) / (k * dt);
                    s += 0.5 * (interp(x + h) - interp(x - h)) / h;
                    acc += s * dt;
                }
            }

            if (spec.tail_mode == PVQuadSpec::Tail::FirstMoment && f.tail &&
                f.tail->coef != 0.0) {
                acc += f.tail->coef * tail_factor(x, L, g.coarse_cell());
            }
            out.values[ix] = kInvPiI * acc;
        });
    }

    out.tail = TailModel{-kInvPiI * mass};
    return out;
}

}  // namespace vleb
