#include "vleb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vleb/exponent.hpp"

namespace vleb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ScaledLeaf {
    cplx scale;
    const FunctionExpr* leaf;
};

void collect_leaves(const ExprPtr& e, cplx s, std::vector<ScaledLeaf>& out,
                    std::vector<std::shared_ptr<const FunctionExpr>>& keep) {
    keep.push_back(e);
    switch (e->kind) {
        case FunctionExpr::Kind::Scale:
            collect_leaves(e->children[0], s * e->scale, out, keep);
            return;
        case FunctionExpr::Kind::Sum:
            for (const auto& c : e->children) collect_leaves(c, s, out, keep);
            return;
        default:
            out.push_back({s, e.get()});
            return;
    }
}

double poly_antiderivative(const std::vector<double>& c, double u) {
    // integral of P(u) du from 0
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * u + c[k] / (k + 1.0);
    return v * u;
}

double power_piece(double s, double gamma, double a, double b) {
    // integral of |x-s|^gamma over [a,b], both endpoints on one side of s or
    // touching it; gamma > -1 required for a finite touching value
    double u1 = std::abs(a - s), u2 = std::abs(b - s);
    if (a < s && b > s)
        return power_piece(s, gamma, a, s) + power_piece(s, gamma, s, b);
    if (u1 > u2) std::swap(u1, u2);
    double e = gamma + 1.0;
    if (e == 0.0) return (u1 == 0.0) ? kInf : std::log(u2 / u1);
    return (std::pow(u2, e) - std::pow(u1, e)) / e;
}

// closed-form integral of a single leaf over [a,b] (already clipped to the
// leaf support), nullopt for smooth kinds
std::optional<cplx> leaf_exact(const ScaledLeaf& sl, double a, double b) {
    const FunctionExpr& f = *sl.leaf;
    switch (f.kind) {
        case FunctionExpr::Kind::Char:
            return sl.scale * (b - a);
        case FunctionExpr::Kind::Power:
            return sl.scale * power_piece(f.x0, f.gamma, a, b);
        case FunctionExpr::Kind::PolyBump:
            if (f.flat) {
                double u1 = (a - f.center) / f.radius;
                double u2 = (b - f.center) / f.radius;
                return sl.scale * f.radius *
                       (poly_antiderivative(f.coeffs, u2) - poly_antiderivative(f.coeffs, u1));
            }
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

void leaf_support(const FunctionExpr& f, double& lo, double& hi) {
    f.support(lo, hi);
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_rule(int order) {
    static const std::vector<std::pair<double, double>> g4 = {
        {-0.8611363115940526, 0.3478548451374538},
        {-0.3399810435848563, 0.6521451548625461},
        {0.3399810435848563, 0.6521451548625461},
        {0.8611363115940526, 0.3478548451374538}};
    static const std::vector<std::pair<double, double>> g6 = {
        {-0.9324695142031521, 0.1713244923791704},
        {-0.6612093864662645, 0.3607615730481386},
        {-0.2386191860831969, 0.4679139345726910},
        {0.2386191860831969, 0.4679139345726910},
        {0.6612093864662645, 0.3607615730481386},
        {0.9324695142031521, 0.1713244923791704}};
    static const std::vector<std::pair<double, double>> g10 = {
        {-0.9739065285171717, 0.0666713443086881},
        {-0.8650633666889845, 0.1494513491505806},
        {-0.6794095682990244, 0.2190863625159820},
        {-0.4333953941292472, 0.2692667193099963},
        {-0.1488743389816312, 0.2955242247147529},
        {0.1488743389816312, 0.2955242247147529},
        {0.4333953941292472, 0.2692667193099963},
        {0.6794095682990244, 0.2190863625159820},
        {0.8650633666889845, 0.1494513491505806},
        {0.9739065285171717, 0.0666713443086881}};
    if (order <= 4) return g4;
    if (order <= 6) return g6;
    return g10;
}

Field field_from_expr(const ExprPtr& e) {
    Field f;
    auto leaves = std::make_shared<std::vector<ScaledLeaf>>();
    auto keep = std::make_shared<std::vector<std::shared_ptr<const FunctionExpr>>>();
    collect_leaves(e, 1.0, *leaves, *keep);

    ExprPtr root = e;
    f.eval = [root](double x) { return root->eval(x); };

    std::vector<double> bp;
    e->collect_breakpoints(bp);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return b - a < 1e-14; }),
             bp.end());
    f.breakpoints = std::move(bp);

    std::vector<std::pair<double, double>> sing;
    e->collect_singularities(sing);
    for (auto& [pos, gam] : sing) {
        // attach the activity window from the owning leaf
        for (const auto& sl : *leaves)
            if (sl.leaf->kind == FunctionExpr::Kind::Power &&
                std::abs(sl.leaf->x0 - pos) < 1e-14 && sl.leaf->gamma == gam)
                f.singular.push_back({pos, gam, sl.leaf->a, sl.leaf->b});
    }

    e->support(f.sup_lo, f.sup_hi);

    for (const auto& sl : *leaves)
        if (sl.leaf->kind == FunctionExpr::Kind::Bump ||
            (sl.leaf->kind == FunctionExpr::Kind::PolyBump && !sl.leaf->flat))
            f.has_smooth = true;

    f.exact_piece = [leaves](double a, double b) -> std::optional<cplx> {
        cplx total = 0.0;
        for (const auto& sl : *leaves) {
            double lo, hi;
            leaf_support(*sl.leaf, lo, hi);
            double ca = std::max(a, lo), cb = std::min(b, hi);
            if (ca >= cb) continue;
            auto v = leaf_exact(sl, ca, cb);
            if (!v) return std::nullopt;
            total += *v;
        }
        return total;
    };

    f.piece_model = [leaves](double a, double b) -> PieceModel {
        double mid = 0.5 * (a + b);
        PieceModel m;
        cplx const_amp = 0.0;
        int n_active = 0, n_power = 0, n_smooth = 0;
        const FunctionExpr* power_leaf = nullptr;
        cplx power_scale = 0.0;
        for (const auto& sl : *leaves) {
            double lo, hi;
            leaf_support(*sl.leaf, lo, hi);
            if (!(mid > lo && mid < hi)) continue;
            ++n_active;
            switch (sl.leaf->kind) {
                case FunctionExpr::Kind::Char:
                    const_amp += sl.scale;
                    break;
                case FunctionExpr::Kind::Power:
                    ++n_power;
                    power_leaf = sl.leaf;
                    power_scale = sl.scale;
                    break;
                default:
                    ++n_smooth;
                    break;
            }
        }
        if (n_active == 0) {
            m.kind = PieceModel::Kind::Zero;
            return m;
        }
        if (n_power == 0 && n_smooth == 0) {
            m.kind = PieceModel::Kind::Const;
            m.amp = const_amp;
            return m;
        }
        if (n_power == 1 && n_smooth == 0 && const_amp == 0.0) {
            m.kind = PieceModel::Kind::Power;
            m.amp = power_scale;
            m.s = power_leaf->x0;
            m.gamma = power_leaf->gamma;
            return m;
        }
        m.kind = PieceModel::Kind::Smooth;
        return m;
    };
    return f;
}

Field field_weighted(const Field& f, const WeightSpec& w) {
    Field g;
    auto base_eval = f.eval;
    WeightSpec wc = w;
    g.eval = [base_eval, wc](double x) { return base_eval(x) * eval_weight(wc, x); };
    g.breakpoints = f.breakpoints;
    if (w.kind == WeightSpec::Kind::Power) {
        for (double n : w.nodes) g.breakpoints.push_back(n);
    } else if (w.expr) {
        w.expr->collect_breakpoints(g.breakpoints);
    }
    std::sort(g.breakpoints.begin(), g.breakpoints.end());
    g.breakpoints.erase(std::unique(g.breakpoints.begin(), g.breakpoints.end(),
                                    [](double a, double b) { return b - a < 1e-14; }),
                        g.breakpoints.end());
    g.singular = f.singular;
    if (w.kind == WeightSpec::Kind::Power)
        for (size_t j = 0; j < w.nodes.size(); ++j)
            if (w.powers[j] != 0.0)
                g.singular.push_back({w.nodes[j], w.powers[j], -kInf, kInf});
    g.sup_lo = f.sup_lo;
    g.sup_hi = f.sup_hi;
    g.exact_piece = [](double, double) { return std::optional<cplx>{}; };
    g.piece_model = [](double, double) { return PieceModel{}; };
    g.has_smooth = f.has_smooth;
    return g;
}

Field field_from_values(std::shared_ptr<const Grid> gr,
                        std::shared_ptr<const std::vector<cplx>> values) {
    Field f;
    auto interp = [gr, values](double x) -> cplx {
        const auto& pts = gr->points;
        const auto& v = *values;
        if (x <= pts.front()) return v.front();
        if (x >= pts.back()) return v.back();
        int i = gr->locate(x);
        double t = (x - pts[i]) / (pts[i + 1] - pts[i]);
        return v[i] * (1.0 - t) + v[i + 1] * t;
    };
    f.eval = interp;
    // support hull of nonzero values
    const auto& v = *values;
    int n = static_cast<int>(v.size());
    int lo = 0, hi = n - 1;
    while (lo < n && std::abs(v[lo]) == 0.0) ++lo;
    while (hi >= 0 && std::abs(v[hi]) == 0.0) --hi;
    if (lo > hi) {
        f.sup_lo = f.sup_hi = 0.0;
    } else {
        f.sup_lo = gr->points[std::max(0, lo - 1)];
        f.sup_hi = gr->points[std::min(n - 1, hi + 1)];
    }
    f.exact_piece = [interp](double a, double b) -> std::optional<cplx> {
        return 0.5 * (interp(a) + interp(b)) * (b - a);
    };
    f.piece_model = [](double, double) { return PieceModel{}; };
    f.has_smooth = true;
    return f;
}

Field field_sum(const Field& a, const Field& b) {
    Field f;
    auto ea = a.eval, eb = b.eval;
    f.eval = [ea, eb](double x) { return ea(x) + eb(x); };
    f.breakpoints = a.breakpoints;
    f.breakpoints.insert(f.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(f.breakpoints.begin(), f.breakpoints.end());
    f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end(),
                                    [](double x, double y) { return y - x < 1e-14; }),
                        f.breakpoints.end());
    f.singular = a.singular;
    f.singular.insert(f.singular.end(), b.singular.begin(), b.singular.end());
    f.sup_lo = std::min(a.sup_lo, b.sup_lo);
    f.sup_hi = std::max(a.sup_hi, b.sup_hi);
    auto pa = a.exact_piece, pb = b.exact_piece;
    f.exact_piece = [pa, pb](double x, double y) -> std::optional<cplx> {
        auto u = pa(x, y);
        if (!u) return std::nullopt;
        auto v = pb(x, y);
        if (!v) return std::nullopt;
        return *u + *v;
    };
    f.piece_model = [](double, double) { return PieceModel{}; };
    f.has_smooth = a.has_smooth || b.has_smooth;
    return f;
}

Field field_scale(cplx c, const Field& g) {
    Field f = g;
    auto e = g.eval;
    f.eval = [c, e](double x) { return c * e(x); };
    auto p = g.exact_piece;
    f.exact_piece = [c, p](double a, double b) -> std::optional<cplx> {
        auto v = p(a, b);
        if (!v) return std::nullopt;
        return c * *v;
    };
    return f;
}

namespace {

// sorted piece edges over [lo, hi]: grid points plus extra breakpoints
std::vector<double> piece_edges(const Grid& g, const std::vector<double>& extra,
                                double lo, double hi) {
    std::vector<double> e;
    lo = std::max(lo, g.points.front());
    hi = std::min(hi, g.points.back());
    if (!(lo < hi)) return e;
    e.push_back(lo);
    auto it = std::upper_bound(g.points.begin(), g.points.end(), lo);
    for (; it != g.points.end() && *it < hi; ++it) e.push_back(*it);
    for (double b : extra)
        if (b > lo && b < hi) e.push_back(b);
    e.push_back(hi);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end(),
                        [](double a, double b) {
                            double scale = std::max(std::abs(a), std::abs(b));
                            return b - a <= 1e-15 * scale;
                        }),
            e.end());
    return e;
}

}  // namespace

cplx integrate_field(const Field& f, const Grid& g) {
    auto edges = piece_edges(g, f.breakpoints, f.sup_lo, f.sup_hi);
    cplx total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double a = edges[i], b = edges[i + 1];
        auto v = f.exact_piece(a, b);
        if (v) {
            total += *v;
        } else {
            total += f.eval(0.5 * (a + b)) * (b - a);
        }
    }
    return total;
}

namespace {

cplx gl_product_piece(const Field& fa, const Field& fb, double a, double b,
                      bool conj_b, int order) {
    const auto& rule = gauss_rule(order);
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    cplx s = 0.0;
    for (const auto& [node, wt] : rule) {
        double x = c + hw * node;
        cplx vb = fb.eval(x);
        if (conj_b) vb = std::conj(vb);
        s += wt * fa.eval(x) * vb;
    }
    return s * hw;
}

bool near_any(double x, const std::vector<double>& pts, double eps) {
    for (double p : pts)
        if (std::abs(x - p) < eps) return true;
    return false;
}

}  // namespace

cplx integrate_product(const Field& a, const Field& b, const Grid& g, bool conj_b,
                       const std::vector<double>& log_points) {
    double lo = std::max(a.sup_lo, b.sup_lo);
    double hi = std::min(a.sup_hi, b.sup_hi);
    std::vector<double> bp = a.breakpoints;
    bp.insert(bp.end(), b.breakpoints.begin(), b.breakpoints.end());
    bp.insert(bp.end(), log_points.begin(), log_points.end());
    auto edges = piece_edges(g, bp, lo, hi);
    double eps = 1e-12 * std::max(1.0, g.half_width);

    cplx total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double x1 = edges[i], x2 = edges[i + 1];
        PieceModel ma = a.piece_model(x1, x2);
        PieceModel mb = b.piece_model(x1, x2);
        if (ma.kind == PieceModel::Kind::Zero || mb.kind == PieceModel::Kind::Zero)
            continue;
        if (ma.kind == PieceModel::Kind::Const) {
            auto v = b.exact_piece(x1, x2);
            if (v) {
                total += ma.amp * (conj_b ? std::conj(*v) : *v);
                continue;
            }
        }
        if (mb.kind == PieceModel::Kind::Const) {
            auto v = a.exact_piece(x1, x2);
            if (v) {
                cplx amp = conj_b ? std::conj(mb.amp) : mb.amp;
                total += amp * *v;
                continue;
            }
        }
        if (ma.kind == PieceModel::Kind::Power && mb.kind == PieceModel::Kind::Power &&
            std::abs(ma.s - mb.s) < 1e-14) {
            cplx amp = ma.amp * (conj_b ? std::conj(mb.amp) : mb.amp);
            total += amp * power_piece(ma.s, ma.gamma + mb.gamma, x1, x2);
            continue;
        }
        // numeric: refine geometrically toward an adjacent log point
        bool log_lo = near_any(x1, log_points, eps);
        bool log_hi = near_any(x2, log_points, eps);
        if (log_lo || log_hi) {
            double s = log_lo ? x1 : x2;
            double far = log_lo ? x2 : x1;
            double len = std::abs(far - s);
            int levels = 42;
            double prev = far;
            for (int k = 1; k <= levels; ++k) {
                double cur = s + (far - s) * std::pow(0.5, k);
                total += gl_product_piece(a, b, std::min(prev, cur), std::max(prev, cur),
                                          conj_b, 6);
                prev = cur;
            }
            // innermost sliver: integrable log, midpoint value
            double w = std::abs(prev - s);
            if (w > 0.0 && len > 0.0) {
                double xm = 0.5 * (prev + s);
                cplx vb = b.eval(xm);
                if (conj_b) vb = std::conj(vb);
                total += a.eval(xm) * vb * w;
            }
            continue;
        }
        total += gl_product_piece(a, b, x1, x2, conj_b, 6);
    }
    return total;
}

double integrate_abs_product(const Field& a, const Field& b, const Grid& g) {
    double lo = std::max(a.sup_lo, b.sup_lo);
    double hi = std::min(a.sup_hi, b.sup_hi);
    std::vector<double> bp = a.breakpoints;
    bp.insert(bp.end(), b.breakpoints.begin(), b.breakpoints.end());
    auto edges = piece_edges(g, bp, lo, hi);

    double total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double x1 = edges[i], x2 = edges[i + 1];
        PieceModel ma = a.piece_model(x1, x2);
        PieceModel mb = b.piece_model(x1, x2);
        if (ma.kind == PieceModel::Kind::Zero || mb.kind == PieceModel::Kind::Zero)
            continue;
        if (ma.kind == PieceModel::Kind::Const && mb.kind == PieceModel::Kind::Const) {
            total += std::abs(ma.amp) * std::abs(mb.amp) * (x2 - x1);
            continue;
        }
        if (ma.kind == PieceModel::Kind::Const && mb.kind == PieceModel::Kind::Power) {
            total += std::abs(ma.amp) * std::abs(mb.amp) *
                     power_piece(mb.s, mb.gamma, x1, x2);
            continue;
        }
        if (mb.kind == PieceModel::Kind::Const && ma.kind == PieceModel::Kind::Power) {
            total += std::abs(mb.amp) * std::abs(ma.amp) *
                     power_piece(ma.s, ma.gamma, x1, x2);
            continue;
        }
        const auto& rule = gauss_rule(6);
        double c = 0.5 * (x1 + x2), hw = 0.5 * (x2 - x1);
        double s = 0.0;
        for (const auto& [node, wt] : rule) {
            double x = c + hw * node;
            s += wt * std::abs(a.eval(x)) * std::abs(b.eval(x));
        }
        total += s * hw;
    }
    return total;
}

// ---------------------------------------------------------------------------

ModularKernel::ModularKernel(const Field& g, const VariableExponent& p,
                             const Grid& grid,
                             const std::vector<uint8_t>* excluded_points,
                             const std::optional<TailModel>& tail,
                             double weight_tail_exponent, double p_at_infinity) {
    const int base_depth = std::max(grid.grading_depth, 4);
    depth_schedule_ = {base_depth, 2 * base_depth, 4 * base_depth, 8 * base_depth,
                       16 * base_depth, 32 * base_depth};
    dynamic_.assign(depth_schedule_.size(), {});

    // positions where the summed singular exponent is negative
    struct Hot {
        double pos;
        double gamma_total;
    };
    std::vector<Hot> hot;
    {
        std::vector<SingularFactor> fs = g.singular;
        std::sort(fs.begin(), fs.end(),
                  [](const SingularFactor& a, const SingularFactor& b) { return a.pos < b.pos; });
        size_t i = 0;
        while (i < fs.size()) {
            size_t j = i;
            double tot = 0.0;
            while (j < fs.size() && fs[j].pos - fs[i].pos < 1e-12) tot += fs[j++].exponent;
            if (tot < 0.0) hot.push_back({fs[i].pos, tot});
            i = j;
        }
    }
    auto hot_at = [&](double x) -> const Hot* {
        for (const auto& h : hot) {
            double tol = 4e-16 * std::max(std::abs(x), std::abs(h.pos));
            if (std::abs(x - h.pos) <= tol) return &h;
        }
        return nullptr;
    };

    // dominant singular factor for a piece: nearest active position, with
    // co-located exponents summed
    auto dominant = [&](double a, double b, double& s_out) -> double {
        double mid = 0.5 * (a + b);
        double best_d = kInf, pos = 0.0;
        for (const auto& sf : g.singular) {
            if (!(sf.lo <= a + 1e-14 && b - 1e-14 <= sf.hi)) continue;
            double d = std::abs(mid - sf.pos);
            if (d < best_d) {
                best_d = d;
                pos = sf.pos;
            }
        }
        if (best_d == kInf) {
            s_out = 0.0;
            return 0.0;
        }
        double total = 0.0;
        for (const auto& sf : g.singular)
            if (sf.lo <= a + 1e-14 && b - 1e-14 <= sf.hi && std::abs(sf.pos - pos) < 1e-12)
                total += sf.exponent;
        s_out = pos;
        return total;
    };

    std::vector<double> bp = g.breakpoints;
    {
        auto pb = p.breakpoints();
        bp.insert(bp.end(), pb.begin(), pb.end());
        for (const auto& h : hot) bp.push_back(h.pos);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end(),
                             [](double a, double b) { return b - a < 1e-14; }),
                 bp.end());
    }
    auto edges = piece_edges(grid, bp, g.sup_lo, g.sup_hi);

    std::vector<Entry> stat;
    auto push_static = [&](double B, double pe) {
        if (B != 0.0) stat.push_back({B, pe});
    };

    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double a = edges[i], b = edges[i + 1];
        if (excluded_points) {
            // drop pieces inside cells with a flagged endpoint
            int ci = grid.locate(0.5 * (a + b));
            if ((*excluded_points)[ci] || (*excluded_points)[ci + 1]) continue;
        }
        const Hot* hl = hot_at(a);
        const Hot* hr = hot_at(b);
        if (hl || hr) {
            // cell touching a negative-power node: refine analytically in the
            // relative distance u = |x - s|, so deep levels are not limited by
            // the floating-point spacing around s. The amplitude is frozen at
            // the outer half of the cell (exact for pure power content).
            double s = hl ? hl->pos : hr->pos;
            double far = hl ? b : a;
            double delta = std::abs(far - s);
            double x_eval = s + (far - s) * 0.75;
            if (x_eval == s || delta <= 0.0) continue;
            double gm = hl ? hl->gamma_total : hr->gamma_total;
            double pm = p(x_eval);
            double A = std::abs(g.eval(x_eval)) / std::pow(std::abs(x_eval - s), gm);
            double Ap = std::pow(A, pm);
            double eta = gm * pm + 1.0;
            for (size_t lev = 0; lev < depth_schedule_.size(); ++lev) {
                int extra = depth_schedule_[lev] - grid.grading_depth;
                if (extra < 0) extra = 0;
                double u_cut = delta * std::pow(0.5, extra);
                double outer, inner;
                if (u_cut <= 0.0) {
                    // cut below the floating-point range: the exact limits
                    outer = (eta > 0.0) ? std::pow(delta, eta) / eta
                                        : std::numeric_limits<double>::infinity();
                    inner = (eta > 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
                } else if (eta == 0.0) {
                    outer = std::log(delta / u_cut);
                    inner = std::pow(0.5 * u_cut, gm * pm) * u_cut;
                } else {
                    outer = (std::pow(delta, eta) - std::pow(u_cut, eta)) / eta;
                    inner = std::pow(0.5 * u_cut, gm * pm) * u_cut;
                }
                dynamic_[lev].push_back({Ap * outer, pm});
                dynamic_[lev].push_back({Ap * inner, pm});
            }
            continue;
        }

        double xm = 0.5 * (a + b);
        double pm = p(xm);
        double sd;
        double gm = dominant(a, b, sd);
        if (gm != 0.0) {
            double A = std::abs(g.eval(xm)) / std::pow(std::abs(xm - sd), gm);
            push_static(std::pow(A, pm) * power_piece(sd, gm * pm, a, b), pm);
            continue;
        }
        PieceModel model = g.piece_model(a, b);
        if (model.kind == PieceModel::Kind::Zero) continue;
        if (model.kind == PieceModel::Kind::Const) {
            push_static(std::pow(std::abs(model.amp), pm) * (b - a), pm);
        } else {
            const auto& rule = gauss_rule(4);
            double c = 0.5 * (a + b), hw = 0.5 * (b - a);
            for (const auto& [node, wt] : rule) {
                double x = c + hw * node;
                push_static(std::pow(std::abs(g.eval(x)), p(x)) * wt * hw, p(x));
            }
        }
    }

    // group static entries by equal exponent
    std::sort(stat.begin(), stat.end(),
              [](const Entry& a, const Entry& b) { return a.p < b.p; });
    for (const auto& e : stat) {
        if (!groups_.empty() && groups_.back().p == e.p)
            groups_.back().B += e.B;
        else
            groups_.push_back({e.B, e.p});
    }

    if (tail) {
        double eta = (weight_tail_exponent - 1.0) * p_at_infinity;
        double a1 = std::abs(tail->coef);
        if (a1 > 0.0) {
            if (eta >= -1.0) {
                tail_divergent_ = true;
            } else {
                double L = grid.half_width;
                tail_B_ = std::pow(a1, p_at_infinity) * 2.0 * std::pow(L, eta + 1.0) /
                          (-(eta + 1.0));
                tail_p_ = p_at_infinity;
            }
        }
    }
}

double ModularKernel::eval(double lambda, int level) const {
    double s = 0.0;
    for (const auto& gr : groups_) s += gr.B * std::pow(lambda, -gr.p);
    if (level >= 0 && level < static_cast<int>(dynamic_.size()))
        for (const auto& e : dynamic_[level]) s += e.B * std::pow(lambda, -e.p);
    if (tail_divergent_) return kInf;
    s += tail_B_ * std::pow(lambda, -tail_p_);
    return s;
}

std::vector<double> ModularKernel::trace(double lambda) const {
    std::vector<double> t(depth_schedule_.size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = eval(lambda, static_cast<int>(i));
    return t;
}

bool ModularKernel::divergent(double lambda) const {
    if (tail_divergent_) return true;
    auto t = trace(lambda);
    for (double v : t)
        if (!std::isfinite(v)) return true;
    size_t n = t.size();
    if (n >= 2 && t[n - 2] > 0.0 && t[n - 1] / t[n - 2] > 2.0) return true;
    return false;
}

}  // namespace vleb
