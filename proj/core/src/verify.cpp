#include "vleb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vleb/maximal.hpp"

namespace vleb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grading_for(const ExprPtr& e, const WeightSpec& w) {
    std::vector<double> nodes;
    if (e) e->collect_breakpoints(nodes);
    if (w.kind == WeightSpec::Kind::Power)
        nodes.insert(nodes.end(), w.nodes.begin(), w.nodes.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return b - a < 1e-12; }),
                nodes.end());
    return nodes;
}

Field field_const_one(double L) {
    Field f;
    f.eval = [](double) { return cplx(1.0, 0.0); };
    f.sup_lo = -2.0 * L;
    f.sup_hi = 2.0 * L;
    f.exact_piece = [](double a, double b) { return std::optional<cplx>(cplx(b - a, 0.0)); };
    f.piece_model = [](double, double) {
        PieceModel m;
        m.kind = PieceModel::Kind::Const;
        m.amp = 1.0;
        return m;
    };
    return f;
}

double l1_norm(const GridFunction& f) {
    Field fa = f.field ? *f.field
                       : field_from_values(f.grid, std::make_shared<std::vector<cplx>>(f.values));
    return integrate_abs_product(fa, field_const_one(f.grid->half_width), *f.grid);
}

// measure of {|f| > alpha} by cell sums
double level_set_measure(const GridFunction& f, double alpha) {
    const auto& pts = f.grid->points;
    double m = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        cplx v = f.field ? f.field->eval(mid) : 0.5 * (f.values[i] + f.values[i + 1]);
        if (std::abs(v) > alpha) m += pts[i + 1] - pts[i];
    }
    return m;
}

double weak_constant(const GridFunction& sf, double l1) {
    double peak = 0.0;
    for (size_t i = 0; i < sf.values.size(); ++i)
        if (!sf.excluded[i]) peak = std::max(peak, std::abs(sf.values[i]));
    if (peak == 0.0 || l1 == 0.0) return 0.0;
    double best = 0.0;
    for (int j = 1; j <= 20; ++j) {
        double alpha = peak * std::pow(0.5, j);
        best = std::max(best, alpha * level_set_measure(sf, alpha) / l1);
    }
    return best;
}

}  // namespace

VerifyReport check_s_squared(const std::vector<ExprPtr>& family,
                             const VariableExponent& p, const WeightSpec& w,
                             const GridConfig& cfg, const std::vector<int>& mesh_sizes) {
    VerifyReport rep;
    rep.suite = "s-squared";
    rep.grid = cfg;
    rep.tolerance_note = "relative error <= 1e-2 at the finest mesh, monotone across meshes";

    int fi = 0;
    for (const auto& e : family) {
        std::vector<double> errs;
        for (int n : mesh_sizes) {
            GridPtr grid = make_grid_ptr(cfg.half_width, n, grading_for(e, w), cfg.depth);
            GridFunction f = sample(e, grid);
            NormResult nf = weighted_norm(f, p, w);
            if (nf.divergent) {
                errs.push_back(kInf);
                continue;
            }
            GridFunction sf = cauchy_transform(f);
            GridFunction ssf = cauchy_transform(sf);
            GridFunction resid = gf_sub(ssf, f);
            NormResult nr = weighted_norm(resid, p, w);
            if (nf.value <= 0.0) {
                // the zero function maps to itself
                errs.push_back(nr.value <= 0.0 ? 0.0 : kInf);
            } else {
                errs.push_back(nr.divergent ? kInf : nr.value / nf.value);
            }
        }
        bool monotone = true;
        for (size_t k = 1; k < errs.size(); ++k)
            if (errs[k] > errs[k - 1] * (1.0 + 1e-9)) monotone = false;
        double final_err = errs.back();

        VerifyCase c;
        c.name = "s_squared_f" + std::to_string(fi++);
        c.lhs = final_err;
        c.rhs = 1e-2;
        c.ratio = final_err / 1e-2;
        c.pass = final_err <= 1e-2 && monotone;
        rep.add(std::move(c));
    }
    return rep;
}

VerifyReport check_self_adjoint(const std::vector<std::pair<ExprPtr, ExprPtr>>& pairs,
                                const GridConfig& cfg) {
    VerifyReport rep;
    rep.suite = "self-adjoint";
    rep.grid = cfg;
    rep.tolerance_note = "|<Sf,g> - <f,Sg>| <= 1e-6 ||f||_2 ||g||_2";

    VariableExponent p2 = const_exponent(2.0);
    WeightSpec one = unit_weight();
    PVQuadSpec spec;

    int pi = 0;
    for (const auto& [ef, eg] : pairs) {
        std::vector<double> nodes = grading_for(ef, one);
        auto ng = grading_for(eg, one);
        nodes.insert(nodes.end(), ng.begin(), ng.end());
        GridPtr grid = make_grid_ptr(cfg.half_width, cfg.n_points, nodes, cfg.depth);

        GridFunction f = sample(ef, grid);
        GridFunction g = sample(eg, grid);

        // transform fields evaluated through the engine at quadrature nodes
        auto make_sfield = [&](const ExprPtr& src) {
            Field fd;
            GridPtr gp = grid;
            ExprPtr s = src;
            fd.eval = [gp, s, spec](double x) { return cauchy_eval(s, *gp, x, spec); };
            src->collect_breakpoints(fd.breakpoints);
            std::sort(fd.breakpoints.begin(), fd.breakpoints.end());
            fd.sup_lo = -gp->half_width;
            fd.sup_hi = gp->half_width;
            fd.exact_piece = [](double, double) { return std::optional<cplx>{}; };
            fd.piece_model = [](double, double) { return PieceModel{}; };
            fd.has_smooth = true;
            return fd;
        };
        Field sf = make_sfield(ef);
        Field sg = make_sfield(eg);

        std::vector<double> logf, logg;
        ef->collect_breakpoints(logf);
        eg->collect_breakpoints(logg);

        cplx lhs = integrate_product(sf, *g.field, *grid, /*conj_b=*/true, logf);
        cplx rhs = integrate_product(*f.field, sg, *grid, /*conj_b=*/true, logg);

        double nf = luxemburg_norm(f, p2).value;
        double ngn = luxemburg_norm(g, p2).value;
        double tol = 1e-6 * nf * ngn;

        VerifyCase c;
        c.name = "self_adjoint_pair" + std::to_string(pi++);
        c.lhs = std::abs(lhs - rhs);
        c.rhs = tol;
        c.ratio = tol > 0.0 ? c.lhs / tol : 0.0;
        c.pass = c.lhs <= tol;
        rep.add(std::move(c));
    }
    return rep;
}

VerifyReport check_weak_type(const std::vector<ExprPtr>& family, const GridConfig& cfg) {
    VerifyReport rep;
    rep.suite = "weak-type";
    rep.grid = cfg;
    rep.tolerance_note = "empirical constant stable (< 2x) under mesh refinement";

    WeightSpec one = unit_weight();
    int fi = 0;
    for (const auto& e : family) {
        double c_coarse = 0.0, c_fine = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            int n = pass == 0 ? (cfg.n_points - 1) / 2 + 1 : cfg.n_points;
            GridPtr grid = make_grid_ptr(cfg.half_width, n, grading_for(e, one), cfg.depth);
            GridFunction f = sample(e, grid);
            GridFunction sf = cauchy_transform(f);
            double ck = weak_constant(sf, l1_norm(f));
            (pass == 0 ? c_coarse : c_fine) = ck;
        }
        VerifyCase c;
        c.name = "weak_type_f" + std::to_string(fi++);
        c.lhs = c_fine;
        c.rhs = c_coarse;
        double lo = std::min(c_fine, c_coarse), hi = std::max(c_fine, c_coarse);
        c.ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? kInf : 1.0);
        c.pass = c.ratio < 2.0;
        rep.add(std::move(c));
    }

    // homogeneity: doubling f leaves the constant unchanged
    if (!family.empty()) {
        GridPtr grid = make_grid_ptr(cfg.half_width, cfg.n_points,
                                     grading_for(family[0], one), cfg.depth);
        GridFunction f = sample(family[0], grid);
        GridFunction f2 = sample(scale(2.0, family[0]), grid);
        double a = weak_constant(cauchy_transform(f), l1_norm(f));
        double b = weak_constant(cauchy_transform(f2), l1_norm(f2));
        VerifyCase c;
        c.name = "weak_type_scaling";
        c.lhs = a;
        c.rhs = b;
        c.ratio = std::abs(a - b) / std::max(1e-300, std::abs(a));
        c.pass = c.ratio <= 1e-12;
        rep.add(std::move(c));
    }
    return rep;
}

VerifyReport check_sharp_chain(const std::vector<ExprPtr>& phi_sources,
                                const ExprPtr& g, double delta, double lambda,
                                const GridConfig& cfg) {
    VerifyReport rep;
    rep.suite = "sharp-chain";
    rep.grid = cfg;
    rep.tolerance_note = "pointwise sharp-function comparison asserted with 1e-10 slack";

    WeightSpec one = unit_weight();
    const double klam = std::pow(1.0 / lambda, 1.0 / delta);

    int fi = 0;
    for (const auto& ef : phi_sources) {
        GridPtr grid = make_grid_ptr(cfg.half_width, cfg.n_points,
                                     grading_for(ef, one), cfg.depth);
        GridFunction f = sample(ef, grid);
        GridFunction sf = cauchy_transform(f);

        // real f makes Sf purely imaginary: rotate onto the real axis
        GridFunction phi = gf_scale(cplx(0.0, 1.0), sf);
        double worst_im = 0.0, scale_re = 0.0;
        for (const auto& v : phi.values) {
            worst_im = std::max(worst_im, std::abs(v.imag()));
            scale_re = std::max(scale_re, std::abs(v.real()));
        }
        if (worst_im > 1e-8 * std::max(1.0, scale_re))
            throw std::runtime_error("sharp chain: source must be real-valued");
        phi.field.reset();
        phi.expr.reset();

        GridFunction sharp, local;
        sharp_pair(phi, delta, lambda, sharp, local);

        // R2: local sharp vs delta-sharp, pointwise
        double r2 = 0.0;
        for (size_t i = 0; i < sharp.values.size(); ++i) {
            double den = klam * sharp.values[i].real();
            double num = local.values[i].real();
            if (den < 1e-8) continue;
            r2 = std::max(r2, num / den);
        }
        VerifyCase c2;
        c2.name = "relation_pointwise_f" + std::to_string(fi);
        c2.lhs = r2;
        c2.rhs = 1.0;
        c2.ratio = r2;
        c2.pass = r2 <= 1.0 + 1e-10;
        rep.add(std::move(c2));

        // R1: pairing ratio, reported
        GridFunction gs = sample(g, grid);
        GridFunction mg = maximal_function(gs);
        Field phi_f = field_from_values(phi.grid, std::make_shared<std::vector<cplx>>(phi.values));
        double num = integrate_abs_product(phi_f, *gs.field, *grid);
        Field loc_f = field_from_values(local.grid, std::make_shared<std::vector<cplx>>(local.values));
        Field mg_f = field_from_values(mg.grid, std::make_shared<std::vector<cplx>>(mg.values));
        double den = integrate_abs_product(loc_f, mg_f, *grid);
        VerifyCase c1;
        c1.name = "pairing_ratio_f" + std::to_string(fi);
        c1.lhs = num;
        c1.rhs = den;
        c1.ratio = den > 1e-12 ? num / den : 0.0;
        c1.pass = true;
        c1.asserted = false;
        rep.add(std::move(c1));

        // R3: transform sharp function vs maximal function, reported
        GridFunction mf = maximal_function(f);
        double r3 = 0.0;
        for (size_t i = 0; i < mf.values.size(); ++i) {
            double d = mf.values[i].real();
            if (d < 1e-8 || sf.excluded[i]) continue;
            r3 = std::max(r3, sharp.values[i].real() / d);
        }
        VerifyCase c3;
        c3.name = "transform_sharp_vs_maximal_f" + std::to_string(fi);
        c3.lhs = r3;
        c3.rhs = 0.0;
        c3.ratio = r3;
        c3.pass = true;
        c3.asserted = false;
        rep.add(std::move(c3));
        ++fi;
    }
    return rep;
}

double norm_ratio(const VariableExponent& p, const WeightSpec& w, const ExprPtr& f,
                  const GridConfig& cfg) {
    GridPtr grid = make_grid_ptr(cfg.half_width, cfg.n_points, grading_for(f, w),
                                 cfg.depth);
    GridFunction fs = sample(f, grid);
    NormResult nf = weighted_norm(fs, p, w);
    if (nf.divergent) return kInf;
    if (nf.value <= 0.0) return 0.0;
    GridFunction sf = cauchy_transform(fs);
    // truncated-domain ratio: growth at infinity is the class probe's job
    sf.tail.reset();
    NormResult ns = weighted_norm(sf, p, w);
    if (ns.divergent) return kInf;
    return ns.value / nf.value;
}

double operator_norm_lower_bound(const VariableExponent& p, const WeightSpec& w,
                                 const std::vector<ExprPtr>& family,
                                 const GridConfig& cfg) {
    if (family.empty())
        throw std::invalid_argument("operator_norm_lower_bound: empty family");
    double best = 0.0;
    for (const auto& f : family) {
        double r = norm_ratio(p, w, f, cfg);
        if (std::isfinite(r)) best = std::max(best, r);
    }
    return best;
}

VerifyReport necessity_probe(const VariableExponent& p, const WeightSpec& w,
                             Interval q, const GridConfig& cfg) {
    GridPtr probe_grid = make_grid_ptr(cfg.half_width, cfg.n_points,
                                       grading_for(nullptr, w), cfg.depth);
    double min_width = 4.0 * probe_grid->coarse_cell();
    if (q.length() < min_width)
        throw std::invalid_argument("necessity_probe: interval too small for halving");

    VerifyReport rep;
    rep.suite = "necessity";
    rep.grid = cfg;
    rep.tolerance_note =
        "operator-norm estimate is a lower bound inflated by 1.5; failures are advisory";

    double mid = 0.5 * (q.a + q.b);
    Interval q1{q.a, mid}, q2{mid, q.b};

    std::vector<ExprPtr> fam = family_default(cfg.half_width,
                                              w.kind == WeightSpec::Kind::Power ? w.nodes
                                                                                : std::vector<double>{});
    double s_est = 1.5 * operator_norm_lower_bound(p, w, fam, cfg);

    VariableExponent pc = conjugate(p);
    WeightSpec winv = invert(w);

    GridFunction chi1 = sample(char_fun(q1.a, q1.b), probe_grid);
    GridFunction chi2 = sample(char_fun(q2.a, q2.b), probe_grid);
    double n1 = weighted_norm(chi1, p, w).value;
    double n2 = weighted_norm(chi2, p, w).value;
    double n1inv = weighted_norm(chi1, pc, winv).value;

    VerifyCase ca;
    ca.name = "half_comparison";
    ca.lhs = n2;
    ca.rhs = 2.0 * M_PI * s_est * n1;
    ca.ratio = ca.rhs > 0.0 ? ca.lhs / ca.rhs : kInf;
    ca.pass = ca.lhs <= ca.rhs;
    ca.asserted = false;
    rep.add(std::move(ca));

    VerifyCase cb;
    cb.name = "product_bound";
    cb.lhs = n1 * n1inv;
    cb.rhs = std::pow(2.0 * M_PI * s_est, 2.0) * q1.length();
    cb.ratio = cb.rhs > 0.0 ? cb.lhs / cb.rhs : kInf;
    cb.pass = cb.lhs <= cb.rhs;
    cb.asserted = false;
    rep.add(std::move(cb));
    return rep;
}

}  // namespace vleb
