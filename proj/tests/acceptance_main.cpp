// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "vleb/cauchy.hpp"
#include "vleb/io.hpp"
#include "vleb/maximal.hpp"
#include "vleb/verify.hpp"

using namespace vleb;

namespace {

struct Harness {
    int failures = 0;
    void report(int id, bool pass, const std::string& detail) {
        std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// disjoint constant/power pieces with closed-form |f|^q integrals
struct PieceSpec {
    double a, b;
    cplx amp;
    double gamma = 0.0;  // |x - s|^gamma factor
    double s = 0.0;
};

struct ClosedFormExpr {
    std::vector<PieceSpec> pieces;

    ExprPtr build() const {
        std::vector<ExprPtr> terms;
        for (const auto& p : pieces) {
            ExprPtr leaf = (p.gamma == 0.0) ? char_fun(p.a, p.b)
                                            : power_fun(p.s, p.gamma, p.a, p.b);
            terms.push_back(scale(p.amp, leaf));
        }
        return terms.size() == 1 ? terms[0] : sum(terms);
    }
    double integral_abs_pow(double q) const {
        double total = 0.0;
        for (const auto& p : pieces) {
            double amp_q = std::pow(std::abs(p.amp), q);
            if (p.gamma == 0.0) {
                total += amp_q * (p.b - p.a);
            } else {
                double e = p.gamma * q + 1.0;
                double u1 = std::abs(p.a - p.s), u2 = std::abs(p.b - p.s);
                if (u1 > u2) std::swap(u1, u2);
                total += amp_q * (std::pow(u2, e) - std::pow(u1, e)) / e;
            }
        }
        return total;
    }
};

std::vector<ClosedFormExpr> closed_form_battery() {
    std::vector<ClosedFormExpr> out;
    out.push_back({{{0.0, 1.0, 1.0}}});
    out.push_back({{{-2.0, 3.0, cplx(0.0, 1.5)}}});
    out.push_back({{{-1.0, 0.5, 2.0}, {1.0, 2.5, cplx(1.0, -1.0)}}});
    out.push_back({{{0.0, 1.0, 1.0, -0.3, 0.0}}});
    out.push_back({{{0.0, 2.0, 0.7, -0.25, 0.0}}});
    out.push_back({{{-3.0, -1.0, 1.2}, {-0.5, 0.5, 0.4}, {1.0, 4.0, cplx(0.3, 0.9)}}});
    out.push_back({{{1.0, 2.0, 1.0, 0.5, 1.0}}});
    out.push_back({{{0.5, 1.5, cplx(-2.0, 1.0)}}});
    out.push_back({{{-4.0, -2.0, 1.0, -0.3, -2.0}}});
    out.push_back({{{-1.0, 1.0, 0.25}, {2.0, 3.0, 4.0}}});
    out.push_back({{{0.0, 0.5, 3.0}, {0.5, 1.0, 1.0}}});
    out.push_back({{{-5.0, 5.0, 0.1}}});
    out.push_back({{{0.0, 1.0, 1.0, 0.75, 0.0}}});
    out.push_back({{{-2.0, 0.0, cplx(0.0, -1.0), -0.25, 0.0}}});
    out.push_back({{{3.0, 6.0, 0.8, -0.2, 3.0}}});
    out.push_back({{{-1.5, -0.5, 2.5}, {0.5, 1.5, 2.5}}});
    out.push_back({{{-0.25, 0.25, 8.0}}});
    out.push_back({{{0.0, 4.0, 0.6, 0.25, 0.0}}});
    out.push_back({{{-6.0, -3.0, 0.5}, {-1.0, 0.0, 1.5, -0.3, 0.0}}});
    out.push_back({{{1.0, 1.5, 5.0}, {2.0, 2.25, cplx(2.0, 2.0)}}});
    return out;
}

void criterion_1(Harness& h) {
    auto t0 = std::chrono::steady_clock::now();
    auto battery = closed_form_battery();
    auto grid = make_grid_ptr(16.0, 4097, {-2.0, 0.0, 1.0, 3.0}, 8);
    double worst = 0.0;
    for (double q : {1.5, 2.0, 3.0}) {
        VariableExponent p = const_exponent(q);
        for (const auto& cf : battery) {
            GridFunction f = sample(cf.build(), grid);
            double ref = std::pow(cf.integral_abs_pow(q), 1.0 / q);
            double got = luxemburg_norm(f, p).value;
            worst = std::max(worst, std::abs(got - ref) / ref);
        }
    }

    VariableExponent pw = piecewise_exponent({0.0, 1.0, 2.0}, {2.0, 2.0, 3.0, 2.0});
    double root = luxemburg_norm(sample(char_fun(0.0, 2.0), grid), pw).value;
    bool root_ok = std::abs(root - 1.32472) <= 1e-5 + 5e-6;
    double dt = seconds_since(t0);

    bool pass = worst <= 1e-6 && root_ok && dt < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "norm oracle agreement: worst rel err %.2e (<=1e-6), piecewise root "
                  "%.6f, %.1fs (<10s)",
                  worst, root, dt);
    h.report(1, pass, buf);
}

void criterion_2(Harness& h) {
    auto grid = make_grid_ptr(16.0, 2049, {0.0}, 8);
    std::vector<VariableExponent> exps = {const_exponent(1.5), const_exponent(2.0),
                                          const_exponent(3.0),
                                          piecewise_exponent({0.0}, {2.0, 3.0})};
    auto fam = random_family(16.0, 400, 42);
    int violations = 0, checked = 0;
    for (const auto& p : exps) {
        for (size_t i = 0; i + 1 < fam.size() && checked / exps.size() < 200; i += 2) {
            GridFunction f = sample(fam[i], grid);
            GridFunction g = sample(fam[i + 1], grid);
            HolderReport r = holder_check(f, g, p);
            ++checked;
            if (!r.pass) ++violations;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "holder pairing: %d violations in %d seeded pairs",
                  violations, checked);
    h.report(2, violations == 0, buf);
}

void criterion_3(Harness& h) {
    auto grid = make_grid_ptr(16.0, 4097, {}, 0);
    std::vector<std::pair<double, double>> edges = {
        {0.0, 1.0}, {-1.0, 1.0}, {-2.5, -0.5}, {0.25, 0.75}, {-4.0, 4.0},
        {1.0, 1.5}, {-6.0, -5.0}, {2.0, 7.0},  {-0.125, 3.0}, {5.0, 5.5}};
    double worst = 0.0;
    double cell = grid->coarse_cell();
    for (auto [a, b] : edges) {
        GridFunction sf = cauchy_transform(sample(char_fun(a, b), grid));
        for (size_t i = 0; i < grid->points.size(); ++i) {
            double x = grid->points[i];
            if (std::abs(x - a) < 2.0 * cell || std::abs(x - b) < 2.0 * cell) continue;
            worst = std::max(worst, std::abs(sf.values[i] - cauchy_indicator(a, b, x)));
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "pv engine vs closed form on 10 indicators: worst %.2e (<=1e-9)", worst);
    h.report(3, worst <= 1e-9, buf);
}

void criterion_4(Harness& h) {
    GridConfig cfg;
    cfg.n_points = 4097;
    cfg.depth = 8;
    auto fam = family_dipoles(cfg.half_width);
    for (auto& b : family_bumps({0.0}, {1.0, 0.5, 0.25})) fam.push_back(b);
    VerifyReport r = check_s_squared(fam, const_exponent(2.0), unit_weight(), cfg,
                                     {1025, 2049, 4097});
    double worst = 0.0;
    for (const auto& c : r.cases) worst = std::max(worst, c.lhs);
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "square identity on %zu functions: worst rel err %.2e (<=1e-2), "
                  "monotone over meshes",
                  fam.size(), worst);
    h.report(4, r.pass, buf);
}

void criterion_5(Harness& h) {
    GridConfig cfg;
    cfg.n_points = 2049;
    cfg.depth = 8;
    std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
    std::vector<ExprPtr> lhs = {char_fun(0.0, 1.0),  char_fun(-2.0, -1.0),
                                char_fun(-0.5, 0.5), bump(0.0, 1.0),
                                bump(-1.0, 0.5),     char_fun(1.0, 3.0),
                                bump(2.0, 1.5),      char_fun(-4.0, 0.0),
                                bump(0.5, 0.25),     char_fun(0.0, 0.5)};
    std::vector<ExprPtr> rhs = {char_fun(2.0, 3.0), bump(1.0, 1.0),
                                char_fun(0.0, 2.0), bump(0.5, 1.0),
                                char_fun(-1.0, 1.0)};
    for (const auto& a : lhs)
        for (const auto& b : rhs) pairs.push_back({a, b});
    VerifyReport r = check_self_adjoint(pairs, cfg);
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "self-adjoint pairing on %zu pairs: worst ratio %.3f (<=1)",
                  pairs.size(), r.worst_ratio);
    h.report(5, r.pass && pairs.size() == 50, buf);
}

void criterion_6(Harness& h) {
    // isometry anchor with the analytic tail of the transform included
    auto grid = make_grid_ptr(16.0, 4097, {0.0, 1.0}, 8);
    GridFunction chi = sample(char_fun(0.0, 1.0), grid);
    GridFunction sf = cauchy_transform(chi);
    NormResult n = weighted_norm(sf, const_exponent(2.0), unit_weight());
    bool anchor = std::abs(n.value - 1.0) <= 1e-3;

    GridConfig cfg;
    cfg.n_points = 2049;
    cfg.depth = 8;
    std::vector<ExprPtr> fam = {char_fun(0.0, 1.0), bump(0.0, 1.0), bump(1.0, 0.5),
                                family_dipoles(16.0)[0]};
    double lb = operator_norm_lower_bound(const_exponent(2.0), unit_weight(), fam, cfg);
    bool range = lb >= 0.9 && lb <= 1.01;

    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "isometry anchor: ||S chi||_2 = %.6f (1 +- 1e-3), norm bound %.4f in "
                  "[0.9, 1.01]",
                  n.value, lb);
    h.report(6, anchor && range, buf);
}

void criterion_7(Harness& h) {
    GridConfig cfg;
    cfg.n_points = 257;
    cfg.depth = 4;
    auto grid = make_grid_ptr(cfg.half_width, cfg.n_points, {0.0}, cfg.depth);

    // raw members plus transform outputs rotated onto the real axis
    std::vector<GridFunction> family;
    family.push_back(sample(char_fun(0.0, 2.0), grid));
    family.push_back(sample(sum(char_fun(-3.0, -1.0), scale(-1.0, char_fun(-1.0, 1.0))), grid));
    family.push_back(sample(bump(0.5, 1.5), grid));
    family.push_back(sample(poly_bump(0.0, 2.0, {0.0, 1.0}, true), grid));
    for (const auto& e : {char_fun(0.0, 1.0), bump(0.0, 1.0)}) {
        GridFunction sf = cauchy_transform(sample(e, grid));
        GridFunction phi = gf_scale(cplx(0.0, 1.0), sf);
        phi.field.reset();
        phi.expr.reset();
        family.push_back(phi);
    }

    int violations = 0;
    long points = 0;
    for (const auto& f : family) {
        for (double delta : {0.5, 1.0}) {
            for (double lambda : {0.25, 0.5}) {
                GridFunction sharp, local;
                sharp_pair(f, delta, lambda, sharp, local);
                double k = std::pow(1.0 / lambda, 1.0 / delta);
                for (size_t i = 0; i < sharp.values.size(); ++i) {
                    ++points;
                    if (local.values[i].real() > k * sharp.values[i].real() + 1e-10)
                        ++violations;
                }
            }
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "pointwise sharp-function relation: %d violations over %ld point checks",
                  violations, points);
    h.report(7, violations == 0, buf);
}

void criterion_8(Harness& h) {
    auto t0 = std::chrono::steady_clock::now();
    GridConfig cfg;
    cfg.n_points = 4097;
    cfg.depth = 8;
    VariableExponent p2 = const_exponent(2.0);

    bool concordant = true;
    double trace_growth = 0.0, ratio_growth = 0.0;
    for (double lam : {-0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6}) {
        WeightSpec w = power_weight({0.0}, {lam});
        Classification cls = classify(p2, w, 8, cfg);
        KsReport ks = ks_criterion(p2, w);
        concordant = concordant && (cls.in_class == ks.verdict);
        if (lam == 0.6) {
            size_t nt = cls.report.level_trace.size();
            trace_growth = cls.report.level_trace[nt - 1] / cls.report.level_trace[nt - 3];
            GridConfig rc = cfg;
            rc.depth = 64;
            std::vector<double> ratios;
            for (double r : sweep_radii())
                ratios.push_back(norm_ratio(p2, w, bump(0.0, r), rc));
            ratio_growth = ratios.back() / ratios.front();
        }
    }
    double dt = seconds_since(t0);
    bool pass = concordant && trace_growth >= 10.0 && ratio_growth >= 10.0 && dt < 300.0;
    char buf[180];
    std::snprintf(buf, sizeof(buf),
                  "class/criterion concordance at 7 powers; trace growth %.1fx, "
                  "ratio growth %.1fx (>=10x), %.0fs (<300s)",
                  trace_growth, ratio_growth, dt);
    h.report(8, pass, buf);
}

void criterion_9(Harness& h) {
    GridConfig cfg;
    cfg.n_points = 2049;
    cfg.depth = 8;
    VariableExponent p2 = const_exponent(2.0);
    double worst = 0.0;
    for (double lam : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
        WeightSpec w = power_weight({0.0}, {lam});
        ApReport a = ap_estimate(p2, w, 6, cfg);
        ApReport b = ap_estimate(conjugate(p2), invert(w), 6, cfg);
        if (!a.divergent && !b.divergent) {
            worst = std::max(worst,
                             std::abs(a.sup_estimate - b.sup_estimate) /
                                 std::max(1.0, a.sup_estimate));
        } else {
            worst = 1.0;  // should not happen on the finite points
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "conjugate symmetry of the class estimate: worst diff %.2e (<=1e-6)",
                  worst);
    h.report(9, worst <= 1e-6, buf);
}

void criterion_10(Harness& h) {
    // the full verify battery twice, byte-for-byte identical report
    auto battery = []() {
        GridConfig cfg;
        cfg.n_points = 513;
        cfg.depth = 4;
        json suites = json::object();
        auto fam = family_dipoles(cfg.half_width);
        fam.resize(2);
        suites["s-squared"] = verify_report_to_json(
            check_s_squared(fam, const_exponent(2.0), unit_weight(), cfg, {257, 513}));
        suites["self-adjoint"] = verify_report_to_json(check_self_adjoint(
            {{char_fun(0.0, 1.0), char_fun(2.0, 3.0)}, {bump(0.0, 1.0), bump(0.5, 1.0)}},
            cfg));
        suites["weak-type"] = verify_report_to_json(
            check_weak_type({char_fun(0.0, 1.0)}, cfg));
        GridConfig lc = cfg;
        lc.n_points = 257;
        suites["sharp-chain"] = verify_report_to_json(
            check_sharp_chain({char_fun(0.0, 1.0)}, char_fun(0.0, 1.0), 0.5, 0.25, lc));
        suites["necessity"] = verify_report_to_json(
            necessity_probe(const_exponent(2.0), unit_weight(), {-1.0, 1.0}, cfg));
        json report = {{"suites", suites}};
        return report.dump(2);
    };
    std::string first = battery();
    std::string second = battery();
    bool pass = first == second && !first.empty();
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "determinism: two battery runs produce %s reports (%zu bytes)",
                  pass ? "identical" : "DIFFERENT", first.size());
    h.report(10, pass, buf);
}

}  // namespace

int main() {
    Harness h;
    criterion_1(h);
    criterion_2(h);
    criterion_3(h);
    criterion_4(h);
    criterion_5(h);
    criterion_6(h);
    criterion_7(h);
    criterion_8(h);
    criterion_9(h);
    criterion_10(h);
    if (h.failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", h.failures);
    return 1;
}
