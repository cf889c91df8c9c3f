#include "vleb/ap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vleb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kQualifier =
    "no divergence detected at depth levels; the supremum over all intervals "
    "is not computable";

struct NormPair {
    NormResult w_norm, winv_norm;
};

Interval clamp_to(const Interval& q, double L) {
    return {std::max(q.a, -L), std::min(q.b, L)};
}

ApIntervalValue functional_on(const VariableExponent& p, const WeightSpec& w,
                              const WeightSpec& winv, const VariableExponent& pc,
                              Interval q, GridPtr grid) {
    ApIntervalValue r;
    r.q = q;
    GridFunction chi = sample(char_fun(q.a, q.b), grid);
    NormResult nw = weighted_norm(chi, p, w);
    NormResult nv = weighted_norm(chi, pc, winv);
    double len = q.length();
    r.divergent = nw.divergent || nv.divergent;
    double vw = nw.divergent ? nw.desk_value : nw.value;
    double vv = nv.divergent ? nv.desk_value : nv.value;
    r.desk_value = vw * vv / len;
    r.value = r.divergent ? kInf : r.desk_value;
    return r;
}

}  // namespace

ApIntervalValue ap_functional(const VariableExponent& p, const WeightSpec& w,
                              Interval q, const GridConfig& cfg) {
    if (!(q.a < q.b)) throw std::invalid_argument("ap_functional: empty interval");
    if (q.a < -cfg.half_width - 1e-12 || q.b > cfg.half_width + 1e-12)
        throw std::invalid_argument("ap_functional: interval outside the domain");
    std::vector<double> nodes =
        (w.kind == WeightSpec::Kind::Power) ? w.nodes : std::vector<double>{};
    GridPtr grid = make_grid_ptr(cfg.half_width, cfg.n_points, nodes, cfg.depth);
    return functional_on(p, w, invert(w), conjugate(p), q, grid);
}

std::vector<Interval> interval_family(const WeightSpec& w, int levels, double L) {
    if (levels < 3) throw std::invalid_argument("interval_family: need at least 3 levels");
    std::vector<Interval> fam;
    const double coarse = L / 16.0;

    int kmax = static_cast<int>(std::floor(std::log2(L)));
    for (int k = -levels; k <= kmax; ++k) {
        double len = std::pow(2.0, k);
        // centers on the coarse mesh, spacing half a length at small scales
        double spacing = std::max(coarse, 0.5 * len);
        for (double c = -L; c <= L + 1e-12; c += spacing) {
            Interval q{c - 0.5 * len, c + 0.5 * len};
            q = clamp_to(q, L);
            if (q.length() >= 0.5 * len) fam.push_back(q);
        }
    }

    if (w.kind == WeightSpec::Kind::Power) {
        for (double node : w.nodes) {
            for (int k = -levels; k <= kmax; ++k) {
                double len = std::pow(2.0, k);
                fam.push_back(clamp_to({node - 0.5 * len, node + 0.5 * len}, L));
                fam.push_back(clamp_to({node, node + len}, L));
                fam.push_back(clamp_to({node - len, node}, L));
            }
        }
    }
    fam.push_back({-L, L});

    std::sort(fam.begin(), fam.end(), [](const Interval& x, const Interval& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    fam.erase(std::unique(fam.begin(), fam.end(),
                          [](const Interval& x, const Interval& y) {
                              return std::abs(x.a - y.a) < 1e-12 && std::abs(x.b - y.b) < 1e-12;
                          }),
              fam.end());
    fam.erase(std::remove_if(fam.begin(), fam.end(),
                             [](const Interval& q) { return !(q.length() > 0.0); }),
              fam.end());
    return fam;
}

namespace {

// Luxemburg norm of the power weight (or its inverse) over (-B, B) for B
// beyond the truncation: desk quadrature inside [-L, L] plus the closed-form
// p(inf)-asymptotic tail. Used to probe divergence of the class functional at
// infinity.
double asymptotic_norm(const VariableExponent& p, const WeightSpec& w, double B,
                       const GridFunction& chi_full, double L) {
    NormResult inner = weighted_norm(chi_full, p, w);
    double tail_exp = w.tail_exponent();
    double pinf = p.p_inf;
    if (inner.divergent) return kInf;
    double eta = tail_exp * pinf;  // integrand |x|^{tail_exp * pinf} / lambda^{pinf}
    // modular(lambda) = inner_modular(lambda) + 2/(lambda^pinf) * I(L,B)
    double tail_I;
    if (std::abs(eta + 1.0) < 1e-12)
        tail_I = std::log(B / L);
    else
        tail_I = (std::pow(B, eta + 1.0) - std::pow(L, eta + 1.0)) / (eta + 1.0);
    if (!std::isfinite(tail_I) || tail_I < 0.0) return kInf;
    // inner modular approximated by its norm: modular_inner(lambda) ~ (n/lambda)^pinf
    // is inexact for variable p, so solve with the exact inner kernel instead:
    // here we bisect on m(lambda) = modular_inner(lambda) + 2 tail_I lambda^{-pinf}
    // using modular_inner(lambda) ~ (inner.value / lambda)^{p*} with p* = pinf;
    // power weights vary slowly at the tail, and the probe only needs growth
    // rates, not tight constants.
    double n0 = inner.value;
    auto m = [&](double lam) {
        return std::pow(n0 / lam, pinf) + 2.0 * tail_I * std::pow(lam, -pinf);
    };
    double lo = 1e-8, hi = 1.0;
    while (m(hi) > 1.0 && hi < 1e300) hi *= 2.0;
    while (m(lo) < 1.0 && lo > 1e-300) lo *= 0.5;
    for (int it = 0; it < 200 && (hi - lo) / hi > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        (m(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ApReport ap_estimate(const VariableExponent& p, const WeightSpec& w, int levels,
                     const GridConfig& cfg) {
    if (levels < 3) throw std::invalid_argument("ap_estimate: need at least 3 levels");
    const double L = cfg.half_width;
    if (w.kind == WeightSpec::Kind::Power)
        for (double node : w.nodes)
            if (L < 2.0 * std::abs(node) + 1e-12)
                throw std::invalid_argument("ap_estimate: domain must exceed twice the largest node");

    WeightSpec winv = invert(w);
    VariableExponent pc = conjugate(p);
    std::vector<double> nodes =
        (w.kind == WeightSpec::Kind::Power) ? w.nodes : std::vector<double>{};

    ApReport rep;
    rep.levels = levels;
    rep.qualifier = kQualifier;

    // trace across family refinement levels; the grid grading depth follows
    // the level so the desk values of divergent functionals keep growing
    for (int lev = 3; lev <= levels; ++lev) {
        GridPtr grid = make_grid_ptr(L, cfg.n_points, nodes, lev);
        auto fam = interval_family(w, lev, L);
        double desk_sup = 0.0;
        bool last = (lev == levels);
        for (const auto& q : fam) {
            ApIntervalValue v = functional_on(p, w, winv, pc, q, grid);
            desk_sup = std::max(desk_sup, v.desk_value);
            if (last) {
                rep.per_interval.push_back(v);
                if (v.divergent) rep.divergent = true;
                if (!v.divergent && v.value > rep.sup_estimate) {
                    rep.sup_estimate = v.value;
                    rep.argmax = v.q;
                }
            }
        }
        rep.level_trace.push_back(desk_sup);
    }

    // growth of the level trace
    size_t nt = rep.level_trace.size();
    if (nt >= 3 && rep.level_trace[nt - 3] > 0.0 &&
        rep.level_trace[nt - 1] / rep.level_trace[nt - 3] >= 10.0)
        rep.divergent = true;

    // infinity probe for power weights: the functional on (-B, B), B growing
    // beyond the truncation, via asymptotic tails
    if (w.kind == WeightSpec::Kind::Power) {
        GridPtr grid = make_grid_ptr(L, cfg.n_points, nodes, levels);
        GridFunction chi_full = sample(char_fun(-L + 1e-9 * L, L - 1e-9 * L), grid);
        for (int j = 0; j <= 40; j += 8) {
            double B = L * std::pow(2.0, j);
            double nw = asymptotic_norm(p, w, B, chi_full, L);
            double nv = asymptotic_norm(pc, winv, B, chi_full, L);
            double val = (std::isfinite(nw) && std::isfinite(nv)) ? nw * nv / (2.0 * B) : kInf;
            rep.infinity_trace.push_back(val);
        }
        size_t ni = rep.infinity_trace.size();
        if (ni >= 2) {
            double first = rep.infinity_trace.front(), last = rep.infinity_trace.back();
            if (!std::isfinite(last) || (first > 0.0 && last / first >= 10.0))
                rep.divergent = true;
        }
    }
    return rep;
}

Classification classify(const VariableExponent& p, const WeightSpec& w, int levels,
                        const GridConfig& cfg) {
    Classification c;
    c.report = ap_estimate(p, w, levels, cfg);
    c.in_class = !c.report.divergent;
    if (w.kind == WeightSpec::Kind::Power) c.ks = ks_criterion(p, w);
    return c;
}

}  // namespace vleb
