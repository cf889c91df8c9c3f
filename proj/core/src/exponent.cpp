#include "vleb/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vleb/grid.hpp"

namespace vleb {

namespace {

double conj_value(double p) { return p / (p - 1.0); }

}  // namespace

double VariableExponent::operator()(double x) const {
    switch (kind) {
        case Kind::Const:
            return value;
        case Kind::Piecewise: {
            size_t i = std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
            return plateau[i];
        }
        case Kind::LogShift:
            return c0 + c1 / std::log(std::exp(1.0) + std::abs(x));
        case Kind::Atan:
            return c0 + c1 * std::atan(x) / M_PI;
        case Kind::Conjugated:
            return conj_value((*inner)(x));
    }
    return value;
}

std::vector<double> VariableExponent::breakpoints() const {
    switch (kind) {
        case Kind::Piecewise:
            return breaks;
        case Kind::Conjugated:
            return inner->breakpoints();
        default:
            return {};
    }
}

bool VariableExponent::is_constant() const {
    switch (kind) {
        case Kind::Const:
            return true;
        case Kind::Conjugated:
            return inner->is_constant();
        default:
            return false;
    }
}

void VariableExponent::validate() const {
    if (!(1.0 < p_minus) || !(p_minus <= p_plus) || !std::isfinite(p_plus))
        throw std::invalid_argument("exponent: need 1 < p_minus <= p_plus < inf");
    if (p_inf < p_minus - 1e-12 || p_inf > p_plus + 1e-12)
        throw std::invalid_argument("exponent: p(inf) outside [p_minus, p_plus]");
}

VariableExponent const_exponent(double p) {
    VariableExponent e;
    e.kind = VariableExponent::Kind::Const;
    e.value = p;
    e.p_minus = e.p_plus = e.p_inf = p;
    e.validate();
    return e;
}

VariableExponent piecewise_exponent(std::vector<double> breaks,
                                    std::vector<double> plateau) {
    if (plateau.size() != breaks.size() + 1)
        throw std::invalid_argument("piecewise exponent: need one more plateau than breaks");
    if (!std::is_sorted(breaks.begin(), breaks.end()))
        throw std::invalid_argument("piecewise exponent: breaks must increase");
    VariableExponent e;
    e.kind = VariableExponent::Kind::Piecewise;
    e.breaks = std::move(breaks);
    e.plateau = std::move(plateau);
    e.p_minus = *std::min_element(e.plateau.begin(), e.plateau.end());
    e.p_plus = *std::max_element(e.plateau.begin(), e.plateau.end());
    e.p_inf = e.plateau.back();
    e.validate();
    return e;
}

VariableExponent logshift_exponent(double c0, double c1) {
    VariableExponent e;
    e.kind = VariableExponent::Kind::LogShift;
    e.c0 = c0;
    e.c1 = c1;
    // body is c0 + c1/log(e+|x|): extremes at x = 0 and |x| -> inf
    e.p_minus = std::min(c0, c0 + c1);
    e.p_plus = std::max(c0, c0 + c1);
    e.p_inf = c0;
    e.validate();
    return e;
}

VariableExponent atan_exponent(double c0, double c1) {
    VariableExponent e;
    e.kind = VariableExponent::Kind::Atan;
    e.c0 = c0;
    e.c1 = c1;
    e.p_minus = c0 - std::abs(c1) / 2.0;
    e.p_plus = c0 + std::abs(c1) / 2.0;
    e.p_inf = c0;  // nominal; the limit does not exist
    e.validate();
    return e;
}

VariableExponent conjugate(const VariableExponent& p) {
    if (p.kind == VariableExponent::Kind::Conjugated) return *p.inner;
    if (p.kind == VariableExponent::Kind::Const) return const_exponent(conj_value(p.value));
    if (p.kind == VariableExponent::Kind::Piecewise) {
        std::vector<double> plat(p.plateau.size());
        std::transform(p.plateau.begin(), p.plateau.end(), plat.begin(), conj_value);
        return piecewise_exponent(p.breaks, std::move(plat));
    }
    VariableExponent e;
    e.kind = VariableExponent::Kind::Conjugated;
    e.inner = std::make_shared<VariableExponent>(p);
    e.p_minus = conj_value(p.p_plus);
    e.p_plus = conj_value(p.p_minus);
    e.p_inf = conj_value(p.p_inf);
    e.validate();
    return e;
}

std::pair<double, double> exponent_bounds(const VariableExponent& p, const Grid& g) {
    double lo = p(g.points[0]), hi = lo;
    for (double x : g.points) {
        double v = p(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // plateaus narrower than a cell would be missed by the mesh scan
    auto bks = p.breakpoints();
    for (size_t i = 0; i + 1 < bks.size(); ++i) {
        double m = 0.5 * (bks[i] + bks[i + 1]);
        if (m < -g.half_width || m > g.half_width) continue;
        double v = p(m);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool closed = p.kind == VariableExponent::Kind::Const ||
                  p.kind == VariableExponent::Kind::Piecewise ||
                  (p.kind == VariableExponent::Kind::Conjugated && p.inner->is_constant());
    if (closed) {
        if (std::abs(lo - p.p_minus) > 1e-9 || std::abs(hi - p.p_plus) > 1e-9)
            throw std::invalid_argument("exponent: declared bounds disagree with observed ones");
    }
    return {lo, hi};
}

LogHolderDiagnostic log_holder_diagnostic(const VariableExponent& p, const Grid& g,
                                          long pair_budget, unsigned seed) {
    if (pair_budget < 1000)
        throw std::invalid_argument("log_holder_diagnostic: pair budget below 1000");

    const double L = g.half_width;
    auto alpha = [&](double x) { return 1.0 / p(x); };

    LogHolderDiagnostic d;
    auto feed_pair = [&](double x, double y) {
        double sep = std::abs(x - y);
        if (sep <= 0.0) return;
        double v = std::abs(alpha(x) - alpha(y)) * std::log(std::exp(1.0) + 1.0 / sep);
        d.c1_est = std::max(d.c1_est, v);
    };

    // mesh pairs at dyadic index separations
    const int n = static_cast<int>(g.points.size());
    for (int step = 1; step < n; step *= 2)
        for (int i = 0; i + step < n; ++i) feed_pair(g.points[i], g.points[i + step]);

    // dyadic separations straddling the breakpoints, down to scales set by the budget
    int kmax = static_cast<int>(std::floor(std::log2(static_cast<double>(pair_budget))));
    for (double b : p.breakpoints()) {
        for (int k = 1; k <= kmax; ++k) {
            double s = L * std::pow(0.5, k);
            feed_pair(b - s, b + s);
        }
    }

    // seeded uniform pairs
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-L, L);
    for (long i = 0; i < pair_budget; ++i) {
        double x = u(rng), y = u(rng);
        feed_pair(x, y);
    }

    double a_inf = 1.0 / p.p_inf;
    for (double x : g.points) {
        double v = std::abs(alpha(x) - a_inf) * std::log(std::exp(1.0) + std::abs(x));
        d.c2_est = std::max(d.c2_est, v);
    }

    // one-sided tail means of alpha over [L/2, L] and [-L, -L/2]
    double sl = 0.0, sr = 0.0;
    int cnt = 0;
    const int m = 512;
    for (int i = 0; i < m; ++i) {
        double t = L / 2.0 + (L / 2.0) * (i + 0.5) / m;
        sl += alpha(-t);
        sr += alpha(t);
        ++cnt;
    }
    d.tail_mean_left = sl / cnt;
    d.tail_mean_right = sr / cnt;
    d.decay_ok = std::abs(d.tail_mean_left - d.tail_mean_right) <= 1e-6;
    return d;
}

}  // namespace vleb
