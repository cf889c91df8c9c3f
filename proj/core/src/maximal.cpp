#include "vleb/maximal.hpp"

#include "vleb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vleb {

namespace {

// one representative value and measure per cell; field midpoints when the
// provenance is known, endpoint means otherwise
struct CellData {
    std::vector<double> width;
    std::vector<double> absval;   // |f|
    std::vector<double> realval;  // Re f
    std::vector<double> prefix;   // prefix sums of absval * width
};

CellData cell_data(const GridFunction& f) {
    const auto& pts = f.grid->points;
    int m = static_cast<int>(pts.size()) - 1;
    CellData c;
    c.width.resize(m);
    c.absval.resize(m);
    c.realval.resize(m);
    c.prefix.resize(m + 1, 0.0);
    for (int i = 0; i < m; ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        c.width[i] = pts[i + 1] - pts[i];
        cplx v = f.field ? f.field->eval(mid) : 0.5 * (f.values[i] + f.values[i + 1]);
        c.absval[i] = std::abs(v);
        c.realval[i] = v.real();
        c.prefix[i + 1] = c.prefix[i] + c.absval[i] * c.width[i];
    }
    return c;
}

// searched intervals around mesh index ix: dyadic and 1.5*dyadic radii
// snapped to mesh points, two-sided combinations with aspect ratio at most 8,
// plus the one-sided families anchored at the point
std::vector<std::pair<int, int>> interval_pairs(const Grid& g, int ix) {
    const auto& pts = g.points;
    const int n = static_cast<int>(pts.size());
    double x = pts[ix];
    double w0 = g.coarse_cell();
    if (ix > 0) w0 = std::min(w0, pts[ix] - pts[ix - 1]);
    if (ix + 1 < n) w0 = std::min(w0, pts[ix + 1] - pts[ix]);

    std::vector<int> left, right;
    for (double r = w0; r <= 2.0 * g.half_width; r *= 2.0) {
        for (double s : {r, 1.5 * r}) {
            int li = g.nearest_point(x - s);
            int ri = g.nearest_point(x + s);
            if (li < ix) left.push_back(li);
            if (ri > ix) right.push_back(ri);
        }
    }
    left.push_back(0);
    right.push_back(n - 1);
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    std::sort(right.begin(), right.end());
    right.erase(std::unique(right.begin(), right.end()), right.end());

    std::vector<std::pair<int, int>> out;
    for (int li : left) out.emplace_back(li, ix);
    for (int ri : right) out.emplace_back(ix, ri);
    for (int li : left) {
        double rl = x - pts[li];
        for (int ri : right) {
            double rr = pts[ri] - x;
            double big = std::max(rl, rr), small = std::min(rl, rr);
            if (big <= 8.0 * small + 1e-300) out.emplace_back(li, ri);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// value/measure atoms of an interval, sorted ascending by value; adjacent
// cells are grouped when the interval holds more than 256 cells
struct Atoms {
    std::vector<double> val;
    std::vector<double> meas;
    double length = 0.0;
};

void make_atoms(const CellData& cd, int ca, int cb, Atoms& a) {
    a.val.clear();
    a.meas.clear();
    a.length = 0.0;
    int m = cb - ca;
    int stride = (m + 255) / 256;
    for (int i = ca; i < cb; i += stride) {
        double w = 0.0, s = 0.0;
        for (int j = i; j < std::min(cb, i + stride); ++j) {
            w += cd.width[j];
            s += cd.realval[j] * cd.width[j];
        }
        if (w <= 0.0) continue;
        a.val.push_back(s / w);
        a.meas.push_back(w);
        a.length += w;
    }
    // sort ascending by value
    std::vector<int> order(a.val.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a.val[x] < a.val[y]; });
    std::vector<double> v(a.val.size()), w(a.val.size());
    for (size_t i = 0; i < order.size(); ++i) {
        v[i] = a.val[order[i]];
        w[i] = a.meas[order[i]];
    }
    a.val.swap(v);
    a.meas.swap(w);
}

// measure-quantiles at resolution 1/64, plus midpoints of adjacent quantiles
void quantile_candidates(const Atoms& a, std::vector<double>& out) {
    out.clear();
    if (a.val.empty()) return;
    const int q = 64;
    size_t i = 0;
    double cum = 0.0;
    for (int l = 0; l <= q; ++l) {
        double target = a.length * l / q;
        while (i + 1 < a.val.size() && cum + a.meas[i] < target) cum += a.meas[i++];
        out.push_back(a.val[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    size_t base = out.size();
    for (size_t k = 0; k + 1 < base; ++k) out.push_back(0.5 * (out[k] + out[k + 1]));
    std::sort(out.begin(), out.end());
}

// rearrangement of |val - c| at measure t (atoms sorted ascending by value)
double folded_rearrangement(const Atoms& a, double c, double t) {
    int i = 0, j = static_cast<int>(a.val.size()) - 1;
    double cum = 0.0;
    while (i <= j) {
        double dl = std::abs(a.val[i] - c);
        double dr = std::abs(a.val[j] - c);
        double d, m;
        if (dl >= dr) {
            d = dl;
            m = a.meas[i];
            ++i;
        } else {
            d = dr;
            m = a.meas[j];
            --j;
        }
        if (cum + m > t) return d;
        cum += m;
    }
    return 0.0;
}

double delta_moment(const Atoms& a, double c, double delta) {
    double s = 0.0;
    if (delta == 1.0) {
        for (size_t i = 0; i < a.val.size(); ++i) s += std::abs(a.val[i] - c) * a.meas[i];
    } else if (delta == 0.5) {
        for (size_t i = 0; i < a.val.size(); ++i)
            s += std::sqrt(std::abs(a.val[i] - c)) * a.meas[i];
    } else {
        for (size_t i = 0; i < a.val.size(); ++i)
            s += std::pow(std::abs(a.val[i] - c), delta) * a.meas[i];
    }
    return s;
}

}  // namespace

GridFunction maximal_function(const GridFunction& f) {
    const Grid& g = *f.grid;
    CellData cd = cell_data(f);
    const int n = static_cast<int>(g.points.size());

    GridFunction out = zero_function(f.grid);
    parallel_for(n, [&](int ix) {
        double best = 0.0;
        for (auto [a, b] : interval_pairs(g, ix)) {
            double len = g.points[b] - g.points[a];
            if (len > 0.0) best = std::max(best, (cd.prefix[b] - cd.prefix[a]) / len);
        }
        out.values[ix] = best;
    });
    return out;
}

double rearrangement(const GridFunction& f, double t) {
    if (t < 0.0) throw std::invalid_argument("rearrangement: negative measure");
    CellData cd = cell_data(f);
    std::vector<int> order(cd.absval.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cd.absval[a] > cd.absval[b]; });
    double cum = 0.0;
    for (int i : order) {
        if (cd.absval[i] <= 0.0) break;
        if (cum + cd.width[i] > t) return cd.absval[i];
        cum += cd.width[i];
    }
    return 0.0;
}

double deviation_objective(const GridFunction& f, double qa, double qb, double c,
                           double delta) {
    const auto& pts = f.grid->points;
    CellData cd = cell_data(f);
    double num = 0.0, len = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        if (mid < qa || mid > qb) continue;
        num += std::pow(std::abs(cd.realval[i] - c), delta) * cd.width[i];
        len += cd.width[i];
    }
    if (len == 0.0) return 0.0;
    return std::pow(num / len, 1.0 / delta);
}

namespace {

// shared engine: delta-sharp and lambda-local-sharp over the same interval
// family and candidate set, so pointwise comparisons are like-discretized
void sharp_engine(const GridFunction& f, double delta, double lambda,
                  GridFunction* sharp_out, GridFunction* local_out) {
    const Grid& g = *f.grid;
    CellData cd = cell_data(f);
    const int n = static_cast<int>(g.points.size());

    parallel_for(n, [&](int ix) {
        std::vector<double> cands;
        Atoms atoms;
        double best_sharp = 0.0, best_local = 0.0;
        for (auto [a, b] : interval_pairs(g, ix)) {
            make_atoms(cd, a, b, atoms);
            if (atoms.val.empty() || atoms.length <= 0.0) continue;
            quantile_candidates(atoms, cands);

            if (sharp_out) {
                double best_m = -1.0, best_c = 0.0;
                for (double c : cands) {
                    double m = delta_moment(atoms, c, delta);
                    if (best_m < 0.0 || m < best_m) {
                        best_m = m;
                        best_c = c;
                    }
                }
                if (delta == 1.0 && cands.size() >= 2) {
                    // golden-section refinement around the best candidate
                    double span = (cands.back() - cands.front()) / 64.0;
                    double a1 = best_c - span, b1 = best_c + span;
                    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
                    double x1 = b1 - phi * (b1 - a1), x2 = a1 + phi * (b1 - a1);
                    double f1 = delta_moment(atoms, x1, 1.0);
                    double f2 = delta_moment(atoms, x2, 1.0);
                    for (int it2 = 0; it2 < 30; ++it2) {
                        if (f1 < f2) {
                            b1 = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = b1 - phi * (b1 - a1);
                            f1 = delta_moment(atoms, x1, 1.0);
                        } else {
                            a1 = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = a1 + phi * (b1 - a1);
                            f2 = delta_moment(atoms, x2, 1.0);
                        }
                    }
                    best_m = std::min(best_m, std::min(f1, f2));
                }
                if (best_m >= 0.0)
                    best_sharp = std::max(best_sharp,
                                          std::pow(best_m / atoms.length, 1.0 / delta));
            }

            if (local_out) {
                double t = lambda * atoms.length;
                double best_r = -1.0;
                for (double c : cands) {
                    double r = folded_rearrangement(atoms, c, t);
                    if (best_r < 0.0 || r < best_r) best_r = r;
                    if (best_r == 0.0) break;
                }
                if (best_r > 0.0) best_local = std::max(best_local, best_r);
            }
        }
        if (sharp_out) sharp_out->values[ix] = best_sharp;
        if (local_out) local_out->values[ix] = best_local;
    });
}

}  // namespace

GridFunction sharp_maximal(const GridFunction& f, double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("sharp_maximal: delta must lie in (0, 1]");
    GridFunction out = zero_function(f.grid);
    sharp_engine(f, delta, 0.5, &out, nullptr);
    return out;
}

GridFunction local_sharp_maximal(const GridFunction& f, double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("local_sharp_maximal: lambda must lie in (0, 1)");
    GridFunction out = zero_function(f.grid);
    sharp_engine(f, 1.0, lambda, nullptr, &out);
    return out;
}

void sharp_pair(const GridFunction& f, double delta, double lambda,
                GridFunction& sharp, GridFunction& local) {
    sharp = zero_function(f.grid);
    local = zero_function(f.grid);
    sharp_engine(f, delta, lambda, &sharp, &local);
}

}  // namespace vleb
