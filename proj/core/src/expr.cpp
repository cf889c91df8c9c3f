#include "vleb/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vleb {

double bump_profile(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

namespace {

double poly_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * u + c[k];
    return v;
}

}  // namespace

cplx FunctionExpr::eval(double x) const {
    switch (kind) {
        case Kind::Char:
            return (x > a && x < b) ? 1.0 : 0.0;
        case Kind::Power: {
            if (x <= a || x >= b) return 0.0;
            double d = std::abs(x - x0);
            return std::pow(d, gamma);
        }
        case Kind::Bump:
            return bump_profile((x - center) / radius);
        case Kind::PolyBump: {
            double u = (x - center) / radius;
            if (std::abs(u) >= 1.0) return 0.0;
            double p = poly_eval(coeffs, u);
            return flat ? p : p * bump_profile(u);
        }
        case Kind::Scale:
            return scale * children[0]->eval(x);
        case Kind::Sum: {
            cplx s = 0.0;
            for (const auto& c : children) s += c->eval(x);
            return s;
        }
    }
    return 0.0;
}

void FunctionExpr::support(double& lo, double& hi) const {
    switch (kind) {
        case Kind::Char:
        case Kind::Power:
            lo = a;
            hi = b;
            return;
        case Kind::Bump:
        case Kind::PolyBump:
            lo = center - radius;
            hi = center + radius;
            return;
        case Kind::Scale:
            children[0]->support(lo, hi);
            return;
        case Kind::Sum: {
            lo = std::numeric_limits<double>::infinity();
            hi = -lo;
            for (const auto& c : children) {
                double l, h;
                c->support(l, h);
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
            if (children.empty()) lo = hi = 0.0;
            return;
        }
    }
}

void FunctionExpr::collect_breakpoints(std::vector<double>& out) const {
    switch (kind) {
        case Kind::Char:
            out.push_back(a);
            out.push_back(b);
            return;
        case Kind::Power:
            out.push_back(a);
            out.push_back(b);
            if (x0 > a && x0 < b) out.push_back(x0);
            return;
        case Kind::Bump:
            out.push_back(center - radius);
            out.push_back(center + radius);
            return;
        case Kind::PolyBump:
            out.push_back(center - radius);
            out.push_back(center + radius);
            return;
        case Kind::Scale:
            children[0]->collect_breakpoints(out);
            return;
        case Kind::Sum:
            for (const auto& c : children) c->collect_breakpoints(out);
            return;
    }
}

void FunctionExpr::collect_singularities(
    std::vector<std::pair<double, double>>& out) const {
    switch (kind) {
        case Kind::Power:
            if (gamma != 0.0 && x0 >= a && x0 <= b) out.emplace_back(x0, gamma);
            return;
        case Kind::Scale:
            children[0]->collect_singularities(out);
            return;
        case Kind::Sum:
            for (const auto& c : children) c->collect_singularities(out);
            return;
        default:
            return;
    }
}

bool FunctionExpr::is_zero() const {
    switch (kind) {
        case Kind::Scale:
            return scale == 0.0 || children[0]->is_zero();
        case Kind::Sum: {
            for (const auto& c : children)
                if (!c->is_zero()) return false;
            return true;
        }
        default:
            return false;
    }
}

ExprPtr char_fun(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("char_fun: empty interval");
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Char;
    e->a = a;
    e->b = b;
    return e;
}

ExprPtr power_fun(double x0, double gamma, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("power_fun: empty interval");
    if (gamma <= -1.0)
        throw std::invalid_argument("power_fun: exponent must exceed -1");
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Power;
    e->x0 = x0;
    e->gamma = gamma;
    e->a = a;
    e->b = b;
    return e;
}

ExprPtr bump(double center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be positive");
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Bump;
    e->center = center;
    e->radius = radius;
    return e;
}

ExprPtr poly_bump(double center, double radius, std::vector<double> coeffs,
                  bool flat) {
    if (!(radius > 0.0))
        throw std::invalid_argument("poly_bump: radius must be positive");
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::PolyBump;
    e->center = center;
    e->radius = radius;
    e->coeffs = std::move(coeffs);
    e->flat = flat;
    return e;
}

ExprPtr scale(cplx c, ExprPtr inner) {
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Scale;
    e->scale = c;
    e->children = {std::move(inner)};
    return e;
}

ExprPtr sum(ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Sum;
    e->children = {std::move(l), std::move(r)};
    return e;
}

ExprPtr sum(std::vector<ExprPtr> terms) {
    auto e = std::make_shared<FunctionExpr>();
    e->kind = FunctionExpr::Kind::Sum;
    e->children = std::move(terms);
    return e;
}

}  // namespace vleb
