#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vleb/expr.hpp"
#include "vleb/grid.hpp"
#include "vleb/weight.hpp"

namespace vleb {

struct VariableExponent;

// Power-type singular factor |x - pos|^exponent, active on [lo, hi].
struct SingularFactor {
    double pos;
    double exponent;
    double lo, hi;
};

// f(x) ~ coef / x for |x| > L (first moment of the underlying density)
struct TailModel {
    cplx coef;
};

// local structure of a field on a piece that straddles no breakpoint
struct PieceModel {
    enum class Kind { Zero, Const, Power, Smooth };
    Kind kind = Kind::Smooth;
    cplx amp = 0.0;      // Const: the value; Power: amplitude at unit distance
    double s = 0.0;      // Power: singular position
    double gamma = 0.0;  // Power: exponent
};

// Pointwise-evaluable function with enough structure for exact piecewise
// quadrature: breakpoints partition the line into pieces on which the field
// is constant, a power, or smooth.
struct Field {
    std::function<cplx(double)> eval;
    std::vector<double> breakpoints;      // sorted, unique
    std::vector<SingularFactor> singular;
    double sup_lo = 0.0, sup_hi = 0.0;
    // closed-form integral over a piece, when the active leaves admit one
    std::function<std::optional<cplx>(double, double)> exact_piece;
    std::function<PieceModel(double, double)> piece_model;
    bool has_smooth = false;

    bool covers(double x) const { return x > sup_lo && x < sup_hi; }
};

Field field_from_expr(const ExprPtr& e);

// f * w with the weight's singular factors folded in (f may be empty = 1*w)
Field field_weighted(const Field& f, const WeightSpec& w);

// piecewise-linear interpolant of mesh values (operator outputs)
Field field_from_values(std::shared_ptr<const Grid> g,
                        std::shared_ptr<const std::vector<cplx>> values);

Field field_sum(const Field& a, const Field& b);
Field field_scale(cplx c, const Field& f);

// ---------------------------------------------------------------------------
// integration

// integral of the field over [-L, L]; closed-form pieces where available,
// composite midpoint on smooth pieces (grid cells drive the resolution)
cplx integrate_field(const Field& f, const Grid& g);

// high-accuracy product integral for verification inner products:
// Gauss-Legendre per piece with local geometric refinement toward the
// registered log-type points of either factor
cplx integrate_product(const Field& a, const Field& b, const Grid& g,
                       bool conj_b, const std::vector<double>& log_points = {});

double integrate_abs_product(const Field& a, const Field& b, const Grid& g);

// ---------------------------------------------------------------------------
// modular kernel
//
// The modular integral of |g/lambda|^{p(x)} reduces, piece by piece, to a sum
// of terms B * lambda^{-p}. Cells adjacent to a negative-power singular node
// are re-refined geometrically at a ladder of depths; the resulting trace of
// modular values detects divergence (last-to-previous ratio above 2).
class ModularKernel {
  public:
    ModularKernel(const Field& g, const VariableExponent& p, const Grid& grid,
                  const std::vector<uint8_t>* excluded_points = nullptr,
                  const std::optional<TailModel>& tail = std::nullopt,
                  double weight_tail_exponent = 0.0, double p_at_infinity = 2.0);

    // modular at scale lambda, evaluated at trace level `level` (0-based;
    // levels() - 1 is the deepest)
    double eval(double lambda, int level) const;
    double eval_deepest(double lambda) const { return eval(lambda, levels() - 1); }

    int levels() const { return static_cast<int>(depth_schedule_.size()); }
    const std::vector<int>& depth_schedule() const { return depth_schedule_; }

    // trace of modular values across the depth ladder at fixed lambda
    std::vector<double> trace(double lambda) const;
    // divergence: non-finite entry, divergent tail, or last/previous > 2
    bool divergent(double lambda = 1.0) const;

    bool all_zero() const { return groups_.empty() && dynamic_.empty() && !tail_divergent_ && tail_B_ == 0.0; }

  private:
    struct Entry {
        double B;
        double p;
    };
    // static entries grouped by equal exponent (constant-p fast path)
    struct Group {
        double B;
        double p;
    };
    std::vector<Group> groups_;
    std::vector<std::vector<Entry>> dynamic_;  // one bundle per trace level
    std::vector<int> depth_schedule_;
    double tail_B_ = 0.0;
    double tail_p_ = 2.0;
    bool tail_divergent_ = false;
};

// Gauss-Legendre nodes/weights on [-1, 1]
const std::vector<std::pair<double, double>>& gauss_rule(int order);

}  // namespace vleb
