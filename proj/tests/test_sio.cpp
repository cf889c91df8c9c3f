#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vleb/cauchy.hpp"
#include "vleb/maximal.hpp"
#include "vleb/norms.hpp"

using namespace vleb;

namespace {

GridPtr sio_grid(int n = 1025, const std::vector<double>& nodes = {}, int depth = 6) {
    return make_grid_ptr(16.0, n, nodes, depth);
}

}  // namespace

TEST_CASE("indicator transform closed form") {
    CHECK(std::abs(cauchy_indicator(-1.0, 1.0, 0.0)) == doctest::Approx(0.0));
    cplx v = cauchy_indicator(-1.0, 1.0, 2.0);
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(std::log(3.0) / M_PI));  // ~0.34966
    cplx u = cauchy_indicator(0.0, 1.0, -1.0);
    CHECK(u.imag() == doctest::Approx(-std::log(2.0) / M_PI));  // ~-0.22064
    CHECK_THROWS(cauchy_indicator(0.0, 1.0, 1.0));
}

TEST_CASE("engine agrees with the closed form on indicators") {
    auto g = sio_grid(4097);
    GridFunction f = sample(char_fun(0.0, 1.0), g);
    GridFunction sf = cauchy_transform(f);
    double cell = g->coarse_cell();
    for (size_t i = 0; i < g->points.size(); ++i) {
        double x = g->points[i];
        if (std::abs(x) < 2.0 * cell || std::abs(x - 1.0) < 2.0 * cell) continue;
        cplx ref = cauchy_indicator(0.0, 1.0, x);
        CHECK(std::abs(sf.values[i] - ref) <= 1e-9);
    }
    // pv symmetry point inside the interval
    int mid = g->nearest_point(0.5);
    CHECK(std::abs(sf.values[mid]) <= 1e-12);
}

TEST_CASE("transform is linear") {
    auto g = sio_grid();
    GridFunction f = sample(char_fun(-1.0, 1.0), g);
    GridFunction h = sample(bump(0.5, 1.0), g);
    cplx a(2.0, 1.0), b(-0.5, 0.25);
    GridFunction combo = sample(sum(scale(a, char_fun(-1.0, 1.0)), scale(b, bump(0.5, 1.0))), g);
    GridFunction s_combo = cauchy_transform(combo);
    GridFunction sf = cauchy_transform(f);
    GridFunction sh = cauchy_transform(h);
    for (size_t i = 0; i < g->points.size(); ++i) {
        if (s_combo.excluded[i]) continue;
        cplx want = a * sf.values[i] + b * sh.values[i];
        CHECK(std::abs(s_combo.values[i] - want) <= 1e-8 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("maximal function of an indicator") {
    auto g = sio_grid(2049);
    GridFunction f = sample(char_fun(0.0, 1.0), g);
    GridFunction mf = maximal_function(f);
    CHECK(mf.values[g->nearest_point(0.5)].real() == doctest::Approx(1.0).epsilon(1e-3));
    // best interval from x=2 reaches back to 0
    CHECK(mf.values[g->nearest_point(2.0)].real() == doctest::Approx(0.5).epsilon(1e-2));
    GridFunction z = maximal_function(zero_function(g));
    for (const auto& v : z.values) CHECK(v.real() == 0.0);
}

TEST_CASE("maximal function dominates the function and is sublinear") {
    auto g = sio_grid(1025);
    GridFunction f = sample(bump(0.0, 2.0), g);
    GridFunction h = sample(char_fun(-1.0, 3.0), g);
    GridFunction mf = maximal_function(f);
    GridFunction mh = maximal_function(h);
    GridFunction msum = maximal_function(gf_add(f, h));
    for (size_t i = 0; i < g->points.size(); ++i) {
        CHECK(msum.values[i].real() <= mf.values[i].real() + mh.values[i].real() + 1e-10);
        // Lebesgue-point lower bound on the continuous leaf
        CHECK(mf.values[i].real() >= std::abs(f.values[i]) - 1e-3);
    }
    GridFunction m2 = maximal_function(gf_scale(-2.0, f));
    for (size_t i = 0; i < g->points.size(); ++i)
        CHECK(m2.values[i].real() == doctest::Approx(2.0 * mf.values[i].real()).epsilon(1e-12));
}

TEST_CASE("rearrangement layer cake") {
    auto g = sio_grid(2049);
    // f = 2 chi_(0,1) + chi_(1,3)
    GridFunction f = sample(sum(scale(2.0, char_fun(0.0, 1.0)), char_fun(1.0, 3.0)), g);
    CHECK(rearrangement(f, 0.5) == doctest::Approx(2.0));
    CHECK(rearrangement(f, 2.0) == doctest::Approx(1.0));
    CHECK(rearrangement(f, 4.0) == doctest::Approx(0.0));

    GridFunction chi = sample(char_fun(-1.0, 1.5), g);
    CHECK(rearrangement(chi, 2.4) == doctest::Approx(1.0));
    CHECK(rearrangement(chi, 2.6) == doctest::Approx(0.0));

    // tent function: f*(t) = max(0, 1 - t/2)
    GridFunction tent = sample(sum(poly_bump(-0.5, 0.5, {0.5, 0.5}, true),
                                   poly_bump(0.5, 0.5, {0.5, -0.5}, true)),
                               g);
    for (double t : {0.4, 1.0, 1.6}) {
        CHECK(rearrangement(tent, t) == doctest::Approx(1.0 - t / 2.0).epsilon(2e-2));
    }
    CHECK_THROWS(rearrangement(chi, -1.0));
}

TEST_CASE("rearrangement is equimeasurable and nonincreasing") {
    auto g = sio_grid(1025);
    GridFunction f = sample(sum(bump(0.0, 1.0), scale(0.7, char_fun(2.0, 5.0))), g);
    double l1 = 0.0;
    for (size_t i = 0; i + 1 < g->points.size(); ++i) {
        double mid = 0.5 * (g->points[i] + g->points[i + 1]);
        l1 += std::abs(f.field->eval(mid)) * (g->points[i + 1] - g->points[i]);
    }
    // integral of the rearrangement over (0, inf) by fine trapezoid
    double li = 0.0, prev = rearrangement(f, 0.0);
    double dt = 0.005;
    for (double t = dt; t < 10.0; t += dt) {
        double cur = rearrangement(f, t);
        CHECK(cur <= prev + 1e-12);
        li += 0.5 * (prev + cur) * dt;
        prev = cur;
    }
    CHECK(li == doctest::Approx(l1).epsilon(1e-3));
}

TEST_CASE("sharp function of constants vanishes") {
    auto g = sio_grid(257);
    GridFunction c = sample(scale(3.0, char_fun(-16.0 + 1e-9, 16.0 - 1e-9)), g);
    GridFunction s = sharp_maximal(c, 0.5);
    GridFunction l = local_sharp_maximal(c, 0.25);
    for (size_t i = 0; i < g->points.size(); ++i) {
        CHECK(s.values[i].real() <= 1e-12);
        CHECK(l.values[i].real() <= 1e-12);
    }
}

TEST_CASE("sharp functions of the half-line indicator") {
    auto g = sio_grid(1025, {0.0}, 0);
    GridFunction f = sample(char_fun(0.0, 16.0 - 1e-9), g);

    // delta = 1/2 at the jump: balanced interval, best c in {0,1}
    GridFunction s = sharp_maximal(f, 0.5);
    CHECK(s.values[g->nearest_point(0.0)].real() == doctest::Approx(0.25).epsilon(2e-2));

    // deviation objective oracle: f = x on (-1,1), Q=(-1/2,1/2), c=0, delta=1
    GridFunction lin = sample(poly_bump(0.0, 1.0, {0.0, 1.0}, true), g);
    CHECK(deviation_objective(lin, -0.5, 0.5, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-2));

    // local sharp at the jump
    GridFunction l14 = local_sharp_maximal(f, 0.25);
    CHECK(l14.values[g->nearest_point(0.0)].real() == doctest::Approx(0.5).epsilon(2e-2));
    GridFunction l12 = local_sharp_maximal(f, 0.5);
    CHECK(l12.values[g->nearest_point(0.0)].real() <= 1e-10);
}

TEST_CASE("pointwise relation between the sharp functions") {
    auto g = sio_grid(257);
    std::vector<GridFunction> fams = {
        sample(char_fun(0.0, 2.0), g),
        sample(sum(char_fun(-3.0, -1.0), scale(2.0, char_fun(1.0, 2.0))), g),
        sample(bump(0.5, 1.5), g),
    };
    for (const auto& f : fams) {
        for (double delta : {0.5, 1.0}) {
            for (double lambda : {0.25, 0.5}) {
                GridFunction sharp, local;
                sharp_pair(f, delta, lambda, sharp, local);
                double k = std::pow(1.0 / lambda, 1.0 / delta);
                for (size_t i = 0; i < g->points.size(); ++i) {
                    CHECK(local.values[i].real() <=
                          k * sharp.values[i].real() + 1e-10);
                }
            }
        }
    }
}

TEST_CASE("parameter validation") {
    auto g = sio_grid(257);
    GridFunction f = sample(char_fun(0.0, 1.0), g);
    CHECK_THROWS(sharp_maximal(f, 0.0));
    CHECK_THROWS(sharp_maximal(f, 1.5));
    CHECK_THROWS(local_sharp_maximal(f, 0.0));
    CHECK_THROWS(local_sharp_maximal(f, 1.0));
    PVQuadSpec bad;
    bad.window_cells = 1.0;
    CHECK_THROWS(cauchy_transform(f, bad));
}

TEST_CASE("square of the transform returns the function") {
    auto g = make_grid_ptr(16.0, 2049, {-1.0, 1.0}, 6);
    GridFunction f = sample(char_fun(-1.0, 1.0), g);
    GridFunction sf = cauchy_transform(f);
    GridFunction ssf = cauchy_transform(sf);
    double cell = g->coarse_cell();
    for (size_t i = 0; i < g->points.size(); ++i) {
        double x = g->points[i];
        if (std::abs(x - 1.0) < 4.0 * cell || std::abs(x + 1.0) < 4.0 * cell) continue;
        if (ssf.excluded[i]) continue;
        CHECK(std::abs(ssf.values[i] - f.values[i]) <= 1e-2);
    }
}

TEST_CASE("transform tail model feeds composed calls") {
    auto g = sio_grid(1025);
    GridFunction f = sample(bump(0.0, 1.0), g);
    GridFunction sf = cauchy_transform(f);
    REQUIRE(sf.tail.has_value());
    // mass/(pi i) with mass = integral of the bump
    double mass = integrate(f).real();
    CHECK(std::abs(sf.tail->coef) == doctest::Approx(mass / M_PI).epsilon(1e-9));
}
