#include "vleb/families.hpp"

#include <cmath>

namespace vleb {

std::vector<ExprPtr> family_chars(double L) {
    std::vector<ExprPtr> fam;
    for (double c : {0.0, 1.0, -2.0, 3.5}) {
        for (int k = -2; k <= 1; ++k) {
            double r = std::pow(2.0, k);
            if (std::abs(c) + r < 0.75 * L) fam.push_back(char_fun(c - r, c + r));
        }
    }
    fam.push_back(char_fun(0.0, 1.0));
    return fam;
}

std::vector<ExprPtr> family_dipoles(double L) {
    (void)L;
    std::vector<ExprPtr> fam;
    auto dip = [](double a, double b, double c) {
        // equal-mass halves: chi_(a,b)/(b-a) - chi_(b,c)/(c-b), scaled back up
        return sum(char_fun(a, b), scale(-(b - a) / (c - b), char_fun(b, c)));
    };
    fam.push_back(dip(-1.0, 0.0, 1.0));
    fam.push_back(dip(0.0, 1.0, 2.0));
    fam.push_back(dip(-2.0, -1.0, 0.5));
    fam.push_back(dip(-0.5, 0.25, 1.0));
    return fam;
}

std::vector<ExprPtr> family_bumps(const std::vector<double>& nodes,
                                  const std::vector<double>& radii) {
    std::vector<ExprPtr> fam;
    for (double c : nodes)
        for (double r : radii) fam.push_back(bump(c, r));
    return fam;
}

std::vector<ExprPtr> family_default(double L, const std::vector<double>& nodes) {
    std::vector<ExprPtr> fam = family_chars(L);
    for (auto& d : family_dipoles(L)) fam.push_back(d);
    std::vector<double> centers = nodes;
    if (centers.empty()) centers.push_back(0.0);
    for (auto& b : family_bumps(centers, {1.0, 0.25, 0.0625})) fam.push_back(b);
    return fam;
}

std::vector<double> sweep_radii() { return {1e-2, 1e-9, 1e-16}; }

std::vector<ExprPtr> random_family(double L, int count, unsigned seed,
                                   bool closed_form_only) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> upos(-0.6 * L, 0.6 * L);
    std::uniform_real_distribution<double> ulen(0.1, 2.0);
    std::uniform_real_distribution<double> uamp(-2.0, 2.0);
    std::uniform_real_distribution<double> ugam(-0.45, 0.8);
    std::uniform_int_distribution<int> unterms(1, 3);
    std::uniform_int_distribution<int> ukind(0, closed_form_only ? 1 : 2);

    std::vector<ExprPtr> fam;
    for (int i = 0; i < count; ++i) {
        int terms = unterms(rng);
        std::vector<ExprPtr> parts;
        for (int t = 0; t < terms; ++t) {
            double c = upos(rng), len = ulen(rng);
            cplx amp(uamp(rng), uamp(rng));
            ExprPtr leaf;
            switch (ukind(rng)) {
                case 0:
                    leaf = char_fun(c - len, c + len);
                    break;
                case 1:
                    leaf = power_fun(c, ugam(rng), c, c + len);
                    break;
                default:
                    leaf = bump(c, len);
                    break;
            }
            parts.push_back(scale(amp, leaf));
        }
        fam.push_back(parts.size() == 1 ? parts[0] : sum(parts));
    }
    return fam;
}

}  // namespace vleb
