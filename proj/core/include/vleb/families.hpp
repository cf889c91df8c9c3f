#pragma once

#include <random>
#include <string>
#include <vector>

#include "vleb/expr.hpp"

namespace vleb {

// Fixed, versioned test families. Zero-mean dipoles cancel the 1/x tail of
// the transform; bumps near weight nodes probe concentration behavior.

// indicators at dyadic scales and positions
std::vector<ExprPtr> family_chars(double L);

// chi_(a,b) - chi_(b,c), zero mean
std::vector<ExprPtr> family_dipoles(double L);

// smooth bumps at three concentration levels near each listed node
std::vector<ExprPtr> family_bumps(const std::vector<double>& nodes,
                                  const std::vector<double>& radii);

// chars + dipoles + moderate bumps; the general-purpose battery
std::vector<ExprPtr> family_default(double L, const std::vector<double>& nodes = {});

// extreme concentration triple for the boundedness dichotomy probes
std::vector<double> sweep_radii();

// seeded random scaled sums of indicator/power/bump leaves
std::vector<ExprPtr> random_family(double L, int count, unsigned seed,
                                   bool closed_form_only = false);

}  // namespace vleb
