#pragma once

#include <vector>

#include "anosov/words.hpp"

namespace anosov {

// Hyperbolic element of O(2,1) in the Witt basis with Cartan projection lambda, repelling
// the boundary point at angle phi + pi and attracting the one at angle phi (angles on the
// circle x1^2 + x2^2 = x3^2 in standard coordinates).
Mat o21_hyperbolic(double lambda, double phi);
// rotation by phi about the center of the disk
Mat o21_rotation(double phi);

// Ping-pong pair a, b with axes at right angles. The default rapidity makes every
// cylinder of depth one smaller than the default pair floor of the transversality report.
std::vector<Generator> schottky_o21(double lambda = 8.0);
// irrational rotation with a hyperbolic element: a dense, non-discrete subgroup
std::vector<Generator> mixed_o21();

} // namespace anosov
