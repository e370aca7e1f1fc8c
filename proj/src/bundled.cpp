#include "anosov/bundled.hpp"

#include <cmath>

namespace anosov {

Mat o21_rotation(double phi) {
  Mat r = Mat::Identity(3, 3);
  r(0, 0) = std::cos(phi);
  r(0, 1) = -std::sin(phi);
  r(1, 0) = std::sin(phi);
  r(1, 1) = std::cos(phi);
  // the columns f1, e2, h1 of c are the standard coordinates x1, x2, x3
  const Mat c = diagonalizing_basis(2, 1);
  return c * r * c.transpose();
}

Mat o21_hyperbolic(double lambda, double phi) {
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = std::exp(lambda);
  a(1, 1) = 1.0;
  a(2, 2) = std::exp(-lambda);
  const Mat r = o21_rotation(phi);
  return r * a * r.transpose();
}

std::vector<Generator> schottky_o21(double lambda) {
  return {make_generator("a", o21_hyperbolic(lambda, 0.0)), make_generator("b", o21_hyperbolic(lambda, M_PI / 2))};
}

std::vector<Generator> mixed_o21() {
  return {make_generator("r", o21_rotation(2.0 * M_PI * (std::sqrt(2.0) - 1.0))),
          make_generator("h", o21_hyperbolic(1.0, 0.0))};
}

} // namespace anosov
