#pragma once

#include <string>
#include <vector>

#include "anosov/cartan.hpp"

namespace anosov {

struct Generator {
  std::string name;
  Mat m;
  Mat inv;
};

// Letter 2i is generator i, letter 2i+1 its inverse.
inline int inverse_letter(int l) { return l ^ 1; }

struct BallElement {
  std::vector<int> letters;
  std::string word;
  Mat m;
  int length() const { return int(letters.size()); }
};

//
// Word-length ball of a finitely generated matrix group, deduplicated as matrices.
// Elements are in shortlex order of their first (shortlex-least) word; sphere r occupies
// [sphere_start[r], sphere_start[r+1]).
//
struct GroupBall {
  std::vector<Generator> generators;
  std::vector<BallElement> elements;
  std::vector<int> sphere_start;
  double dedup_tol = 1e-8;
  int radius = 0;
  bool truncated = false;

  int sphere_count() const { return int(sphere_start.size()) - 1; }
  int sphere_begin(int r) const { return sphere_start[r]; }
  int sphere_end(int r) const { return sphere_start[r + 1]; }
  const Mat& letter_matrix(int l) const { return l & 1 ? generators[l / 2].inv : generators[l / 2].m; }
  std::string letter_name(int l) const;
  std::string word_of(const std::vector<int>& letters) const;
  Mat evaluate(const std::vector<int>& letters) const;
  // letters of the inverse word
  static std::vector<int> inverse_word(const std::vector<int>& letters);
};

struct CapExceeded : Error {
  using Error::Error;
};

Generator make_generator(const std::string& name, const Mat& m);

// reduced products up to `radius`; stops with truncated = true once `cap` elements are stored
GroupBall enumerate_ball(const std::vector<Generator>& gens, int radius, double dedup_tol = 1e-8,
                         int cap = 100000);
// same, but throws CapExceeded instead of returning a truncated ball
GroupBall enumerate_ball_strict(const std::vector<Generator>& gens, int radius, double dedup_tol = 1e-8,
                                int cap = 100000);

struct RadiusGaps {
  int radius = 0;
  std::vector<double> min_gap;
  std::vector<std::string> argmin_word;
};

enum class Growth { flat, linear, logarithmic };
std::string to_string(Growth g);

struct GrowthFit {
  double slope = 0.0;      // least squares of min_gap against r
  double intercept = 0.0;
  double log_slope = 0.0;  // least squares of min_gap against log r
  double linear_residual = 0.0;
  double log_residual = 0.0;
  Growth growth = Growth::flat;
};

struct DivergenceProfile {
  std::vector<RadiusGaps> per_radius;
  std::vector<GrowthFit> fits; // one per simple root
};

DivergenceProfile divergence_profile(const GroupBall& ball, const GroupSpec& spec);
GrowthFit fit_growth(const std::vector<double>& radii, const std::vector<double>& values);

struct ProximalElement {
  std::string word;
  int index = 0;  // position in the ball
  Frame attracting;
  double gap = 0.0; // log|lambda_i| - log|lambda_{i+1}|
};

// elements whose top-i eigenvalues are separated from the rest by gap_threshold (in log modulus)
// and span a real invariant subspace, returned as the attracting fixed point in Gr_i
std::vector<ProximalElement> proximal_elements(const GroupBall& ball, double gap_threshold, int i = 1);

} // namespace anosov
