#pragma once

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "anosov/lie_algebra.hpp"
#include "anosov/limits.hpp"

namespace anosov {

// A point of the closed set of nonpositive q-planes; stratum 0 is the symmetric space itself.
struct CompactPoint {
  Frame frame;
  int stratum = 0;
  double top_eigenvalue = 0.0; // largest eigenvalue of the restricted form
};

struct Rejection {
  std::string reason;
  double value = 0.0;
};

using XbarResult = std::variant<CompactPoint, Rejection>;

XbarResult in_Xbar(const Frame& w, const WittForm& form, double tol = default_tol);
// W in R^{2n} with b^C real on W x W, Re b^C <= 0 on W and a J-stable kernel
XbarResult complex_in_Xbar(const Frame& w, const WittForm& bc, double tol = default_tol);

inline bool accepted(const XbarResult& r) { return std::holds_alternative<CompactPoint>(r); }

// Theorem-level guarantees do not cover these signatures; results are still computed
bool outside_theorem_hypotheses(const WittForm& form, int i = 1);

enum class BadSetVariant { intersect, contain };
std::string to_string(BadSetVariant v);

struct BadSetResult {
  bool hit = false;
  int witness = -1;            // index into the sample
  double distance = 0.0;       // smallest incidence distance to the sample
  double covering_radius = 0.0;
};

// intersect: smallest principal sine between L and W; contain: largest
double incidence_distance(const Frame& w, const Frame& l, BadSetVariant v);

BadSetResult in_bad_set(const CompactPoint& w, const LimitSample& sample, BadSetVariant v, double tol = 1e-9);
// same, without recomputing the covering radius
BadSetResult in_bad_set(const Frame& w, const LimitSample& sample, BadSetVariant v, double tol,
                        double covering_radius);

// Gaussian frames rejected onto nonpositive q-planes; interior_only keeps stratum 0
std::vector<CompactPoint> sample_domain(const WittForm& form, int count, std::mt19937_64& rng,
                                        bool interior_only = true);
// domain points at incidence distance >= margin from the sample
std::vector<CompactPoint> sample_domain_away(const WittForm& form, const LimitSample& sample, int count,
                                             double margin, std::mt19937_64& rng, int max_attempts = 200000);

struct RelationFlag {
  int point = 0;
  std::string word;
  double residual = 0.0;
  double mu_norm = 0.0;
};

struct RelationScan {
  std::vector<RelationFlag> flags;
  double max_residual = 0.0;
  long pairs = 0;
};

// gamma * W for every point W and every ball element of word length >= min_len, compared with
// the sampled bad set; residuals above accumulation_tol are flagged
RelationScan dynamical_relation_scan(const std::vector<CompactPoint>& points, const GroupBall& ball,
                                     const LimitSample& sample, int min_len, double accumulation_tol = 1e-3);

struct ExpansionCertificate {
  bool success = false;
  int n = -1;            // position on the ray
  std::string word;      // gamma_n; the expanding element is its inverse
  double radius = 0.0;
  double factor = 0.0;
  double best_factor = 0.0;
};

// prefixes of a word, starting with the empty word
std::vector<std::vector<int>> ray_of(const std::vector<int>& letters);

// searches gamma = gamma_n^{-1} along the ray for expansion >= c of the incidence distance on a
// seeded grid of (W, L) pairs with d(L, flag) < r and d(W, K_L) < r
ExpansionCertificate expansion_certificate(const FlagPoint& flag, const std::vector<std::vector<int>>& ray,
                                           const GroupBall& ball, const WittForm& form, double c,
                                           std::uint64_t seed = 1);

struct CoveragePoint {
  double margin = 0.0;
  int sampled = 0;
  int covered = 0;
  double fraction() const { return sampled ? double(covered) / sampled : 0.0; }
};

std::vector<CoveragePoint> orbit_coverage(const std::vector<CompactPoint>& core, const GroupBall& ball,
                                          const LimitSample& sample, const WittForm& form,
                                          const std::vector<double>& margins, int trials, double d_core,
                                          std::mt19937_64& rng);

struct SubalgebraPoint {
  AlgebraTag tag;
  ThetaSet theta;
  Frame basis; // coordinates in LieAlgebra(tag).basis()
};

SubalgebraPoint subalgebra_point(const AlgebraTag& tag, ThetaSet theta);
SubalgebraPoint subalgebra_point(const LieAlgebra& alg, ThetaSet theta);
// Ad(g) applied to a subspace of the Lie algebra
Frame adjoint_translate(const LieAlgebra& alg, const Mat& g, const Frame& w);
// L must be spanned by nilpotent elements; returns (L meets W) implies (L inside W)
bool nilpotent_incidence_check(const LieAlgebra& alg, const Frame& w, const Frame& l, double tol = 1e-9);

} // namespace anosov
