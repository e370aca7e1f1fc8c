#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/words.hpp"

namespace anosov {

struct LimitPoint {
  FlagPoint flag;
  std::string word;
  std::vector<int> letters;
  int length = 0;
  double gap = 0.0; // smallest theta-gap of the source element
};

struct LimitSample {
  GroupSpec spec;
  ThetaSet theta;
  double merge_tol = 1e-6;
  std::vector<LimitPoint> points;

  bool empty() const { return points.empty(); }
  // largest nearest-neighbour distance between samples
  double covering_radius() const;
};

// distance between two flags of equal dimension
double flag_distance(const FlagPoint& a, const FlagPoint& b);

// Xi_theta of every ball element whose theta-gaps exceed min_gap, merged at merge_tol;
// of two merged flags the one with the larger gap is kept
LimitSample sample_limit_set(const GroupBall& ball, const GroupSpec& spec, ThetaSet theta, double min_gap,
                             double merge_tol = 1e-6);
// adds points to a sample, with the same merge rule
void merge_into(LimitSample& s, const std::vector<LimitPoint>& pts);

struct CylinderFlag {
  std::vector<int> letters;
  std::string word;
  FlagPoint flag;
};

// Xi_theta(w c^tail) for every reduced word w of length `depth`, c the first letter that may follow w
std::vector<CylinderFlag> boundary_map_free_group(const GroupBall& ball, const GroupSpec& spec, ThetaSet theta,
                                                  int depth, int tail = 12);

struct TransversalityReport {
  double margin = 0.0;
  int worst_a = -1, worst_b = -1;
  long pairs = 0;
  long excluded = 0;
};

// smallest singular value of [basis of x^perp_b | basis of y] over sample pairs farther apart than pair_floor
double transversality_margin(const WittForm& form, const Frame& x, const Frame& y);
TransversalityReport transversality_report(const LimitSample& sample, const WittForm& form, double pair_floor = 1e-3);

struct DynamicsEntry {
  std::string word;
  double distance_to_sample = 0.0;
  double contraction = 0.0; // mean ratio d(g x, A)/d(x, A) over nearby samples; < 1 means attraction
  int nearby = 0;
};

struct DynamicsReport {
  std::vector<DynamicsEntry> entries;
  double max_distance = 0.0;
};

DynamicsReport dynamics_preserving_check(const LimitSample& sample, const GroupBall& ball,
                                         const std::vector<ProximalElement>& proximals, double radius = 0.1);

// CSV rows: index, word, length, gap, frame entries (row-major)
std::string limit_sample_csv(const LimitSample& s);
// scatter of the chart (x_i / |negative part|, x_j / |negative part|) of each line, fixed viewport
std::string limit_sample_svg(const LimitSample& s, int chart_i, int chart_j);

} // namespace anosov
