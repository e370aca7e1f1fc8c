#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anosov/forms.hpp"

namespace anosov {

enum class RootType { A, B, C, D, BC, E6, E7, E8, F4, G2 };

std::string to_string(RootType t);
RootType parse_root_type(const std::string& s);

struct Rational {
  long long num = 0, den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const = default;
  int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
  double value() const { return double(num) / double(den); }
  std::string str() const;
};

// Subset of the simple roots, stored as a bitmask; index 0 is alpha_1.
class ThetaSet {
public:
  ThetaSet() = default;
  explicit ThetaSet(std::uint32_t mask) : mask_(mask) {}
  static ThetaSet of(std::initializer_list<int> one_based);
  static ThetaSet from_indices(const std::vector<int>& zero_based);
  static ThetaSet all(int rank);

  std::uint32_t mask() const { return mask_; }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  std::vector<int> members() const;
  bool subset_of(ThetaSet o) const { return (mask_ & ~o.mask_) == 0; }

  ThetaSet operator|(ThetaSet o) const { return ThetaSet(mask_ | o.mask_); }
  ThetaSet operator&(ThetaSet o) const { return ThetaSet(mask_ & o.mask_); }
  ThetaSet operator-(ThetaSet o) const { return ThetaSet(mask_ & ~o.mask_); }
  bool operator==(const ThetaSet&) const = default;
  // size first, then mask: a linear extension of inclusion
  std::strong_ordering operator<=>(const ThetaSet& o) const;

  std::string str() const;

private:
  std::uint32_t mask_ = 0;
};

struct Table1Entry {
  int alpha_g;                  // zero-based index as printed
  std::vector<long long> chi_g; // coefficients over the simple roots
};

struct RootSystem {
  RootType type;
  int rank;
  // (alpha_i, alpha_j), scaled to integers
  std::vector<std::vector<long long>> pairing;
  // alpha_i in epsilon coordinates (classical types only)
  std::vector<std::vector<int>> eps_coords;
  std::vector<int> opposition;
  std::optional<Table1Entry> table1;

  std::string label() const;
  ThetaSet delta() const { return ThetaSet::all(rank); }
  int eps_dim() const { return eps_coords.empty() ? 0 : int(eps_coords[0].size()); }
  // Bourbaki convention a_ij = <alpha_i^vee, alpha_j>
  std::vector<std::vector<long long>> cartan_matrix() const;
  // (sum c_i alpha_i, alpha_j)
  long long pair(const std::vector<long long>& coeffs, int j) const;
  Rational pair(const std::vector<Rational>& coeffs, int j) const;
  bool adjacent(int i, int j) const { return i != j && pairing[i][j] != 0; }
};

RootSystem build_root_system(RootType type, int rank);

// positive roots as coefficient vectors over the simple roots, sorted by height
std::vector<std::vector<long long>> positive_roots(const RootSystem& rs);
std::vector<long long> highest_root(const RootSystem& rs);

std::vector<Rational> fundamental_weight(const RootSystem& rs, int i);

ThetaSet opposition_star(const RootSystem& rs, ThetaSet theta);

bool is_tau_admissible(const RootSystem& rs, ThetaSet support, ThetaSet theta);
std::vector<ThetaSet> tau_admissible_sets(const RootSystem& rs, ThetaSet support);

struct NucleusSaturation {
  ThetaSet theta_vee;
  ThetaSet theta_dd;
};
NucleusSaturation nucleus_saturation(const RootSystem& rs, ThetaSet support, ThetaSet theta);

// smallest admissible set containing theta (admissible sets are closed under intersection)
ThetaSet admissible_closure(const RootSystem& rs, ThetaSet support, ThetaSet theta);

struct ChamberThresholds {
  double divergence = 1e3;
  double cauchy = 1e-6;
  double chamber = default_tol;
};

struct AmbiguousClassification : Error {
  AmbiguousClassification(int root, double value);
  int root;
  double value;
};

struct ChamberLimit {
  bool converges = false;
  ThetaSet theta;
  ThetaSet divergent;
  std::map<int, double> finite_coords;
};

// h_seq holds chamber vectors as simple-root pairings <alpha_i, H_n>
ChamberLimit chamber_sequence_limit(const RootSystem& rs, ThetaSet support,
                                    const std::vector<Eigen::VectorXd>& h_seq,
                                    const ChamberThresholds& thr = {});

struct Table1Check {
  std::string row;
  RootSystem rs;
  ThetaSet printed;  // {alpha_G, alpha_G*}
  ThetaSet computed; // {alpha : (chi_G, alpha) > 0}
  bool chi_is_highest_root;
  bool verified;
};

// the ten printed rows; classical rows are checked on every rank in [lo, hi]
std::vector<RootType> table1_types();
Table1Check check_table1(RootType type, int rank);
std::vector<Table1Check> check_table1_row(RootType type, int max_rank = 8);
int table1_default_rank(RootType type);

std::string admissible_lattice_dot(const RootSystem& rs, ThetaSet support);

} // namespace anosov
