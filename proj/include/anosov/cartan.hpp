#pragma once

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anosov/forms.hpp"
#include "anosov/roots.hpp"

namespace anosov {

using CMat = Eigen::MatrixXcd;

enum class GroupTag { gl, opq, onC };

std::string to_string(GroupTag t);
GroupTag parse_group_tag(const std::string& s);

//
// A concrete matrix group: GL_n(R), O(p,q) in the Witt basis, or O(n,C) realized on R^{2n}.
//
struct GroupSpec {
  GroupTag tag;
  int n = 0; // gl: n; opq: p+q; onC: complex dimension
  std::optional<WittForm> form;

  static GroupSpec gl(int n);
  static GroupSpec opq(int p, int q);
  static GroupSpec onC(int n);

  int matrix_dim() const { return tag == GroupTag::onC ? 2 * n : n; }
  int mu_dim() const;
  RootSystem root_system() const;
  std::string label() const;
};

struct MuVector {
  GroupTag group;
  Vec values;
};

struct KakTriple {
  Mat k;
  MuVector mu;
  Mat l;
};

struct GapTooSmall : Error {
  GapTooSmall(int root, double value);
  int root;
  double value;
};

struct NotInGroup : Error {
  using Error::Error;
};

// exp of the chamber element with the given mu, as a matrix of the group
Mat chamber_element(const GroupSpec& g, const Vec& mu);
Mat reconstruct(const GroupSpec& g, const KakTriple& t);

KakTriple kak(const Mat& g, const GroupSpec& spec);
// mu only, from singular values
MuVector cartan_projection(const Mat& g, const GroupSpec& spec);

std::vector<double> mu_gaps(const MuVector& mu, const RootSystem& rs);

// deviation from preserving the form, relative to |g|^2
double form_defect(const Mat& g, const GroupSpec& spec);

FlagPoint xi_theta(const Mat& g, const GroupSpec& spec, ThetaSet theta, double tol = default_tol);
// flag from a precomputed KAK triple; gaps are checked against tol
FlagPoint xi_theta(const KakTriple& t, const GroupSpec& spec, ThetaSet theta, double tol = default_tol);
// subspace dimension of the flag Xi_theta (real dimension)
int flag_dim(const GroupSpec& spec, ThetaSet theta);

Mat exterior_power(const Mat& g, int i);

// complex n x n  <->  real 2n x 2n realization in (Re, Im) coordinates
Mat realify(const CMat& z);
CMat complexify(const Mat& r);

// random elements for tests and examples
Mat random_compact(const GroupSpec& spec, std::mt19937_64& rng);
Mat random_element(const GroupSpec& spec, std::mt19937_64& rng, double spread = 1.0);

} // namespace anosov
