#pragma once

#include <string>
#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/forms.hpp"
#include "anosov/roots.hpp"

namespace anosov {

struct AlgebraTag {
  enum Kind { sl, o } kind = sl;
  int n = 2;
  int p = 0, q = 0;

  static AlgebraTag sl_n(int n);
  static AlgebraTag o_pq(int p, int q);
  // "sl3", "o(2,1)", "o2,1"
  static AlgebraTag parse(const std::string& s);

  int matrix_dim() const { return kind == sl ? n : p + q; }
  GroupSpec group() const;
  std::string str() const;
};

//
// Matrix Lie algebra with a Frobenius-orthonormal basis of restricted weight vectors.
// Coordinates of X are the Frobenius products with the basis, so Ad(K) acts orthogonally.
//
class LieAlgebra {
public:
  explicit LieAlgebra(AlgebraTag tag);

  const AlgebraTag& tag() const { return tag_; }
  int dim() const { return int(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }
  const RootSystem& root_system() const { return rs_; }

  Vec coords(const Mat& x) const;
  Mat element(const Vec& c) const;
  Mat ad(const Mat& x) const;
  Mat Ad(const Mat& g) const;
  Mat killing() const { return killing_; }
  // signature of the Killing form restricted to a subspace, tolerance relative to |kappa|
  Signature killing_signature(const Frame& f, double tol) const;

  // restricted weight of basis vector b, in epsilon coordinates, and over the simple roots
  const Vec& weight(int b) const { return weights_[b]; }
  const std::vector<long long>& root_coeffs(int b) const { return coeffs_[b]; }
  bool in_g0(int b) const;

  Frame k() const;
  Frame g0() const;
  Frame u_theta(ThetaSet theta) const;
  Frame l_theta(ThetaSet theta) const;
  Frame k_theta(ThetaSet theta) const;
  Frame r_theta(ThetaSet theta) const;
  Frame span_of_elements(const std::vector<Mat>& xs) const;

  bool is_subalgebra(const Frame& f, double tol) const;
  // (ad X) or X nilpotent as a matrix, relative tolerance
  bool is_nilpotent(const Vec& coords, double tol) const;

private:
  AlgebraTag tag_;
  RootSystem rs_;
  std::vector<Mat> basis_;
  std::vector<Vec> weights_;
  std::vector<std::vector<long long>> coeffs_;
  Mat killing_;
};

struct KillingForm {
  AlgebraTag tag;
  Mat gram;
  int dim_k;
};

struct AdjointRep {
  Mat Ad;
  KillingForm kappa;
};

KillingForm killing_form(const LieAlgebra& alg);
AdjointRep adjoint_rep(const Mat& g, const AlgebraTag& tag);

// matrix exponential (Eigen MatrixFunctions)
Mat expm(const Mat& x);

} // namespace anosov
