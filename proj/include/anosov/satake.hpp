#pragma once

#include <memory>
#include <string>
#include <vector>

#include "anosov/lie_algebra.hpp"
#include "anosov/roots.hpp"

namespace anosov {

// Representation functors with tau(K) orthogonal in the bases used here.
struct Functor {
  enum Kind { identity, exterior, adjoint, direct_sum } kind = identity;
  int i = 1;                  // exterior degree
  std::vector<Functor> parts; // direct_sum

  static Functor ident() { return {identity, 1, {}}; }
  static Functor ext(int i) { return {exterior, i, {}}; }
  static Functor adj() { return {adjoint, 1, {}}; }
  static Functor sum(std::vector<Functor> parts) { return {direct_sum, 1, std::move(parts)}; }
  // "identity", "ext2", "adjoint", "sum(identity,adjoint)"
  static Functor parse(const std::string& s);
  std::string str() const;
};

class Representation {
public:
  Representation(const GroupSpec& spec, Functor f);

  const GroupSpec& spec() const { return spec_; }
  const Functor& functor() const { return f_; }
  int dim() const;
  Mat operator()(const Mat& g) const;
  // rows: weights of tau restricted to the Cartan subspace, in epsilon coordinates
  const Mat& weights() const { return weights_; }
  // the weight that is largest on the interior of the positive chamber
  Vec highest_weight() const;

private:
  Mat apply(const Functor& f, const Mat& g) const;
  int dim_of(const Functor& f) const;

  GroupSpec spec_;
  Functor f_;
  std::shared_ptr<LieAlgebra> alg_;
  Mat weights_;
};

struct SatakePoint {
  Mat hermitian; // trace 1
};

SatakePoint satake_embed(const Mat& g, const Representation& tau);

struct NotDominant : Error {
  using Error::Error;
};

// {alpha : (chi, alpha) > 0}; chi over the simple roots
ThetaSet support_of(const RootSystem& rs, const std::vector<Rational>& chi);
// chi in epsilon coordinates (classical types)
ThetaSet support_of_eps(const RootSystem& rs, const Vec& chi, double tol = 1e-9);

struct SatakeOrbit {
  ThetaSet theta, theta_vee, theta_dd;
  int boundary_levi_rank = 0;
  bool is_closed = false;
  bool is_open = false;
};

std::vector<SatakeOrbit> orbit_decomposition(const RootSystem& rs, ThetaSet support);

struct SatakeLimit {
  ChamberLimit classification;
  SatakePoint limit;        // in the weight basis of tau
  int numeric_rank = 0;     // rank of the limit matrix
  int predicted_rank = 0;   // weights chi - lambda supported off theta
  bool agree = false;
};

// epsilon coordinates of a chamber vector given by its simple-root pairings
Vec chamber_mu(const RootSystem& rs, const Eigen::VectorXd& pairings);

// h_seq: simple-root pairings <alpha_i, H_n>
SatakeLimit satake_limit(const Representation& tau, ThetaSet support, const std::vector<Eigen::VectorXd>& h_seq,
                         const ChamberThresholds& thr = {});

} // namespace anosov
