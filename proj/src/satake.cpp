#include "anosov/satake.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace anosov {

Functor Functor::parse(const std::string& s) {
  std::smatch m;
  if (s == "identity" || s == "id")
    return ident();
  if (s == "adjoint" || s == "ad")
    return adj();
  if (std::regex_match(s, m, std::regex(R"(ext(?:erior)?_?(\d+))")))
    return ext(std::stoi(m[1]));
  if (std::regex_match(s, m, std::regex(R"(sum\((.*)\))"))) {
    std::vector<Functor> parts;
    const std::string body = m[1];
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= body.size(); ++k) {
      if (k == body.size() || (body[k] == ',' && depth == 0)) {
        parts.push_back(parse(body.substr(start, k - start)));
        start = k + 1;
      } else if (body[k] == '(') {
        ++depth;
      } else if (body[k] == ')') {
        --depth;
      }
    }
    return sum(std::move(parts));
  }
  throw InvalidArgument("unknown representation '" + s + "'");
}

std::string Functor::str() const {
  switch (kind) {
  case identity: return "identity";
  case exterior: return "ext" + std::to_string(i);
  case adjoint: return "adjoint";
  case direct_sum: {
    std::string s = "sum(";
    for (std::size_t k = 0; k < parts.size(); ++k)
      s += (k ? "," : "") + parts[k].str();
    return s + ")";
  }
  }
  return "?";
}

namespace {

bool uses_adjoint(const Functor& f) {
  if (f.kind == Functor::adjoint)
    return true;
  for (const auto& p : f.parts)
    if (uses_adjoint(p))
      return true;
  return false;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int j = 1; j <= k; ++j)
    r = r * (n - k + j) / j;
  return r;
}

} // namespace

Representation::Representation(const GroupSpec& spec, Functor f) : spec_(spec), f_(std::move(f)) {
  if (uses_adjoint(f_)) {
    if (spec.tag == GroupTag::onC)
      throw InvalidArgument("adjoint representation of the complex orthogonal group is not implemented");
    const AlgebraTag tag =
        spec.tag == GroupTag::gl ? AlgebraTag::sl_n(spec.n) : AlgebraTag::o_pq(spec.form->p(), spec.form->q());
    alg_ = std::make_shared<LieAlgebra>(tag);
  }
  const int md = spec.mu_dim();
  weights_.resize(dim(), md);
  for (int k = 0; k < md; ++k) {
    Vec e = Vec::Zero(md);
    e(k) = 1.0;
    const Mat t = (*this)(chamber_element(spec, e));
    for (int r = 0; r < t.rows(); ++r)
      weights_(r, k) = std::log(t(r, r));
    if ((t - Mat(t.diagonal().asDiagonal())).norm() > 1e-9 * t.norm())
      throw Error("representation is not diagonal on the Cartan subspace");
  }
}

int Representation::dim_of(const Functor& f) const {
  const int n = spec_.matrix_dim();
  switch (f.kind) {
  case Functor::identity: return n;
  case Functor::exterior: return int(binomial(n, f.i));
  case Functor::adjoint: return alg_->dim();
  case Functor::direct_sum: {
    int d = 0;
    for (const auto& p : f.parts)
      d += dim_of(p);
    return d;
  }
  }
  return 0;
}

int Representation::dim() const { return dim_of(f_); }

Mat Representation::apply(const Functor& f, const Mat& g) const {
  switch (f.kind) {
  case Functor::identity: return g;
  case Functor::exterior: return exterior_power(g, f.i);
  case Functor::adjoint: return alg_->Ad(g);
  case Functor::direct_sum: {
    const int d = dim_of(f);
    Mat out = Mat::Zero(d, d);
    int off = 0;
    for (const auto& p : f.parts) {
      const Mat b = apply(p, g);
      out.block(off, off, b.rows(), b.cols()) = b;
      off += int(b.rows());
    }
    return out;
  }
  }
  return {};
}

Mat Representation::operator()(const Mat& g) const {
  if (g.rows() != spec_.matrix_dim() || g.cols() != spec_.matrix_dim())
    throw DimensionMismatch("representation applied to a matrix of the wrong size");
  return apply(f_, g);
}

Vec Representation::highest_weight() const {
  const int md = spec_.mu_dim();
  Vec h(md);
  for (int k = 0; k < md; ++k)
    h(k) = double(md - k);
  if (spec_.tag == GroupTag::gl)
    h.array() -= h.mean();
  int best = 0;
  for (int r = 1; r < weights_.rows(); ++r)
    if (weights_.row(r).dot(h) > weights_.row(best).dot(h) + 1e-9)
      best = r;
  return weights_.row(best).transpose();
}

SatakePoint satake_embed(const Mat& g, const Representation& tau) {
  const Mat t = tau(g);
  Mat p = t * t.transpose();
  p = 0.5 * (p + p.transpose());
  return {p / p.trace()};
}

ThetaSet support_of(const RootSystem& rs, const std::vector<Rational>& chi) {
  if (int(chi.size()) != rs.rank)
    throw DimensionMismatch("weight length differs from rank");
  ThetaSet s;
  for (int j = 0; j < rs.rank; ++j) {
    const int sg = rs.pair(chi, j).sign();
    if (sg < 0)
      throw NotDominant("weight pairs negatively with simple root a" + std::to_string(j + 1));
    if (sg > 0)
      s = s | ThetaSet(1u << j);
  }
  return s;
}

ThetaSet support_of_eps(const RootSystem& rs, const Vec& chi, double tol) {
  if (rs.eps_dim() != chi.size())
    throw DimensionMismatch("weight has the wrong number of epsilon coordinates");
  ThetaSet s;
  for (int j = 0; j < rs.rank; ++j) {
    double v = 0.0;
    for (int k = 0; k < chi.size(); ++k)
      v += rs.eps_coords[j][k] * chi(k);
    if (v < -tol)
      throw NotDominant("weight pairs negatively with simple root a" + std::to_string(j + 1));
    if (v > tol)
      s = s | ThetaSet(1u << j);
  }
  return s;
}

std::vector<SatakeOrbit> orbit_decomposition(const RootSystem& rs, ThetaSet support) {
  std::vector<SatakeOrbit> out;
  for (ThetaSet th : tau_admissible_sets(rs, support)) {
    const auto ns = nucleus_saturation(rs, support, th);
    out.push_back({th, ns.theta_vee, ns.theta_dd, rs.rank - th.size(), th == rs.delta(), th.empty()});
  }
  return out;
}

namespace {

Mat eps_matrix(const RootSystem& rs) {
  if (rs.eps_coords.empty())
    throw InvalidArgument("numeric chamber vectors need epsilon coordinates (" + rs.label() + ")");
  Mat e(rs.rank, rs.eps_dim());
  for (int j = 0; j < rs.rank; ++j)
    for (int k = 0; k < rs.eps_dim(); ++k)
      e(j, k) = rs.eps_coords[j][k];
  return e;
}

} // namespace

Vec chamber_mu(const RootSystem& rs, const Eigen::VectorXd& pairings) {
  // minimum-norm solution: trace zero for type A
  return eps_matrix(rs).completeOrthogonalDecomposition().solve(pairings);
}

SatakeLimit satake_limit(const Representation& tau, ThetaSet support, const std::vector<Eigen::VectorXd>& h_seq,
                         const ChamberThresholds& thr) {
  const RootSystem rs = tau.spec().root_system();
  SatakeLimit out;
  out.classification = chamber_sequence_limit(rs, support, h_seq, thr);
  if (!out.classification.converges)
    throw InvalidArgument("chamber sequence has no limit");
  const Mat& wt = tau.weights();
  const Vec w = wt * chamber_mu(rs, h_seq.back());
  const double top = w.maxCoeff();

  // in the log domain: entries exp(2(w_i - top)) of the normalized point
  Vec d = Vec::Zero(w.size());
  for (int i = 0; i < w.size(); ++i)
    if (top - w(i) < thr.divergence) {
      d(i) = std::exp(2.0 * (w(i) - top));
      ++out.numeric_rank;
    }
  out.limit.hermitian = Mat(d.asDiagonal()) / d.sum();

  const Vec chi = tau.highest_weight();
  const auto solver = eps_matrix(rs).transpose().completeOrthogonalDecomposition();
  for (int i = 0; i < wt.rows(); ++i) {
    const Vec c = solver.solve(chi - wt.row(i).transpose());
    bool off_theta = true;
    for (int a : out.classification.theta.members())
      if (std::abs(c(a)) > 1e-6)
        off_theta = false;
    if (off_theta)
      ++out.predicted_rank;
  }
  out.agree = out.numeric_rank == out.predicted_rank;
  return out;
}

} // namespace anosov
