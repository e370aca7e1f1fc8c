#include "anosov/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anosov {

namespace {

double top_eigenvalue(const Mat& m) {
  if (m.size() == 0)
    return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Mat gaussian(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i)
      m(i, j) = nd(rng);
  return m;
}

// real lines throughout: W, L and the core are single vectors
bool line_case(const LimitSample& s, const WittForm& form) {
  return !form.is_complex() && form.q() == 1 && (s.points.empty() || s.points.front().flag.frame.dim() == 1);
}

double line_dist(const Vec& u, const Vec& v) {
  // u, v unit
  const double c = u.dot(v);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

} // namespace

XbarResult in_Xbar(const Frame& w, const WittForm& form, double tol) {
  if (w.ambient_dim() != form.ambient_dim())
    throw DimensionMismatch("in_Xbar: frame and form sizes differ");
  if (w.dim() != form.q())
    throw DimensionMismatch("in_Xbar: frame must have q columns");
  const auto rk = restrict_kernel(form, w, tol);
  const double top = top_eigenvalue(rk.restricted);
  if (top > tol * form.gram().norm())
    return Rejection{"positive direction", top};
  return CompactPoint{w, rk.kernel.dim(), top};
}

XbarResult complex_in_Xbar(const Frame& w, const WittForm& bc, double tol) {
  if (!bc.is_complex())
    throw InvalidArgument("complex_in_Xbar needs a complex form");
  if (w.ambient_dim() != bc.ambient_dim())
    throw DimensionMismatch("complex_in_Xbar: frame and form sizes differ");
  if (w.dim() != bc.n())
    throw DimensionMismatch("complex_in_Xbar: frame must have n real columns");
  const double scale = bc.gram().norm();
  const Mat& c = w.columns();
  const Mat im = c.transpose() * bc.imag_gram() * c;
  const double imv = im.cwiseAbs().maxCoeff();
  if (imv > tol * scale)
    return Rejection{"imaginary part does not vanish", imv};
  const auto rk = restrict_kernel(bc, w, tol);
  const double top = top_eigenvalue(rk.restricted);
  if (top > tol * scale)
    return Rejection{"positive direction", top};
  if (rk.kernel.dim() > 0) {
    const Frame jk = apply_complex_structure(bc, rk.kernel);
    const double d = dist_grassmann(jk, rk.kernel);
    if (d > std::sqrt(tol))
      return Rejection{"kernel is not a complex subspace", d};
  }
  return CompactPoint{w, rk.kernel.dim(), top};
}

bool outside_theorem_hypotheses(const WittForm& form, int i) {
  const int p = form.p(), q = form.q();
  return (p == 1 && q == 1) || (p == 2 && q == 2) || (p == q && i == p - 1);
}

std::string to_string(BadSetVariant v) { return v == BadSetVariant::intersect ? "intersect" : "contain"; }

double incidence_distance(const Frame& w, const Frame& l, BadSetVariant v) {
  const auto s = principal_sines(l, w);
  if (s.empty())
    return v == BadSetVariant::intersect ? 1.0 : 0.0;
  return v == BadSetVariant::intersect ? s.front() : s.back();
}

BadSetResult in_bad_set(const Frame& w, const LimitSample& sample, BadSetVariant v, double tol,
                        double covering_radius) {
  BadSetResult r;
  r.covering_radius = covering_radius;
  r.distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    const double d = incidence_distance(w, sample.points[k].flag.frame, v);
    if (d < r.distance)
      r.distance = d;
    if (d < tol && !r.hit) {
      r.hit = true;
      r.witness = int(k);
    }
  }
  return r;
}

BadSetResult in_bad_set(const CompactPoint& w, const LimitSample& sample, BadSetVariant v, double tol) {
  return in_bad_set(w.frame, sample, v, tol, sample.covering_radius());
}

std::vector<CompactPoint> sample_domain(const WittForm& form, int count, std::mt19937_64& rng, bool interior_only) {
  std::vector<CompactPoint> out;
  const int n = form.ambient_dim(), q = form.is_complex() ? form.n() : form.q();
  for (long tries = 0; int(out.size()) < count; ++tries) {
    if (tries > 1000L * count + 100000)
      throw Error("sample_domain: rejection sampling does not accept");
    const Frame f = Frame::orthonormalize(gaussian(n, q, rng));
    const XbarResult r = form.is_complex() ? complex_in_Xbar(f, form) : in_Xbar(f, form);
    if (const auto* p = std::get_if<CompactPoint>(&r))
      if (!interior_only || p->stratum == 0)
        out.push_back(*p);
  }
  return out;
}

std::vector<CompactPoint> sample_domain_away(const WittForm& form, const LimitSample& sample, int count,
                                             double margin, std::mt19937_64& rng, int max_attempts) {
  std::vector<CompactPoint> out;
  for (int a = 0; a < max_attempts && int(out.size()) < count; ++a) {
    auto pts = sample_domain(form, 1, rng);
    if (in_bad_set(pts[0].frame, sample, BadSetVariant::intersect, 0.0, 0.0).distance >= margin)
      out.push_back(std::move(pts[0]));
  }
  return out;
}

RelationScan dynamical_relation_scan(const std::vector<CompactPoint>& points, const GroupBall& ball,
                                     const LimitSample& sample, int min_len, double accumulation_tol) {
  RelationScan scan;
  if (points.empty() || ball.elements.empty() || sample.points.empty())
    return scan;
  const int from = std::max(1, min_len);
  const GroupSpec& spec = sample.spec;
  const bool lines = spec.form && line_case(sample, *spec.form) && points.front().frame.dim() == 1;
  std::vector<Vec> flags;
  if (lines)
    for (const auto& s : sample.points)
      flags.push_back(s.flag.frame.columns().col(0));
  for (const auto& e : ball.elements) {
    if (e.length() < from)
      continue;
    const double mu_norm = cartan_projection(e.m, spec).values.norm();
    for (std::size_t p = 0; p < points.size(); ++p) {
      double res = std::numeric_limits<double>::infinity();
      if (lines) {
        Vec x = e.m * points[p].frame.columns().col(0);
        x.normalize();
        for (const Vec& f : flags)
          res = std::min(res, line_dist(x, f));
      } else {
        const Frame gw = Frame::orthonormalize(e.m * points[p].frame.columns());
        res = in_bad_set(gw, sample, BadSetVariant::intersect, 0.0, 0.0).distance;
      }
      ++scan.pairs;
      scan.max_residual = std::max(scan.max_residual, res);
      if (res > accumulation_tol)
        scan.flags.push_back({int(p), e.word, res, mu_norm});
    }
  }
  return scan;
}

std::vector<std::vector<int>> ray_of(const std::vector<int>& letters) {
  std::vector<std::vector<int>> out;
  for (std::size_t n = 0; n <= letters.size(); ++n)
    out.emplace_back(letters.begin(), letters.begin() + long(n));
  return out;
}

namespace {

Frame perturb(const Frame& f, double s, std::mt19937_64& rng) {
  if (s == 0.0)
    return f;
  const int n = f.ambient_dim(), k = f.dim();
  Mat e = gaussian(n, k, rng);
  e -= f.columns() * (f.columns().transpose() * e);
  e /= e.norm();
  return Frame::orthonormalize(f.columns() + s * e);
}

// a q-plane containing l
Frame completion(const Frame& l, int q, std::mt19937_64& rng) {
  const int n = l.ambient_dim(), i = l.dim();
  if (i == q)
    return l;
  Mat e = gaussian(n, q - i, rng);
  e -= l.columns() * (l.columns().transpose() * e);
  Mat c(n, q);
  c << l.columns(), e;
  return Frame::orthonormalize(c);
}

struct GridPair {
  Frame w, l;
  double d;
};

std::vector<GridPair> expansion_grid(const Frame& flag, int q, double r, std::mt19937_64& rng) {
  std::vector<GridPair> grid;
  std::vector<Frame> ls = {flag};
  for (double s : {0.5 * r, 0.9 * r})
    for (int t = 0; t < 4; ++t)
      ls.push_back(perturb(flag, s, rng));
  for (const Frame& l : ls) {
    const Frame w0 = completion(l, q, rng);
    for (double s : {0.9 * r, r / 3.0, r / 10.0})
      for (int t = 0; t < 3; ++t) {
        Frame w = perturb(w0, s, rng);
        const double d = incidence_distance(w, l, BadSetVariant::contain);
        if (d > 0.0)
          grid.push_back({std::move(w), l, d});
      }
  }
  return grid;
}

} // namespace

ExpansionCertificate expansion_certificate(const FlagPoint& flag, const std::vector<std::vector<int>>& ray,
                                           const GroupBall& ball, const WittForm& form, double c,
                                           std::uint64_t seed) {
  if (!(c > 0.0))
    throw InvalidArgument("expansion factor must be positive");
  const int q = form.is_complex() ? form.n() : form.q();
  if (flag.frame.dim() > q)
    throw InvalidArgument("flag is larger than the planes of the domain");
  static const double radii[] = {0.1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<std::vector<GridPair>> grids;
  std::mt19937_64 rng(seed);
  for (double r : radii)
    grids.push_back(expansion_grid(flag.frame, q, r, rng));

  ExpansionCertificate cert;
  for (std::size_t n = 0; n < ray.size(); ++n) {
    const Mat g = ball.evaluate(GroupBall::inverse_word(ray[n]));
    for (std::size_t k = 0; k < grids.size(); ++k) {
      double factor = std::numeric_limits<double>::infinity();
      for (const auto& p : grids[k]) {
        const double d2 = incidence_distance(transform(g, p.w), transform(g, p.l), BadSetVariant::contain);
        factor = std::min(factor, d2 / p.d);
      }
      cert.best_factor = std::max(cert.best_factor, factor);
      if (factor >= c * (1.0 - 1e-9)) {
        cert.success = true;
        cert.n = int(n);
        cert.word = ball.word_of(ray[n]);
        cert.radius = radii[k];
        cert.factor = factor;
        return cert;
      }
    }
  }
  return cert;
}

std::vector<CoveragePoint> orbit_coverage(const std::vector<CompactPoint>& core, const GroupBall& ball,
                                          const LimitSample& sample, const WittForm& form,
                                          const std::vector<double>& margins, int trials, double d_core,
                                          std::mt19937_64& rng) {
  std::vector<CoveragePoint> curve;
  const bool lines = line_case(sample, form) && (core.empty() || core.front().frame.dim() == 1);
  std::vector<Vec> core_vecs;
  if (lines)
    for (const auto& k : core)
      core_vecs.push_back(k.frame.columns().col(0));
  for (double m : margins) {
    CoveragePoint cp;
    cp.margin = m;
    const auto pts = sample_domain_away(form, sample, trials, m, rng);
    cp.sampled = int(pts.size());
    for (const auto& w : pts) {
      bool hit = false;
      for (std::size_t e = 0; e < ball.elements.size() && !hit; ++e) {
        if (lines) {
          Vec x = ball.elements[e].m * w.frame.columns().col(0);
          x.normalize();
          for (const Vec& k : core_vecs)
            if (line_dist(x, k) < d_core) {
              hit = true;
              break;
            }
        } else {
          const Frame gw = transform(ball.elements[e].m, w.frame);
          for (const auto& k : core)
            if (dist_grassmann(gw, k.frame) < d_core) {
              hit = true;
              break;
            }
        }
      }
      if (hit)
        ++cp.covered;
    }
    curve.push_back(cp);
  }
  return curve;
}

SubalgebraPoint subalgebra_point(const LieAlgebra& alg, ThetaSet theta) {
  const AlgebraTag& t = alg.tag();
  if ((t.kind == AlgebraTag::sl && t.n > 4) || (t.kind == AlgebraTag::o && t.p + t.q > 5))
    throw InvalidArgument("subalgebra points are supported for sl_n (n <= 4) and o(p,q) (p+q <= 5), not " + t.str());
  if (!theta.subset_of(alg.root_system().delta()))
    throw InvalidArgument("theta is not a set of simple roots of " + t.str());
  return {t, theta, alg.r_theta(theta)};
}

SubalgebraPoint subalgebra_point(const AlgebraTag& tag, ThetaSet theta) {
  return subalgebra_point(LieAlgebra(tag), theta);
}

Frame adjoint_translate(const LieAlgebra& alg, const Mat& g, const Frame& w) {
  return Frame::orthonormalize(alg.Ad(g) * w.columns());
}

bool nilpotent_incidence_check(const LieAlgebra& alg, const Frame& w, const Frame& l, double tol) {
  for (int c = 0; c < l.dim(); ++c)
    if (!alg.is_nilpotent(l.columns().col(c), 1e-8))
      throw InvalidArgument("nilpotent_incidence_check: L is not spanned by nilpotent elements");
  if (l.dim() == 0)
    return true;
  return !intersects(l, w, tol) || contains(l, w, tol);
}

} // namespace anosov
