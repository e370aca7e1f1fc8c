#include "anosov/limits.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace anosov {

double flag_distance(const FlagPoint& a, const FlagPoint& b) { return dist_grassmann(a.frame, b.frame); }

double LimitSample::covering_radius() const {
  if (points.size() < 2)
    return points.empty() ? 1.0 : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < points.size(); ++j)
      if (i != j)
        best = std::min(best, flag_distance(points[i].flag, points[j].flag));
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

class FlagIndex {
public:
  FlagIndex(int n, int k, double tol) : tol_(tol), window_(std::sqrt(2.0 * k) * tol), probe_(n, n) {
    std::mt19937_64 rng(0xf1a9);
    std::normal_distribution<double> nd;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        probe_(i, j) = nd(rng);
    probe_ = 0.5 * (probe_ + probe_.transpose());
    probe_ /= probe_.norm();
  }

  double key(const Frame& f) const { return (probe_.array() * f.projector().array()).sum(); }

  int find(const Frame& f, const std::vector<LimitPoint>& pts) const {
    const double k = key(f);
    for (auto it = keys_.lower_bound(k - window_); it != keys_.end() && it->first <= k + window_; ++it)
      if (dist_grassmann(pts[it->second].flag.frame, f) < tol_)
        return it->second;
    return -1;
  }

  void insert(const Frame& f, int idx) { keys_.emplace(key(f), idx); }
  void erase(const Frame& f, int idx) {
    const double k = key(f);
    for (auto it = keys_.lower_bound(k); it != keys_.end() && it->first == k; ++it)
      if (it->second == idx) {
        keys_.erase(it);
        return;
      }
  }

private:
  double tol_, window_;
  Mat probe_;
  std::multimap<double, int> keys_;
};

void merge_points(LimitSample& s, FlagIndex& index, const LimitPoint& p) {
  const int hit = index.find(p.flag.frame, s.points);
  if (hit < 0) {
    index.insert(p.flag.frame, int(s.points.size()));
    s.points.push_back(p);
  } else if (p.gap > s.points[hit].gap) {
    index.erase(s.points[hit].flag.frame, hit);
    s.points[hit] = p;
    index.insert(p.flag.frame, hit);
  }
}

double theta_gap(const Mat& m, const GroupSpec& spec, const RootSystem& rs, ThetaSet theta) {
  const auto gaps = mu_gaps(cartan_projection(m, spec), rs);
  double g = std::numeric_limits<double>::infinity();
  for (int a : theta.members())
    g = std::min(g, gaps[a]);
  return g;
}

} // namespace

void merge_into(LimitSample& s, const std::vector<LimitPoint>& pts) {
  if (pts.empty())
    return;
  const int n = pts.front().flag.frame.ambient_dim(), k = pts.front().flag.frame.dim();
  FlagIndex index(n, k, s.merge_tol);
  for (std::size_t i = 0; i < s.points.size(); ++i)
    index.insert(s.points[i].flag.frame, int(i));
  for (const auto& p : pts)
    merge_points(s, index, p);
}

LimitSample sample_limit_set(const GroupBall& ball, const GroupSpec& spec, ThetaSet theta, double min_gap,
                             double merge_tol) {
  if (!(min_gap > 0.0))
    throw InvalidArgument("min_gap must be positive");
  const RootSystem rs = spec.root_system();
  LimitSample s{spec, theta, merge_tol, {}};
  FlagIndex index(spec.matrix_dim(), flag_dim(spec, theta), merge_tol);
  for (const auto& e : ball.elements) {
    const double g = theta_gap(e.m, spec, rs, theta);
    if (!(g > min_gap))
      continue;
    merge_points(s, index, {xi_theta(e.m, spec, theta, min_gap), e.word, e.letters, e.length(), g});
  }
  return s;
}

std::vector<CylinderFlag> boundary_map_free_group(const GroupBall& ball, const GroupSpec& spec, ThetaSet theta,
                                                  int depth, int tail) {
  if (depth < 1 || tail < 1)
    throw InvalidArgument("depth and tail must be positive");
  const int letters = 2 * int(ball.generators.size());
  std::vector<std::vector<int>> words = {{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int l = 0; l < letters; ++l)
        if (w.empty() || l != inverse_letter(w.back())) {
          auto x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
    words = std::move(next);
  }
  std::vector<CylinderFlag> out;
  for (const auto& w : words) {
    int c = 0;
    while (c == inverse_letter(w.back()))
      ++c;
    // no rescaling: the gap check needs the true singular values, so stop early if the norm gets huge
    Mat m = ball.evaluate(w);
    for (int t = 0; t < tail && m.norm() < 1e100; ++t)
      m = m * ball.letter_matrix(c);
    out.push_back({w, ball.word_of(w), xi_theta(m, spec, theta)});
  }
  return out;
}

double transversality_margin(const WittForm& form, const Frame& x, const Frame& y) {
  if (!form.is_complex() && x.dim() == 1 && y.dim() == 1) {
    // [basis of x^perp | y] has singular values 1 and sqrt(1 -+ cos), cos the angle between y and x^perp
    const Vec gx = form.gram() * x.columns().col(0);
    const double c = std::abs(gx.dot(y.columns().col(0))) / gx.norm();
    return std::sqrt(std::max(0.0, 1.0 - std::sqrt(std::max(0.0, 1.0 - c * c))));
  }
  const Frame xp = b_orthogonal(form, x);
  Mat cat(x.ambient_dim(), xp.dim() + y.dim());
  cat << xp.columns(), y.columns();
  Eigen::JacobiSVD<Mat> svd(cat);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

TransversalityReport transversality_report(const LimitSample& sample, const WittForm& form, double pair_floor) {
  if (sample.points.size() < 2)
    throw InvalidArgument("transversality needs at least two sample points");
  TransversalityReport r;
  r.margin = std::numeric_limits<double>::infinity();
  const auto& pts = sample.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j)
        continue;
      if (flag_distance(pts[i].flag, pts[j].flag) <= pair_floor) {
        ++r.excluded;
        continue;
      }
      ++r.pairs;
      const double m = transversality_margin(form, pts[i].flag.frame, pts[j].flag.frame);
      if (m < r.margin) {
        r.margin = m;
        r.worst_a = int(i);
        r.worst_b = int(j);
      }
    }
  return r;
}

DynamicsReport dynamics_preserving_check(const LimitSample& sample, const GroupBall& ball,
                                         const std::vector<ProximalElement>& proximals, double radius) {
  DynamicsReport rep;
  for (const auto& p : proximals) {
    DynamicsEntry e;
    e.word = p.word;
    e.distance_to_sample = std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    const Mat& g = ball.elements[p.index].m;
    for (const auto& s : sample.points) {
      if (s.flag.frame.dim() != p.attracting.dim())
        continue;
      const double d = dist_grassmann(s.flag.frame, p.attracting);
      e.distance_to_sample = std::min(e.distance_to_sample, d);
      if (d > 1e-12 && d < radius) {
        ratio += dist_grassmann(transform(g, s.flag.frame), p.attracting) / d;
        ++e.nearby;
      }
    }
    e.contraction = e.nearby ? ratio / e.nearby : 0.0;
    rep.max_distance = std::max(rep.max_distance, e.distance_to_sample);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::string limit_sample_csv(const LimitSample& s) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "index,word,length,gap,rows,cols,frame\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    const Mat& c = p.flag.frame.columns();
    os << i << ',' << p.word << ',' << p.length << ',' << p.gap << ',' << c.rows() << ',' << c.cols() << ',';
    for (int r = 0; r < c.rows(); ++r)
      for (int k = 0; k < c.cols(); ++k)
        os << (r || k ? " " : "") << c(r, k);
    os << '\n';
  }
  return os.str();
}

std::string limit_sample_svg(const LimitSample& s, int chart_i, int chart_j) {
  const int n = s.spec.matrix_dim();
  if (chart_i < 0 || chart_j < 0 || chart_i >= n || chart_j >= n)
    throw InvalidArgument("chart index out of range");
  Mat basis = Mat::Identity(n, n);
  int neg = 0;
  if (s.spec.tag == GroupTag::opq) {
    basis = diagonalizing_basis(s.spec.form->p(), s.spec.form->q());
    neg = s.spec.form->q();
  }
  const double size = 400.0, half = size / 2.0, scale = half / 1.25;
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (neg > 0)
    os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  for (const auto& p : s.points) {
    const Vec y = basis.transpose() * p.flag.frame.columns().col(0);
    // a single negative direction fixes the sign of the affine chart
    const double d = neg == 1 ? y(n - 1) : (neg > 0 ? y.tail(neg).norm() : y.norm());
    if (std::abs(d) < 1e-300)
      continue;
    const double u = y(chart_i) / d, v = y(chart_j) / d;
    if (std::abs(u) > 1.25 || std::abs(v) > 1.25)
      continue;
    os << "<circle cx=\"" << half + scale * u << "\" cy=\"" << half - scale * v << "\" r=\"1.5\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace anosov
