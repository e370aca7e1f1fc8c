#include "anosov/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace anosov {

std::string GroupBall::letter_name(int l) const {
  const std::string& n = generators[l / 2].name;
  if (!(l & 1))
    return n;
  if (n.size() == 1 && std::islower(static_cast<unsigned char>(n[0])))
    return std::string(1, char(std::toupper(static_cast<unsigned char>(n[0]))));
  return n + "^-1";
}

std::string GroupBall::word_of(const std::vector<int>& letters) const {
  if (letters.empty())
    return "e";
  bool single = true;
  for (const auto& g : generators)
    if (g.name.size() != 1)
      single = false;
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!single && i > 0)
      out += ' ';
    out += letter_name(letters[i]);
  }
  return out;
}

Mat GroupBall::evaluate(const std::vector<int>& letters) const {
  const int n = int(generators.front().m.rows());
  Mat m = Mat::Identity(n, n);
  for (int l : letters)
    m = m * letter_matrix(l);
  return m;
}

std::vector<int> GroupBall::inverse_word(const std::vector<int>& letters) {
  std::vector<int> out(letters.rbegin(), letters.rend());
  for (int& l : out)
    l = inverse_letter(l);
  return out;
}

Generator make_generator(const std::string& name, const Mat& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("generator " + name + " is not square");
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible())
    throw InvalidArgument("generator " + name + " is not invertible");
  return {name, m, lu.inverse()};
}

namespace {

// Matrices are bucketed by a fixed random linear functional; only keys inside the
// tolerance window need a full comparison.
class DedupIndex {
public:
  DedupIndex(int n, double tol) : tol_(tol), probe_(n, n) {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> nd;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        probe_(i, j) = nd(rng);
    probe_ /= probe_.norm();
  }

  // index of a stored matrix equal to m within tol, or -1
  int find(const Mat& m, const std::vector<BallElement>& store) const {
    const double key = (probe_.array() * m.array()).sum();
    const double nm = m.norm();
    // |key(a) - key(b)| <= |a - b| <= tol * max(|a|, |b|) <= tol * |a| / (1 - tol)
    const double w = 2.0 * tol_ * nm / (1.0 - tol_);
    for (auto it = keys_.lower_bound(key - w); it != keys_.end() && it->first <= key + w; ++it) {
      const Mat& other = store[it->second].m;
      if ((other - m).norm() <= tol_ * std::max(nm, other.norm()))
        return it->second;
    }
    return -1;
  }

  void insert(const Mat& m, int idx) { keys_.emplace((probe_.array() * m.array()).sum(), idx); }

private:
  double tol_;
  Mat probe_;
  std::multimap<double, int> keys_;
};

} // namespace

GroupBall enumerate_ball(const std::vector<Generator>& gens, int radius, double dedup_tol, int cap) {
  if (gens.empty())
    throw InvalidArgument("no generators");
  if (radius < 0)
    throw InvalidArgument("negative radius");
  if (cap < 1)
    throw InvalidArgument("cap must be positive");
  const int n = int(gens.front().m.rows());
  for (const auto& g : gens)
    if (g.m.rows() != n || g.m.cols() != n)
      throw DimensionMismatch("generators have different sizes");

  GroupBall ball;
  ball.generators = gens;
  ball.dedup_tol = dedup_tol;
  DedupIndex index(n, dedup_tol);
  ball.elements.push_back({{}, "e", Mat::Identity(n, n)});
  index.insert(ball.elements[0].m, 0);
  ball.sphere_start = {0, 1};
  const int letters = 2 * int(gens.size());

  for (int r = 1; r <= radius; ++r) {
    const int lo = ball.sphere_start[r - 1], hi = ball.sphere_start[r];
    for (int p = lo; p < hi && !ball.truncated; ++p) {
      for (int l = 0; l < letters; ++l) {
        const auto& parent = ball.elements[p];
        if (!parent.letters.empty() && l == inverse_letter(parent.letters.back()))
          continue;
        Mat m = parent.m * ball.letter_matrix(l);
        if (index.find(m, ball.elements) >= 0)
          continue;
        if (int(ball.elements.size()) >= cap) {
          ball.truncated = true;
          break;
        }
        std::vector<int> w = parent.letters;
        w.push_back(l);
        const int idx = int(ball.elements.size());
        index.insert(m, idx);
        ball.elements.push_back({w, ball.word_of(w), std::move(m)});
      }
    }
    ball.sphere_start.push_back(int(ball.elements.size()));
    ball.radius = r;
    if (ball.truncated || ball.sphere_start[r + 1] == ball.sphere_start[r])
      break;
  }
  // an exhausted finite group keeps empty spheres up to the requested radius
  while (!ball.truncated && ball.radius < radius) {
    ball.sphere_start.push_back(int(ball.elements.size()));
    ++ball.radius;
  }
  return ball;
}

GroupBall enumerate_ball_strict(const std::vector<Generator>& gens, int radius, double dedup_tol, int cap) {
  GroupBall b = enumerate_ball(gens, radius, dedup_tol, cap);
  if (b.truncated)
    throw CapExceeded("ball exceeded " + std::to_string(cap) + " elements at radius " + std::to_string(b.radius));
  return b;
}

std::string to_string(Growth g) {
  switch (g) {
  case Growth::flat: return "flat";
  case Growth::linear: return "linear";
  case Growth::logarithmic: return "logarithmic";
  }
  return "?";
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = int(x.size());
  LineFit f;
  if (n == 0)
    return f;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (int i = 0; i < n; ++i) {
    const double e = y[i] - f.slope * x[i] - f.intercept;
    f.residual += e * e;
  }
  f.residual = std::sqrt(f.residual / n);
  return f;
}

} // namespace

GrowthFit fit_growth(const std::vector<double>& radii, const std::vector<double>& values) {
  std::vector<double> x, lx, y;
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] >= 1.0) {
      x.push_back(radii[i]);
      lx.push_back(std::log(radii[i]));
      y.push_back(values[i]);
    }
  GrowthFit g;
  if (y.empty())
    return g;
  const auto lin = least_squares(x, y);
  const auto lg = least_squares(lx, y);
  g.slope = lin.slope;
  g.intercept = lin.intercept;
  g.log_slope = lg.slope;
  g.linear_residual = lin.residual;
  g.log_residual = lg.residual;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (y.size() < 2 || *hi - *lo <= 1e-9 * std::max(1.0, std::abs(*hi)))
    g.growth = Growth::flat;
  else
    g.growth = lin.residual <= lg.residual ? Growth::linear : Growth::logarithmic;
  return g;
}

DivergenceProfile divergence_profile(const GroupBall& ball, const GroupSpec& spec) {
  if (ball.elements.empty())
    throw InvalidArgument("empty ball");
  const RootSystem rs = spec.root_system();
  DivergenceProfile prof;
  for (int r = 0; r < ball.sphere_count(); ++r) {
    if (ball.sphere_begin(r) == ball.sphere_end(r))
      continue;
    RadiusGaps rg;
    rg.radius = r;
    rg.min_gap.assign(rs.rank, std::numeric_limits<double>::infinity());
    rg.argmin_word.assign(rs.rank, "");
    for (int e = ball.sphere_begin(r); e < ball.sphere_end(r); ++e) {
      const auto gaps = mu_gaps(cartan_projection(ball.elements[e].m, spec), rs);
      for (int j = 0; j < rs.rank; ++j)
        if (gaps[j] < rg.min_gap[j]) {
          rg.min_gap[j] = gaps[j];
          rg.argmin_word[j] = ball.elements[e].word;
        }
    }
    prof.per_radius.push_back(std::move(rg));
  }
  std::vector<double> radii;
  for (const auto& rg : prof.per_radius)
    radii.push_back(rg.radius);
  for (int j = 0; j < rs.rank; ++j) {
    std::vector<double> v;
    for (const auto& rg : prof.per_radius)
      v.push_back(rg.min_gap[j]);
    prof.fits.push_back(fit_growth(radii, v));
  }
  return prof;
}

std::vector<ProximalElement> proximal_elements(const GroupBall& ball, double gap_threshold, int i) {
  std::vector<ProximalElement> out;
  for (std::size_t e = 0; e < ball.elements.size(); ++e) {
    const Mat& m = ball.elements[e].m;
    const int n = int(m.rows());
    if (i < 1 || i >= n)
      throw InvalidArgument("proximality index out of range");
    Eigen::EigenSolver<Mat> es(m / m.norm());
    if (es.info() != Eigen::Success)
      continue;
    const Eigen::VectorXcd ev = es.eigenvalues();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(ev(a)) > std::abs(ev(b)); });
    const double top = std::abs(ev(order[i - 1])), next = std::abs(ev(order[i]));
    if (next == 0.0 || !(top > 0.0))
      continue;
    const double gap = std::log(top) - std::log(next);
    if (!(gap > gap_threshold))
      continue;
    if (i == 1 && std::abs(ev(order[0]).imag()) > 1e-12 * top)
      continue;
    // conjugate pairs share a modulus, so with a gap the top-i eigenspace is real
    Mat span(n, 2 * i);
    for (int k = 0; k < i; ++k) {
      span.col(2 * k) = es.eigenvectors().col(order[k]).real();
      span.col(2 * k + 1) = es.eigenvectors().col(order[k]).imag();
    }
    Frame f = Frame::span_of(span, 1e-9);
    if (f.dim() != i)
      continue;
    out.push_back({ball.elements[e].word, int(e), std::move(f), gap});
  }
  return out;
}

} // namespace anosov
