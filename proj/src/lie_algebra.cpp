#include "anosov/lie_algebra.hpp"

#include <cmath>
#include <regex>

#include <unsupported/Eigen/MatrixFunctions>

namespace anosov {

AlgebraTag AlgebraTag::sl_n(int n) {
  if (n < 2)
    throw InvalidArgument("sl_n needs n >= 2");
  return {sl, n, 0, 0};
}

AlgebraTag AlgebraTag::o_pq(int p, int q) {
  if (q < 1 || p < q || (p == 1 && q == 1))
    throw InvalidArgument("o(p,q) needs p >= q >= 1 and (p,q) != (1,1)");
  return {o, p + q, p, q};
}

AlgebraTag AlgebraTag::parse(const std::string& s) {
  std::smatch m;
  if (std::regex_match(s, m, std::regex(R"(sl_?(\d+))")))
    return sl_n(std::stoi(m[1]));
  if (std::regex_match(s, m, std::regex(R"(o\(?(\d+),(\d+)\)?)")))
    return o_pq(std::stoi(m[1]), std::stoi(m[2]));
  throw InvalidArgument("unknown algebra tag '" + s + "'");
}

GroupSpec AlgebraTag::group() const { return kind == sl ? GroupSpec::gl(n) : GroupSpec::opq(p, q); }

std::string AlgebraTag::str() const {
  return kind == sl ? "sl" + std::to_string(n) : "o(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

Mat expm(const Mat& x) { return x.exp(); }

namespace {

Vec unit_weight(const AlgebraTag& t, int k) {
  if (t.kind == AlgebraTag::sl) {
    Vec e = Vec::Zero(t.n);
    e(k) = 1.0;
    return e;
  }
  Vec e = Vec::Zero(t.q);
  if (k < t.q)
    e(k) = 1.0;
  else if (k >= t.p)
    e(t.n - 1 - k) = -1.0;
  return e;
}

} // namespace

LieAlgebra::LieAlgebra(AlgebraTag tag) : tag_(tag), rs_(tag.group().root_system()) {
  const int n = tag.matrix_dim();
  std::vector<Mat> span;
  if (tag.kind == AlgebraTag::sl) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          Mat e = Mat::Zero(n, n);
          e(i, j) = 1.0;
          span.push_back(e);
        }
    for (int i = 0; i + 1 < n; ++i) {
      Mat h = Mat::Zero(n, n);
      h(i, i) = 1.0;
      h(i + 1, i + 1) = -1.0;
      span.push_back(h);
    }
  } else {
    const Mat g = witt_gram(tag.p, tag.q);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Mat a = Mat::Zero(n, n);
        a(i, j) = 1.0;
        a(j, i) = -1.0;
        span.push_back(g * a);
      }
  }

  // split by restricted weight: weight of E_ij is c_i - c_j
  std::vector<Vec> wts;
  std::vector<std::vector<std::pair<int, int>>> units;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec w = unit_weight(tag, i) - unit_weight(tag, j);
      std::size_t s = 0;
      while (s < wts.size() && (wts[s] - w).norm() > 1e-12)
        ++s;
      if (s == wts.size()) {
        wts.push_back(w);
        units.emplace_back();
      }
      units[s].push_back({i, j});
    }

  Mat ecols(rs_.eps_dim(), rs_.rank);
  for (int j = 0; j < rs_.rank; ++j)
    for (int k = 0; k < rs_.eps_dim(); ++k)
      ecols(k, j) = rs_.eps_coords[j][k];
  const auto solver = ecols.colPivHouseholderQr();

  for (std::size_t s = 0; s < wts.size(); ++s) {
    Mat vecs(n * n, int(span.size()));
    for (std::size_t b = 0; b < span.size(); ++b) {
      Mat proj = Mat::Zero(n, n);
      for (auto [i, j] : units[s])
        proj(i, j) = span[b](i, j);
      vecs.col(int(b)) = Eigen::Map<const Vec>(proj.data(), n * n);
    }
    const Frame f = Frame::span_of(vecs, 1e-10);
    if (f.dim() == 0)
      continue;
    const Vec c = solver.solve(wts[s]);
    std::vector<long long> ci(rs_.rank);
    for (int j = 0; j < rs_.rank; ++j)
      ci[j] = std::llround(c(j));
    for (int b = 0; b < f.dim(); ++b) {
      basis_.push_back(Eigen::Map<const Mat>(f.columns().col(b).data(), n, n));
      weights_.push_back(wts[s]);
      coeffs_.push_back(ci);
    }
  }

  const int d = dim();
  std::vector<Mat> ads;
  for (const Mat& b : basis_)
    ads.push_back(ad(b));
  killing_.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      killing_(a, b) = (ads[a] * ads[b]).trace();
}

Vec LieAlgebra::coords(const Mat& x) const {
  Vec c(dim());
  for (int a = 0; a < dim(); ++a)
    c(a) = (basis_[a].array() * x.array()).sum();
  return c;
}

Mat LieAlgebra::element(const Vec& c) const {
  const int n = tag_.matrix_dim();
  Mat x = Mat::Zero(n, n);
  for (int a = 0; a < dim(); ++a)
    x += c(a) * basis_[a];
  return x;
}

Mat LieAlgebra::ad(const Mat& x) const {
  Mat m(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    m.col(a) = coords(x * basis_[a] - basis_[a] * x);
  return m;
}

Mat LieAlgebra::Ad(const Mat& g) const {
  const Mat gi = g.inverse();
  Mat m(dim(), dim());
  for (int a = 0; a < dim(); ++a)
    m.col(a) = coords(g * basis_[a] * gi);
  return m;
}

bool LieAlgebra::in_g0(int b) const { return weights_[b].norm() < 1e-12; }

Frame LieAlgebra::span_of_elements(const std::vector<Mat>& xs) const {
  // inputs are combinations of an orthonormal basis, so an absolute cutoff is meaningful
  std::vector<Vec> keep;
  for (const Mat& x : xs)
    if (x.norm() > 1e-10)
      keep.push_back(coords(x));
  if (keep.empty())
    return Frame::empty(dim());
  Mat c(dim(), int(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    c.col(int(i)) = keep[i];
  return Frame::span_of(c, 1e-10);
}

Frame LieAlgebra::k() const {
  std::vector<Mat> xs;
  for (const Mat& b : basis_)
    xs.push_back(0.5 * (b - b.transpose()));
  return span_of_elements(xs);
}

Frame LieAlgebra::g0() const {
  std::vector<Mat> xs;
  for (int b = 0; b < dim(); ++b)
    if (in_g0(b))
      xs.push_back(basis_[b]);
  return span_of_elements(xs);
}

Frame LieAlgebra::u_theta(ThetaSet theta) const {
  std::vector<Mat> xs;
  for (int b = 0; b < dim(); ++b) {
    if (in_g0(b))
      continue;
    const auto& c = coeffs_[b];
    bool positive = true, touches = false;
    for (int j = 0; j < rs_.rank; ++j) {
      if (c[j] < 0)
        positive = false;
      if (c[j] != 0 && theta.contains(j))
        touches = true;
    }
    if (positive && touches)
      xs.push_back(basis_[b]);
  }
  return span_of_elements(xs);
}

Frame LieAlgebra::l_theta(ThetaSet theta) const {
  std::vector<Mat> xs;
  for (int b = 0; b < dim(); ++b) {
    bool inside = true;
    for (int j : theta.members())
      if (coeffs_[b][j] != 0)
        inside = false;
    if (inside)
      xs.push_back(basis_[b]);
  }
  return span_of_elements(xs);
}

Frame LieAlgebra::k_theta(ThetaSet theta) const {
  // l_theta is stable under X -> -X^T, so its compact part is the image of the projection
  const Frame l = l_theta(theta);
  std::vector<Mat> xs;
  for (int c = 0; c < l.dim(); ++c) {
    const Mat x = element(l.columns().col(c));
    xs.push_back(0.5 * (x - x.transpose()));
  }
  return span_of_elements(xs);
}

Frame LieAlgebra::r_theta(ThetaSet theta) const { return span_sum(k_theta(theta), u_theta(theta), 1e-10); }

Signature LieAlgebra::killing_signature(const Frame& f, double tol) const {
  const Mat r = f.columns().transpose() * killing_ * f.columns();
  return signature(0.5 * (r + r.transpose()), tol, killing_.norm());
}

bool LieAlgebra::is_subalgebra(const Frame& f, double tol) const {
  const Mat& c = f.columns();
  for (int a = 0; a < f.dim(); ++a)
    for (int b = a + 1; b < f.dim(); ++b) {
      const Mat x = element(c.col(a)), y = element(c.col(b));
      const Vec br = coords(x * y - y * x);
      const Vec resid = br - c * (c.transpose() * br);
      if (resid.norm() > tol * std::max(1.0, br.norm()))
        return false;
    }
  return true;
}

bool LieAlgebra::is_nilpotent(const Vec& cs, double tol) const {
  const Mat x = element(cs);
  const double nx = x.norm();
  if (nx == 0.0)
    return true;
  Mat pw = x / nx;
  for (int i = 1; i < tag_.matrix_dim(); ++i)
    pw = pw * (x / nx);
  return pw.norm() <= tol;
}

KillingForm killing_form(const LieAlgebra& alg) { return {alg.tag(), alg.killing(), alg.k().dim()}; }

AdjointRep adjoint_rep(const Mat& g, const AlgebraTag& tag) {
  const LieAlgebra alg(tag);
  return {alg.Ad(g), killing_form(alg)};
}

} // namespace anosov
