#include "anosov/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace anosov {

using cplx = std::complex<double>;

std::string to_string(GroupTag t) {
  switch (t) {
  case GroupTag::gl: return "gl";
  case GroupTag::opq: return "opq";
  case GroupTag::onC: return "onC";
  }
  return "?";
}

GroupTag parse_group_tag(const std::string& s) {
  if (s == "gl")
    return GroupTag::gl;
  if (s == "opq")
    return GroupTag::opq;
  if (s == "onC")
    return GroupTag::onC;
  throw InvalidArgument("unknown group tag '" + s + "'");
}

GroupSpec GroupSpec::gl(int n) {
  if (n < 1)
    throw InvalidArgument("gl needs n >= 1");
  return {GroupTag::gl, n, std::nullopt};
}

GroupSpec GroupSpec::opq(int p, int q) { return {GroupTag::opq, p + q, make_witt_form(p, q)}; }

GroupSpec GroupSpec::onC(int n) {
  if (n < 2)
    throw InvalidArgument("onC needs n >= 2");
  return {GroupTag::onC, n, make_witt_form(n - n / 2, n / 2, Field::complex)};
}

int GroupSpec::mu_dim() const {
  switch (tag) {
  case GroupTag::gl: return n;
  case GroupTag::opq: return form->q();
  case GroupTag::onC: return n / 2;
  }
  return 0;
}

RootSystem GroupSpec::root_system() const {
  switch (tag) {
  case GroupTag::gl:
    if (n < 2)
      throw InvalidArgument("gl_1 has no restricted roots");
    return build_root_system(RootType::A, n - 1);
  case GroupTag::opq: {
    const int p = form->p(), q = form->q();
    if (q == 0 || (p == q && q < 2))
      throw InvalidArgument("o(" + std::to_string(p) + "," + std::to_string(q) + ") has no simple restricted root system");
    return build_root_system(p > q ? RootType::B : RootType::D, q);
  }
  case GroupTag::onC: {
    const int m = n / 2;
    if (n % 2 == 0 && m < 2)
      throw InvalidArgument("o(2,C) has no restricted roots");
    return build_root_system(n % 2 ? RootType::B : RootType::D, m);
  }
  }
  throw InvalidArgument("bad group");
}

std::string GroupSpec::label() const {
  switch (tag) {
  case GroupTag::gl: return "gl" + std::to_string(n);
  case GroupTag::opq: return "o(" + std::to_string(form->p()) + "," + std::to_string(form->q()) + ")";
  case GroupTag::onC: return "o(" + std::to_string(n) + ",C)";
  }
  return "?";
}

GapTooSmall::GapTooSmall(int r, double v)
    : Error("gap at a" + std::to_string(r + 1) + " is " + std::to_string(v) + ", too small for a flag"),
      root(r), value(v) {}

Mat realify(const CMat& z) {
  const int n = int(z.rows()), m = int(z.cols());
  Mat r(2 * n, 2 * m);
  r.topLeftCorner(n, m) = z.real();
  r.topRightCorner(n, m) = -z.imag();
  r.bottomLeftCorner(n, m) = z.imag();
  r.bottomRightCorner(n, m) = z.real();
  return r;
}

CMat complexify(const Mat& r) {
  const int n = int(r.rows()) / 2, m = int(r.cols()) / 2;
  CMat z(n, m);
  z.real() = r.topLeftCorner(n, m);
  z.imag() = r.bottomLeftCorner(n, m);
  return z;
}

namespace {

// unitary basis change to the standard form of O(n,C): columns f_1..f_m, [e_mid], h_1..h_m
CMat complex_diagonalizing_basis(int n) {
  const int m = n / 2;
  const double s = 1.0 / std::sqrt(2.0);
  CMat c = CMat::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    c(i, i) = s;
    c(n - 1 - i, i) = s;
    c(i, n - m + i) = cplx(0, s);
    c(n - 1 - i, n - m + i) = cplx(0, -s);
  }
  if (n % 2)
    c(m, m) = 1.0;
  return c;
}

Vec witt_diagonal(int p, int q, const Vec& lambda) {
  const int n = p + q;
  Vec d = Vec::Zero(n);
  for (int i = 0; i < q; ++i) {
    d(i) = lambda(i);
    d(n - 1 - i) = -lambda(i);
  }
  return d;
}

void require_square(const Mat& g, int n) {
  if (g.rows() != n || g.cols() != n)
    throw DimensionMismatch("matrix is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                            ", expected " + std::to_string(n) + "x" + std::to_string(n));
}

void check_membership(const Mat& g, const GroupSpec& spec) {
  require_square(g, spec.matrix_dim());
  if (!g.allFinite())
    throw NotInGroup("matrix has non-finite entries");
  Eigen::JacobiSVD<Mat> svd(g);
  const Vec& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-14 * sv(0))
    throw NotInGroup("matrix is not invertible");
  if (spec.tag != GroupTag::gl && form_defect(g, spec) > 1e-8)
    throw NotInGroup("matrix does not preserve the form of " + spec.label());
}

// make the first significant entry of each column of k positive; flip rows of l to match
void canonical_signs(Mat& k, Mat& l) {
  for (int j = 0; j < k.cols(); ++j) {
    const double scale = k.col(j).cwiseAbs().maxCoeff();
    for (int i = 0; i < k.rows(); ++i) {
      if (std::abs(k(i, j)) > 1e-12 * scale) {
        if (k(i, j) < 0) {
          k.col(j) *= -1;
          l.row(j) *= -1;
        }
        break;
      }
    }
  }
}

KakTriple kak_gl(const Mat& g) {
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat k = svd.matrixU();
  Mat l = svd.matrixV().transpose();
  canonical_signs(k, l);
  Vec mu = svd.singularValues().array().log().matrix();
  return {k, {GroupTag::gl, mu}, l};
}

KakTriple kak_opq(const Mat& g, const WittForm& form) {
  const int p = form.p(), q = form.q(), n = p + q;
  const Mat c = diagonalizing_basis(p, q);
  const Mat gs = c.transpose() * g * c;
  // polar decomposition gs = k0 * exp(X), X in the symmetric part of o(p,q)
  Eigen::JacobiSVD<Mat> svd(gs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& u = svd.matrixU();
  const Mat& v = svd.matrixV();
  const Mat k0 = u * v.transpose();
  const Mat x = v * svd.singularValues().array().log().matrix().asDiagonal() * v.transpose();
  const Mat y = 0.5 * (x.topRightCorner(p, q) + x.bottomLeftCorner(q, p).transpose());
  Eigen::JacobiSVD<Mat> ys(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat up = ys.matrixU();
  Mat vq = ys.matrixV();
  for (int i = 0; i < q; ++i) {
    const double scale = up.col(i).cwiseAbs().maxCoeff();
    for (int r = 0; r < p; ++r)
      if (std::abs(up(r, i)) > 1e-12 * scale) {
        if (up(r, i) < 0) {
          up.col(i) *= -1;
          vq.col(i) *= -1;
        }
        break;
      }
  }
  Mat m = Mat::Zero(n, n);
  m.topLeftCorner(p, p) = up;
  m.bottomRightCorner(q, q) = vq;
  const Mat k = c * (k0 * m) * c.transpose();
  const Mat l = c * m.transpose() * c.transpose();
  Vec mu = ys.singularValues().head(q);
  return {k, {GroupTag::opq, mu}, l};
}

KakTriple kak_onC(const Mat& g, int n) {
  const int m = n / 2;
  const CMat z = complexify(g);
  const CMat cu = complex_diagonalizing_basis(n);
  const CMat gs = cu.adjoint() * z * cu;
  Eigen::JacobiSVD<CMat> svd(gs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMat& u = svd.matrixU();
  const CMat& v = svd.matrixV();
  const Mat k0 = (u * v.adjoint()).real();
  const CMat logp = v * svd.singularValues().array().log().matrix().cast<cplx>().asDiagonal() * v.adjoint();
  Mat zr = logp.imag();
  zr = 0.5 * (zr - zr.transpose());
  // bring the antisymmetric generator to 2x2 blocks
  Eigen::RealSchur<Mat> schur(zr);
  const Mat& t = schur.matrixT();
  const Mat& qs = schur.matrixU();
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  struct Block {
    double lambda;
    Vec a, b;
  };
  std::vector<Block> blocks;
  std::vector<Vec> zeros;
  for (int i = 0; i < n;) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-14 * scale) {
      double lam = t(i, i + 1);
      Vec a = qs.col(i), b = qs.col(i + 1);
      if (lam < 0) {
        std::swap(a, b);
        lam = -lam;
      }
      blocks.push_back({lam, a, b});
      i += 2;
    } else {
      zeros.push_back(qs.col(i));
      i += 1;
    }
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.lambda > y.lambda; });
  std::size_t zi = 0;
  while (int(blocks.size()) < m) {
    blocks.push_back({0.0, zeros.at(zi), zeros.at(zi + 1)});
    zi += 2;
  }
  Mat qm(n, n);
  Vec mu(m);
  for (int i = 0; i < m; ++i) {
    qm.col(i) = blocks[i].a;
    qm.col(n - m + i) = blocks[i].b;
    mu(i) = blocks[i].lambda;
  }
  if (n % 2)
    qm.col(m) = zeros.at(zi);
  const CMat kc = cu * (k0 * qm).cast<cplx>() * cu.adjoint();
  const CMat lc = cu * qm.transpose().cast<cplx>() * cu.adjoint();
  return {realify(kc), {GroupTag::onC, mu}, realify(lc)};
}

} // namespace

double form_defect(const Mat& g, const GroupSpec& spec) {
  const double s = std::max(1.0, g.squaredNorm());
  switch (spec.tag) {
  case GroupTag::gl: return 0.0;
  case GroupTag::opq: {
    const Mat& b = spec.form->gram();
    return (g.transpose() * b * g - b).norm() / s;
  }
  case GroupTag::onC: {
    const Mat back = realify(complexify(g));
    const CMat z = complexify(g);
    const CMat b = spec.form->gram().cast<cplx>();
    return std::max((g - back).norm(), (z.transpose() * b * z - b).norm()) / s;
  }
  }
  return 0.0;
}

Mat chamber_element(const GroupSpec& spec, const Vec& mu) {
  if (mu.size() != spec.mu_dim())
    throw DimensionMismatch("mu has the wrong length for " + spec.label());
  switch (spec.tag) {
  case GroupTag::gl: return mu.array().exp().matrix().asDiagonal();
  case GroupTag::opq:
    return witt_diagonal(spec.form->p(), spec.form->q(), mu).array().exp().matrix().asDiagonal();
  case GroupTag::onC: {
    const int n = spec.n;
    const Vec d = witt_diagonal(n - n / 2, n / 2, mu).array().exp().matrix();
    Mat r = Mat::Zero(2 * n, 2 * n);
    r.topLeftCorner(n, n) = d.asDiagonal();
    r.bottomRightCorner(n, n) = d.asDiagonal();
    return r;
  }
  }
  return {};
}

Mat reconstruct(const GroupSpec& spec, const KakTriple& t) { return t.k * chamber_element(spec, t.mu.values) * t.l; }

KakTriple kak(const Mat& g, const GroupSpec& spec) {
  check_membership(g, spec);
  switch (spec.tag) {
  case GroupTag::gl: return kak_gl(g);
  case GroupTag::opq: return kak_opq(g, *spec.form);
  case GroupTag::onC: return kak_onC(g, spec.n);
  }
  throw InvalidArgument("bad group");
}

MuVector cartan_projection(const Mat& g, const GroupSpec& spec) {
  require_square(g, spec.matrix_dim());
  Eigen::JacobiSVD<Mat> svd(g);
  const Vec ls = svd.singularValues().array().log().matrix();
  switch (spec.tag) {
  case GroupTag::gl: return {GroupTag::gl, ls};
  case GroupTag::opq: return {GroupTag::opq, ls.head(spec.form->q()).cwiseMax(0.0)};
  case GroupTag::onC: {
    // every complex singular value appears twice in the realization
    const int m = spec.n / 2;
    Vec mu(m);
    for (int i = 0; i < m; ++i)
      mu(i) = std::max(0.0, 0.5 * (ls(2 * i) + ls(2 * i + 1)));
    return {GroupTag::onC, mu};
  }
  }
  return {};
}

std::vector<double> mu_gaps(const MuVector& mu, const RootSystem& rs) {
  if (rs.eps_dim() != mu.values.size())
    throw DimensionMismatch("root system " + rs.label() + " does not match mu of length " +
                            std::to_string(mu.values.size()));
  std::vector<double> gaps(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    double s = 0.0;
    for (int k = 0; k < mu.values.size(); ++k)
      s += rs.eps_coords[j][k] * mu.values(k);
    gaps[j] = s;
  }
  return gaps;
}

namespace {

// column indices (of k, in complex or real dimension) spanning Xi_theta
std::vector<int> flag_columns(const GroupSpec& spec, ThetaSet theta) {
  if (theta.empty())
    throw InvalidArgument("xi_theta needs a nonempty theta");
  const RootSystem rs = spec.root_system();
  const auto mem = theta.members();
  auto first = [](int count) {
    std::vector<int> c(count);
    std::iota(c.begin(), c.end(), 0);
    return c;
  };
  if (spec.tag == GroupTag::gl || rs.type == RootType::B) {
    if (mem.size() != 1)
      throw InvalidArgument("numeric flags are implemented for theta = {a_i} only");
    return first(mem[0] + 1);
  }
  // type D: O(q,q) or O(2m,C)
  const int r = rs.rank, dim = spec.tag == GroupTag::onC ? spec.n : spec.form->n();
  if (mem.size() == 1 && mem[0] < r - 2)
    return first(mem[0] + 1);
  if (theta == ThetaSet::of({r - 1, r}))
    return first(r - 1);
  if (mem.size() == 1 && mem[0] == r - 1)
    return first(r);
  if (mem.size() == 1 && mem[0] == r - 2) {
    auto c = first(r - 1);
    c.push_back(dim - r);
    return c;
  }
  throw InvalidArgument("numeric flags are not implemented for theta " + theta.str());
}

} // namespace

int flag_dim(const GroupSpec& spec, ThetaSet theta) {
  const int c = int(flag_columns(spec, theta).size());
  return spec.tag == GroupTag::onC ? 2 * c : c;
}

FlagPoint xi_theta(const KakTriple& t, const GroupSpec& spec, ThetaSet theta, double tol) {
  const RootSystem rs = spec.root_system();
  const auto gaps = mu_gaps(t.mu, rs);
  for (int a : theta.members())
    if (!(gaps[a] > tol))
      throw GapTooSmall(a, gaps[a]);
  const auto cols = flag_columns(spec, theta);
  const int c = int(cols.size());
  if (spec.tag == GroupTag::onC) {
    Mat f(2 * spec.n, 2 * c);
    for (int j = 0; j < c; ++j) {
      f.col(j) = t.k.col(cols[j]);
      f.col(c + j) = t.k.col(spec.n + cols[j]);
    }
    return {Frame::orthonormalize(f), spec.form, c};
  }
  Mat f(spec.n, c);
  for (int j = 0; j < c; ++j)
    f.col(j) = t.k.col(cols[j]);
  return {Frame::orthonormalize(f), spec.form, c};
}

FlagPoint xi_theta(const Mat& g, const GroupSpec& spec, ThetaSet theta, double tol) {
  const auto cols = flag_columns(spec, theta);
  const int c = int(cols.size());
  if (cols.back() != c - 1)
    return xi_theta(kak(g, spec), spec, theta, tol);
  // leading columns of k are the top left singular vectors; this stays accurate when the
  // small singular values of a long word are lost to rounding
  require_square(g, spec.matrix_dim());
  if (!g.allFinite())
    throw NotInGroup("matrix has non-finite entries");
  const auto gaps = mu_gaps(cartan_projection(g, spec), spec.root_system());
  for (int a : theta.members())
    if (!(gaps[a] > tol))
      throw GapTooSmall(a, gaps[a]);
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeThinU);
  const int d = spec.tag == GroupTag::onC ? 2 * c : c;
  return {Frame::orthonormalize(svd.matrixU().leftCols(d)), spec.form, c};
}

Mat exterior_power(const Mat& g, int i) {
  const int n = int(g.rows());
  if (g.cols() != n)
    throw DimensionMismatch("exterior power of a non-square matrix");
  if (i < 1 || i > n)
    throw InvalidArgument("exterior power degree out of range");
  // lexicographic i-subsets
  std::vector<std::vector<int>> subsets;
  std::vector<int> s(i);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    subsets.push_back(s);
    int k = i - 1;
    while (k >= 0 && s[k] == n - i + k)
      --k;
    if (k < 0)
      break;
    ++s[k];
    for (int j = k + 1; j < i; ++j)
      s[j] = s[j - 1] + 1;
  }
  const int d = int(subsets.size());
  Mat out(d, d);
  Mat sub(i, i);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      for (int a = 0; a < i; ++a)
        for (int b = 0; b < i; ++b)
          sub(a, b) = g(subsets[r][a], subsets[c][b]);
      out(r, c) = sub.determinant();
    }
  return out;
}

namespace {

Mat haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = nd(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0)
      q.col(j) *= -1;
  return q;
}

} // namespace

Mat random_compact(const GroupSpec& spec, std::mt19937_64& rng) {
  switch (spec.tag) {
  case GroupTag::gl: return haar_orthogonal(spec.n, rng);
  case GroupTag::opq: {
    const int p = spec.form->p(), q = spec.form->q();
    Mat k = Mat::Zero(p + q, p + q);
    k.topLeftCorner(p, p) = haar_orthogonal(p, rng);
    if (q > 0)
      k.bottomRightCorner(q, q) = haar_orthogonal(q, rng);
    const Mat c = diagonalizing_basis(p, q);
    return c * k * c.transpose();
  }
  case GroupTag::onC: {
    const CMat cu = complex_diagonalizing_basis(spec.n);
    const CMat k = cu * haar_orthogonal(spec.n, rng).cast<cplx>() * cu.adjoint();
    return realify(k);
  }
  }
  return {};
}

Mat random_element(const GroupSpec& spec, std::mt19937_64& rng, double spread) {
  std::normal_distribution<double> nd(0.0, spread);
  Vec mu(spec.mu_dim());
  for (int i = 0; i < mu.size(); ++i)
    mu(i) = spec.tag == GroupTag::gl ? nd(rng) : std::abs(nd(rng));
  std::sort(mu.data(), mu.data() + mu.size(), std::greater<double>());
  return random_compact(spec, rng) * chamber_element(spec, mu) * random_compact(spec, rng);
}

} // namespace anosov
