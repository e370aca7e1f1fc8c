#include "anosov/forms.hpp"

#include <algorithm>
#include <cmath>

namespace anosov {

std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

Mat witt_gram(int p, int q) {
  if (q < 0 || p < q || p + q < 1)
    throw InvalidArgument("witt form needs p >= q >= 0 and p+q >= 1 (got p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
  const int n = p + q;
  Mat g = Mat::Zero(n, n);
  for (int i = 0; i < q; ++i) {
    g(i, n - 1 - i) = 1.0;
    g(n - 1 - i, i) = 1.0;
  }
  for (int i = q; i < p; ++i)
    g(i, i) = 1.0;
  return g;
}

WittForm::WittForm(int p, int q, Field field, Mat gram)
    : p_(p), q_(q), field_(field), gram_(std::move(gram)) {
  if (gram_.rows() != p + q || gram_.cols() != p + q)
    throw DimensionMismatch("gram size does not match p+q");
  const double asym = (gram_ - gram_.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, gram_.norm()))
    throw InvalidArgument("gram matrix is not symmetric");
}

WittForm make_witt_form(int p, int q, Field field) { return WittForm(p, q, field, witt_gram(p, q)); }

Mat WittForm::real_gram() const {
  if (!is_complex())
    return gram_;
  const int m = n();
  Mat r = Mat::Zero(2 * m, 2 * m);
  r.topLeftCorner(m, m) = gram_;
  r.bottomRightCorner(m, m) = -gram_;
  return r;
}

Mat WittForm::imag_gram() const {
  if (!is_complex())
    return Mat::Zero(n(), n());
  const int m = n();
  Mat r = Mat::Zero(2 * m, 2 * m);
  r.topRightCorner(m, m) = gram_;
  r.bottomLeftCorner(m, m) = gram_;
  return r;
}

Mat WittForm::complex_structure() const {
  if (!is_complex())
    return Mat(0, 0);
  const int m = n();
  Mat j = Mat::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = -Mat::Identity(m, m);
  j.bottomLeftCorner(m, m) = Mat::Identity(m, m);
  return j;
}

double WittForm::operator()(const Vec& x, const Vec& y) const { return x.dot(real_gram() * y); }

Mat diagonalizing_basis(int p, int q) {
  const int n = p + q;
  Mat c = Mat::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < q; ++i) {
    c(i, i) = s;
    c(n - 1 - i, i) = s;
    c(i, p + i) = s;
    c(n - 1 - i, p + i) = -s;
  }
  for (int i = q; i < p; ++i)
    c(i, i) = 1.0;
  return c;
}

WittConversion to_witt_normal_form(const Mat& gram, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.transpose()));
  const Vec& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  std::vector<int> pos, neg;
  for (int i = int(ev.size()) - 1; i >= 0; --i) {
    if (ev(i) > tol * scale)
      pos.push_back(i);
    else if (ev(i) < -tol * scale)
      neg.push_back(i);
    else
      throw InvalidArgument("form is degenerate");
  }
  const int p = int(pos.size()), q = int(neg.size());
  if (p < q)
    throw InvalidArgument("form has p < q; negate it first");
  Mat s(gram.rows(), gram.cols());
  int col = 0;
  for (int i : pos)
    s.col(col++) = es.eigenvectors().col(i) / std::sqrt(ev(i));
  for (int i : neg)
    s.col(col++) = es.eigenvectors().col(i) / std::sqrt(-ev(i));
  return {make_witt_form(p, q), s * diagonalizing_basis(p, q).transpose()};
}

Signature signature(const Mat& m, double tol) { return signature(m, tol, -1.0); }

Signature signature(const Mat& m, double tol, double scale) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("signature of a non-square matrix");
  if (m.size() == 0)
    return {};
  const double nrm = m.norm();
  if ((m - m.transpose()).norm() > std::max(tol, 1e-12) * std::max(1.0, nrm))
    throw InvalidArgument("signature of a non-symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double thr = tol * (scale > 0.0 ? scale : ev.cwiseAbs().maxCoeff());
  Signature s;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr)
      ++s.pos;
    else if (ev(i) < -thr)
      ++s.neg;
    else
      ++s.null;
  }
  return s;
}

int numeric_rank(const Mat& m, double tol) {
  if (m.size() == 0)
    return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& sv = svd.singularValues();
  if (sv(0) == 0.0)
    return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0))
      ++r;
  return r;
}

Frame Frame::empty(int ambient_dim) { return Frame(Mat(ambient_dim, 0)); }

Frame Frame::from_orthonormal(Mat cols, double check_tol) {
  const Mat gram = cols.transpose() * cols;
  if ((gram - Mat::Identity(cols.cols(), cols.cols())).cwiseAbs().maxCoeff() > check_tol)
    throw InvalidArgument("frame columns are not orthonormal");
  return Frame(std::move(cols));
}

Frame Frame::span_of(const Mat& cols, double tol) {
  if (cols.cols() == 0)
    return empty(int(cols.rows()));
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  int r = 0;
  if (sv(0) > 0.0)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0))
        ++r;
  return Frame(svd.matrixU().leftCols(r));
}

Frame Frame::orthonormalize(const Mat& cols) {
  if (cols.cols() == 0)
    return empty(int(cols.rows()));
  Eigen::HouseholderQR<Mat> qr(cols);
  Mat q = qr.householderQ() * Mat::Identity(cols.rows(), cols.cols());
  return Frame(std::move(q));
}

Frame transform(const Mat& g, const Frame& w) {
  if (g.cols() != w.ambient_dim())
    throw DimensionMismatch("transform: matrix and frame sizes differ");
  return Frame::orthonormalize(g * w.columns());
}

Frame span_sum(const Frame& a, const Frame& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("span_sum: ambient dimensions differ");
  Mat m(a.ambient_dim(), a.dim() + b.dim());
  m << a.columns(), b.columns();
  return Frame::span_of(m, tol);
}

namespace {

// orthonormal basis of the null space of m (k x n)
Mat null_space(const Mat& m, double tol) {
  const int n = int(m.cols());
  if (m.rows() == 0)
    return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0))
        ++r;
  return svd.matrixV().rightCols(n - r);
}

} // namespace

Frame b_orthogonal(const WittForm& form, const Frame& w, double tol) {
  if (w.ambient_dim() != form.ambient_dim())
    throw DimensionMismatch("b_orthogonal: frame and form sizes differ");
  const Mat rows = w.columns().transpose() * form.real_gram();
  return Frame::from_orthonormal(null_space(rows, tol), 1e-8);
}

Frame apply_complex_structure(const WittForm& form, const Frame& w) {
  if (!form.is_complex())
    throw InvalidArgument("complex structure of a real form");
  return Frame::from_orthonormal(form.complex_structure() * w.columns(), 1e-8);
}

bool FlagPoint::isotropic(double tol) const {
  if (!form)
    return true;
  const Mat r = frame.columns().transpose() * form->real_gram() * frame.columns();
  double bad = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  if (form->is_complex()) {
    const Mat im = frame.columns().transpose() * form->imag_gram() * frame.columns();
    if (im.size())
      bad = std::max(bad, im.cwiseAbs().maxCoeff());
  }
  return bad <= tol * form->gram().norm();
}

Restriction restrict_kernel(const WittForm& form, const Frame& w, double tol) {
  if (w.ambient_dim() != form.ambient_dim())
    throw DimensionMismatch("restrict_kernel: frame and form sizes differ");
  const Mat& c = w.columns();
  Mat r = c.transpose() * form.real_gram() * c;
  r = 0.5 * (r + r.transpose());
  const int k = w.dim();
  if (k == 0)
    return {r, Frame::empty(w.ambient_dim())};
  // eigenvalues below tol * |b| count as null
  Eigen::SelfAdjointEigenSolver<Mat> es(r);
  const double thr = tol * form.gram().norm();
  std::vector<int> idx;
  for (int i = 0; i < k; ++i)
    if (std::abs(es.eigenvalues()(i)) <= thr)
      idx.push_back(i);
  Mat ker(w.ambient_dim(), int(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    ker.col(int(j)) = c * es.eigenvectors().col(idx[j]);
  return {r, Frame::orthonormalize(ker)};
}

std::vector<double> principal_sines(const Frame& a, const Frame& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("principal angles: ambient dimensions differ");
  const Frame& s = a.dim() <= b.dim() ? a : b;
  const Frame& l = a.dim() <= b.dim() ? b : a;
  if (s.dim() == 0)
    return {};
  const Mat resid = s.columns() - l.columns() * (l.columns().transpose() * s.columns());
  Eigen::JacobiSVD<Mat> svd(resid);
  Vec sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  // a thin residual has fewer singular values than columns only if rows < cols
  while (int(out.size()) < s.dim())
    out.push_back(0.0);
  for (double& x : out)
    x = std::min(1.0, x);
  std::sort(out.begin(), out.end());
  return out;
}

double dist_projective(const Frame& l1, const Frame& l2) {
  if (l1.dim() != 1 || l2.dim() != 1)
    throw DimensionMismatch("dist_projective expects lines");
  return principal_sines(l1, l2).front();
}

double dist_projective(const Vec& v1, const Vec& v2) {
  const double n1 = v1.norm(), n2 = v2.norm();
  if (n1 == 0.0 || n2 == 0.0)
    throw InvalidArgument("dist_projective: zero vector");
  const Vec u = v1 / n1, w = v2 / n2;
  return std::min(1.0, (u - w * w.dot(u)).norm());
}

double dist_grassmann(const Frame& w1, const Frame& w2) {
  if (w1.dim() != w2.dim() || w1.ambient_dim() != w2.ambient_dim())
    throw DimensionMismatch("dist_grassmann: subspace dimensions differ");
  if (w1.dim() == 0)
    return 0.0;
  return principal_sines(w1, w2).back();
}

double dist_to_incidence(const Frame& w, const Frame& l) {
  if (l.dim() != 1)
    throw DimensionMismatch("dist_to_incidence expects a line");
  if (w.ambient_dim() != l.ambient_dim())
    throw DimensionMismatch("dist_to_incidence: ambient dimensions differ");
  if (w.dim() == 0)
    return 1.0;
  const Vec v = l.columns().col(0);
  return std::min(1.0, (v - w.columns() * (w.columns().transpose() * v)).norm());
}

bool intersects(const Frame& a, const Frame& b, double tol) {
  if (a.dim() == 0 || b.dim() == 0)
    return false;
  return principal_sines(a, b).front() < tol;
}

bool contains(const Frame& inner, const Frame& outer, double tol) {
  if (inner.dim() == 0)
    return true;
  if (inner.dim() > outer.dim())
    return false;
  return principal_sines(inner, outer).back() < tol;
}

} // namespace anosov
