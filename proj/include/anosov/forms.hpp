#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace anosov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// single relative tolerance used for every rank / intersection decision
inline constexpr double default_tol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

enum class Field { real, complex };

std::string to_string(Field f);

//
// Nondegenerate symmetric bilinear form in Witt normal form.
//
// For Field::complex the form b^C lives on C^n with n = p+q and is realized on
// R^{2n} with coordinates (Re z, Im z); real_gram() and imag_gram() are then the
// 2n x 2n matrices of Re b^C and Im b^C.
//
class WittForm {
public:
  WittForm(int p, int q, Field field, Mat gram);

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_; }
  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::complex; }
  int ambient_dim() const { return is_complex() ? 2 * n() : n(); }

  const Mat& gram() const { return gram_; }
  Mat real_gram() const;
  Mat imag_gram() const;
  Mat complex_structure() const;

  double operator()(const Vec& x, const Vec& y) const;

private:
  int p_, q_;
  Field field_;
  Mat gram_;
};

Mat witt_gram(int p, int q);
WittForm make_witt_form(int p, int q, Field field = Field::real);

// Columns: Witt coordinates of an orthonormal basis (f_1..f_q, e_{q+1}..e_p, h_1..h_q)
// in which the form becomes diag(I_p, -I_q).
Mat diagonalizing_basis(int p, int q);

// Basis change B with B^T * gram * B = witt_gram(p,q); requires p >= q.
struct WittConversion {
  WittForm form;
  Mat basis;
};
WittConversion to_witt_normal_form(const Mat& gram, double tol = default_tol);

struct Signature {
  int pos = 0, neg = 0, null = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const Mat& m, double tol = default_tol);
// thresholds at tol * scale instead of tol * (largest |eigenvalue|), for restrictions of a known form
Signature signature(const Mat& m, double tol, double scale);

int numeric_rank(const Mat& m, double tol = default_tol);

//
// Orthonormal frame spanning a subspace.
//
class Frame {
public:
  Frame() : cols_(0, 0) {}

  static Frame empty(int ambient_dim);
  static Frame from_orthonormal(Mat cols, double check_tol = 1e-10);
  // rank-revealing: keeps directions with singular value > tol * sigma_max
  static Frame span_of(const Mat& cols, double tol = default_tol);
  // QR of full-column-rank input, keeps every column
  static Frame orthonormalize(const Mat& cols);

  int ambient_dim() const { return int(cols_.rows()); }
  int dim() const { return int(cols_.cols()); }
  const Mat& columns() const { return cols_; }
  Mat projector() const { return cols_ * cols_.transpose(); }

private:
  explicit Frame(Mat cols) : cols_(std::move(cols)) {}
  Mat cols_;
};

Frame transform(const Mat& g, const Frame& w);
Frame span_sum(const Frame& a, const Frame& b, double tol = default_tol);
Frame b_orthogonal(const WittForm& form, const Frame& w, double tol = default_tol);
Frame apply_complex_structure(const WittForm& form, const Frame& w);

struct FlagPoint {
  Frame frame;
  std::optional<WittForm> form;
  int iso_dim = 0;

  bool isotropic(double tol = default_tol) const;
};

struct Restriction {
  Mat restricted;
  Frame kernel;
};
Restriction restrict_kernel(const WittForm& form, const Frame& w, double tol = default_tol);

// sines of principal angles, ascending, min(dim a, dim b) values
std::vector<double> principal_sines(const Frame& a, const Frame& b);

double dist_projective(const Frame& l1, const Frame& l2);
double dist_projective(const Vec& v1, const Vec& v2);
double dist_grassmann(const Frame& w1, const Frame& w2);
double dist_to_incidence(const Frame& w, const Frame& l);

bool intersects(const Frame& a, const Frame& b, double tol = default_tol);
bool contains(const Frame& inner, const Frame& outer, double tol = default_tol);

} // namespace anosov
