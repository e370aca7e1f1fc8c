#include "doctest.h"

#include <cmath>
#include <random>

#include "anosov/forms.hpp"

using namespace anosov;

namespace {

Frame line(const Vec& v) { return Frame::span_of(v); }

Vec e(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

Mat gaussian(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m(i, j) = nd(rng);
  return m;
}

// random nonpositive q-plane: image of a random element acting on a negative definite plane
Frame random_negative_plane(const WittForm& b, std::mt19937_64& rng) {
  const Mat c = diagonalizing_basis(b.p(), b.q());
  Mat w = Mat::Zero(b.n(), b.q());
  Mat mix = gaussian(b.p(), b.q(), rng);
  mix *= 0.9 / mix.norm(); // operator norm < 1 keeps the plane negative definite
  for (int j = 0; j < b.q(); ++j) {
    w.col(j) = c.col(b.p() + j);
    for (int i = 0; i < b.p(); ++i)
      w.col(j) += mix(i, j) * c.col(i);
  }
  return Frame::orthonormalize(w);
}

} // namespace

TEST_CASE("witt forms") {
  const WittForm b21 = make_witt_form(2, 1);
  Mat expect(3, 3);
  expect << 0, 0, 1, 0, 1, 0, 1, 0, 0;
  CHECK(b21.gram() == expect);
  CHECK(make_witt_form(1, 0).gram() == Mat::Identity(1, 1));
  CHECK(signature(make_witt_form(3, 2).gram()) == Signature{3, 2, 0});
  CHECK_THROWS_AS(make_witt_form(1, 2), InvalidArgument);
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= p; ++q)
      CHECK(signature(make_witt_form(p, q).gram()) == Signature{p, q, 0});
}

TEST_CASE("diagonalizing basis and ingestion") {
  for (auto [p, q] : {std::pair{2, 1}, {3, 2}, {2, 2}, {4, 1}}) {
    const Mat c = diagonalizing_basis(p, q);
    Mat d = Mat::Zero(p + q, p + q);
    d.diagonal().head(p).setOnes();
    d.diagonal().tail(q).setConstant(-1.0);
    CHECK((c.transpose() * witt_gram(p, q) * c - d).norm() < 1e-14);
    CHECK((c.transpose() * c - Mat::Identity(p + q, p + q)).norm() < 1e-14);
  }
  std::mt19937_64 rng(3);
  Mat a = gaussian(5, 5, rng);
  Mat dg = Mat::Zero(5, 5);
  dg.diagonal() << 1, 2, 3, -1, -0.5;
  const Mat gram = a.transpose() * dg * a;
  const auto conv = to_witt_normal_form(gram);
  CHECK(conv.form.p() == 3);
  CHECK(conv.form.q() == 2);
  CHECK((conv.basis.transpose() * gram * conv.basis - witt_gram(3, 2)).norm() < 1e-9 * gram.norm());
}

TEST_CASE("signature") {
  CHECK(signature(Mat::Identity(3, 3)) == Signature{3, 0, 0});
  CHECK(signature(witt_gram(2, 1)) == Signature{2, 1, 0});
  CHECK(signature(Mat::Zero(2, 2)) == Signature{0, 0, 2});
  Mat ns(2, 2);
  ns << 0, 1, 0, 0;
  CHECK_THROWS_AS(signature(ns), InvalidArgument);
}

TEST_CASE("complex forms") {
  const WittForm bc = make_witt_form(2, 1, Field::complex);
  CHECK(bc.ambient_dim() == 6);
  const Mat j = bc.complex_structure();
  CHECK((j * j + Mat::Identity(6, 6)).norm() == 0.0);
  CHECK(signature(bc.real_gram()) == Signature{3, 3, 0});
  // b^C(i e1, i e3) = -1
  Vec x = Vec::Zero(6), y = Vec::Zero(6);
  x(3) = 1.0;
  y(5) = 1.0;
  CHECK(bc(x, y) == doctest::Approx(-1.0));
}

TEST_CASE("restrict_kernel") {
  const WittForm b = make_witt_form(2, 1);
  Vec v(3);
  v << 1, 0, -1;
  auto r = restrict_kernel(b, line(v));
  CHECK(r.restricted(0, 0) == doctest::Approx(-1.0));
  CHECK(r.kernel.dim() == 0);
  r = restrict_kernel(b, line(e(3, 0)));
  CHECK(std::abs(r.restricted(0, 0)) < 1e-15);
  CHECK(r.kernel.dim() == 1);
  CHECK(contains(r.kernel, line(e(3, 0))));

  const WittForm b32 = make_witt_form(3, 2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Frame w = random_negative_plane(b32, rng);
    const auto rk = restrict_kernel(b32, w);
    CHECK(rk.kernel.dim() == 0);
    CHECK(signature(rk.restricted) == Signature{0, 2, 0});
  }
}

TEST_CASE("projective and grassmann distances") {
  CHECK(dist_projective(line(e(3, 0)), line(e(3, 0))) == doctest::Approx(0.0));
  CHECK(dist_projective(line(e(3, 0)), line(e(3, 1))) == doctest::Approx(1.0));
  CHECK(dist_projective(line(e(3, 0)), line(e(3, 0) + e(3, 1))) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(dist_projective(Vec::Zero(3), e(3, 1)), InvalidArgument);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Mat m = gaussian(4, 3, rng);
    const Frame a = line(m.col(0)), b = line(m.col(1)), c = line(m.col(2));
    CHECK(dist_projective(a, c) <= dist_projective(a, b) + dist_projective(b, c) + 1e-10);
    CHECK(dist_projective(a, b) == doctest::Approx(dist_projective(b, a)).epsilon(1e-12));
  }

  Mat w1(3, 2), w2(3, 2);
  w1 << 1, 0, 0, 1, 0, 0;
  w2 << 1, 0, 0, 0, 0, 1;
  const Frame f1 = Frame::from_orthonormal(w1), f2 = Frame::from_orthonormal(w2);
  CHECK(dist_grassmann(f1, f1) == doctest::Approx(0.0));
  CHECK(dist_grassmann(f1, f2) == doctest::Approx(1.0));

  // brute force Hausdorff distance over grids of unit vectors
  const Mat ma = gaussian(3, 2, rng), mb = gaussian(3, 2, rng);
  const Frame fa = Frame::orthonormalize(ma), fb = Frame::orthonormalize(mb);
  const int grid = 720;
  auto circle = [&](const Frame& f, int i) {
    const double t = M_PI * i / grid;
    return Vec(std::cos(t) * f.columns().col(0) + std::sin(t) * f.columns().col(1));
  };
  double haus = 0.0;
  for (auto [x, y] : {std::pair{&fa, &fb}, {&fb, &fa}})
    for (int i = 0; i < grid; ++i) {
      double best = 1.0;
      for (int j = 0; j < grid; ++j)
        best = std::min(best, dist_projective(circle(*x, i), circle(*y, j)));
      haus = std::max(haus, best);
    }
  CHECK(std::abs(haus - dist_grassmann(fa, fb)) < 5e-3);

  // common orthogonal transformation
  Eigen::HouseholderQR<Mat> qr(gaussian(3, 3, rng));
  const Mat k = qr.householderQ();
  CHECK(dist_grassmann(transform(k, fa), transform(k, fb)) == doctest::Approx(dist_grassmann(fa, fb)).epsilon(1e-10));
  CHECK_THROWS_AS(dist_grassmann(fa, line(e(3, 0))), DimensionMismatch);
}

TEST_CASE("distance to incidence") {
  Mat w(3, 2);
  w << 1, 0, 0, 1, 0, 0;
  const Frame fw = Frame::from_orthonormal(w);
  CHECK(dist_to_incidence(fw, line(e(3, 0))) == doctest::Approx(0.0));
  CHECK(dist_to_incidence(fw, line(e(3, 2))) == doctest::Approx(1.0));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const Frame ww = Frame::orthonormalize(gaussian(5, 2, rng));
    const Frame l = line(gaussian(5, 1, rng).col(0));
    double best = 1.0;
    const int grid = 20000;
    for (int i = 0; i < grid; ++i) {
      const double a = M_PI * i / grid;
      const Vec v = std::cos(a) * ww.columns().col(0) + std::sin(a) * ww.columns().col(1);
      best = std::min(best, dist_projective(line(v), l));
    }
    CHECK(std::abs(best - dist_to_incidence(ww, l)) < 1e-6);
  }

  // equality with the distance to the incidence set {W' : L in W'}, in R^3
  for (int t = 0; t < 5; ++t) {
    const Frame ww = Frame::orthonormalize(gaussian(3, 2, rng));
    const Vec lv = gaussian(3, 1, rng).col(0).normalized();
    const Frame lp = b_orthogonal(make_witt_form(3, 0), line(lv));
    double best = 1.0;
    const int grid = 4000;
    for (int i = 0; i < grid; ++i) {
      const double a = M_PI * i / grid;
      Mat wp(3, 2);
      wp.col(0) = lv;
      wp.col(1) = std::cos(a) * lp.columns().col(0) + std::sin(a) * lp.columns().col(1);
      best = std::min(best, dist_grassmann(ww, Frame::from_orthonormal(wp)));
    }
    CHECK(std::abs(best - dist_to_incidence(ww, line(lv))) < 2e-3);
  }
}

TEST_CASE("intersects and contains") {
  Mat w12(3, 2), w23(3, 2);
  w12 << 1, 0, 0, 1, 0, 0;
  w23 << 0, 0, 1, 0, 0, 1;
  const Frame a = line(e(3, 0));
  CHECK(intersects(a, Frame::from_orthonormal(w12)));
  CHECK(contains(a, Frame::from_orthonormal(w12)));
  CHECK_FALSE(intersects(a, Frame::from_orthonormal(w23)));
  CHECK_FALSE(contains(a, Frame::from_orthonormal(w23)));
  CHECK(contains(Frame::empty(3), a));
  CHECK_FALSE(intersects(Frame::empty(3), a));
}

TEST_CASE("lemma 4.1 (1) on random nonpositive planes") {
  const WittForm b = make_witt_form(3, 2);
  const double tol = 1e-9;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  int boundary = 0;
  for (int t = 0; t < 2000; ++t) {
    // boundary plane: an isotropic line plus a negative vector orthogonal to it, moved by the group
    Vec l(5);
    l << 1, nd(rng), 0, 0, 0;
    l(4) = 0.0;
    // isotropic: 2 x1 x5 + 2 x2 x4 + x3^2 = 0 with x4 = 0 -> pick x3, solve x5
    l(2) = nd(rng);
    l(4) = -l(2) * l(2) / 2.0;
    const Frame fl = line(l);
    const Frame perp = b_orthogonal(b, fl);
    Vec y = Vec::Zero(5);
    for (int tries = 0; tries < 100; ++tries) {
      y = perp.columns() * gaussian(perp.dim(), 1, rng).col(0);
      y -= l * (l.dot(y) / l.squaredNorm());
      if (b(y, y) < -0.1)
        break;
    }
    if (b(y, y) >= -0.1)
      continue;
    Mat wm(5, 2);
    wm << l, y;
    const Frame w = Frame::orthonormalize(wm);
    const auto rk = restrict_kernel(b, w, tol);
    REQUIRE(signature(rk.restricted, tol).pos == 0);
    ++boundary;
    // every y in W with |b(y,y)| < tol lies in the kernel
    for (int s = 0; s < 5; ++s) {
      const Vec c = gaussian(2, 1, rng).col(0).normalized();
      const Vec v = w.columns() * c;
      if (std::abs(b(v, v)) < tol) {
        const Vec res = v - rk.kernel.columns() * (rk.kernel.columns().transpose() * v);
        CHECK(res.norm() < 10 * tol);
      }
    }
    REQUIRE(rk.kernel.dim() == 1);
    CHECK(dist_projective(rk.kernel, fl) < 1e-8);
    const Vec kv = rk.kernel.columns().col(0);
    CHECK(std::abs(b(kv, kv)) < 10 * tol);
    // an isotropic vector orthogonal to W lies in W
    const Frame wperp = b_orthogonal(b, w);
    for (int c = 0; c < wperp.dim(); ++c) {
      const Vec z = wperp.columns().col(c);
      if (std::abs(b(z, z)) < tol)
        CHECK(dist_to_incidence(w, line(z)) < 10 * tol);
    }
  }
  CHECK(boundary > 1000);
}
