#include "doctest.h"

#include <cmath>

#include "anosov/bundled.hpp"
#include "anosov/domain.hpp"

using namespace anosov;

namespace {

const GroupSpec o21 = GroupSpec::opq(2, 1);
const WittForm f21 = make_witt_form(2, 1);

Frame span(std::initializer_list<Vec> vs) {
  Mat m(vs.begin()->size(), Eigen::Index(vs.size()));
  int c = 0;
  for (const Vec& v : vs)
    m.col(c++) = v;
  return Frame::orthonormalize(m);
}

Vec e(int n, int i) { return Vec::Unit(n, i); }

const LimitSample& schottky_sample() {
  static const LimitSample s = sample_limit_set(enumerate_ball(schottky_o21(), 6), o21, ThetaSet::of({1}), 1.0);
  return s;
}

} // namespace

TEST_CASE("in_Xbar examples") {
  const XbarResult a = in_Xbar(span({e(3, 0) - e(3, 2)}), f21);
  REQUIRE(accepted(a));
  CHECK(std::get<CompactPoint>(a).stratum == 0);
  CHECK(std::get<CompactPoint>(a).top_eigenvalue == doctest::Approx(-1.0));
  const XbarResult b = in_Xbar(span({e(3, 0)}), f21);
  REQUIRE(accepted(b));
  CHECK(std::get<CompactPoint>(b).stratum == 1);
  const XbarResult c = in_Xbar(span({e(3, 1)}), f21);
  REQUIRE_FALSE(accepted(c));
  CHECK(std::get<Rejection>(c).value == doctest::Approx(1.0));
  CHECK_THROWS(in_Xbar(span({e(3, 0), e(3, 1)}), f21));
}

TEST_CASE("complex_in_Xbar examples") {
  // (Re z, Im z) coordinates in C^3
  const WittForm bc = make_witt_form(2, 1, Field::complex);
  const XbarResult a = complex_in_Xbar(span({e(6, 0) - e(6, 2), e(6, 3) + e(6, 5), e(6, 4)}), bc);
  REQUIRE(accepted(a));
  CHECK(std::get<CompactPoint>(a).stratum == 0);
  // the complex isotropic line C e1 plus e2 + i e2, whose square is 2i
  const XbarResult b = complex_in_Xbar(span({e(6, 0), e(6, 3), e(6, 1) + e(6, 4)}), bc);
  REQUIRE_FALSE(accepted(b));
  CHECK(std::get<Rejection>(b).reason == "imaginary part does not vanish");
  // C e1 plus the negative direction i e2 is a boundary point with a complex kernel
  const XbarResult c = complex_in_Xbar(span({e(6, 0), e(6, 3), e(6, 4)}), bc);
  REQUIRE(accepted(c));
  CHECK(std::get<CompactPoint>(c).stratum == 2);
  // a real isotropic line without its J-image: kernel is not complex
  const XbarResult d = complex_in_Xbar(span({e(6, 0), e(6, 4), e(6, 1) - e(6, 3)}), bc);
  CHECK_FALSE(accepted(d));
  CHECK_THROWS_AS(complex_in_Xbar(span({e(3, 0)}), f21), InvalidArgument);
}

TEST_CASE("theorem hypotheses") {
  CHECK(outside_theorem_hypotheses(make_witt_form(1, 1)));
  CHECK(outside_theorem_hypotheses(make_witt_form(2, 2)));
  CHECK(outside_theorem_hypotheses(make_witt_form(3, 3), 2));
  CHECK_FALSE(outside_theorem_hypotheses(make_witt_form(3, 3), 1));
  CHECK_FALSE(outside_theorem_hypotheses(make_witt_form(2, 1)));
}

TEST_CASE("sampling the domain") {
  std::mt19937_64 rng(5);
  const WittForm f32 = make_witt_form(3, 2);
  const auto pts = sample_domain(f32, 200, rng);
  REQUIRE(pts.size() == 200);
  for (const auto& p : pts) {
    CHECK(p.frame.dim() == 2);
    CHECK(p.stratum == 0);
    CHECK(p.top_eigenvalue < 0.0);
    // the group acts on the symmetric space
    const Mat g = random_element(GroupSpec::opq(3, 2), rng, 1.0);
    const XbarResult r = in_Xbar(transform(g, p.frame), f32);
    REQUIRE(accepted(r));
    CHECK(std::get<CompactPoint>(r).stratum == 0);
  }
  const auto away = sample_domain_away(f21, schottky_sample(), 50, 0.1, rng);
  REQUIRE(away.size() == 50);
  for (const auto& p : away)
    CHECK(in_bad_set(p, schottky_sample(), BadSetVariant::contain).distance >= 0.1);
}

TEST_CASE("bad set membership") {
  const LimitSample& s = schottky_sample();
  std::mt19937_64 rng(9);
  for (const auto& p : sample_domain(f21, 300, rng)) {
    const auto a = in_bad_set(p, s, BadSetVariant::contain);
    const auto b = in_bad_set(p, s, BadSetVariant::intersect);
    CHECK_FALSE(a.hit);
    CHECK(a.hit == b.hit);
    CHECK(a.distance == doctest::Approx(b.distance));
  }
  // a sampled flag itself is a boundary point of the bad set
  const auto pt = std::get<CompactPoint>(in_Xbar(s.points[3].flag.frame, f21));
  const auto hit = in_bad_set(pt, s, BadSetVariant::contain);
  CHECK(hit.hit);
  CHECK(hit.witness == 3);
  CHECK(hit.covering_radius == doctest::Approx(s.covering_radius()));

  // equivariance: move both the point and the sample
  const Mat g = random_element(o21, rng, 1.0);
  LimitSample moved = s;
  for (auto& lp : moved.points)
    lp.flag.frame = transform(g, lp.flag.frame);
  for (const auto& p : sample_domain(f21, 50, rng)) {
    const auto a = in_bad_set(p.frame, s, BadSetVariant::contain, 1e-9, 0.0);
    const auto b = in_bad_set(transform(g, p.frame), moved, BadSetVariant::contain, 1e-9, 0.0);
    CHECK(a.hit == b.hit);
  }
  const auto moved_pt = transform(g, pt.frame);
  CHECK(in_bad_set(moved_pt, moved, BadSetVariant::contain, 1e-7, 0.0).hit);
}

TEST_CASE("dynamical relation scan") {
  std::mt19937_64 rng(2);
  const auto pts = sample_domain(f21, 30, rng);
  const GroupBall b = enumerate_ball(schottky_o21(), 6);
  const RelationScan scan = dynamical_relation_scan(pts, b, schottky_sample(), 6);
  CHECK(scan.flags.empty());
  CHECK(scan.pairs == long(pts.size()) * (b.sphere_end(6) - b.sphere_begin(6)));
  CHECK(scan.max_residual < 1e-3);

  const RelationScan none = dynamical_relation_scan(pts, enumerate_ball(schottky_o21(), 0), schottky_sample(), 1);
  CHECK(none.flags.empty());
  CHECK(none.pairs == 0);

  const RelationScan mixed = dynamical_relation_scan(pts, enumerate_ball(mixed_o21(), 6), schottky_sample(), 6);
  CHECK_FALSE(mixed.flags.empty());
}

TEST_CASE("expansion certificates") {
  const GroupBall b = enumerate_ball(schottky_o21(), 6);
  const LimitSample& s = schottky_sample();
  const auto& p = s.points.front();
  const auto cert = expansion_certificate(p.flag, ray_of(p.letters), b, f21, 2.0);
  CHECK(cert.success);
  CHECK(cert.n >= 1);
  CHECK(cert.factor >= 2.0);
  CHECK(expansion_certificate(p.flag, ray_of(p.letters), b, f21, 2.0).factor == cert.factor);

  const auto unit = expansion_certificate(p.flag, ray_of(p.letters), b, f21, 1.0);
  CHECK(unit.success);
  CHECK(unit.n == 0);

  // rotations are isometries of the incidence distance
  const GroupBall r = enumerate_ball({make_generator("r", o21_rotation(0.4))}, 6);
  const Frame l = Frame::orthonormalize(Vec(diagonalizing_basis(2, 1).col(0) + diagonalizing_basis(2, 1).col(2)));
  const FlagPoint f{l, f21, 1};
  REQUIRE(f.isotropic(1e-9));
  CHECK_FALSE(expansion_certificate(f, ray_of({0, 0, 0, 0, 0, 0}), r, f21, 2.0).success);
  CHECK(ray_of({0, 2}) == std::vector<std::vector<int>>{{}, {0}, {0, 2}});
}

TEST_CASE("orbit coverage") {
  std::mt19937_64 rng(3), twin(3);
  const GroupBall id = enumerate_ball(schottky_o21(), 0);
  // sample_domain_away draws the same points from an equal generator
  const auto core = sample_domain_away(f21, schottky_sample(), 20, 0.0, twin);
  const auto c = orbit_coverage(core, id, schottky_sample(), f21, {0.0}, 20, 1e-6, rng);
  REQUIRE(c.size() == 1);
  CHECK(c[0].sampled == 20);
  CHECK(c[0].fraction() == doctest::Approx(1.0));
  CHECK(orbit_coverage({}, id, schottky_sample(), f21, {0.0, 0.1}, 20, 0.1, rng)[1].covered == 0);
}

TEST_CASE("subalgebra points") {
  const LieAlgebra sl2(AlgebraTag::sl_n(2));
  const auto p0 = subalgebra_point(sl2, ThetaSet());
  CHECK(p0.basis.dim() == 1);
  const Signature s0 = sl2.killing_signature(p0.basis, 1e-8);
  CHECK(s0.neg == 1);
  const auto pd = subalgebra_point(sl2, sl2.root_system().delta());
  CHECK(sl2.killing_signature(pd.basis, 1e-8).null == 1);
  CHECK(contains(sl2.u_theta(sl2.root_system().delta()), pd.basis));
  for (std::uint32_t m = 0; m < 2; ++m)
    CHECK(subalgebra_point(AlgebraTag::o_pq(2, 1), ThetaSet(m)).basis.dim() == 1);
  CHECK_THROWS(subalgebra_point(AlgebraTag::sl_n(5), ThetaSet()));
}

TEST_CASE("nilpotent incidence in sl2") {
  const LieAlgebra sl2(AlgebraTag::sl_n(2));
  const Frame rd = subalgebra_point(sl2, sl2.root_system().delta()).basis;
  Mat upper = Mat::Zero(2, 2);
  upper(0, 1) = 1.0;
  const Frame l = Frame::orthonormalize(sl2.coords(upper));
  CHECK(intersects(l, rd));
  CHECK(contains(l, rd));
  CHECK(nilpotent_incidence_check(sl2, rd, l));
  // the opposite Borel
  Mat w0(2, 2);
  w0 << 0, -1, 1, 0;
  const Frame opp = adjoint_translate(sl2, w0, rd);
  CHECK_FALSE(intersects(l, opp));
  CHECK_FALSE(contains(l, opp));
  CHECK(nilpotent_incidence_check(sl2, opp, l));
  CHECK(nilpotent_incidence_check(sl2, rd, Frame::empty(sl2.dim())));
}
