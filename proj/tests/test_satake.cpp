#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "anosov/satake.hpp"

using namespace anosov;

namespace {

std::vector<Eigen::VectorXd> linear_seq(std::vector<double> rate, std::vector<double> base, int len = 40) {
  std::vector<Eigen::VectorXd> out;
  for (int n = 1; n <= len; ++n) {
    Eigen::VectorXd h(rate.size());
    for (std::size_t i = 0; i < rate.size(); ++i)
      h(Eigen::Index(i)) = rate[i] * n + base[i];
    out.push_back(h);
  }
  return out;
}

// connected components of the complement of theta all meet the support
bool brute_admissible(const RootSystem& rs, ThetaSet support, ThetaSet theta) {
  const auto cartan = rs.cartan_matrix();
  std::vector<int> comp(rs.rank, -1);
  for (int s = 0; s < rs.rank; ++s) {
    if (theta.contains(s) || comp[s] >= 0)
      continue;
    std::vector<int> stack = {s};
    comp[s] = s;
    bool meets = false;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      meets = meets || support.contains(a);
      for (int b = 0; b < rs.rank; ++b)
        if (b != a && !theta.contains(b) && comp[b] < 0 && cartan[a][b] != 0) {
          comp[b] = s;
          stack.push_back(b);
        }
    }
    if (!meets)
      return false;
  }
  return true;
}

std::vector<RootSystem> systems_up_to(int rank) {
  std::vector<RootSystem> out;
  for (int r = 1; r <= rank; ++r) {
    out.push_back(build_root_system(RootType::A, r));
    if (r >= 2) {
      out.push_back(build_root_system(RootType::B, r));
      out.push_back(build_root_system(RootType::C, r));
    }
    if (r >= 4)
      out.push_back(build_root_system(RootType::D, r));
  }
  out.push_back(build_root_system(RootType::G2, 2));
  out.push_back(build_root_system(RootType::F4, 4));
  return out;
}

} // namespace

TEST_CASE("functor parsing") {
  CHECK(Functor::parse("identity").kind == Functor::identity);
  CHECK(Functor::parse("ext3").i == 3);
  CHECK(Functor::parse("adjoint").kind == Functor::adjoint);
  const Functor s = Functor::parse("sum(identity,ext2)");
  REQUIRE(s.kind == Functor::direct_sum);
  CHECK(s.parts.size() == 2);
  CHECK(Functor::parse(s.str()).str() == s.str());
  CHECK_THROWS(Functor::parse("spin"));
}

TEST_CASE("satake_embed examples") {
  const Representation id2(GroupSpec::gl(2), Functor::ident());
  const SatakePoint e = satake_embed(Mat::Identity(2, 2), id2);
  CHECK((e.hermitian - 0.5 * Mat::Identity(2, 2)).norm() < 1e-15);
  const double a = 3.0;
  Mat d = Mat::Zero(2, 2);
  d.diagonal() << a, 1.0 / a;
  const SatakePoint p = satake_embed(d, id2);
  CHECK(p.hermitian(0, 0) == doctest::Approx(a * a / (a * a + 1.0 / (a * a))));
  CHECK(p.hermitian(1, 1) == doctest::Approx(1.0 / (a * a) / (a * a + 1.0 / (a * a))));
  CHECK(std::abs(p.hermitian(0, 1)) < 1e-15);
}

TEST_CASE("satake_embed equivariance") {
  const GroupSpec gl2 = GroupSpec::gl(2);
  const Representation tau(gl2, Functor::sum({Functor::ident(), Functor::adj()}));
  CHECK(tau.dim() == 5);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const Mat g = random_element(gl2, rng, 1.0), h = random_element(gl2, rng, 1.0);
    const Mat th = tau(h);
    Mat moved = th * satake_embed(g, tau).hermitian * th.transpose();
    moved /= moved.trace();
    CHECK((satake_embed(h * g, tau).hermitian - moved).norm() < 1e-9);
    CHECK((tau(g * h) - tau(g) * th).norm() < 1e-9 * tau(g * h).norm());
  }
  // compact elements act orthogonally
  const Mat k = random_compact(gl2, rng);
  CHECK((tau(k) * tau(k).transpose() - Mat::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("supports") {
  const Representation ext(GroupSpec::opq(3, 2), Functor::ext(2));
  const RootSystem b2 = ext.spec().root_system();
  CHECK(support_of_eps(b2, ext.highest_weight()) == ThetaSet::of({2}));
  const Representation e31(GroupSpec::opq(4, 1), Functor::ident());
  CHECK(support_of_eps(e31.spec().root_system(), e31.highest_weight()) == ThetaSet::of({1}));

  const Representation ad(GroupSpec::gl(4), Functor::adj());
  CHECK(support_of_eps(ad.spec().root_system(), ad.highest_weight()) == ThetaSet::of({1, 3}));

  const RootSystem a3 = build_root_system(RootType::A, 3);
  CHECK(support_of(a3, fundamental_weight(a3, 0)) == ThetaSet::of({1}));
  CHECK(support_of(a3, fundamental_weight(a3, 1)) == ThetaSet::of({2}));
  CHECK_THROWS_AS(support_of(a3, {Rational(-1), Rational(0), Rational(0)}), NotDominant);
}

TEST_CASE("orbit decompositions") {
  const RootSystem a2 = build_root_system(RootType::A, 2);
  const auto o = orbit_decomposition(a2, a2.delta());
  CHECK(o.size() == 4);
  for (int m = 2; m <= 4; ++m) {
    const RootSystem b = build_root_system(RootType::B, m);
    CHECK(orbit_decomposition(b, ThetaSet::of({m})).size() == std::size_t(m + 1));
  }
  CHECK(orbit_decomposition(build_root_system(RootType::A, 1), ThetaSet::of({1})).size() == 2);

  // exactly one open and one closed orbit
  for (const auto& rs : systems_up_to(4))
    for (std::uint32_t s = 1; s < (1u << rs.rank); ++s) {
      int open = 0, closed = 0;
      for (const auto& x : orbit_decomposition(rs, ThetaSet(s))) {
        open += x.is_open;
        closed += x.is_closed;
        CHECK(x.is_open == x.theta.empty());
        CHECK(x.is_closed == (x.theta == rs.delta()));
      }
      CHECK(open == 1);
      CHECK(closed == 1);
    }
}

TEST_CASE("admissibility against brute force and domination") {
  for (const auto& rs : systems_up_to(5)) {
    CAPTURE(rs.label());
    const std::uint32_t all = 1u << rs.rank;
    for (std::uint32_t s = 1; s < all; ++s)
      for (std::uint32_t t = 0; t < all; ++t)
        CHECK(is_tau_admissible(rs, ThetaSet(s), ThetaSet(t)) == brute_admissible(rs, ThetaSet(s), ThetaSet(t)));
    // a smaller support dominates: saturating an admissible set gives an admissible set
    for (std::uint32_t s = 1; s < all; ++s)
      for (std::uint32_t sp = 1; sp < all; ++sp) {
        if ((sp & ~s) != 0)
          continue;
        for (ThetaSet th : tau_admissible_sets(rs, ThetaSet(s))) {
          const ThetaSet c = admissible_closure(rs, ThetaSet(sp), th);
          CHECK(brute_admissible(rs, ThetaSet(sp), c));
          CHECK(th.subset_of(c));
        }
      }
  }
}

TEST_CASE("satake limits") {
  const Representation id2(GroupSpec::gl(2), Functor::ident());
  // H_n = diag(n, -n)
  const auto l = satake_limit(id2, ThetaSet::of({1}), linear_seq({2.0 * 100}, {0.0}));
  CHECK(l.classification.theta == ThetaSet::of({1}));
  CHECK(l.numeric_rank == 1);
  CHECK(l.agree);
  Mat proj = Mat::Zero(2, 2);
  proj(0, 0) = 1.0;
  CHECK((l.limit.hermitian - proj).norm() < 1e-12);

  const auto c = satake_limit(id2, ThetaSet::of({1}), linear_seq({0.0}, {0.7}));
  CHECK(c.classification.theta.empty());
  CHECK(c.numeric_rank == 2);

  const Representation ext(GroupSpec::opq(3, 2), Functor::ext(2));
  const auto m = satake_limit(ext, ThetaSet::of({2}), linear_seq({100.0, 0.0}, {0.0, 1.0}));
  CHECK(m.classification.theta == ThetaSet::of({1}));
  CHECK(m.agree);
  CHECK(m.numeric_rank < ext.dim());
  CHECK(m.numeric_rank > 1);

  // oscillating sequences have no limit
  auto osc = linear_seq({0.0}, {1.0});
  for (std::size_t n = 0; n < osc.size(); n += 2)
    osc[n](0) = 5000.0;
  CHECK_THROWS_AS(satake_limit(id2, ThetaSet::of({1}), osc), InvalidArgument);
}

TEST_CASE("rank profile depends on theta alone") {
  const Representation ad(GroupSpec::gl(3), Functor::adj());
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rate(50.0, 150.0), base(0.0, 2.0);
  std::map<std::uint32_t, std::set<int>> ranks;
  for (int t = 0; t < 60; ++t) {
    std::vector<double> r(2), b(2);
    for (int i = 0; i < 2; ++i) {
      r[i] = t % (i + 2) ? rate(rng) : 0.0;
      b[i] = base(rng);
    }
    const auto l = satake_limit(ad, ThetaSet::of({1, 2}), linear_seq(r, b));
    CHECK(l.agree);
    ranks[l.classification.theta.mask()].insert(l.numeric_rank);
  }
  CHECK(ranks.size() == 4);
  for (const auto& [th, rk] : ranks)
    CHECK(rk.size() == 1);
  CHECK(*ranks[0].begin() == 8);
  CHECK(*ranks[3].begin() == 1);
}
