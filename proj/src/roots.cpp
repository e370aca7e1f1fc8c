#include "anosov/roots.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace anosov {

std::string to_string(RootType t) {
  switch (t) {
  case RootType::A: return "A";
  case RootType::B: return "B";
  case RootType::C: return "C";
  case RootType::D: return "D";
  case RootType::BC: return "BC";
  case RootType::E6: return "E6";
  case RootType::E7: return "E7";
  case RootType::E8: return "E8";
  case RootType::F4: return "F4";
  case RootType::G2: return "G2";
  }
  return "?";
}

RootType parse_root_type(const std::string& s) {
  for (RootType t : {RootType::A, RootType::B, RootType::C, RootType::D, RootType::BC, RootType::E6,
                     RootType::E7, RootType::E8, RootType::F4, RootType::G2})
    if (to_string(t) == s)
      return t;
  throw InvalidArgument("unknown root system type '" + s + "'");
}

// ---------------------------------------------------------------- Rational

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0)
    throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
Rational Rational::operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
Rational Rational::operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
Rational Rational::operator/(const Rational& o) const { return {num * o.den, den * o.num}; }

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------- ThetaSet

ThetaSet ThetaSet::of(std::initializer_list<int> one_based) {
  std::uint32_t m = 0;
  for (int i : one_based)
    m |= 1u << (i - 1);
  return ThetaSet(m);
}

ThetaSet ThetaSet::from_indices(const std::vector<int>& zero_based) {
  std::uint32_t m = 0;
  for (int i : zero_based)
    m |= 1u << i;
  return ThetaSet(m);
}

ThetaSet ThetaSet::all(int rank) { return ThetaSet(rank >= 32 ? ~0u : ((1u << rank) - 1u)); }

int ThetaSet::size() const { return std::popcount(mask_); }

std::vector<int> ThetaSet::members() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i))
      out.push_back(i);
  return out;
}

std::strong_ordering ThetaSet::operator<=>(const ThetaSet& o) const {
  if (auto c = size() <=> o.size(); c != 0)
    return c;
  // among equal sizes, the set with the smaller least element first
  for (int i = 0; i < 32; ++i) {
    if (contains(i) != o.contains(i))
      return contains(i) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string ThetaSet::str() const {
  std::string s = "{";
  bool first = true;
  for (int i : members()) {
    if (!first)
      s += ",";
    s += "a" + std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------- construction

namespace {

std::vector<std::vector<long long>> gram_of_eps(const std::vector<std::vector<int>>& eps) {
  const std::size_t r = eps.size();
  std::vector<std::vector<long long>> g(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < eps[i].size(); ++k)
        g[i][j] += (long long)eps[i][k] * eps[j][k];
  return g;
}

std::vector<std::vector<long long>> simply_laced(int rank, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<long long>> g(rank, std::vector<long long>(rank, 0));
  for (int i = 0; i < rank; ++i)
    g[i][i] = 2;
  for (auto [a, b] : edges) {
    g[a - 1][b - 1] = -1;
    g[b - 1][a - 1] = -1;
  }
  return g;
}

std::vector<int> unit(int dim, int i, int v = 1) {
  std::vector<int> e(dim, 0);
  e[i] = v;
  return e;
}

std::vector<int> diff(int dim, int i, int j) {
  std::vector<int> e(dim, 0);
  e[i] = 1;
  e[j] = -1;
  return e;
}

} // namespace

RootSystem build_root_system(RootType type, int rank) {
  auto bad = [&] {
    return InvalidArgument("unsupported root system " + to_string(type) + std::to_string(rank));
  };
  RootSystem rs{type, rank, {}, {}, {}, std::nullopt};
  switch (type) {
  case RootType::A: {
    if (rank < 1)
      throw bad();
    for (int i = 0; i < rank; ++i)
      rs.eps_coords.push_back(diff(rank + 1, i, i + 1));
    rs.table1 = Table1Entry{0, std::vector<long long>(rank, 1)};
    break;
  }
  case RootType::B:
  case RootType::BC: {
    if (rank < 1)
      throw bad();
    for (int i = 0; i + 1 < rank; ++i)
      rs.eps_coords.push_back(diff(rank, i, i + 1));
    rs.eps_coords.push_back(unit(rank, rank - 1));
    if (type == RootType::B && rank >= 2) {
      std::vector<long long> chi(rank, 2);
      chi[0] = 1;
      rs.table1 = Table1Entry{1, chi};
    } else if (type == RootType::BC) {
      rs.table1 = Table1Entry{0, std::vector<long long>(rank, 2)};
    }
    break;
  }
  case RootType::C: {
    if (rank < 2)
      throw bad();
    for (int i = 0; i + 1 < rank; ++i)
      rs.eps_coords.push_back(diff(rank, i, i + 1));
    rs.eps_coords.push_back(unit(rank, rank - 1, 2));
    std::vector<long long> chi(rank, 2);
    chi[rank - 1] = 1;
    rs.table1 = Table1Entry{0, chi};
    break;
  }
  case RootType::D: {
    if (rank < 2)
      throw bad();
    for (int i = 0; i + 1 < rank; ++i)
      rs.eps_coords.push_back(diff(rank, i, i + 1));
    std::vector<int> last(rank, 0);
    last[rank - 2] = 1;
    last[rank - 1] = 1;
    rs.eps_coords.push_back(last);
    if (rank >= 4) {
      std::vector<long long> chi(rank, 2);
      chi[0] = 1;
      chi[rank - 2] = 1;
      chi[rank - 1] = 1;
      rs.table1 = Table1Entry{1, chi};
    }
    break;
  }
  case RootType::E6:
    if (rank != 6)
      throw bad();
    rs.pairing = simply_laced(6, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}});
    rs.table1 = Table1Entry{3, {1, 2, 2, 3, 2, 1}};
    break;
  case RootType::E7:
    if (rank != 7)
      throw bad();
    rs.pairing = simply_laced(7, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}});
    rs.table1 = Table1Entry{5, {2, 2, 3, 4, 3, 2, 1}};
    break;
  case RootType::E8:
    if (rank != 8)
      throw bad();
    rs.pairing = simply_laced(8, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}});
    rs.table1 = Table1Entry{6, {2, 3, 4, 6, 5, 4, 3, 2}};
    break;
  case RootType::F4:
    if (rank != 4)
      throw bad();
    // alpha_1, alpha_2 long; scaled by 2
    rs.pairing = {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    rs.table1 = Table1Entry{0, {2, 3, 4, 2}};
    break;
  case RootType::G2:
    if (rank != 2)
      throw bad();
    // alpha_1 short
    rs.pairing = {{2, -3}, {-3, 6}};
    rs.table1 = Table1Entry{0, {3, 2}};
    break;
  }
  if (!rs.eps_coords.empty())
    rs.pairing = gram_of_eps(rs.eps_coords);

  rs.opposition.resize(rank);
  std::iota(rs.opposition.begin(), rs.opposition.end(), 0);
  if (type == RootType::A) {
    for (int i = 0; i < rank; ++i)
      rs.opposition[i] = rank - 1 - i;
  } else if (type == RootType::D && rank % 2 == 1) {
    std::swap(rs.opposition[rank - 2], rs.opposition[rank - 1]);
  } else if (type == RootType::E6) {
    rs.opposition = {5, 1, 4, 3, 2, 0};
  }
  return rs;
}

std::string RootSystem::label() const { return to_string(type) + std::to_string(rank); }

std::vector<std::vector<long long>> RootSystem::cartan_matrix() const {
  std::vector<std::vector<long long>> a(rank, std::vector<long long>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      a[i][j] = 2 * pairing[i][j] / pairing[i][i];
  return a;
}

long long RootSystem::pair(const std::vector<long long>& coeffs, int j) const {
  long long s = 0;
  for (int i = 0; i < rank; ++i)
    s += coeffs[i] * pairing[i][j];
  return s;
}

Rational RootSystem::pair(const std::vector<Rational>& coeffs, int j) const {
  Rational s(0);
  for (int i = 0; i < rank; ++i)
    s = s + coeffs[i] * Rational(pairing[i][j]);
  return s;
}

std::vector<std::vector<long long>> positive_roots(const RootSystem& rs) {
  const int r = rs.rank;
  const auto a = rs.cartan_matrix();
  std::vector<std::vector<long long>> roots;
  std::set<std::vector<long long>> known;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> e(r, 0);
    e[i] = 1;
    roots.push_back(e);
    known.insert(e);
  }
  // breadth-first by height using alpha-strings: beta + alpha_j is a root iff p - <beta, alpha_j^vee> > 0
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const auto beta = roots[k];
    for (int j = 0; j < r; ++j) {
      long long c = 0; // <beta, alpha_j^vee>
      for (int i = 0; i < r; ++i)
        c += beta[i] * a[j][i];
      int p = 0;
      auto down = beta;
      while (true) {
        down[j] -= 1;
        if (!known.count(down))
          break;
        ++p;
      }
      if (p - c > 0) {
        auto up = beta;
        up[j] += 1;
        if (known.insert(up).second)
          roots.push_back(up);
      }
    }
  }
  if (rs.type == RootType::BC) {
    // doubled short roots 2 eps_i
    std::vector<std::vector<long long>> extra;
    for (const auto& b : roots) {
      long long len = 0;
      for (int i = 0; i < r; ++i)
        len += b[i] * rs.pair(b, i);
      if (len == 1) {
        auto d = b;
        for (auto& x : d)
          x *= 2;
        extra.push_back(d);
      }
    }
    roots.insert(roots.end(), extra.begin(), extra.end());
  }
  std::stable_sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.begin(), x.end(), 0LL) < std::accumulate(y.begin(), y.end(), 0LL);
  });
  return roots;
}

std::vector<long long> highest_root(const RootSystem& rs) {
  const auto roots = positive_roots(rs);
  const auto& top = roots.back();
  // dominance check: top - beta has nonnegative coefficients for every beta
  for (const auto& b : roots)
    for (int i = 0; i < rs.rank; ++i)
      if (top[i] < b[i])
        throw Error("no unique highest root for " + rs.label());
  return top;
}

std::vector<Rational> fundamental_weight(const RootSystem& rs, int i) {
  // solve sum_k c_k (alpha_k, alpha_j) = delta_ij (alpha_j, alpha_j) / 2
  const int r = rs.rank;
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < r; ++k)
      m[j][k] = Rational(rs.pairing[k][j]);
    m[j][r] = j == i ? Rational(rs.pairing[j][j], 2) : Rational(0);
  }
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (m[piv][col].num == 0)
      ++piv;
    std::swap(m[piv], m[col]);
    for (int row = 0; row < r; ++row) {
      if (row == col || m[row][col].num == 0)
        continue;
      const Rational f = m[row][col] / m[col][col];
      for (int k = col; k <= r; ++k)
        m[row][k] = m[row][k] - f * m[col][k];
    }
  }
  std::vector<Rational> c(r);
  for (int k = 0; k < r; ++k)
    c[k] = m[k][r] / m[k][k];
  return c;
}

ThetaSet opposition_star(const RootSystem& rs, ThetaSet theta) {
  std::uint32_t m = 0;
  for (int i : theta.members())
    m |= 1u << rs.opposition[i];
  return ThetaSet(m);
}

// ---------------------------------------------------------------- admissibility

bool is_tau_admissible(const RootSystem& rs, ThetaSet support, ThetaSet theta) {
  const ThetaSet rest = rs.delta() - theta;
  // breadth-first from chi_tau through Delta \ theta
  ThetaSet seen;
  std::queue<int> todo;
  for (int i : (rest & support).members()) {
    seen = seen | ThetaSet(1u << i);
    todo.push(i);
  }
  while (!todo.empty()) {
    const int i = todo.front();
    todo.pop();
    for (int j : rest.members())
      if (!seen.contains(j) && rs.adjacent(i, j)) {
        seen = seen | ThetaSet(1u << j);
        todo.push(j);
      }
  }
  return seen == rest;
}

std::vector<ThetaSet> tau_admissible_sets(const RootSystem& rs, ThetaSet support) {
  if (support.empty())
    throw InvalidArgument("support must be nonempty");
  std::vector<ThetaSet> out;
  const std::uint32_t full = rs.delta().mask();
  for (std::uint32_t m = 0; m <= full; ++m)
    if (is_tau_admissible(rs, support, ThetaSet(m)))
      out.push_back(ThetaSet(m));
  std::sort(out.begin(), out.end());
  return out;
}

NucleusSaturation nucleus_saturation(const RootSystem& rs, ThetaSet support, ThetaSet theta) {
  if (!is_tau_admissible(rs, support, theta))
    throw InvalidArgument("theta " + theta.str() + " is not admissible for support " + support.str());
  const ThetaSet rest = rs.delta() - theta;
  ThetaSet vee = support;
  for (int a = 0; a < rs.rank; ++a)
    for (int b : rest.members())
      if (rs.pairing[a][b] != 0)
        vee = vee | ThetaSet(1u << a);
  return {vee, theta & vee};
}

ThetaSet admissible_closure(const RootSystem& rs, ThetaSet support, ThetaSet theta) {
  ThetaSet acc = rs.delta();
  for (ThetaSet t : tau_admissible_sets(rs, support))
    if (theta.subset_of(t))
      acc = acc & t;
  return acc;
}

AmbiguousClassification::AmbiguousClassification(int r, double v)
    : Error("ambiguous chamber classification at a" + std::to_string(r + 1) + " (tail value " +
            std::to_string(v) + ")"),
      root(r), value(v) {}

ChamberLimit chamber_sequence_limit(const RootSystem& rs, ThetaSet support,
                                    const std::vector<Eigen::VectorXd>& h_seq,
                                    const ChamberThresholds& thr) {
  if (h_seq.empty())
    throw InvalidArgument("empty chamber sequence");
  for (const auto& h : h_seq) {
    if (h.size() != rs.rank)
      throw DimensionMismatch("chamber vector length differs from rank");
    if (h.minCoeff() < -thr.chamber)
      throw InvalidArgument("chamber vector outside the closed positive chamber");
  }
  const int n = int(h_seq.size());
  const int tail = std::max(1, (n + 3) / 4);
  ChamberLimit out;
  for (int j = 0; j < rs.rank; ++j) {
    double lo = h_seq[n - tail](j), hi = lo;
    bool monotone = true;
    for (int k = n - tail; k < n; ++k) {
      lo = std::min(lo, h_seq[k](j));
      hi = std::max(hi, h_seq[k](j));
      if (k > n - tail && h_seq[k](j) < h_seq[k - 1](j))
        monotone = false;
    }
    if (lo >= thr.divergence) {
      out.divergent = out.divergent | ThetaSet(1u << j);
    } else if (hi - lo <= thr.cauchy) {
      continue;
    } else if (hi >= thr.divergence && !monotone) {
      // returns to the bounded region after leaving it: no limit
      out.converges = false;
      return out;
    } else {
      throw AmbiguousClassification(j, h_seq.back()(j));
    }
  }
  out.converges = true;
  out.theta = admissible_closure(rs, support, out.divergent);
  for (int j = 0; j < rs.rank; ++j)
    if (!out.theta.contains(j))
      out.finite_coords[j] = h_seq.back()(j);
  return out;
}

// ---------------------------------------------------------------- highest-root support table

std::vector<RootType> table1_types() {
  return {RootType::A, RootType::B, RootType::C, RootType::BC, RootType::D,
          RootType::E6, RootType::E7, RootType::E8, RootType::F4, RootType::G2};
}

int table1_default_rank(RootType type) {
  switch (type) {
  case RootType::E6: return 6;
  case RootType::E7: return 7;
  case RootType::E8: return 8;
  case RootType::F4: return 4;
  case RootType::G2: return 2;
  case RootType::D: return 5;
  default: return 4;
  }
}

Table1Check check_table1(RootType type, int rank) {
  RootSystem rs = build_root_system(type, rank);
  if (!rs.table1)
    throw InvalidArgument("no support table entry for " + rs.label());
  const auto& e = *rs.table1;
  const ThetaSet printed = ThetaSet(1u << e.alpha_g) | ThetaSet(1u << rs.opposition[e.alpha_g]);
  ThetaSet computed;
  for (int j = 0; j < rank; ++j)
    if (rs.pair(e.chi_g, j) > 0)
      computed = computed | ThetaSet(1u << j);
  const bool highest = highest_root(rs) == e.chi_g;
  std::string row = to_string(type);
  if (type == RootType::A || type == RootType::B || type == RootType::C || type == RootType::BC ||
      type == RootType::D)
    row += "_" + std::to_string(rank);
  return {row, rs, printed, computed, highest, highest && printed == computed};
}

std::vector<Table1Check> check_table1_row(RootType type, int max_rank) {
  std::vector<Table1Check> out;
  switch (type) {
  case RootType::A:
    for (int r = 1; r <= max_rank; ++r)
      out.push_back(check_table1(type, r));
    break;
  case RootType::B:
  case RootType::C:
    for (int r = 2; r <= max_rank; ++r)
      out.push_back(check_table1(type, r));
    break;
  case RootType::BC:
    for (int r = 1; r <= max_rank; ++r)
      out.push_back(check_table1(type, r));
    break;
  case RootType::D:
    for (int r = 4; r <= max_rank; ++r)
      out.push_back(check_table1(type, r));
    break;
  default:
    out.push_back(check_table1(type, table1_default_rank(type)));
  }
  return out;
}

std::string admissible_lattice_dot(const RootSystem& rs, ThetaSet support) {
  const auto sets = tau_admissible_sets(rs, support);
  std::ostringstream os;
  os << "digraph admissible {\n  label=\"" << rs.label() << " support " << support.str() << "\";\n";
  for (std::size_t i = 0; i < sets.size(); ++i)
    os << "  n" << i << " [label=\"" << sets[i].str() << "\"];\n";
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j || !sets[i].subset_of(sets[j]) || sets[i] == sets[j])
        continue;
      bool cover = true;
      for (std::size_t k = 0; k < sets.size() && cover; ++k)
        if (k != i && k != j && sets[i].subset_of(sets[k]) && sets[k].subset_of(sets[j]))
          cover = false;
      if (cover)
        os << "  n" << i << " -> n" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

} // namespace anosov
