#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "anosov/bundled.hpp"
#include "anosov/domain.hpp"
#include "anosov/json_io.hpp"
#include "anosov/satake.hpp"

namespace anoctl {

using namespace anosov;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  std::string form = "2,1";
  std::string group;
  std::string gens = "bundled:schottky";
  std::string input;
  std::string out;
  std::string theta = "1";
  int radius = 8;
  int cap = 100000;
  double tol = default_tol;
  double dedup_tol = 1e-8;
  double min_gap = 1.0;
  double merge_tol = 1e-6;
  double pair_floor = 1e-3;
  std::uint64_t seed = 1;
  // domain
  int samples = 100;
  int interior = 1000;
  int min_len = 0;
  double accumulation_tol = 1e-3;
  double expansion = 2.0;
  int flags = 8;
  int trials = 100;
  int core = 50;
  double d_core = 0.1;
  std::string margins = "0,0.05,0.1,0.2";
  // limit sets
  std::string chart = "0,1";
  int depth = 1;
  // orbits
  std::string type = "B";
  int rank = 3;
  std::string support;
};

struct Report {
  Json json;
  int errors = 0;
  void error(Json rec) {
    ++errors;
    json["errors"].push_back(std::move(rec));
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(std::stod(item));
  return out;
}

ThetaSet parse_theta(const std::string& s) {
  std::vector<int> idx;
  for (double v : parse_list(s))
    idx.push_back(int(v) - 1);
  return ThetaSet::from_indices(idx);
}

GroupSpec parse_group(const RunConfig& c) {
  if (!c.group.empty()) {
    if (c.group.rfind("gl", 0) == 0)
      return GroupSpec::gl(std::stoi(c.group.substr(c.group.find_first_of("0123456789"))));
    throw InvalidArgument("unknown group '" + c.group + "'");
  }
  std::stringstream ss(c.form);
  std::string a, b, f;
  std::getline(ss, a, ',');
  std::getline(ss, b, ',');
  std::getline(ss, f, ',');
  if (a.empty() || b.empty())
    throw InvalidArgument("--form expects P,Q[,C]");
  const int p = std::stoi(a), q = std::stoi(b);
  if (f == "C" || f == "c")
    return GroupSpec::onC(p + q);
  if (!f.empty())
    throw InvalidArgument("unknown field '" + f + "'");
  return GroupSpec::opq(p, q);
}

std::vector<Generator> load_generators(const RunConfig& c) {
  if (c.gens == "bundled:schottky")
    return schottky_o21();
  if (c.gens == "bundled:mixed")
    return mixed_o21();
  return generators_from_json(read_json_file(c.gens));
}

fs::path out_dir(const RunConfig& c) {
  fs::path dir = c.out;
  if (dir.empty()) {
    const char* env = std::getenv("ANOCTL_OUT");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

Json header(const RunConfig& c) {
  return {{"schema_version", schema_version}, {"command", c.command}, {"seed", c.seed}, {"errors", Json::array()}};
}

void write_json(const fs::path& p, const Json& j) { write_text_file(p.string(), j.dump(2) + "\n"); }

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// ------------------------------------------------------------------ cartan

int cmd_cartan(const RunConfig& c) {
  const GroupSpec spec = parse_group(c);
  Report r{header(c)};
  r.json["group"] = spec.label();
  const ThetaSet theta = parse_theta(c.theta);
  r.json["theta"] = to_json(theta);
  if (c.input.empty())
    throw InvalidArgument("cartan needs --input with a JSON list of matrices");
  Json in = read_json_file(c.input);
  const Json& list = in.is_object() && in.contains("matrices") ? in.at("matrices") : in;
  const RootSystem rs = spec.root_system();
  r.json["records"] = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    Json rec = {{"index", i}};
    try {
      const Mat g = matrix_from_json(list[i]);
      const KakTriple t = kak(g, spec);
      rec["mu"] = vec_json(t.mu.values);
      rec["gaps"] = mu_gaps(t.mu, rs);
      try {
        rec["flag_frame"] = to_json(xi_theta(t, spec, theta, c.tol).frame);
      } catch (const GapTooSmall& e) {
        rec["flag_frame"] = nullptr;
        rec["flag_status"] = e.what();
      }
      r.json["records"].push_back(rec);
    } catch (const std::exception& e) {
      rec["error"] = e.what();
      r.json["records"].push_back(rec);
      r.error({{"index", i}, {"error", e.what()}});
    }
  }
  write_json(out_dir(c) / "cartan.json", r.json);
  std::cout << r.json["records"].size() << " records, " << r.errors << " errors\n";
  return r.errors ? 1 : 0;
}

// ------------------------------------------------------------------ ball / divergence

GroupBall make_ball(const RunConfig& c, Report& r) {
  GroupBall ball = enumerate_ball(load_generators(c), c.radius, c.dedup_tol, c.cap);
  if (ball.truncated)
    r.error({{"error", "CapExceeded"}, {"cap", c.cap}, {"radius_reached", ball.radius}});
  return ball;
}

int cmd_ball(const RunConfig& c) {
  Report r{header(c)};
  const GroupBall ball = make_ball(c, r);
  Json sizes = Json::array();
  for (int k = 0; k < ball.sphere_count(); ++k)
    sizes.push_back(ball.sphere_end(k) - ball.sphere_begin(k));
  Json words = Json::array();
  for (const auto& e : ball.elements)
    words.push_back(e.word);
  r.json["radius"] = ball.radius;
  r.json["cap"] = c.cap;
  r.json["truncated"] = ball.truncated;
  r.json["size"] = ball.elements.size();
  r.json["sphere_sizes"] = sizes;
  r.json["words"] = words;
  write_json(out_dir(c) / "ball.json", r.json);
  std::cout << ball.elements.size() << " elements" << (ball.truncated ? " (truncated)" : "") << "\n";
  return r.errors ? 1 : 0;
}

int cmd_divergence(const RunConfig& c) {
  const GroupSpec spec = parse_group(c);
  Report r{header(c)};
  const GroupBall ball = make_ball(c, r);
  const DivergenceProfile prof = divergence_profile(ball, spec);
  std::ostringstream csv;
  csv << std::setprecision(17) << "radius,root,min_gap,word\n";
  for (const auto& rg : prof.per_radius)
    for (std::size_t a = 0; a < rg.min_gap.size(); ++a)
      csv << rg.radius << ",a" << a + 1 << ',' << rg.min_gap[a] << ',' << rg.argmin_word[a] << '\n';
  const fs::path dir = out_dir(c);
  write_text_file((dir / "divergence.csv").string(), csv.str());
  Json fits = Json::array();
  for (std::size_t a = 0; a < prof.fits.size(); ++a) {
    const auto& f = prof.fits[a];
    fits.push_back({{"root", "a" + std::to_string(a + 1)},
                    {"slope", f.slope},
                    {"intercept", f.intercept},
                    {"log_slope", f.log_slope},
                    {"linear_residual", f.linear_residual},
                    {"log_residual", f.log_residual},
                    {"growth", to_string(f.growth)}});
  }
  r.json["group"] = spec.label();
  r.json["ball_size"] = ball.elements.size();
  r.json["fits"] = fits;
  write_json(dir / "divergence.json", r.json);
  std::cout << "slope a1 " << prof.fits[0].slope << "\n";
  return r.errors ? 1 : 0;
}

// ------------------------------------------------------------------ limit sets

Json transversality_json(const TransversalityReport& t) {
  return {{"margin", t.margin}, {"worst_pair", {t.worst_a, t.worst_b}}, {"pairs", t.pairs}, {"excluded", t.excluded}};
}

int cmd_limitset(const RunConfig& c) {
  const GroupSpec spec = parse_group(c);
  Report r{header(c)};
  const GroupBall ball = make_ball(c, r);
  const ThetaSet theta = parse_theta(c.theta);
  const LimitSample s = sample_limit_set(ball, spec, theta, c.min_gap, c.merge_tol);
  const fs::path dir = out_dir(c);
  const auto chart = parse_list(c.chart);
  if (chart.size() != 2)
    throw InvalidArgument("--chart expects two coordinate indices");
  write_text_file((dir / "limitset.csv").string(), limit_sample_csv(s));
  write_text_file((dir / "limitset.svg").string(), limit_sample_svg(s, int(chart[0]), int(chart[1])));
  r.json["group"] = spec.label();
  r.json["theta"] = to_json(theta);
  r.json["points"] = s.points.size();
  if (s.empty()) {
    r.error({{"error", "empty limit sample"}, {"min_gap", c.min_gap}});
  } else {
    r.json["covering_radius"] = s.covering_radius();
    if (spec.form && s.points.size() >= 2)
      r.json["transversality"] = transversality_json(transversality_report(s, *spec.form, c.pair_floor));
    const auto prox = proximal_elements(ball, c.min_gap, 1);
    const auto dyn = dynamics_preserving_check(s, ball, prox);
    r.json["proximal_elements"] = prox.size();
    r.json["dynamics_max_distance"] = dyn.max_distance;
  }
  if (c.depth > 0) {
    Json cyl = Json::array();
    for (const auto& cf : boundary_map_free_group(ball, spec, theta, c.depth))
      cyl.push_back({{"word", cf.word}, {"frame", to_json(cf.flag.frame)}});
    r.json["cylinders"] = cyl;
  }
  write_json(dir / "limitset.json", r.json);
  std::cout << s.points.size() << " limit points\n";
  return r.errors ? 1 : 0;
}

// ------------------------------------------------------------------ domain

int cmd_domain(const RunConfig& c) {
  const GroupSpec spec = parse_group(c);
  if (!spec.form)
    throw InvalidArgument("domain needs --form");
  const WittForm& form = *spec.form;
  Report r{header(c)};
  const GroupBall ball = make_ball(c, r);
  const ThetaSet theta = parse_theta(c.theta);
  const LimitSample s = sample_limit_set(ball, spec, theta, c.min_gap, c.merge_tol);
  std::mt19937_64 rng(c.seed);
  const double cover = s.covering_radius();

  r.json["group"] = spec.label();
  r.json["outside_theorem_hypotheses"] = outside_theorem_hypotheses(form, theta.empty() ? 1 : theta.members()[0] + 1);
  r.json["limit_points"] = s.points.size();
  r.json["covering_radius"] = cover;

  // interior points never meet the bad set
  const auto interior = sample_domain(form, c.interior, rng);
  Json hits = Json::array();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const auto b = in_bad_set(interior[i].frame, s, BadSetVariant::contain, c.tol, cover);
    if (b.hit)
      hits.push_back({{"point", i}, {"witness", s.points[b.witness].word}});
  }
  r.json["interior_samples"] = interior.size();
  r.json["bad_set_hits"] = hits;

  const std::vector<CompactPoint> pts(interior.begin(), interior.begin() + std::min<std::size_t>(c.samples, interior.size()));
  const int min_len = c.min_len > 0 ? c.min_len : ball.radius;
  const RelationScan scan = dynamical_relation_scan(pts, ball, s, min_len, c.accumulation_tol);
  Json flags = Json::array();
  for (const auto& f : scan.flags)
    flags.push_back({{"point", f.point}, {"word", f.word}, {"residual", f.residual}, {"mu_norm", f.mu_norm}});
  r.json["relation_flags"] = flags;
  r.json["relation_pairs"] = scan.pairs;
  r.json["max_residual"] = scan.max_residual;

  Json certs = Json::array();
  const int nf = std::min<int>(c.flags, int(s.points.size()));
  for (int k = 0; k < nf; ++k) {
    const auto& p = s.points[std::size_t(k) * s.points.size() / nf];
    const auto cert = expansion_certificate(p.flag, ray_of(p.letters), ball, form, c.expansion, c.seed + k);
    certs.push_back({{"flag_word", p.word},
                     {"success", cert.success},
                     {"n", cert.n},
                     {"word", cert.word},
                     {"radius", cert.radius},
                     {"factor", cert.factor},
                     {"best_factor", cert.best_factor}});
  }
  r.json["expansion_certificates"] = certs;

  const auto core = sample_domain_away(form, s, c.core, 0.2, rng);
  Json curve = Json::array();
  for (const auto& cp : orbit_coverage(core, ball, s, form, parse_list(c.margins), c.trials, c.d_core, rng))
    curve.push_back({{"margin", cp.margin}, {"sampled", cp.sampled}, {"covered", cp.covered}, {"fraction", cp.fraction()}});
  r.json["coverage_curve"] = curve;

  write_json(out_dir(c) / "domain.json", r.json);
  std::cout << hits.size() << " bad-set hits, " << flags.size() << " relation flags\n";
  return r.errors ? 1 : 0;
}

// ------------------------------------------------------------------ orbits / table 1

int cmd_orbits(const RunConfig& c) {
  Report r{header(c)};
  const RootType t = parse_root_type(c.type);
  const RootSystem rs = build_root_system(t, c.rank);
  const ThetaSet support = c.support.empty() ? rs.delta() : parse_theta(c.support);
  Json orbits = Json::array();
  for (const auto& o : orbit_decomposition(rs, support))
    orbits.push_back({{"theta", to_json(o.theta)},
                      {"theta_vee", to_json(o.theta_vee)},
                      {"theta_dd", to_json(o.theta_dd)},
                      {"boundary_levi_rank", o.boundary_levi_rank},
                      {"closed", o.is_closed},
                      {"open", o.is_open}});
  r.json["root_system"] = rs.label();
  r.json["support"] = to_json(support);
  r.json["orbits"] = orbits;
  const fs::path dir = out_dir(c);
  write_json(dir / "orbits.json", r.json);
  write_text_file((dir / "orbits.dot").string(), admissible_lattice_dot(rs, support));
  std::cout << orbits.size() << " orbits\n";
  return 0;
}

int cmd_table1(const RunConfig& c) {
  Report r{header(c)};
  std::ostringstream txt;
  txt << std::left << std::setw(8) << "row" << std::setw(16) << "printed" << std::setw(16) << "computed"
      << "status\n";
  Json rows = Json::array();
  for (RootType t : table1_types()) {
    const auto checks = check_table1_row(t);
    bool ok = true;
    for (const auto& k : checks)
      ok = ok && k.verified;
    const auto& k = checks.size() == 1 ? checks[0] : check_table1(t, table1_default_rank(t));
    const std::string row = checks.size() == 1 ? k.row : to_string(t);
    txt << std::setw(8) << row << std::setw(16) << k.printed.str() << std::setw(16) << k.computed.str()
        << (ok ? "verified" : "FAILED") << "\n";
    Json ranks = Json::array();
    for (const auto& x : checks)
      ranks.push_back({{"row", x.row},
                       {"printed", to_json(x.printed)},
                       {"computed", to_json(x.computed)},
                       {"chi_is_highest_root", x.chi_is_highest_root},
                       {"verified", x.verified}});
    rows.push_back({{"type", to_string(t)}, {"verified", ok}, {"ranks", ranks}});
    if (!ok)
      r.error({{"row", to_string(t)}, {"error", "computed support differs from the printed entry"}});
  }
  r.json["rows"] = rows;
  const fs::path dir = out_dir(c);
  write_json(dir / "table1.json", r.json);
  write_text_file((dir / "table1.txt").string(), txt.str());
  std::cout << txt.str();
  return r.errors ? 1 : 0;
}

int cmd_bundled(const RunConfig& c) {
  const fs::path dir = out_dir(c);
  write_json(dir / "schottky_o21.json", generators_to_json(schottky_o21()));
  write_json(dir / "mixed_o21.json", generators_to_json(mixed_o21()));
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  return run(int(argv.size()), argv.data());
}

// "key = value" lines become "--key value" placed right after the subcommand, so later flags override them
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[++i];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    else {
      out.push_back(args[i]);
      continue;
    }
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
      if (item.name == "++" || item.name == "--")
        continue;
      from_file.push_back("--" + item.name);
      for (const auto& v : item.inputs)
        from_file.push_back(v);
    }
  }
  if (out.size() >= 2)
    out.insert(out.begin() + 2, from_file.begin(), from_file.end());
  return out;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "anoctl: " << e.what() << "\n";
    return 2;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);

  CLI::App app{"Cartan projections, limit sets, compact domains and Satake orbits"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", "key = value file; flags given on the command line win");
    s->add_option("--form", c.form, "signature P,Q or P,Q,C for the complex group");
    s->add_option("--group", c.group, "glN instead of a form");
    s->add_option("--gens", c.gens, "generator JSON file, bundled:schottky or bundled:mixed");
    s->add_option("--radius", c.radius, "ball radius");
    s->add_option("--cap", c.cap, "ball element cap");
    s->add_option("--tol", c.tol, "rank and incidence tolerance");
    s->add_option("--dedup-tol", c.dedup_tol, "relative matrix deduplication tolerance");
    s->add_option("--seed", c.seed, "seed for every random choice");
    s->add_option("--out", c.out, "output directory (default $ANOCTL_OUT or .)");
    s->add_option("--theta", c.theta, "simple roots, 1-based, comma separated");
    s->add_option("--min-gap", c.min_gap, "gap needed for a limit sample point");
    s->add_option("--merge-tol", c.merge_tol, "flag distance merging limit points");
  };

  auto* cartan = app.add_subcommand("cartan", "batch Cartan projections, gaps and flags");
  common(cartan);
  cartan->add_option("--input", c.input, "JSON list of matrices")->required();
  auto* ball = app.add_subcommand("ball", "enumerate a word ball");
  common(ball);
  auto* div = app.add_subcommand("divergence", "divergence profile CSV");
  common(div);
  auto* lim = app.add_subcommand("limitset", "limit set sample as CSV and SVG");
  common(lim);
  lim->add_option("--pair-floor", c.pair_floor, "pairs closer than this are not tested for transversality");
  lim->add_option("--chart", c.chart, "two standard coordinates for the SVG chart");
  lim->add_option("--depth", c.depth, "cylinder depth of the boundary map (0 to skip)");
  auto* dom = app.add_subcommand("domain", "domain of discontinuity report");
  dom->alias("domain-check");
  common(dom);
  dom->add_option("--samples", c.samples, "domain points scanned for dynamical relations");
  dom->add_option("--interior", c.interior, "interior points tested against the bad set");
  dom->add_option("--min-len", c.min_len, "shortest word scanned (default: the radius)");
  dom->add_option("--accumulation-tol", c.accumulation_tol, "residual counted as accumulation in the bad set");
  dom->add_option("--expansion", c.expansion, "expansion factor c to certify");
  dom->add_option("--flags", c.flags, "limit flags to certify");
  dom->add_option("--trials", c.trials, "points per coverage margin");
  dom->add_option("--core", c.core, "core points");
  dom->add_option("--d-core", c.d_core, "distance to the core counted as covered");
  dom->add_option("--margins", c.margins, "coverage margins, comma separated");
  auto* orb = app.add_subcommand("orbits", "Satake orbit decomposition (dot and JSON)");
  orb->add_option("--type", c.type, "root system type");
  orb->add_option("--rank", c.rank, "rank");
  orb->add_option("--support", c.support, "support, 1-based (default: all simple roots)");
  orb->add_option("--out", c.out, "output directory");
  auto* t1 = app.add_subcommand("table1", "simple roots paired positively with the highest root");
  t1->add_option("--out", c.out, "output directory");
  auto* bun = app.add_subcommand("bundled", "write the bundled generator files");
  bun->add_option("--out", c.out, "output directory");

  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (sub == cartan)
      return cmd_cartan(c);
    if (sub == ball)
      return cmd_ball(c);
    if (sub == div)
      return cmd_divergence(c);
    if (sub == lim)
      return cmd_limitset(c);
    if (sub == dom)
      return cmd_domain(c);
    if (sub == orb)
      return cmd_orbits(c);
    if (sub == t1)
      return cmd_table1(c);
    if (sub == bun)
      return cmd_bundled(c);
  } catch (const std::exception& e) {
    std::cerr << "anoctl: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace anoctl
