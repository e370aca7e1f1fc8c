#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "anosov/bundled.hpp"
#include "anosov/json_io.hpp"
#include "cli.hpp"

using namespace anosov;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("anoctl_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "anoctl");
  return anoctl::run(args);
}

} // namespace

TEST_CASE("json round trips") {
  Mat m(2, 3);
  m << 1, 2, 3, 4, 5, 6.5;
  const Json j = to_json(m);
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::parse("[[1,2,3],[4,5,6.5]]")) == m);
  CHECK_THROWS(matrix_from_json(Json::parse("[[1,2],[3]]")));
  CHECK(to_json(ThetaSet::of({1, 3})) == Json::parse("[1,3]"));
  CHECK(to_json(make_witt_form(2, 1))["p"] == 2);

  const auto gens = schottky_o21();
  const auto back = generators_from_json(generators_to_json(gens));
  REQUIRE(back.size() == 2);
  CHECK(back[1].name == "b");
  CHECK((back[0].m - gens[0].m).norm() == 0.0);
  CHECK((back[0].inv * back[0].m - Mat::Identity(3, 3)).norm() < 1e-6);
}

TEST_CASE("cartan command") {
  TempDir d("cartan");
  {
    std::ofstream in(d / "one.json");
    in << R"([{"rows": 2, "cols": 2, "data": [2, 0, 0, 0.5]}])";
  }
  CHECK(run({"cartan", "--group", "gl2", "--input", d / "one.json", "--out", d.path.string()}) == 0);
  const Json r = read_json_file(d / "cartan.json");
  CHECK(r["schema_version"] == anoctl::schema_version);
  REQUIRE(r["records"].size() == 1);
  CHECK(r["records"][0]["mu"][0].get<double>() == doctest::Approx(std::log(2.0)));
  CHECK(r["records"][0]["gaps"][0].get<double>() == doctest::Approx(2 * std::log(2.0)));

  // a batch keeps its order
  std::mt19937_64 rng(1);
  Json batch = Json::array();
  std::vector<Mat> ms;
  for (int i = 0; i < 100; ++i) {
    ms.push_back(random_element(GroupSpec::opq(2, 1), rng, 1.0));
    batch.push_back(to_json(ms.back()));
  }
  write_text_file(d / "batch.json", batch.dump());
  CHECK(run({"cartan", "--form", "2,1", "--input", d / "batch.json", "--out", d.path.string()}) == 0);
  const Json rb = read_json_file(d / "cartan.json");
  REQUIRE(rb["records"].size() == 100);
  for (int i = 0; i < 100; ++i)
    CHECK(rb["records"][i]["mu"][0].get<double>() ==
          doctest::Approx(cartan_projection(ms[i], GroupSpec::opq(2, 1)).values(0)));

  // not in O(2,1)
  write_text_file(d / "bad.json", "[[[1,1,0],[0,1,0],[0,0,1]]]");
  CHECK(run({"cartan", "--form", "2,1", "--input", d / "bad.json", "--out", d.path.string()}) != 0);
  const Json re = read_json_file(d / "cartan.json");
  CHECK(re["errors"].size() == 1);
  CHECK(re["records"][0].contains("error"));
}

TEST_CASE("ball, divergence and limit set commands") {
  TempDir d("pipeline");
  const std::string out = d.path.string();
  CHECK(run({"ball", "--radius", "2", "--out", out}) == 0);
  CHECK(read_json_file(d / "ball.json")["size"] == 17);
  CHECK(run({"ball", "--radius", "6", "--cap", "50", "--out", out}) != 0);

  CHECK(run({"divergence", "--radius", "5", "--out", out}) == 0);
  CHECK(slurp(d / "divergence.csv").rfind("radius,root,min_gap,word\n", 0) == 0);
  CHECK(read_json_file(d / "divergence.json")["fits"][0]["growth"] == "linear");

  CHECK(run({"limitset", "--radius", "5", "--out", out}) == 0);
  CHECK(slurp(d / "limitset.svg").find("<circle") != std::string::npos);
  const Json l = read_json_file(d / "limitset.json");
  CHECK(l["points"].get<int>() > 4);
  CHECK(l["cylinders"].size() == 4);

  // bundled generators written to disk read back the same
  CHECK(run({"bundled", "--out", out}) == 0);
  CHECK(run({"ball", "--gens", d / "schottky_o21.json", "--radius", "2", "--out", out}) == 0);
  CHECK(read_json_file(d / "ball.json")["size"] == 17);
}

TEST_CASE("domain command") {
  TempDir d("domain");
  const std::string out = d.path.string();
  CHECK(run({"domain", "--radius", "0", "--out", out}) == 0);
  const Json r = read_json_file(d / "domain.json");
  CHECK(r["relation_flags"].empty());
  CHECK(r["limit_points"] == 0);
  CHECK(r["coverage_curve"].size() == 4);

  {
    std::ofstream cfg(d / "run.ini");
    cfg << "radius = 5\nseed = 3\ninterior = 200\nsamples = 20\n";
  }
  CHECK(run({"domain-check", "--config", d / "run.ini", "--out", out}) == 0);
  const Json c = read_json_file(d / "domain.json");
  CHECK(c["seed"] == 3);
  CHECK(c["interior_samples"] == 200);
  CHECK(c["bad_set_hits"].empty());
  CHECK(c["expansion_certificates"].size() == 8);
}

TEST_CASE("orbits and table commands") {
  TempDir d("orbits");
  const std::string out = d.path.string();
  CHECK(run({"orbits", "--type", "A", "--rank", "2", "--out", out}) == 0);
  CHECK(read_json_file(d / "orbits.json")["orbits"].size() == 4);
  CHECK(slurp(d / "orbits.dot").rfind("digraph", 0) == 0);

  run({"table1", "--out", out});
  const Json t = read_json_file(d / "table1.json");
  CHECK(t["rows"].size() == 10);
  int verified = 0;
  for (const auto& row : t["rows"])
    verified += row["verified"].get<bool>();
  CHECK(verified == 6);
  CHECK(t["errors"].size() == 4);

  CHECK(run({"nonsense"}) != 0);
  CHECK(run({"divergence", "--form", "x", "--radius", "1"}) != 0);
  CHECK(run({"ball", "--gens", d / "missing.json"}) != 0);
}
