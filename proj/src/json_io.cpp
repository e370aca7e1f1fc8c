#include "anosov/json_io.hpp"

#include <fstream>
#include <sstream>

namespace anosov {

Json to_json(const Mat& m) {
  Json data = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      data.push_back(m(i, j));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Mat matrix_from_json(const Json& j) {
  if (j.is_array()) {
    // nested rows are accepted as well
    const int r = int(j.size());
    if (r == 0)
      throw InvalidArgument("empty matrix");
    const int c = int(j[0].size());
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
      if (int(j[i].size()) != c)
        throw InvalidArgument("ragged matrix rows");
      for (int k = 0; k < c; ++k)
        m(i, k) = j[i][k].get<double>();
    }
    return m;
  }
  const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
  const auto& d = j.at("data");
  if (int(d.size()) != r * c)
    throw InvalidArgument("matrix data has " + std::to_string(d.size()) + " entries, expected " +
                          std::to_string(r * c));
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k)
      m(i, k) = d[i * c + k].get<double>();
  return m;
}

Json to_json(const Frame& f) { return to_json(f.columns()); }

Json to_json(const WittForm& f) {
  Json j = to_json(f.gram());
  j["p"] = f.p();
  j["q"] = f.q();
  j["field"] = to_string(f.field());
  return j;
}

Json to_json(ThetaSet t) {
  Json a = Json::array();
  for (int m : t.members())
    a.push_back(m + 1);
  return a;
}

std::vector<Generator> generators_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("generators") ? j.at("generators") : j;
  if (!list.is_array() || list.empty())
    throw InvalidArgument("generator file must hold a nonempty list");
  std::vector<Generator> out;
  for (const auto& g : list) {
    const std::string name = g.at("name").get<std::string>();
    out.push_back(make_generator(name, matrix_from_json(g.contains("matrix") ? g.at("matrix") : g)));
  }
  return out;
}

Json generators_to_json(const std::vector<Generator>& gens) {
  Json a = Json::array();
  for (const auto& g : gens)
    a.push_back({{"name", g.name}, {"matrix", to_json(g.m)}});
  return a;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path);
  out << text;
}

} // namespace anosov
