#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "anosov/limits.hpp"
#include "anosov/roots.hpp"
#include "anosov/words.hpp"

namespace anosov {

using Json = nlohmann::json;

// {"rows": n, "cols": k, "data": [row-major doubles]}
Json to_json(const Mat& m);
Mat matrix_from_json(const Json& j);
Json to_json(const Frame& f);
Json to_json(const WittForm& f);
Json to_json(ThetaSet t);

// generator files: [{"name": "a", "matrix": {...}}, ...]; inverses are computed
std::vector<Generator> generators_from_json(const Json& j);
Json generators_to_json(const std::vector<Generator>& gens);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace anosov
