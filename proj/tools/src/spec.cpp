#include "spec.hpp"

#include <fstream>
#include <sstream>

namespace pwfd::cli {

void check_shape(const Json& j, const Shape& shape, const std::string& where) {
  if (!j.is_object()) throw SpecError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const Shape* child = nullptr;
    for (const auto& [name, s] : shape.keys) {
      if (name == key) child = &s;
    }
    if (!child) throw SpecError("unknown key '" + key + "' in " + where);
    if (child->keys.empty()) continue;
    if (value.is_object()) {
      check_shape(value, *child, where + "." + key);
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object()) {
          check_shape(value[i], *child, where + "." + key + "[" + std::to_string(i) + "]");
        }
      }
    }
  }
}

Json load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::complex<double> complex_or(const Json& j, const char* key, std::complex<double> fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw SpecError(std::string("spec key '") + key + "' must be a number or [re, im]");
}

}  // namespace pwfd::cli
