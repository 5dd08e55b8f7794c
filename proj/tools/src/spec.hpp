#pragma once

#include <complex>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pwfd/errors.hpp"

namespace pwfd::cli {

using Json = nlohmann::json;

// Allowed keys of a spec object. A key with children describes a nested
// object (or an array of such objects); a key without children is a leaf.
struct Shape {
  std::vector<std::pair<std::string, Shape>> keys;

  Shape() = default;
  Shape(std::initializer_list<std::pair<std::string, Shape>> k) : keys(k) {}
};

inline std::pair<std::string, Shape> leaf(std::string key) { return {std::move(key), Shape{}}; }

// Throws SpecError naming the first unknown key.
void check_shape(const Json& j, const Shape& shape, const std::string& where = "spec");

Json load_spec(const std::filesystem::path& path);

// Typed access with SpecError on a wrong type.
template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(std::string("spec key '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("spec key '") + key + "' is required");
  return get_or<T>(j, key, T{});
}

// Number or [re, im].
std::complex<double> complex_or(const Json& j, const char* key, std::complex<double> fallback);

}  // namespace pwfd::cli
