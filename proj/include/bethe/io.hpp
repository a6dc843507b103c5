#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bethe/gaudin.hpp"

namespace bethe::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json read_file(const std::filesystem::path& path);

/// Accepts "p/q" strings, JSON integers, and finite JSON decimals (read
/// through their shortest decimal spelling).
Rational rational_from_json(const Json& j);
/// [re, im] pair (entries numbers or rational strings), or a bare real.
Complex complex_from_json(const Json& j);

Json to_json(const Rational& x);
Json to_json(const Complex& x);
template <class T>
Json to_json(std::span<const T> v) {
  Json out = Json::array();
  for (const T& x : v) out.push_back(to_json(x));
  return out;
}
Json to_json(std::span<const std::size_t> v);

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json<T>(m.row(i)));
  return out;
}

WeightedArrangement arrangement_from_json(const Json& j);
Json arrangement_to_json(const WeightedArrangement& arr);

/// z entries that are all real yield an exact z as well.
GaudinProblem gaudin_from_json(const Json& j);
Json gaudin_to_json(const GaudinProblem& p);

}  // namespace bethe::io
