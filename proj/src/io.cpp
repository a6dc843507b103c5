#include "bethe/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace bethe::io {

namespace {

Rational parse_decimal(std::string_view s) {
  std::string digits;
  long exponent = 0;
  bool negative = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  bool after_point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      after_point = true;
      continue;
    }
    digits.push_back(s[i]);
    if (after_point) --exponent;
  }
  if (i < s.size()) exponent += std::stol(std::string(s.substr(i + 1)));
  Rational value(mpz_class(digits, 10));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    value *= scale;
  else
    value /= scale;
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw InvalidInput("expected a number, got " + j.dump());
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InvalidInput(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput(std::string("missing field '") + name + "'");
  return j.at(name);
}

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw InvalidInput(std::string("field '") + name + "' must be an array");
  return a;
}

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InvalidInput("non-finite number");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  throw InvalidInput("expected a rational, got " + j.dump());
}

Complex complex_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw InvalidInput("complex number must be [re, im]");
    return {real_from_json(j[0]), real_from_json(j[1])};
  }
  return {real_from_json(j), 0.0};
}

Json to_json(const Rational& x) { return format_rational(x); }
Json to_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

Json to_json(std::span<const std::size_t> v) {
  Json out = Json::array();
  for (std::size_t x : v) out.push_back(x);
  return out;
}

WeightedArrangement arrangement_from_json(const Json& j) {
  const std::size_t dim = size_from_json(field(j, "dim"), "dim");
  std::vector<Hyperplane> hyperplanes;
  for (const Json& h : array_field(j, "hyperplanes")) {
    Hyperplane hp;
    hp.b0 = rational_from_json(field(h, "b0"));
    for (const Json& x : array_field(h, "b")) hp.b.push_back(rational_from_json(x));
    hp.label = h.contains("label") ? h.at("label").get<std::string>() : "H" + std::to_string(hyperplanes.size() + 1);
    hyperplanes.push_back(std::move(hp));
  }
  const Json& exps = array_field(j, "exponents");
  const bool exact = std::none_of(exps.begin(), exps.end(), [](const Json& e) { return e.is_array(); });
  if (exact) {
    std::vector<Rational> a;
    for (const Json& e : exps) a.push_back(rational_from_json(e));
    return WeightedArrangement(dim, std::move(hyperplanes), std::move(a));
  }
  std::vector<Complex> a;
  for (const Json& e : exps) a.push_back(complex_from_json(e));
  return WeightedArrangement(dim, std::move(hyperplanes), std::move(a));
}

Json arrangement_to_json(const WeightedArrangement& arr) {
  Json hs = Json::array();
  for (const Hyperplane& h : arr.hyperplanes())
    hs.push_back({{"label", h.label}, {"b0", to_json(h.b0)}, {"b", to_json<Rational>(h.b)}});
  Json out{{"dim", arr.dim()}, {"hyperplanes", hs}};
  out["exponents"] = arr.has_exact_exponents() ? to_json<Rational>(arr.exact_exponents())
                                               : to_json<Complex>(arr.complex_exponents());
  return out;
}

GaudinProblem gaudin_from_json(const Json& j) {
  GaudinProblem p;
  const Json& cartan = field(j, "cartan");
  const std::size_t rank = size_from_json(field(cartan, "rank"), "cartan.rank");
  for (const Json& row : array_field(cartan, "A")) {
    if (!row.is_array()) throw InvalidInput("Cartan matrix rows must be arrays");
    std::vector<int> r;
    for (const Json& x : row) {
      if (!x.is_number_integer()) throw InvalidInput("Cartan matrix entries must be integers");
      r.push_back(x.get<int>());
    }
    p.cartan.cartan.push_back(std::move(r));
  }
  if (cartan.contains("d"))
    for (const Json& x : array_field(cartan, "d")) p.cartan.symmetrizer.push_back(rational_from_json(x));
  else
    p.cartan.symmetrizer.assign(rank, Rational(1));
  if (p.cartan.rank() != rank) throw InvalidInput("cartan.rank does not match the matrix");
  for (const Json& w : array_field(j, "weights")) {
    if (!w.is_array()) throw InvalidInput("each weight must be an array");
    std::vector<Rational> ws;
    for (const Json& x : w) ws.push_back(rational_from_json(x));
    p.weights.push_back(std::move(ws));
  }
  for (const Json& x : array_field(j, "k")) p.k.push_back(size_from_json(x, "k entry"));
  std::vector<Rational> exact;
  bool all_real = true;
  for (const Json& x : array_field(j, "z")) {
    p.z.push_back(complex_from_json(x));
    const Json& re = x.is_array() ? x.at(0) : x;
    const bool real = !x.is_array() || rational_from_json(x.at(1)) == 0;
    all_real = all_real && real;
    if (real) exact.push_back(rational_from_json(re));
  }
  if (all_real) p.z_exact = std::move(exact);
  p.validate();
  return p;
}

Json gaudin_to_json(const GaudinProblem& p) {
  Json a = Json::array();
  for (const auto& row : p.cartan.cartan) a.push_back(row);
  Json weights = Json::array();
  for (const auto& w : p.weights) weights.push_back(to_json<Rational>(w));
  Json k = Json::array();
  for (std::size_t x : p.k) k.push_back(x);
  return {{"cartan", {{"rank", p.cartan.rank()}, {"A", a}, {"d", to_json<Rational>(p.cartan.symmetrizer)}}},
          {"weights", weights},
          {"k", k},
          {"z", to_json<Complex>(p.z)}};
}

}  // namespace bethe::io
