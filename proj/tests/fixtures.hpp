#pragma once

#include <string>
#include <vector>

#include "bethe/gaudin.hpp"

namespace fixtures {

using bethe::Complex;
using bethe::Hyperplane;
using bethe::Rational;
using bethe::WeightedArrangement;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline Hyperplane line(Rational b0, std::vector<Rational> b, std::string label = "") {
  return {std::move(b0), std::move(b), std::move(label)};
}

// t1 = 0, t2 = 0, t1 + t2 - 1 = 0
inline std::vector<Hyperplane> generic3() {
  return {line(0, {1, 0}, "x"), line(0, {0, 1}, "y"), line(-1, {1, 1}, "x+y-1")};
}

inline std::vector<Hyperplane> generic4() {
  auto h = generic3();
  h.push_back(line(-2, {1, -3}, "x-3y-2"));
  return h;
}

inline std::vector<Hyperplane> concurrent3() {
  return {line(0, {1, 0}), line(0, {0, 1}), line(0, {1, 1})};
}

inline WeightedArrangement generic3_weighted() {
  return WeightedArrangement(2, generic3(), std::vector<Rational>{q(1, 2), q(1, 3), q(2, 7)});
}

inline WeightedArrangement generic4_weighted() {
  return WeightedArrangement(2, generic4(), std::vector<Rational>{q(1, 2), q(1, 3), q(2, 7), q(3, 5)});
}

inline WeightedArrangement points(const std::vector<Rational>& z, std::vector<Rational> a) {
  std::vector<Hyperplane> h;
  for (const Rational& x : z) h.push_back(line(-x, {1}));
  return WeightedArrangement(1, std::move(h), std::move(a));
}

// Deterministic rational points of U.
inline std::vector<std::vector<Rational>> rational_points(const WeightedArrangement& arr, std::size_t count,
                                                          long salt = 0) {
  std::vector<std::vector<Rational>> out;
  for (long n = 1; out.size() < count; ++n) {
    std::vector<Rational> t(arr.dim());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = q((n * 37 + static_cast<long>(i) * 101 + salt * 13) % 53 - 26, (n * 7 + static_cast<long>(i) + salt) % 9 + 2);
    bool on = false;
    for (const Hyperplane& h : arr.hyperplanes()) on = on || sgn(h.evaluate<Rational>(t)) == 0;
    if (!on) out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<Complex> to_complex(const std::vector<Rational>& t) {
  std::vector<Complex> out;
  for (const Rational& x : t) out.emplace_back(x.get_d(), 0.0);
  return out;
}

}  // namespace fixtures
