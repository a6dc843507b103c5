#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bethe/linalg.hpp"
#include "bethe/scalar.hpp"

namespace bethe {

/// Sorted (or, for monomials, ordered) list of 0-based hyperplane indices.
using IndexSet = std::vector<std::size_t>;

/// Affine hyperplane f(t) = b0 + b[0] t_1 + ... + b[k-1] t_k = 0.
struct Hyperplane {
  Rational b0;
  std::vector<Rational> b;
  std::string label;

  template <class T>
  T evaluate(std::span<const T> t) const {
    T value = from_rational<T>(b0);
    for (std::size_t i = 0; i < b.size(); ++i) value += from_rational<T>(b[i]) * t[i];
    return value;
  }
};

/// A finite arrangement of affine hyperplanes in C^k together with one
/// exponent per hyperplane. Exponents are either exact rationals or complex
/// doubles. Construction validates the data and requires a vertex.
class WeightedArrangement {
 public:
  WeightedArrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                      std::vector<Rational> exponents);
  WeightedArrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                      std::vector<Complex> exponents);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const Hyperplane& hyperplane(std::size_t j) const { return hyperplanes_[j]; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

  bool has_exact_exponents() const { return exact_; }
  /// Throws Unsupported when the exponents are complex.
  const std::vector<Rational>& exact_exponents() const;
  const std::vector<Complex>& complex_exponents() const { return complex_exponents_; }

  /// Exponents converted to the requested scalar type.
  template <class T>
  std::vector<T> exponents() const;

  WeightedArrangement with_exponents(std::vector<Rational> exponents) const;
  WeightedArrangement with_exponents(std::vector<Complex> exponents) const;

 private:
  void validate() const;

  std::size_t dim_;
  std::vector<Hyperplane> hyperplanes_;
  bool exact_;
  std::vector<Rational> exact_exponents_;
  std::vector<Complex> complex_exponents_;
};

template <>
std::vector<Rational> WeightedArrangement::exponents<Rational>() const;
template <>
std::vector<Complex> WeightedArrangement::exponents<Complex>() const;

struct SubsetRankReport {
  IndexSet subset;
  std::size_t coeff_rank = 0;
  bool consistent = true;
  bool general_position = true;
};

SubsetRankReport rank_report(const WeightedArrangement& arr, std::span<const std::size_t> subset);

bool general_position(const WeightedArrangement& arr, std::span<const std::size_t> subset);

/// True when some k-subset meets in a single point (for k = 0 always true).
bool has_vertex(const WeightedArrangement& arr);

/// Minimal subsets that are not in general position, up to size k + 1,
/// sorted by size then lexicographically.
std::vector<IndexSet> circuits(const WeightedArrangement& arr);

/// All p-subsets in general position, lexicographic.
std::vector<IndexSet> general_position_sets(const WeightedArrangement& arr, std::size_t p);

/// No-broken-circuit p-sets with respect to input order, lexicographic.
/// Broken circuits come from circuits with a nonempty intersection;
/// inconsistent subsets are excluded by the general-position requirement.
std::vector<IndexSet> nbc_sets(const WeightedArrangement& arr, std::size_t p);

/// Determinant of the coefficient rows of `tuple` restricted to the
/// coordinate columns `coords` (|tuple| == |coords|), in tuple order.
Rational coefficient_minor(const WeightedArrangement& arr, std::span<const std::size_t> tuple,
                           std::span<const std::size_t> coords);

/// Deterministic pseudo-random rational points off the arrangement (fixed
/// seed). Points on a common curve are avoided on purpose: restricted to a
/// curve, independent forms can become dependent.
std::vector<std::vector<Rational>> sample_points(const WeightedArrangement& arr, std::size_t count);

/// Values of the p-form w_{j1} ^ ... ^ w_{jp} (w_j = df_j / f_j) at the
/// given points, one entry per (point, increasing coordinate p-subset).
std::vector<Rational> form_evaluation_row(const WeightedArrangement& arr,
                                          std::span<const std::size_t> tuple,
                                          std::span<const std::vector<Rational>> points);

/// Outcome of checking the nbc basis in degree p against the rank of
/// evaluated logarithmic forms.
struct BasisValidation {
  std::size_t degree = 0;
  std::vector<IndexSet> nbc;
  std::size_t oracle_rank = 0;
  bool agrees = true;
  /// nbc when it agrees with the oracle, otherwise the greedy
  /// lexicographic maximal independent subset of monomial rows.
  std::vector<IndexSet> basis;
};

BasisValidation validate_basis(const WeightedArrangement& arr, std::size_t p);

/// dim A^p for p = 0..k from the validated bases.
std::vector<std::size_t> os_dimensions(const WeightedArrangement& arr);

long euler_characteristic(const WeightedArrangement& arr);

/// Increasing p-subsets of {0, ..., n-1} in lexicographic order.
std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t p);

}  // namespace bethe
