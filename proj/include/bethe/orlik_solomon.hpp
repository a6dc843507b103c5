#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "bethe/arrangement.hpp"
#include "bethe/linalg.hpp"

namespace bethe {

/// Element of A^p: coefficients over the validated basis of degree p.
template <class T>
struct OSElement {
  std::size_t degree = 0;
  std::vector<T> coeffs;
};

/// Element of F^p = (A^p)^*: coordinates in the basis dual to the
/// validated basis of A^p.
template <class T>
struct FlagVector {
  std::size_t degree = 0;
  std::vector<T> coords;
};

template <class T>
T pairing(const OSElement<T>& eta, const FlagVector<T>& flag) {
  if (eta.degree != flag.degree) throw InvalidInput("pairing of elements of different degree");
  T acc(0);
  for (std::size_t i = 0; i < eta.coeffs.size(); ++i) acc += eta.coeffs[i] * flag.coords[i];
  return acc;
}

template <class T>
FlagVector<T> convert_flag(const FlagVector<Rational>& f) {
  FlagVector<T> out{f.degree, {}};
  out.coords.reserve(f.coords.size());
  for (const Rational& x : f.coords) out.coords.push_back(from_rational<T>(x));
  return out;
}

/// The Orlik-Solomon algebra of a weighted arrangement in its realization by
/// logarithmic forms w_j = df_j / f_j, together with the dual flag spaces.
///
/// Bases are fixed at construction (nbc sets, cross-checked against the rank
/// of evaluated forms). Straightening of an arbitrary monomial solves the
/// exact linear system given by its values at sample points, so the
/// Orlik-Solomon relations hold without symbolic rewriting. All data is
/// computed eagerly; the object is immutable afterwards.
class OrlikSolomon {
 public:
  explicit OrlikSolomon(WeightedArrangement arr);

  const WeightedArrangement& arrangement() const { return arr_; }
  std::size_t top_degree() const { return arr_.dim(); }

  std::size_t dim(std::size_t p) const { return degrees_.at(p).basis.size(); }
  const std::vector<IndexSet>& basis(std::size_t p) const { return degrees_.at(p).basis; }
  const BasisValidation& validation(std::size_t p) const { return degrees_.at(p).validation; }
  /// Position of a sorted basis set, or dim(p) when it is not a basis element.
  std::size_t basis_index(const IndexSet& s) const;

  /// Expansion of the ordered monomial (H_{j1}, ..., H_{jp}) in basis(p).
  std::vector<Rational> straighten(std::span<const std::size_t> monomial) const;
  OSElement<Rational> monomial_element(std::span<const std::size_t> monomial) const;

  /// Coefficients over basis(k) of the top-degree form u dt_1 ^ ... ^ dt_k.
  /// Throws PreconditionViolation when u is not in the span of the basis
  /// forms (checked at extra sample points).
  std::vector<Rational> expand_top_form(
      const std::function<Rational(std::span<const Rational>)>& u) const;

  /// Sorted general-position k-subsets with their straightened expansions.
  struct TopMonomial {
    IndexSet subset;
    std::vector<Rational> expansion;
  };
  const std::vector<TopMonomial>& top_monomials() const { return top_monomials_; }

  /// Matrix of x -> w(a) . x from A^p to A^{p+1}; 0 <= p < k.
  template <class T>
  Matrix<T> d_A_matrix(std::size_t p) const;

  /// Adjoint of d_A from F^p to F^{p-1}; 1 <= p <= k.
  template <class T>
  Matrix<T> delta_F_matrix(std::size_t p) const;

  /// The flag F(H_{i1}, ..., H_{ip}) as a dual-coordinate vector. The tuple
  /// must be in general position.
  FlagVector<Rational> flag_vector(std::span<const std::size_t> tuple) const;

 private:
  struct Degree {
    BasisValidation validation;
    std::vector<IndexSet> basis;
    std::map<IndexSet, std::size_t> index;
    std::vector<std::vector<Rational>> points;
    std::vector<IndexSet> coord_sets;
    // straightening uses dim(p) evaluation columns where the basis rows
    // are invertible: column c = (point, coordinate subset)
    std::vector<std::pair<std::size_t, std::size_t>> columns;
    Matrix<Rational> inverse;
  };

  Degree build_degree(std::size_t p) const;

  WeightedArrangement arr_;
  std::vector<Degree> degrees_;
  std::vector<TopMonomial> top_monomials_;
};

/// Direct combinatorial pairing <(H_{j1},...,H_{jp}), F(H_{i1},...,H_{ip})>:
/// the sign of the permutation ordering the j's along the flag of the i's,
/// or 0 when no ordering realizes that flag.
int flag_monomial_pairing(const WeightedArrangement& arr, std::span<const std::size_t> monomial,
                          std::span<const std::size_t> flag_tuple);

/// Coefficient u_S(t) of w_{j1} ^ ... ^ w_{jk} against dt_1 ^ ... ^ dt_k:
/// D(j1..jk) / prod f_{jl}(t).
template <class T>
T evaluate_form(const WeightedArrangement& arr, std::span<const std::size_t> subset,
                std::span<const T> t);

/// Basis of Sing F^k = ker delta_F on F^k.
template <class T>
std::vector<FlagVector<T>> singular_basis(const OrlikSolomon& os);

}  // namespace bethe
