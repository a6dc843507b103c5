#pragma once

#include <span>
#include <vector>

#include "bethe/master.hpp"
#include "bethe/orlik_solomon.hpp"
#include "bethe/shapovalov.hpp"

namespace bethe {

/// Special vector v(t) in F^k: its dual coordinates are u_S(t) for the basis
/// monomials S, so that <eta, v(t)> = u_eta(t) for every eta in A^k.
template <class T>
FlagVector<T> specialize(const OrlikSolomon& os, std::span<const T> t);

struct SingularCheck {
  double delta_norm = 0.0;  // |delta_F v(t)| / (|delta_F|_F |v(t)|)
  double grad_norm = 0.0;   // |grad ln Phi| / sum_j |a_j| |b_j| / |f_j(t)|
  bool is_critical = false;
  bool is_singular = false;
  bool pass = false;  // criticality and singularity agree
};

template <class T>
SingularCheck verify_singular(const OrlikSolomon& os, std::span<const T> t, double tol);

template <class T>
struct NormCheck {
  T lhs;  // S(v(t), v(t)) through the flag space
  T rhs;  // (-1)^k Hess^(a)(t)
  double abs_err = 0.0;
  bool pass = false;
};

/// Exact equality for Rational; |lhs - rhs| <= rel_tol * max(1, |rhs|) otherwise.
template <class T>
NormCheck<T> verify_norm_identity(const OrlikSolomon& os, std::span<const T> t, double rel_tol = 1e-9);

struct OrthogonalityCheck {
  Complex value;
  double normalized = 0.0;  // |value| / sqrt(|S(v1,v1)| |S(v2,v2)|)
  bool pass = false;
};

OrthogonalityCheck verify_orthogonality(const WeightedArrangement& arr, std::span<const Complex> t1,
                                        std::span<const Complex> t2, double tol);

/// Gram matrix of special vectors at the given points under S^(a).
struct GramReport {
  Matrix<Complex> gram;
  Complex determinant;
  Complex diagonal_product;
  std::size_t rank = 0;
  double relative_error = 0.0;  // |det - prod diag| / |prod diag|
};

GramReport special_gram(const WeightedArrangement& arr, std::span<const std::vector<Complex>> points,
                        double rank_tol = 1e-8);

/// Character of a one-dimensional (or, guarded, higher) representation,
/// listed in the order of the group elements.
struct GroupCharacter {
  std::vector<Complex> values;
  std::size_t dimension = 1;

  static GroupCharacter trivial(std::size_t order);
  static GroupCharacter sign(std::span<const Permutation> group);
};

/// A finite group of coordinate permutations preserving a weighted
/// arrangement, with the induced permutations of hyperplanes.
class SymmetryAction {
 public:
  SymmetryAction(const WeightedArrangement& arr, std::vector<Permutation> group);

  std::size_t order() const { return group_.size(); }
  const std::vector<Permutation>& group() const { return group_; }
  /// pi with g(H_j) = H_{pi[j]}.
  const std::vector<std::size_t>& hyperplane_permutation(std::size_t g) const { return induced_[g]; }
  /// rho_g = sign of the coordinate permutation.
  int rho(std::size_t g) const { return permutation_parity(group_[g]); }

  /// R_g on F^k in dual coordinates: (R_g F)_S = <g^{-1} S, F>.
  template <class T>
  Matrix<T> representation(const OrlikSolomon& os, std::size_t g) const;

  template <class T>
  FlagVector<T> apply(const OrlikSolomon& os, std::size_t g, const FlagVector<T>& f) const;

 private:
  std::vector<Permutation> group_;
  std::vector<std::vector<std::size_t>> induced_;
  std::vector<std::vector<std::size_t>> inverse_induced_;
};

/// p = (d / |G|) sum_g conj(chi(g)) R_g; only d = 1 is supported.
template <class T>
FlagVector<T> isotypic_project(const OrlikSolomon& os, const SymmetryAction& action,
                               const GroupCharacter& character, const FlagVector<T>& f);

struct IsotypicNormCheck {
  Complex lhs;  // S(p v(t), p v(t))
  Complex rhs;  // c (-1)^k Hess(t)
  Complex c_factor;
  double abs_err = 0.0;
  bool pass = false;
};

/// Requires the orbit of t to have |G| points.
IsotypicNormCheck verify_isotypic_norm(const OrlikSolomon& os, const SymmetryAction& action,
                                       const GroupCharacter& character, std::span<const Complex> t,
                                       double rel_tol = 1e-8);

}  // namespace bethe
