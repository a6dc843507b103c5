#pragma once

#include <span>

#include "bethe/orlik_solomon.hpp"

namespace bethe {

/// Gram matrix of the Shapovalov form on F^k in dual coordinates:
/// sum over general-position k-subsets S of prod a(H) * s_S s_S^T, where
/// s_S is the expansion of the monomial S in the basis of A^k.
template <class T>
Matrix<T> shapovalov_matrix(const OrlikSolomon& os);

template <class T>
T shapovalov_form(const OrlikSolomon& os, const FlagVector<T>& f1, const FlagVector<T>& f2);

/// Same value through a precomputed Gram matrix.
template <class T>
T shapovalov_form(const Matrix<T>& gram, const FlagVector<T>& f1, const FlagVector<T>& f2);

/// The Shapovalov map F^k -> A^k; <shapovalov_map(F1), F2> = S(F1, F2).
template <class T>
OSElement<T> shapovalov_map(const OrlikSolomon& os, const FlagVector<T>& f);

/// Closed form of S(v(t1), v(t2)):
///   sum over k-subsets of D(j1..jk)^2 prod_l a(H_jl) / (f_jl(t1) f_jl(t2)).
/// Subsets with D = 0 are skipped.
template <class T>
T special_pairing(const WeightedArrangement& arr, std::span<const T> t1, std::span<const T> t2);

}  // namespace bethe
