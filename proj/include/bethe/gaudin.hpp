#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bethe/master.hpp"
#include "bethe/orlik_solomon.hpp"
#include "bethe/special.hpp"

namespace bethe {

/// Cartan matrix with symmetrizers d_i; (alpha_i, alpha_j) = d_i a_ij.
struct CartanDatum {
  std::vector<std::vector<int>> cartan;
  std::vector<Rational> symmetrizer;

  std::size_t rank() const { return cartan.size(); }
  Rational root_product(std::size_t i, std::size_t j) const { return symmetrizer[i] * cartan[i][j]; }
  bool is_sl2() const { return rank() == 1; }
  void validate() const;

  static CartanDatum sl2();
};

/// Exponent carried by the hyperplane t_i - t_j = 0 in the discriminantal
/// arrangement. kMasterFunction uses +(alpha_c(i), alpha_c(j)), the exponent
/// of (t_i - t_j) in the master function; kLiteralRule uses the negated value.
enum class PairExponentConvention { kMasterFunction, kLiteralRule };

struct GaudinProblem {
  CartanDatum cartan;
  /// weights[s][i] = <Lambda_s, H_i>.
  std::vector<std::vector<Rational>> weights;
  /// k_1..k_r.
  std::vector<std::size_t> k;
  std::vector<Complex> z;
  /// Present when every z_s is real and known exactly.
  std::optional<std::vector<Rational>> z_exact;

  std::size_t n() const { return weights.size(); }
  std::size_t total_k() const;
  /// Level function c: {0..k-1} -> {0..r-1}, non-decreasing, |c^{-1}(i)| = k_i.
  std::vector<std::size_t> level() const;
  /// (alpha_i, Lambda_s) = <Lambda_s, H_i> d_i.
  Rational root_weight_product(std::size_t i, std::size_t s) const;
  /// Highest weights m_s of an sl2 problem; throws Unsupported otherwise.
  std::vector<std::size_t> sl2_weights() const;

  template <class T>
  std::vector<T> z_as() const;

  void validate() const;

  static GaudinProblem sl2(std::vector<std::size_t> m, std::size_t k, std::vector<Rational> z);
  static GaudinProblem sl2(std::vector<std::size_t> m, std::size_t k, std::vector<Complex> z);
};

/// Hyperplanes t_i - z_s (index i * n + s) followed by t_i - t_j (i < j),
/// weighted by -(alpha_c(i), Lambda_s) and +-(alpha_c(i), alpha_c(j)).
WeightedArrangement build_discriminantal(const GaudinProblem& p,
                                         PairExponentConvention convention = PairExponentConvention::kMasterFunction);

std::size_t point_hyperplane_index(const GaudinProblem& p, std::size_t i, std::size_t s);

/// Left-hand sides of the Bethe equations.
template <class T>
std::vector<T> bethe_residual(const GaudinProblem& p, std::span<const T> t);

/// Second derivatives of ln Phi(t, z) in t, computed from the problem data.
template <class T>
Matrix<T> bethe_hessian(const GaudinProblem& p, std::span<const T> t);

/// Multidegrees (j_1..j_n) with sum = level and j_s <= m_s, lexicographic.
std::vector<std::vector<std::size_t>> weight_space_basis(std::span<const std::size_t> m, std::size_t level);

/// Vector of V[Lambda - level * alpha] over the F^{j_1} v (x) ... (x) F^{j_n} v basis.
template <class T>
struct TensorVector {
  std::size_t level = 0;
  std::vector<T> coords;
};

/// omega(z, t) = sum_I sum_sigma omega_{I, sigma}(t) F_I v, sl2 only.
template <class T>
TensorVector<T> canonical_weight_function(const GaudinProblem& p, std::span<const T> t);

/// S(F^j v, F^j v) = j! m (m-1) ... (m-j+1).
Rational sl2_shapovalov_norm(std::size_t m, std::size_t j);

template <class T>
T tensor_shapovalov(const GaudinProblem& p, const TensorVector<T>& x, const TensorVector<T>& y);

/// Total sl2 actions between weight spaces (target rows, source columns).
template <class T>
Matrix<T> raising_operator(const GaudinProblem& p, std::size_t level);  // V[level] -> V[level-1]
template <class T>
Matrix<T> lowering_operator(const GaudinProblem& p, std::size_t level);  // V[level] -> V[level+1]
template <class T>
Matrix<T> cartan_operator(const GaudinProblem& p, std::size_t level);

/// K_i(z) = sum_{j != i} Omega^{(i,j)} / (z_i - z_j) on V[level], with
/// Omega = e (x) f + f (x) e + h (x) h / 2.
template <class T>
Matrix<T> gaudin_hamiltonian(const GaudinProblem& p, std::size_t i, std::size_t level);

/// dim Sing V[level] = dim ker of the raising operator on V[level].
std::size_t singular_space_dimension(const GaudinProblem& p, std::size_t level);

struct BetheReport {
  double raising_residual = 0.0;          // |e omega| / |omega|
  std::vector<Complex> eigenvalues;       // Rayleigh quotients of K_i
  std::vector<double> eigen_residuals;    // |K_i omega - lambda_i omega| / |omega|
  Complex norm_lhs;                       // S(omega, omega)
  Complex norm_rhs;                       // det d^2 ln Phi / dt^2
  double norm_rel_err = 0.0;
  std::optional<double> orthogonality;    // |S(w1, w2)| / sqrt(|S(w1,w1)| |S(w2,w2)|)
  bool pass = false;
};

/// Checks a Bethe vector at a nondegenerate critical point t; `other` is an
/// optional critical point from a different orbit.
BetheReport verify_bethe(const GaudinProblem& p, std::span<const Complex> t,
                         std::optional<std::span<const Complex>> other = std::nullopt, double tol = 1e-8);

/// Gram matrix of Bethe vectors under the tensor Shapovalov form.
struct BetheGram {
  Matrix<Complex> gram;
  Complex determinant;
  Complex hessian_product;  // prod_i det d^2 ln Phi at the points
  std::size_t rank = 0;
  double relative_error = 0.0;  // |det - hessian_product| / |hessian_product|
};

BetheGram bethe_gram(const GaudinProblem& p, std::span<const std::vector<Complex>> points, double rank_tol = 1e-8);

/// Largest entry of [K_i, K_j] over all pairs on V[level]; exact z required.
Rational max_commutator(const GaudinProblem& p, std::size_t level);

/// Flag f_{I, sigma} of the discriminantal arrangement as a hyperplane tuple.
std::vector<std::size_t> composition_flag_tuple(const GaudinProblem& p, std::span<const std::size_t> composition,
                                                std::span<const std::size_t> sigma);

/// f_I = (1 / prod k_i!) sum_sigma (-1)^|sigma| f_{I, sigma}, sl2 only.
FlagVector<Rational> composition_flag(const GaudinProblem& p, const OrlikSolomon& os,
                                      std::span<const std::size_t> composition);

struct ShapCorrespondence {
  std::vector<std::vector<std::size_t>> basis;
  Matrix<Rational> module_side;       // S_V(F_I v, F_J v)
  Matrix<Rational> arrangement_side;  // (-1)^k S^(a)(f_I, f_J)
  std::optional<Rational> ratio;      // common module / arrangement ratio, if any
  Rational expected_factor;           // k_1! ... k_r!
  bool pass = false;                  // module = expected_factor * arrangement for all pairs
};

ShapCorrespondence verify_shap_correspondence(const GaudinProblem& p,
                                              PairExponentConvention convention = PairExponentConvention::kMasterFunction);

struct CanonicalElementReport {
  double weight_function_error = 0.0;  // omega vs direct chain-sum evaluation
  double duality_error = 0.0;          // max |<eta_I, f_J> - delta_IJ|
  double projection_error = 0.0;       // |p_sign v(t) - sum_I omega_I(t) f_I| relative
  Complex module_norm;                 // S_V(omega, omega)
  Complex arrangement_norm;            // (-1)^k k! S^(a)(v^-, v^-)
  double norm_rel_err = 0.0;
  bool pass = false;
};

/// Exact z required; t must avoid the discriminantal arrangement.
CanonicalElementReport verify_canonical_element(const GaudinProblem& p, std::span<const Rational> t,
                                                double tol = 1e-10);

}  // namespace bethe
