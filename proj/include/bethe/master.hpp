#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bethe/arrangement.hpp"
#include "bethe/linalg.hpp"

namespace bethe {

/// Coordinate permutation g: (g t)_{perm[i]} = t_i.
using Permutation = std::vector<std::size_t>;

std::vector<Complex> apply_permutation(const Permutation& g, std::span<const Complex> t);
int permutation_parity(const Permutation& g);

/// Gradient of ln Phi: component i = sum_j a_j b^i_j / f_j(t).
template <class T>
std::vector<T> log_grad(const WeightedArrangement& arr, std::span<const T> t);

/// Hessian of ln Phi: entry (i, l) = -sum_j a_j b^i_j b^l_j / f_j(t)^2.
template <class T>
Matrix<T> log_hessian(const WeightedArrangement& arr, std::span<const T> t);

/// Hess^(a)(t) = det log_hessian(t); 1 for k = 0.
template <class T>
T hessian_determinant(const WeightedArrangement& arr, std::span<const T> t);

struct CriticalPoint {
  std::vector<Complex> t;
  double grad_residual = 0.0;
  Complex hess_det;
  bool nondegenerate = false;
  std::optional<std::size_t> orbit_id;
};

enum class NewtonFailure { kHyperplaneCollision, kSingularJacobian, kMaxIterations, kNonFinite };

std::string to_string(NewtonFailure f);

struct DivergenceReport {
  NewtonFailure cause;
  std::size_t iterations = 0;
  std::vector<Complex> last;
};

struct NewtonOptions {
  double tol = 1e-12;
  std::size_t max_iter = 50;
  double collision = 1e-12;
};

using NewtonResult = std::variant<CriticalPoint, DivergenceReport>;

/// Newton iteration on log_grad with log_hessian as Jacobian. Throws
/// PreconditionViolation when t0 lies on a hyperplane.
NewtonResult newton_solve(const WeightedArrangement& arr, std::span<const Complex> t0,
                          const NewtonOptions& opts = {});

/// Threshold |hess_det| > 1e-8 * scale^k with scale = median |f_j(t)|^-2.
bool is_nondegenerate(const WeightedArrangement& arr, std::span<const Complex> t, Complex hess_det);

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t n_starts = 200;
  /// 0 selects twice the largest coordinate magnitude among the hyperplanes.
  double box_radius = 0.0;
  double dedup_tol = 1e-6;
  NewtonOptions newton;
};

struct CriticalSearch {
  std::vector<CriticalPoint> points;  // sorted by rounded coordinates
  long chi = 0;
  std::size_t converged_starts = 0;
  std::size_t found() const { return points.size(); }
  bool matches_chi() const { return static_cast<long>(points.size()) == (chi < 0 ? -chi : chi); }
};

/// Seeded multi-start Newton search followed by deduplication.
CriticalSearch find_critical_points(const WeightedArrangement& arr, const SearchOptions& opts = {});

/// Orbit label per point: two points share a label when some group element
/// maps one to the other within tol. Labels are assigned in input order.
std::vector<std::size_t> group_orbits(std::span<const std::vector<Complex>> points,
                                      std::span<const Permutation> group, double tol);

/// All permutations of {0..k-1} preserving the blocks [0,b0), [b0,b0+b1), ...
std::vector<Permutation> block_permutation_group(std::span<const std::size_t> block_sizes);

}  // namespace bethe
