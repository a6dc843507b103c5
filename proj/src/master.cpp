#include "bethe/master.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace bethe {

std::vector<Complex> apply_permutation(const Permutation& g, std::span<const Complex> t) {
  std::vector<Complex> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[g[i]] = t[i];
  return out;
}

int permutation_parity(const Permutation& g) {
  std::vector<std::size_t> v = g;
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    while (v[i] != i) {
      std::swap(v[i], v[v[i]]);
      sign = -sign;
    }
  return sign;
}

template <class T>
std::vector<T> log_grad(const WeightedArrangement& arr, std::span<const T> t) {
  const std::vector<T> a = arr.exponents<T>();
  std::vector<T> g(arr.dim());
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const Hyperplane& h = arr.hyperplane(j);
    const T f = h.evaluate<T>(t);
    if (ScalarTraits<T>::is_zero(f, 0.0)) throw PreconditionViolation("point on arrangement");
    const T w = a[j] / f;
    for (std::size_t i = 0; i < arr.dim(); ++i)
      if (sgn(h.b[i]) != 0) g[i] += from_rational<T>(h.b[i]) * w;
  }
  return g;
}

template <class T>
Matrix<T> log_hessian(const WeightedArrangement& arr, std::span<const T> t) {
  const std::vector<T> a = arr.exponents<T>();
  const std::size_t k = arr.dim();
  Matrix<T> hess(k, k);
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const Hyperplane& h = arr.hyperplane(j);
    const T f = h.evaluate<T>(t);
    if (ScalarTraits<T>::is_zero(f, 0.0)) throw PreconditionViolation("point on arrangement");
    const T w = a[j] / (f * f);
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(h.b[i]) == 0) continue;
      const T wi = w * from_rational<T>(h.b[i]);
      for (std::size_t l = 0; l < k; ++l)
        if (sgn(h.b[l]) != 0) hess(i, l) -= wi * from_rational<T>(h.b[l]);
    }
  }
  return hess;
}

template <class T>
T hessian_determinant(const WeightedArrangement& arr, std::span<const T> t) {
  return determinant(log_hessian<T>(arr, t));
}

std::string to_string(NewtonFailure f) {
  switch (f) {
    case NewtonFailure::kHyperplaneCollision: return "hyperplane collision";
    case NewtonFailure::kSingularJacobian: return "singular jacobian";
    case NewtonFailure::kMaxIterations: return "max iterations";
    case NewtonFailure::kNonFinite: return "non-finite iterate";
  }
  return "unknown";
}

namespace {

double min_abs_f(const WeightedArrangement& arr, std::span<const Complex> t) {
  double m = INFINITY;
  for (const Hyperplane& h : arr.hyperplanes()) m = std::min(m, std::abs(h.evaluate<Complex>(t)));
  return m;
}

bool finite(std::span<const Complex> t) {
  return std::all_of(t.begin(), t.end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

// Newton on G = g(t) * prod_j f_j(t). The roots of G off the arrangement are
// the critical points, but unlike g it does not vanish at infinity, so
// iterates are not pulled away. Jacobian / prod f = J_g + g c^T with
// c = sum_j b_j / f_j.
std::optional<std::vector<Complex>> cleared_newton(const WeightedArrangement& arr, std::vector<Complex> t,
                                                   const NewtonOptions& opts) {
  constexpr std::size_t kIterations = 60;
  for (std::size_t iter = 0; iter < kIterations; ++iter) {
    const std::vector<Complex> g = log_grad<Complex>(arr, t);
    Matrix<Complex> jac = log_hessian<Complex>(arr, t);
    std::vector<Complex> c(arr.dim());
    for (const Hyperplane& h : arr.hyperplanes()) {
      const Complex inv = 1.0 / h.evaluate<Complex>(t);
      for (std::size_t l = 0; l < c.size(); ++l) c[l] += h.b[l].get_d() * inv;
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t l = 0; l < c.size(); ++l) jac(i, l) += g[i] * c[l];
    std::vector<Complex> rhs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
    std::vector<Complex> step;
    try {
      step = solve(jac, std::span<const Complex>(rhs), 1e-14);
    } catch (const PreconditionViolation&) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += step[i];
    if (!finite(t) || min_abs_f(arr, t) < opts.collision) return std::nullopt;
    if (norm2<Complex>(step) <= 1e-10 * (1.0 + norm2<Complex>(t))) break;
  }
  return t;
}

}  // namespace

bool is_nondegenerate(const WeightedArrangement& arr, std::span<const Complex> t, Complex hess_det) {
  if (arr.dim() == 0) return std::abs(hess_det) > 0.0;
  std::vector<double> inv_sq;
  for (const Hyperplane& h : arr.hyperplanes()) {
    const double f = std::abs(h.evaluate<Complex>(t));
    inv_sq.push_back(1.0 / (f * f));
  }
  std::nth_element(inv_sq.begin(), inv_sq.begin() + inv_sq.size() / 2, inv_sq.end());
  const double scale = inv_sq[inv_sq.size() / 2];
  return std::abs(hess_det) > 1e-8 * std::pow(scale, static_cast<double>(arr.dim()));
}

NewtonResult newton_solve(const WeightedArrangement& arr, std::span<const Complex> t0,
                          const NewtonOptions& opts) {
  if (t0.size() != arr.dim()) throw InvalidInput("start point has wrong dimension");
  if (min_abs_f(arr, t0) < opts.collision) throw PreconditionViolation("start point on arrangement");
  std::vector<Complex> t(t0.begin(), t0.end());
  for (std::size_t iter = 0; iter <= opts.max_iter; ++iter) {
    const std::vector<Complex> g = log_grad<Complex>(arr, t);
    const double residual = norm2<Complex>(g);
    if (residual <= opts.tol) {
      CriticalPoint cp;
      cp.t = t;
      cp.grad_residual = residual;
      cp.hess_det = hessian_determinant<Complex>(arr, t);
      cp.nondegenerate = is_nondegenerate(arr, t, cp.hess_det);
      return cp;
    }
    if (iter == opts.max_iter) break;
    std::vector<Complex> step;
    try {
      std::vector<Complex> rhs(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
      step = solve(log_hessian<Complex>(arr, t), std::span<const Complex>(rhs), 1e-14);
    } catch (const PreconditionViolation&) {
      return DivergenceReport{NewtonFailure::kSingularJacobian, iter, t};
    }
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += step[i];
    if (!finite(t)) return DivergenceReport{NewtonFailure::kNonFinite, iter + 1, t};
    if (min_abs_f(arr, t) < opts.collision)
      return DivergenceReport{NewtonFailure::kHyperplaneCollision, iter + 1, t};
  }
  return DivergenceReport{NewtonFailure::kMaxIterations, opts.max_iter, t};
}

CriticalSearch find_critical_points(const WeightedArrangement& arr, const SearchOptions& opts) {
  CriticalSearch search;
  search.chi = euler_characteristic(arr);
  double radius = opts.box_radius;
  if (radius <= 0.0) {
    double largest = 1.0;
    for (const Hyperplane& h : arr.hyperplanes()) {
      double bmax = 0.0;
      for (const Rational& x : h.b) bmax = std::max(bmax, std::abs(x.get_d()));
      largest = std::max(largest, std::abs(h.b0.get_d()) / bmax);
    }
    radius = 2.0 * largest;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> real_part(-radius, radius);
  std::uniform_real_distribution<double> imag_part(0.05 * radius, radius);
  std::bernoulli_distribution imag_sign(0.5);

  std::vector<CriticalPoint> found;
  for (std::size_t s = 0; s < opts.n_starts; ++s) {
    std::vector<Complex> t0(arr.dim());
    for (Complex& x : t0) {
      const double re = real_part(rng);
      const double im = imag_part(rng);
      x = {re, imag_sign(rng) ? im : -im};
    }
    if (min_abs_f(arr, t0) < opts.newton.collision) continue;
    std::optional<std::vector<Complex>> start = cleared_newton(arr, t0, opts.newton);
    if (!start) continue;
    NewtonResult r = newton_solve(arr, *start, opts.newton);
    if (auto* cp = std::get_if<CriticalPoint>(&r)) {
      ++search.converged_starts;
      found.push_back(std::move(*cp));
    }
    if (arr.dim() == 0) break;
  }

  const auto key = [](const CriticalPoint& p) {
    std::vector<double> k;
    for (const Complex& x : p.t) {
      k.push_back(std::round(x.real() * 1e6) / 1e6);
      k.push_back(std::round(x.imag() * 1e6) / 1e6);
    }
    return k;
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const CriticalPoint& a, const CriticalPoint& b) { return key(a) < key(b); });
  for (CriticalPoint& p : found) {
    const bool duplicate = std::any_of(search.points.begin(), search.points.end(), [&](const CriticalPoint& q) {
      std::vector<Complex> d(p.t.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = p.t[i] - q.t[i];
      return norm2<Complex>(d) < opts.dedup_tol;
    });
    if (!duplicate) search.points.push_back(std::move(p));
  }
  return search;
}

std::vector<std::size_t> group_orbits(std::span<const std::vector<Complex>> points,
                                      std::span<const Permutation> group, double tol) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(points.size(), kUnset);
  std::size_t next = 0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (label[p] != kUnset) continue;
    label[p] = next;
    for (const Permutation& g : group) {
      const std::vector<Complex> image = apply_permutation(g, points[p]);
      for (std::size_t q = p + 1; q < points.size(); ++q) {
        if (label[q] != kUnset) continue;
        std::vector<Complex> d(image.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = image[i] - points[q][i];
        if (norm2<Complex>(d) < tol) label[q] = next;
      }
    }
    ++next;
  }
  return label;
}

std::vector<Permutation> block_permutation_group(std::span<const std::size_t> block_sizes) {
  std::vector<Permutation> group{Permutation{}};
  std::size_t offset = 0;
  for (std::size_t size : block_sizes) {
    std::vector<std::size_t> block(size);
    std::iota(block.begin(), block.end(), offset);
    std::vector<Permutation> next;
    for (const Permutation& g : group) {
      std::vector<std::size_t> perm = block;
      do {
        Permutation h = g;
        h.insert(h.end(), perm.begin(), perm.end());
        next.push_back(std::move(h));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    group = std::move(next);
    offset += size;
  }
  return group;
}

template std::vector<Rational> log_grad(const WeightedArrangement&, std::span<const Rational>);
template std::vector<Complex> log_grad(const WeightedArrangement&, std::span<const Complex>);
template Matrix<Rational> log_hessian(const WeightedArrangement&, std::span<const Rational>);
template Matrix<Complex> log_hessian(const WeightedArrangement&, std::span<const Complex>);
template Rational hessian_determinant(const WeightedArrangement&, std::span<const Rational>);
template Complex hessian_determinant(const WeightedArrangement&, std::span<const Complex>);

}  // namespace bethe
