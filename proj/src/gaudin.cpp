#include "bethe/gaudin.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bethe {

void CartanDatum::validate() const {
  const std::size_t r = rank();
  if (r == 0) throw InvalidInput("Cartan matrix is empty");
  if (symmetrizer.size() != r) throw InvalidInput("symmetrizer length does not match Cartan rank");
  for (std::size_t i = 0; i < r; ++i) {
    if (cartan[i].size() != r) throw InvalidInput("Cartan matrix is not square");
    if (cartan[i][i] != 2) throw InvalidInput("Cartan matrix diagonal must be 2");
    if (sgn(symmetrizer[i]) <= 0) throw InvalidInput("symmetrizers must be positive");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (root_product(i, j) != root_product(j, i)) throw InvalidInput("symmetrized Cartan matrix is not symmetric");
}

CartanDatum CartanDatum::sl2() { return {{{2}}, {Rational(1)}}; }

std::size_t GaudinProblem::total_k() const { return std::accumulate(k.begin(), k.end(), std::size_t{0}); }

std::vector<std::size_t> GaudinProblem::level() const {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < k.size(); ++i) c.insert(c.end(), k[i], i);
  return c;
}

Rational GaudinProblem::root_weight_product(std::size_t i, std::size_t s) const {
  return weights[s][i] * cartan.symmetrizer[i];
}

std::vector<std::size_t> GaudinProblem::sl2_weights() const {
  if (!cartan.is_sl2()) throw Unsupported("module-level computations are implemented for sl2 only");
  std::vector<std::size_t> m;
  for (const auto& w : weights) {
    if (w[0].get_den() != 1 || sgn(w[0]) < 0) throw Unsupported("sl2 module weights must be nonnegative integers");
    m.push_back(w[0].get_num().get_ui());
  }
  return m;
}

template <>
std::vector<Complex> GaudinProblem::z_as<Complex>() const {
  return z;
}

template <>
std::vector<Rational> GaudinProblem::z_as<Rational>() const {
  if (!z_exact) throw Unsupported("exact computation needs real rational z");
  return *z_exact;
}

void GaudinProblem::validate() const {
  cartan.validate();
  if (weights.empty()) throw InvalidInput("at least one weight is required");
  for (const auto& w : weights)
    if (w.size() != cartan.rank()) throw InvalidInput("weight length does not match Cartan rank");
  if (k.size() != cartan.rank()) throw InvalidInput("k length does not match Cartan rank");
  if (z.size() != weights.size()) throw InvalidInput("z length does not match number of weights");
  if (z_exact && z_exact->size() != z.size()) throw InvalidInput("exact z length mismatch");
  for (std::size_t s = 0; s < z.size(); ++s)
    for (std::size_t u = s + 1; u < z.size(); ++u) {
      const bool equal = z_exact ? (*z_exact)[s] == (*z_exact)[u] : z[s] == z[u];
      if (equal) throw InvalidInput("repeated z");
    }
}

GaudinProblem GaudinProblem::sl2(std::vector<std::size_t> m, std::size_t k, std::vector<Rational> z) {
  GaudinProblem p;
  p.cartan = CartanDatum::sl2();
  for (std::size_t ms : m) p.weights.push_back({Rational(static_cast<long>(ms))});
  p.k = {k};
  for (const Rational& x : z) p.z.emplace_back(x.get_d(), 0.0);
  p.z_exact = std::move(z);
  p.validate();
  return p;
}

GaudinProblem GaudinProblem::sl2(std::vector<std::size_t> m, std::size_t k, std::vector<Complex> z) {
  GaudinProblem p;
  p.cartan = CartanDatum::sl2();
  for (std::size_t ms : m) p.weights.push_back({Rational(static_cast<long>(ms))});
  p.k = {k};
  p.z = std::move(z);
  p.validate();
  return p;
}

std::size_t point_hyperplane_index(const GaudinProblem& p, std::size_t i, std::size_t s) { return i * p.n() + s; }

WeightedArrangement build_discriminantal(const GaudinProblem& p, PairExponentConvention convention) {
  p.validate();
  const std::vector<Rational> z = p.z_as<Rational>();
  const std::size_t k = p.total_k();
  const std::vector<std::size_t> c = p.level();
  std::vector<Hyperplane> hyperplanes;
  std::vector<Rational> exponents;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t s = 0; s < p.n(); ++s) {
      Hyperplane h{-z[s], std::vector<Rational>(k), "t" + std::to_string(i + 1) + "-z" + std::to_string(s + 1)};
      h.b[i] = 1;
      hyperplanes.push_back(std::move(h));
      exponents.push_back(-p.root_weight_product(c[i], s));
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Hyperplane h{Rational(0), std::vector<Rational>(k), "t" + std::to_string(i + 1) + "-t" + std::to_string(j + 1)};
      h.b[i] = 1;
      h.b[j] = -1;
      hyperplanes.push_back(std::move(h));
      const Rational product = p.cartan.root_product(c[i], c[j]);
      exponents.push_back(convention == PairExponentConvention::kMasterFunction ? product : Rational(-product));
    }
  return WeightedArrangement(k, std::move(hyperplanes), std::move(exponents));
}

template <class T>
std::vector<T> bethe_residual(const GaudinProblem& p, std::span<const T> t) {
  const std::vector<T> z = p.z_as<T>();
  const std::vector<std::size_t> c = p.level();
  const std::size_t k = p.total_k();
  if (t.size() != k) throw InvalidInput("point has wrong dimension");
  std::vector<T> r(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = 0; s < p.n(); ++s) {
      const Rational w = p.root_weight_product(c[i], s);
      if (sgn(w) == 0) continue;
      const T d = t[i] - z[s];
      if (ScalarTraits<T>::is_zero(d, 0.0)) throw PreconditionViolation("t collides with z");
      r[i] -= from_rational<T>(w) / d;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const Rational w = p.cartan.root_product(c[i], c[j]);
      if (sgn(w) == 0) continue;
      const T d = t[i] - t[j];
      if (ScalarTraits<T>::is_zero(d, 0.0)) throw PreconditionViolation("coordinates of t collide");
      r[i] += from_rational<T>(w) / d;
    }
  }
  return r;
}

template <class T>
Matrix<T> bethe_hessian(const GaudinProblem& p, std::span<const T> t) {
  const std::vector<T> z = p.z_as<T>();
  const std::vector<std::size_t> c = p.level();
  const std::size_t k = p.total_k();
  if (t.size() != k) throw InvalidInput("point has wrong dimension");
  Matrix<T> h(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = 0; s < p.n(); ++s) {
      const T d = t[i] - z[s];
      if (ScalarTraits<T>::is_zero(d, 0.0)) throw PreconditionViolation("t collides with z");
      h(i, i) += from_rational<T>(p.root_weight_product(c[i], s)) / (d * d);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const T d = t[i] - t[j];
      if (ScalarTraits<T>::is_zero(d, 0.0)) throw PreconditionViolation("coordinates of t collide");
      const T w = from_rational<T>(p.cartan.root_product(c[i], c[j])) / (d * d);
      h(i, i) -= w;
      h(i, j) += w;
    }
  }
  return h;
}

std::vector<std::vector<std::size_t>> weight_space_basis(std::span<const std::size_t> m, std::size_t level) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(m.size());
  // suffix capacity bounds the search
  std::vector<std::size_t> capacity(m.size() + 1, 0);
  for (std::size_t s = m.size(); s-- > 0;) capacity[s] = capacity[s + 1] + m[s];
  auto recurse = [&](auto&& self, std::size_t s, std::size_t remaining) -> void {
    if (s == m.size()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (std::size_t j = 0; j <= std::min(m[s], remaining); ++j) {
      if (remaining - j > capacity[s + 1]) continue;
      current[s] = j;
      self(self, s + 1, remaining - j);
    }
    current[s] = 0;
  };
  recurse(recurse, 0, level);
  return out;
}

namespace {

std::map<std::vector<std::size_t>, std::size_t> index_of(const std::vector<std::vector<std::size_t>>& basis) {
  std::map<std::vector<std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t k) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// 1 / ((t_{i1} - t_{i2}) ... (t_{i(j-1)} - t_{ij}) (t_{ij} - z))
template <class T>
T chain(std::span<const std::size_t> idx, std::span<const T> t, const T& z) {
  if (idx.empty()) return T(1);
  T denom(1);
  for (std::size_t l = 0; l + 1 < idx.size(); ++l) denom *= t[idx[l]] - t[idx[l + 1]];
  denom *= t[idx.back()] - z;
  if (ScalarTraits<T>::is_zero(denom, 0.0)) throw PreconditionViolation("t lies on the discriminantal arrangement");
  return T(1) / denom;
}

template <class T>
T chain_sum(const GaudinProblem& p, std::span<const std::size_t> composition, std::span<const T> t,
            std::span<const T> z, const std::vector<std::vector<std::size_t>>& perms) {
  T total(0);
  for (const auto& sigma : perms) {
    T term(1);
    std::size_t offset = 0;
    for (std::size_t s = 0; s < p.n(); ++s) {
      term *= chain<T>(std::span<const std::size_t>(sigma).subspan(offset, composition[s]), t, z[s]);
      offset += composition[s];
    }
    total += term;
  }
  return total;
}

}  // namespace

template <class T>
TensorVector<T> canonical_weight_function(const GaudinProblem& p, std::span<const T> t) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const std::size_t k = p.total_k();
  if (t.size() != k) throw InvalidInput("point has wrong dimension");
  const std::vector<T> z = p.z_as<T>();
  const auto basis = weight_space_basis(m, k);
  const auto perms = all_permutations(k);
  TensorVector<T> omega{k, std::vector<T>(basis.size())};
  for (std::size_t b = 0; b < basis.size(); ++b)
    omega.coords[b] = chain_sum<T>(p, basis[b], t, std::span<const T>(z), perms);
  return omega;
}

Rational sl2_shapovalov_norm(std::size_t m, std::size_t j) {
  Rational value = 1;
  for (std::size_t l = 1; l <= j; ++l) value *= Rational(static_cast<long>(l * (m - l + 1)));
  return j > m ? Rational(0) : value;
}

template <class T>
T tensor_shapovalov(const GaudinProblem& p, const TensorVector<T>& x, const TensorVector<T>& y) {
  if (x.level != y.level) throw InvalidInput("tensor vectors of different weight");
  const std::vector<std::size_t> m = p.sl2_weights();
  const auto basis = weight_space_basis(m, x.level);
  if (x.coords.size() != basis.size() || y.coords.size() != basis.size())
    throw InvalidInput("tensor vector has wrong length");
  T total(0);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Rational norm = 1;
    for (std::size_t s = 0; s < m.size(); ++s) norm *= sl2_shapovalov_norm(m[s], basis[b][s]);
    total += x.coords[b] * y.coords[b] * from_rational<T>(norm);
  }
  return total;
}

template <class T>
Matrix<T> raising_operator(const GaudinProblem& p, std::size_t level) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const auto src = weight_space_basis(m, level);
  if (level == 0) return Matrix<T>(0, src.size());
  const auto dst = weight_space_basis(m, level - 1);
  const auto idx = index_of(dst);
  Matrix<T> e(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (std::size_t s = 0; s < m.size(); ++s) {
      const std::size_t j = src[c][s];
      if (j == 0) continue;
      std::vector<std::size_t> target = src[c];
      --target[s];
      e(idx.at(target), c) += from_rational<T>(Rational(static_cast<long>(j * (m[s] - j + 1))));
    }
  return e;
}

template <class T>
Matrix<T> lowering_operator(const GaudinProblem& p, std::size_t level) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const auto src = weight_space_basis(m, level);
  const auto dst = weight_space_basis(m, level + 1);
  const auto idx = index_of(dst);
  Matrix<T> f(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (src[c][s] == m[s]) continue;
      std::vector<std::size_t> target = src[c];
      ++target[s];
      f(idx.at(target), c) += T(1);
    }
  return f;
}

template <class T>
Matrix<T> cartan_operator(const GaudinProblem& p, std::size_t level) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const auto basis = weight_space_basis(m, level);
  Matrix<T> h(basis.size(), basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    long weight = 0;
    for (std::size_t s = 0; s < m.size(); ++s)
      weight += static_cast<long>(m[s]) - 2 * static_cast<long>(basis[b][s]);
    h(b, b) = from_rational<T>(Rational(weight));
  }
  return h;
}

template <class T>
Matrix<T> gaudin_hamiltonian(const GaudinProblem& p, std::size_t i, std::size_t level) {
  const std::vector<std::size_t> m = p.sl2_weights();
  if (i >= m.size()) throw InvalidInput("Hamiltonian index out of range");
  const std::vector<T> z = p.z_as<T>();
  const auto basis = weight_space_basis(m, level);
  const auto idx = index_of(basis);
  Matrix<T> k_i(basis.size(), basis.size());
  const auto as_t = [](long v) { return from_rational<T>(Rational(v)); };
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j == i) continue;
    const T inv = T(1) / (z[i] - z[j]);
    const long mi = static_cast<long>(m[i]);
    const long mj = static_cast<long>(m[j]);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const long a = static_cast<long>(basis[c][i]);
      const long b = static_cast<long>(basis[c][j]);
      // e^(i) f^(j)
      if (a > 0 && b < mj) {
        std::vector<std::size_t> target = basis[c];
        --target[i];
        ++target[j];
        k_i(idx.at(target), c) += as_t(a * (mi - a + 1)) * inv;
      }
      // f^(i) e^(j)
      if (b > 0 && a < mi) {
        std::vector<std::size_t> target = basis[c];
        ++target[i];
        --target[j];
        k_i(idx.at(target), c) += as_t(b * (mj - b + 1)) * inv;
      }
      // h^(i) h^(j) / 2
      k_i(c, c) += from_rational<T>(Rational((mi - 2 * a) * (mj - 2 * b), 2)) * inv;
    }
  }
  return k_i;
}

std::size_t singular_space_dimension(const GaudinProblem& p, std::size_t level) {
  const Matrix<Rational> e = raising_operator<Rational>(p, level);
  return e.cols() - rank(e);
}

namespace {

double relative_norm(std::span<const Complex> v, std::span<const Complex> ref) {
  return norm2<Complex>(v) / norm2<Complex>(ref);
}

}  // namespace

BetheReport verify_bethe(const GaudinProblem& p, std::span<const Complex> t,
                         std::optional<std::span<const Complex>> other, double tol) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const std::vector<Complex> z = p.z_as<Complex>();
  const std::size_t k = p.total_k();
  if (t.size() != k) throw InvalidInput("point has wrong dimension");
  constexpr double kCollision = 1e-10;
  std::vector<double> inv_sq;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = 0; s < z.size(); ++s) {
      const double d = std::abs(t[i] - z[s]);
      if (d < kCollision) throw Unsupported("critical point coordinate coincides with some z");
      inv_sq.push_back(1.0 / (d * d));
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = std::abs(t[i] - t[j]);
      if (d < kCollision) throw Unsupported("critical point has colliding coordinates");
      inv_sq.push_back(1.0 / (d * d));
    }
  }
  BetheReport report;
  report.norm_rhs = determinant(bethe_hessian<Complex>(p, t));
  if (k > 0) {
    std::nth_element(inv_sq.begin(), inv_sq.begin() + inv_sq.size() / 2, inv_sq.end());
    const double scale = inv_sq[inv_sq.size() / 2];
    if (std::abs(report.norm_rhs) <= 1e-8 * std::pow(scale, static_cast<double>(k)))
      throw Unsupported("critical point is degenerate");
  }
  const TensorVector<Complex> omega = canonical_weight_function<Complex>(p, t);
  const std::span<const Complex> w(omega.coords);
  if (k > 0) {
    const std::vector<Complex> ew = multiply(raising_operator<Complex>(p, k), w);
    report.raising_residual = relative_norm(ew, w);
  }
  Complex ww = 0.0;
  for (const Complex& x : w) ww += std::conj(x) * x;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::vector<Complex> kw = multiply(gaudin_hamiltonian<Complex>(p, i, k), w);
    Complex num = 0.0;
    for (std::size_t b = 0; b < w.size(); ++b) num += std::conj(w[b]) * kw[b];
    const Complex lambda = num / ww;
    std::vector<Complex> r(w.size());
    for (std::size_t b = 0; b < w.size(); ++b) r[b] = kw[b] - lambda * w[b];
    report.eigenvalues.push_back(lambda);
    report.eigen_residuals.push_back(relative_norm(r, w));
  }
  report.norm_lhs = tensor_shapovalov(p, omega, omega);
  report.norm_rel_err = std::abs(report.norm_lhs - report.norm_rhs) / std::abs(report.norm_rhs);
  if (other) {
    const TensorVector<Complex> omega2 = canonical_weight_function<Complex>(p, *other);
    const Complex cross = tensor_shapovalov(p, omega, omega2);
    const double s2 = std::abs(tensor_shapovalov(p, omega2, omega2));
    report.orthogonality = std::abs(cross) / std::sqrt(std::abs(report.norm_lhs) * s2);
  }
  report.pass = report.raising_residual <= tol && report.norm_rel_err <= tol &&
                std::all_of(report.eigen_residuals.begin(), report.eigen_residuals.end(),
                            [&](double r) { return r <= tol; }) &&
                (!report.orthogonality || *report.orthogonality <= tol);
  return report;
}

BetheGram bethe_gram(const GaudinProblem& p, std::span<const std::vector<Complex>> points, double rank_tol) {
  const std::size_t n = points.size();
  std::vector<TensorVector<Complex>> omega;
  for (const auto& t : points) omega.push_back(canonical_weight_function<Complex>(p, std::span<const Complex>(t)));
  BetheGram out;
  out.gram = Matrix<Complex>(n, n);
  out.hessian_product = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.hessian_product *= determinant(bethe_hessian<Complex>(p, std::span<const Complex>(points[i])));
    for (std::size_t j = i; j < n; ++j) {
      const Complex s = tensor_shapovalov(p, omega[i], omega[j]);
      out.gram(i, j) = s;
      out.gram(j, i) = s;
    }
  }
  out.determinant = determinant(out.gram);
  out.rank = rank(out.gram, rank_tol);
  out.relative_error = std::abs(out.determinant - out.hessian_product) / std::abs(out.hessian_product);
  return out;
}

Rational max_commutator(const GaudinProblem& p, std::size_t level) {
  std::vector<Matrix<Rational>> k;
  for (std::size_t i = 0; i < p.n(); ++i) k.push_back(gaudin_hamiltonian<Rational>(p, i, level));
  Rational worst = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      const Matrix<Rational> c = k[i] * k[j] - k[j] * k[i];
      for (std::size_t r = 0; r < c.rows(); ++r)
        for (const Rational& x : c.row(r)) worst = std::max(worst, Rational(abs(x)));
    }
  return worst;
}

std::vector<std::size_t> composition_flag_tuple(const GaudinProblem& p, std::span<const std::size_t> composition,
                                                std::span<const std::size_t> sigma) {
  std::vector<std::size_t> tuple;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < p.n(); ++s) {
    for (std::size_t l = 0; l < composition[s]; ++l) tuple.push_back(point_hyperplane_index(p, sigma[offset + l], s));
    offset += composition[s];
  }
  return tuple;
}

namespace {

Rational factorial_product(const std::vector<std::size_t>& k) {
  Rational f = 1;
  for (std::size_t ki : k)
    for (std::size_t l = 2; l <= ki; ++l) f *= Rational(static_cast<long>(l));
  return f;
}

}  // namespace

FlagVector<Rational> composition_flag(const GaudinProblem& p, const OrlikSolomon& os,
                                      std::span<const std::size_t> composition) {
  p.sl2_weights();
  const std::size_t k = p.total_k();
  FlagVector<Rational> f{k, std::vector<Rational>(os.dim(k))};
  for (const auto& sigma : all_permutations(k)) {
    const FlagVector<Rational> flag = os.flag_vector(composition_flag_tuple(p, composition, sigma));
    const int sign = permutation_parity(sigma);
    for (std::size_t i = 0; i < f.coords.size(); ++i) f.coords[i] += sign * flag.coords[i];
  }
  const Rational scale = 1 / factorial_product(p.k);
  for (Rational& x : f.coords) x *= scale;
  return f;
}

ShapCorrespondence verify_shap_correspondence(const GaudinProblem& p, PairExponentConvention convention) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const std::size_t k = p.total_k();
  const OrlikSolomon os(build_discriminantal(p, convention));
  const Matrix<Rational> gram = shapovalov_matrix<Rational>(os);
  ShapCorrespondence out;
  out.basis = weight_space_basis(m, k);
  const std::size_t n = out.basis.size();
  out.module_side = Matrix<Rational>(n, n);
  out.arrangement_side = Matrix<Rational>(n, n);
  out.expected_factor = factorial_product(p.k);
  std::vector<FlagVector<Rational>> flags;
  for (const auto& comp : out.basis) flags.push_back(composition_flag(p, os, comp));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      TensorVector<Rational> x{k, std::vector<Rational>(n)}, y{k, std::vector<Rational>(n)};
      x.coords[i] = 1;
      y.coords[j] = 1;
      out.module_side(i, j) = tensor_shapovalov(p, x, y);
      const Rational s = shapovalov_form(gram, flags[i], flags[j]);
      out.arrangement_side(i, j) = k % 2 == 0 ? s : Rational(-s);
    }
  bool consistent = true;
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < n && consistent; ++i)
    for (std::size_t j = 0; j < n && consistent; ++j) {
      const Rational& mv = out.module_side(i, j);
      const Rational& av = out.arrangement_side(i, j);
      if (sgn(av) == 0) {
        consistent = sgn(mv) == 0;
        continue;
      }
      const Rational r = mv / av;
      if (!ratio) ratio = r;
      consistent = *ratio == r;
    }
  if (consistent) out.ratio = ratio;
  out.pass = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.pass = out.pass && out.module_side(i, j) == out.expected_factor * out.arrangement_side(i, j);
  return out;
}

CanonicalElementReport verify_canonical_element(const GaudinProblem& p, std::span<const Rational> t, double tol) {
  const std::vector<std::size_t> m = p.sl2_weights();
  const std::size_t k = p.total_k();
  const std::vector<Rational> z = p.z_as<Rational>();
  const OrlikSolomon os(build_discriminantal(p));
  const auto basis = weight_space_basis(m, k);
  const auto perms = all_permutations(k);
  CanonicalElementReport report;

  const TensorVector<Rational> omega = canonical_weight_function<Rational>(p, t);
  std::vector<std::vector<Rational>> eta;  // expansions of the chain-sum forms
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto& comp = basis[b];
    eta.push_back(os.expand_top_form([&](std::span<const Rational> s) {
      return chain_sum<Rational>(p, comp, s, std::span<const Rational>(z), perms);
    }));
    Rational via_forms = 0;
    for (std::size_t i = 0; i < eta.back().size(); ++i)
      via_forms += eta.back()[i] * evaluate_form<Rational>(os.arrangement(), os.basis(k)[i], t);
    report.weight_function_error = std::max(report.weight_function_error, std::abs(Rational(via_forms - omega.coords[b]).get_d()));
  }

  std::vector<FlagVector<Rational>> flags;
  for (const auto& comp : basis) flags.push_back(composition_flag(p, os, comp));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Rational pairing_ij = pairing(OSElement<Rational>{k, eta[i]}, flags[j]);
      const Rational expected = i == j ? 1 : 0;
      report.duality_error = std::max(report.duality_error, std::abs(Rational(pairing_ij - expected).get_d()));
    }

  const SymmetryAction action(os.arrangement(), block_permutation_group(p.k));
  const GroupCharacter sign = GroupCharacter::sign(action.group());
  const FlagVector<Rational> v_minus = isotypic_project<Rational>(os, action, sign, specialize<Rational>(os, t));
  FlagVector<Rational> assembled{k, std::vector<Rational>(os.dim(k))};
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (std::size_t i = 0; i < assembled.coords.size(); ++i) assembled.coords[i] += omega.coords[b] * flags[b].coords[i];
  std::vector<Rational> diff(assembled.coords.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = v_minus.coords[i] - assembled.coords[i];
  const double ref = std::max(norm2<Rational>(v_minus.coords), 1e-300);
  report.projection_error = norm2<Rational>(diff) / ref;

  const Rational module_norm = tensor_shapovalov(p, omega, omega);
  Rational arrangement_norm = factorial_product(p.k) * shapovalov_form<Rational>(os, v_minus, v_minus);
  if (k % 2 == 1) arrangement_norm = -arrangement_norm;
  report.module_norm = to_complex(module_norm);
  report.arrangement_norm = to_complex(arrangement_norm);
  report.norm_rel_err = std::abs(Rational(module_norm - arrangement_norm).get_d()) / std::max(std::abs(module_norm.get_d()), 1e-300);
  report.pass = report.weight_function_error <= tol && report.duality_error <= tol && report.projection_error <= tol &&
                report.norm_rel_err <= tol;
  return report;
}

template std::vector<Rational> bethe_residual(const GaudinProblem&, std::span<const Rational>);
template std::vector<Complex> bethe_residual(const GaudinProblem&, std::span<const Complex>);
template Matrix<Rational> bethe_hessian(const GaudinProblem&, std::span<const Rational>);
template Matrix<Complex> bethe_hessian(const GaudinProblem&, std::span<const Complex>);
template TensorVector<Rational> canonical_weight_function(const GaudinProblem&, std::span<const Rational>);
template TensorVector<Complex> canonical_weight_function(const GaudinProblem&, std::span<const Complex>);
template Rational tensor_shapovalov(const GaudinProblem&, const TensorVector<Rational>&, const TensorVector<Rational>&);
template Complex tensor_shapovalov(const GaudinProblem&, const TensorVector<Complex>&, const TensorVector<Complex>&);
template Matrix<Rational> raising_operator(const GaudinProblem&, std::size_t);
template Matrix<Complex> raising_operator(const GaudinProblem&, std::size_t);
template Matrix<Rational> lowering_operator(const GaudinProblem&, std::size_t);
template Matrix<Complex> lowering_operator(const GaudinProblem&, std::size_t);
template Matrix<Rational> cartan_operator(const GaudinProblem&, std::size_t);
template Matrix<Complex> cartan_operator(const GaudinProblem&, std::size_t);
template Matrix<Rational> gaudin_hamiltonian(const GaudinProblem&, std::size_t, std::size_t);
template Matrix<Complex> gaudin_hamiltonian(const GaudinProblem&, std::size_t, std::size_t);

}  // namespace bethe
