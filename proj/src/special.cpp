#include "bethe/special.hpp"

#include <cmath>

namespace bethe {

template <class T>
FlagVector<T> specialize(const OrlikSolomon& os, std::span<const T> t) {
  const std::size_t k = os.top_degree();
  if (t.size() != k) throw InvalidInput("point has wrong dimension");
  FlagVector<T> v{k, std::vector<T>(os.dim(k))};
  for (std::size_t i = 0; i < v.coords.size(); ++i)
    v.coords[i] = evaluate_form<T>(os.arrangement(), os.basis(k)[i], t);
  return v;
}

template <class T>
SingularCheck verify_singular(const OrlikSolomon& os, std::span<const T> t, double tol) {
  const WeightedArrangement& arr = os.arrangement();
  const std::size_t k = os.top_degree();
  SingularCheck check;
  const FlagVector<T> v = specialize<T>(os, t);
  if (k > 0) {
    const Matrix<T> delta = os.delta_F_matrix<T>(k);
    const std::vector<T> dv = multiply(delta, std::span<const T>(v.coords));
    double frob = 0.0;
    for (std::size_t i = 0; i < delta.rows(); ++i)
      for (std::size_t j = 0; j < delta.cols(); ++j) frob += std::pow(magnitude(delta(i, j)), 2);
    const double denom = std::sqrt(frob) * norm2<T>(v.coords);
    check.delta_norm = denom > 0.0 ? norm2<T>(dv) / denom : 0.0;
  }
  const std::vector<T> g = log_grad<T>(arr, t);
  const std::vector<T> a = arr.exponents<T>();
  double scale = 0.0;
  for (std::size_t j = 0; j < arr.size(); ++j) {
    double bnorm = 0.0;
    for (const Rational& b : arr.hyperplane(j).b) bnorm += b.get_d() * b.get_d();
    scale += magnitude(a[j]) * std::sqrt(bnorm) / magnitude(arr.hyperplane(j).evaluate<T>(t));
  }
  check.grad_norm = scale > 0.0 ? norm2<T>(g) / scale : 0.0;
  check.is_critical = check.grad_norm <= tol;
  check.is_singular = check.delta_norm <= tol;
  check.pass = check.is_critical == check.is_singular;
  return check;
}

template <class T>
NormCheck<T> verify_norm_identity(const OrlikSolomon& os, std::span<const T> t, double rel_tol) {
  const FlagVector<T> v = specialize<T>(os, t);
  NormCheck<T> check;
  check.lhs = shapovalov_form<T>(os, v, v);
  T hess = hessian_determinant<T>(os.arrangement(), t);
  check.rhs = os.top_degree() % 2 == 0 ? hess : T(-hess);
  const T diff = check.lhs - check.rhs;
  check.abs_err = magnitude(diff);
  if constexpr (ScalarTraits<T>::exact) {
    check.pass = check.lhs == check.rhs;
  } else {
    check.pass = check.abs_err <= rel_tol * std::max(1.0, magnitude(check.rhs));
  }
  return check;
}

OrthogonalityCheck verify_orthogonality(const WeightedArrangement& arr, std::span<const Complex> t1,
                                        std::span<const Complex> t2, double tol) {
  OrthogonalityCheck check;
  check.value = special_pairing<Complex>(arr, t1, t2);
  const double s11 = std::abs(special_pairing<Complex>(arr, t1, t1));
  const double s22 = std::abs(special_pairing<Complex>(arr, t2, t2));
  const double scale = std::sqrt(s11 * s22);
  check.normalized = scale > 0.0 ? std::abs(check.value) / scale : INFINITY;
  check.pass = check.normalized <= tol;
  return check;
}

GramReport special_gram(const WeightedArrangement& arr, std::span<const std::vector<Complex>> points,
                        double rank_tol) {
  GramReport report;
  const std::size_t n = points.size();
  report.gram = Matrix<Complex>(n, n);
  report.diagonal_product = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex s = special_pairing<Complex>(arr, points[i], points[j]);
      report.gram(i, j) = s;
      report.gram(j, i) = s;
    }
  for (std::size_t i = 0; i < n; ++i) report.diagonal_product *= report.gram(i, i);
  report.determinant = determinant(report.gram);
  report.rank = rank(report.gram, rank_tol);
  report.relative_error =
      std::abs(report.determinant - report.diagonal_product) / std::abs(report.diagonal_product);
  return report;
}

GroupCharacter GroupCharacter::trivial(std::size_t order) {
  return {std::vector<Complex>(order, Complex(1.0)), 1};
}

GroupCharacter GroupCharacter::sign(std::span<const Permutation> group) {
  GroupCharacter c;
  for (const Permutation& g : group) c.values.emplace_back(permutation_parity(g), 0.0);
  return c;
}

namespace {

bool same_hyperplane(const Hyperplane& h, const Rational& b0, const std::vector<Rational>& b) {
  std::vector<Rational> r1{h.b0}, r2{b0};
  r1.insert(r1.end(), h.b.begin(), h.b.end());
  r2.insert(r2.end(), b.begin(), b.end());
  for (std::size_t i = 0; i < r1.size(); ++i)
    for (std::size_t j = i + 1; j < r1.size(); ++j)
      if (r1[i] * r2[j] != r1[j] * r2[i]) return false;
  return true;
}

}  // namespace

SymmetryAction::SymmetryAction(const WeightedArrangement& arr, std::vector<Permutation> group)
    : group_(std::move(group)) {
  const std::size_t k = arr.dim();
  for (const Permutation& g : group_) {
    if (g.size() != k) throw InvalidInput("group element has wrong size");
    std::vector<std::size_t> pi(arr.size(), arr.size());
    for (std::size_t j = 0; j < arr.size(); ++j) {
      const Hyperplane& h = arr.hyperplane(j);
      // g(H) = { s : f(g^{-1} s) = 0 }, (g^{-1} s)_i = s_{g[i]}
      std::vector<Rational> image(k);
      for (std::size_t i = 0; i < k; ++i) image[g[i]] = h.b[i];
      for (std::size_t l = 0; l < arr.size(); ++l)
        if (same_hyperplane(arr.hyperplane(l), h.b0, image)) {
          pi[j] = l;
          break;
        }
      if (pi[j] == arr.size()) throw InvalidInput("group does not preserve the arrangement");
      const bool same_exponent = arr.has_exact_exponents()
                                     ? arr.exact_exponents()[pi[j]] == arr.exact_exponents()[j]
                                     : std::abs(arr.complex_exponents()[pi[j]] - arr.complex_exponents()[j]) <=
                                           1e-12 * std::max(1.0, std::abs(arr.complex_exponents()[j]));
      if (!same_exponent) throw InvalidInput("group does not preserve the exponents");
    }
    std::vector<std::size_t> inv(arr.size());
    for (std::size_t j = 0; j < arr.size(); ++j) inv[pi[j]] = j;
    induced_.push_back(std::move(pi));
    inverse_induced_.push_back(std::move(inv));
  }
}

template <class T>
Matrix<T> SymmetryAction::representation(const OrlikSolomon& os, std::size_t g) const {
  const std::size_t k = os.top_degree();
  const std::size_t n = os.dim(k);
  Matrix<T> r(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    IndexSet preimage;
    for (std::size_t j : os.basis(k)[s]) preimage.push_back(inverse_induced_[g][j]);
    const std::vector<Rational> e = os.straighten(preimage);
    for (std::size_t c = 0; c < n; ++c) r(s, c) = from_rational<T>(e[c]);
  }
  return r;
}

template <class T>
FlagVector<T> SymmetryAction::apply(const OrlikSolomon& os, std::size_t g, const FlagVector<T>& f) const {
  return {f.degree, multiply(representation<T>(os, g), std::span<const T>(f.coords))};
}

namespace {

template <class T>
T character_value(const Complex& chi);

template <>
Rational character_value<Rational>(const Complex& chi) {
  if (chi.imag() != 0.0) throw Unsupported("complex character values need float mode");
  return Rational(chi.real());
}

template <>
Complex character_value<Complex>(const Complex& chi) {
  return std::conj(chi);
}

}  // namespace

template <class T>
FlagVector<T> isotypic_project(const OrlikSolomon& os, const SymmetryAction& action,
                               const GroupCharacter& character, const FlagVector<T>& f) {
  if (character.dimension != 1)
    throw Unsupported("isotypic projection supports one-dimensional characters only");
  if (character.values.size() != action.order()) throw InvalidInput("character has wrong length");
  FlagVector<T> out{f.degree, std::vector<T>(f.coords.size())};
  for (std::size_t g = 0; g < action.order(); ++g) {
    const FlagVector<T> image = action.apply<T>(os, g, f);
    const T chi = character_value<T>(character.values[g]);
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += chi * image.coords[i];
  }
  const T scale = T(1) / from_rational<T>(Rational(static_cast<long>(action.order())));
  for (T& x : out.coords) x *= scale;
  return out;
}

IsotypicNormCheck verify_isotypic_norm(const OrlikSolomon& os, const SymmetryAction& action,
                                       const GroupCharacter& character, std::span<const Complex> t,
                                       double rel_tol) {
  std::vector<std::vector<Complex>> orbit;
  for (const Permutation& g : action.group()) {
    std::vector<Complex> image = apply_permutation(g, t);
    bool seen = false;
    for (const auto& o : orbit) {
      std::vector<Complex> d(o.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = o[i] - image[i];
      seen = seen || norm2<Complex>(d) <= 1e-8 * std::max(1.0, norm2<Complex>(image));
    }
    if (!seen) orbit.push_back(std::move(image));
  }
  if (orbit.size() != action.order())
    throw Unsupported("orbit of the critical point has fewer than |G| elements");
  const FlagVector<Complex> v = specialize<Complex>(os, t);
  const FlagVector<Complex> pv = isotypic_project<Complex>(os, action, character, v);
  IsotypicNormCheck check;
  check.lhs = shapovalov_form<Complex>(os, pv, pv);
  Complex sum = 0.0;
  for (const Complex& chi : character.values) sum += std::conj(chi) * std::conj(chi);
  const double d = static_cast<double>(character.dimension);
  const double g = static_cast<double>(action.order());
  check.c_factor = d * d / (g * g) * sum;
  const Complex hess = hessian_determinant<Complex>(os.arrangement(), t);
  check.rhs = check.c_factor * (os.top_degree() % 2 == 0 ? hess : -hess);
  check.abs_err = std::abs(check.lhs - check.rhs);
  check.pass = check.abs_err <= rel_tol * std::abs(check.rhs);
  return check;
}

template FlagVector<Rational> specialize(const OrlikSolomon&, std::span<const Rational>);
template FlagVector<Complex> specialize(const OrlikSolomon&, std::span<const Complex>);
template SingularCheck verify_singular(const OrlikSolomon&, std::span<const Rational>, double);
template SingularCheck verify_singular(const OrlikSolomon&, std::span<const Complex>, double);
template NormCheck<Rational> verify_norm_identity(const OrlikSolomon&, std::span<const Rational>, double);
template NormCheck<Complex> verify_norm_identity(const OrlikSolomon&, std::span<const Complex>, double);
template Matrix<Rational> SymmetryAction::representation<Rational>(const OrlikSolomon&, std::size_t) const;
template Matrix<Complex> SymmetryAction::representation<Complex>(const OrlikSolomon&, std::size_t) const;
template FlagVector<Rational> SymmetryAction::apply<Rational>(const OrlikSolomon&, std::size_t,
                                                              const FlagVector<Rational>&) const;
template FlagVector<Complex> SymmetryAction::apply<Complex>(const OrlikSolomon&, std::size_t,
                                                            const FlagVector<Complex>&) const;
template FlagVector<Rational> isotypic_project(const OrlikSolomon&, const SymmetryAction&,
                                               const GroupCharacter&, const FlagVector<Rational>&);
template FlagVector<Complex> isotypic_project(const OrlikSolomon&, const SymmetryAction&,
                                              const GroupCharacter&, const FlagVector<Complex>&);

}  // namespace bethe
