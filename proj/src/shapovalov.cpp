#include "bethe/shapovalov.hpp"

#include <numeric>

namespace bethe {

namespace {

void require_top(const OrlikSolomon& os, std::size_t degree) {
  if (degree != os.top_degree()) throw InvalidInput("Shapovalov form is implemented on F^k only");
}

}  // namespace

template <class T>
Matrix<T> shapovalov_matrix(const OrlikSolomon& os) {
  const std::size_t n = os.dim(os.top_degree());
  const std::vector<T> a = os.arrangement().exponents<T>();
  Matrix<T> gram(n, n);
  for (const auto& [subset, expansion] : os.top_monomials()) {
    T weight(1);
    for (std::size_t j : subset) weight *= a[j];
    if (ScalarTraits<T>::is_zero(weight, 0.0)) continue;
    std::vector<T> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = from_rational<T>(expansion[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (ScalarTraits<T>::is_zero(s[i], 0.0)) continue;
      const T wi = weight * s[i];
      for (std::size_t l = 0; l < n; ++l) gram(i, l) += wi * s[l];
    }
  }
  return gram;
}

template <class T>
T shapovalov_form(const Matrix<T>& gram, const FlagVector<T>& f1, const FlagVector<T>& f2) {
  T acc(0);
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (ScalarTraits<T>::is_zero(f1.coords[i], 0.0)) continue;
    T row(0);
    for (std::size_t l = 0; l < gram.cols(); ++l) row += gram(i, l) * f2.coords[l];
    acc += f1.coords[i] * row;
  }
  return acc;
}

template <class T>
T shapovalov_form(const OrlikSolomon& os, const FlagVector<T>& f1, const FlagVector<T>& f2) {
  require_top(os, f1.degree);
  require_top(os, f2.degree);
  return shapovalov_form(shapovalov_matrix<T>(os), f1, f2);
}

template <class T>
OSElement<T> shapovalov_map(const OrlikSolomon& os, const FlagVector<T>& f) {
  require_top(os, f.degree);
  const Matrix<T> gram = shapovalov_matrix<T>(os);
  return {f.degree, multiply(gram, std::span<const T>(f.coords))};
}

template <class T>
T special_pairing(const WeightedArrangement& arr, std::span<const T> t1, std::span<const T> t2) {
  const std::size_t k = arr.dim();
  const std::vector<T> a = arr.exponents<T>();
  std::vector<T> f1(arr.size()), f2(arr.size());
  for (std::size_t j = 0; j < arr.size(); ++j) {
    f1[j] = arr.hyperplane(j).evaluate<T>(t1);
    f2[j] = arr.hyperplane(j).evaluate<T>(t2);
    if (ScalarTraits<T>::is_zero(f1[j], 0.0) || ScalarTraits<T>::is_zero(f2[j], 0.0))
      throw PreconditionViolation("point on arrangement");
  }
  std::vector<std::size_t> coords(k);
  std::iota(coords.begin(), coords.end(), 0);
  T total(0);
  for (const IndexSet& s : subsets_of_size(arr.size(), k)) {
    const Rational d = coefficient_minor(arr, s, coords);
    if (sgn(d) == 0) continue;
    T term = from_rational<T>(d * d);
    for (std::size_t j : s) term *= a[j] / (f1[j] * f2[j]);
    total += term;
  }
  return total;
}

template Matrix<Rational> shapovalov_matrix(const OrlikSolomon&);
template Matrix<Complex> shapovalov_matrix(const OrlikSolomon&);
template Rational shapovalov_form(const Matrix<Rational>&, const FlagVector<Rational>&,
                                  const FlagVector<Rational>&);
template Complex shapovalov_form(const Matrix<Complex>&, const FlagVector<Complex>&,
                                 const FlagVector<Complex>&);
template Rational shapovalov_form(const OrlikSolomon&, const FlagVector<Rational>&,
                                  const FlagVector<Rational>&);
template Complex shapovalov_form(const OrlikSolomon&, const FlagVector<Complex>&,
                                 const FlagVector<Complex>&);
template OSElement<Rational> shapovalov_map(const OrlikSolomon&, const FlagVector<Rational>&);
template OSElement<Complex> shapovalov_map(const OrlikSolomon&, const FlagVector<Complex>&);
template Rational special_pairing(const WeightedArrangement&, std::span<const Rational>,
                                  std::span<const Rational>);
template Complex special_pairing(const WeightedArrangement&, std::span<const Complex>,
                                 std::span<const Complex>);

}  // namespace bethe
