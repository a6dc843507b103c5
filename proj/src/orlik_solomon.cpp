#include "bethe/orlik_solomon.hpp"

#include <algorithm>

namespace bethe {

namespace {

int permutation_sign(std::vector<std::size_t> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    while (v[i] != i) {
      std::swap(v[i], v[v[i]]);
      sign = -sign;
    }
  return sign;
}

Matrix<Rational> augmented_rows(const WeightedArrangement& arr, std::span<const std::size_t> idx) {
  Matrix<Rational> m(idx.size(), arr.dim() + 1);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const Hyperplane& h = arr.hyperplane(idx[r]);
    for (std::size_t i = 0; i < arr.dim(); ++i) m(r, i) = h.b[i];
    m(r, arr.dim()) = h.b0;
  }
  return m;
}

// H_j contains the (consistent) intersection of the hyperplanes in `stratum`.
bool contains_stratum(const WeightedArrangement& arr, std::size_t j,
                      std::span<const std::size_t> stratum, std::size_t stratum_rank) {
  std::vector<std::size_t> with(stratum.begin(), stratum.end());
  with.push_back(j);
  return rank(augmented_rows(arr, with)) == stratum_rank;
}

}  // namespace

OrlikSolomon::OrlikSolomon(WeightedArrangement arr) : arr_(std::move(arr)) {
  for (std::size_t p = 0; p <= arr_.dim(); ++p) degrees_.push_back(build_degree(p));
  for (IndexSet& s : general_position_sets(arr_, arr_.dim())) {
    std::vector<Rational> e = straighten(s);
    top_monomials_.push_back({std::move(s), std::move(e)});
  }
}

OrlikSolomon::Degree OrlikSolomon::build_degree(std::size_t p) const {
  Degree d;
  d.validation = validate_basis(arr_, p);
  d.basis = d.validation.basis;
  for (std::size_t i = 0; i < d.basis.size(); ++i) d.index.emplace(d.basis[i], i);
  if (d.basis.empty()) return d;
  const std::size_t monomials = general_position_sets(arr_, p).size();
  d.points = sample_points(arr_, monomials + arr_.dim() + 2);
  d.coord_sets = subsets_of_size(arr_.dim(), p);
  const std::size_t ncols = d.points.size() * d.coord_sets.size();
  Matrix<Rational> rows(d.basis.size(), ncols);
  for (std::size_t i = 0; i < d.basis.size(); ++i) {
    const std::vector<Rational> row = form_evaluation_row(arr_, d.basis[i], d.points);
    for (std::size_t c = 0; c < ncols; ++c) rows(i, c) = row[c];
  }
  const Echelon<Rational> e = row_reduce(rows);
  if (e.pivot_cols.size() != d.basis.size())
    throw PreconditionViolation("validated basis rows are dependent");
  Matrix<Rational> square(d.basis.size(), d.basis.size());
  for (std::size_t c = 0; c < e.pivot_cols.size(); ++c) {
    const std::size_t col = e.pivot_cols[c];
    d.columns.emplace_back(col / d.coord_sets.size(), col % d.coord_sets.size());
    for (std::size_t i = 0; i < d.basis.size(); ++i) square(i, c) = rows(i, col);
  }
  d.inverse = inverse(square);
  return d;
}

std::size_t OrlikSolomon::basis_index(const IndexSet& s) const {
  const Degree& d = degrees_.at(s.size());
  const auto it = d.index.find(s);
  return it == d.index.end() ? d.basis.size() : it->second;
}

std::vector<Rational> OrlikSolomon::straighten(std::span<const std::size_t> monomial) const {
  const std::size_t p = monomial.size();
  if (p > arr_.dim()) throw InvalidInput("degree exceeds ambient dimension");
  for (std::size_t j : monomial)
    if (j >= arr_.size()) throw InvalidInput("hyperplane index out of range");
  const Degree& d = degrees_[p];
  std::vector<Rational> coeffs(d.basis.size());
  if (d.basis.empty()) return coeffs;
  std::vector<Rational> minors(d.coord_sets.size());
  bool all_zero = true;
  for (std::size_t c = 0; c < d.coord_sets.size(); ++c) {
    minors[c] = coefficient_minor(arr_, monomial, d.coord_sets[c]);
    all_zero = all_zero && sgn(minors[c]) == 0;
  }
  if (all_zero) return coeffs;
  std::vector<Rational> values(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const auto& [point, coord] = d.columns[c];
    Rational denom = 1;
    for (std::size_t j : monomial) denom *= arr_.hyperplane(j).evaluate<Rational>(d.points[point]);
    values[c] = minors[coord] / denom;
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational acc = 0;
    for (std::size_t c = 0; c < values.size(); ++c) acc += values[c] * d.inverse(c, i);
    coeffs[i] = acc;
  }
  return coeffs;
}

std::vector<Rational> OrlikSolomon::expand_top_form(
    const std::function<Rational(std::span<const Rational>)>& u) const {
  const std::size_t k = arr_.dim();
  const Degree& d = degrees_[k];
  std::vector<Rational> coeffs(d.basis.size());
  if (d.basis.empty()) return coeffs;
  std::vector<Rational> values(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) values[c] = u(d.points[d.columns[c].first]);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational acc = 0;
    for (std::size_t c = 0; c < values.size(); ++c) acc += values[c] * d.inverse(c, i);
    coeffs[i] = acc;
  }
  const auto extra = sample_points(arr_, d.points.size() + 3);
  for (std::size_t q = d.points.size(); q < extra.size(); ++q) {
    Rational expected = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      expected += coeffs[i] * evaluate_form<Rational>(arr_, d.basis[i], extra[q]);
    if (expected != u(extra[q])) throw PreconditionViolation("function is not a top-degree form of the arrangement");
  }
  return coeffs;
}

OSElement<Rational> OrlikSolomon::monomial_element(std::span<const std::size_t> monomial) const {
  return {monomial.size(), straighten(monomial)};
}

template <class T>
Matrix<T> OrlikSolomon::d_A_matrix(std::size_t p) const {
  if (p >= arr_.dim()) throw InvalidInput("d_A is defined for 0 <= p < k");
  const std::vector<T> a = arr_.exponents<T>();
  Matrix<T> m(dim(p + 1), dim(p));
  for (std::size_t col = 0; col < dim(p); ++col) {
    const IndexSet& s = basis(p)[col];
    for (std::size_t j = 0; j < arr_.size(); ++j) {
      if (std::find(s.begin(), s.end(), j) != s.end()) continue;
      IndexSet monomial{j};
      monomial.insert(monomial.end(), s.begin(), s.end());
      const std::vector<Rational> e = straighten(monomial);
      for (std::size_t row = 0; row < e.size(); ++row)
        if (sgn(e[row]) != 0) m(row, col) += a[j] * from_rational<T>(e[row]);
    }
  }
  return m;
}

template <class T>
Matrix<T> OrlikSolomon::delta_F_matrix(std::size_t p) const {
  if (p == 0 || p > arr_.dim()) throw InvalidInput("delta_F is defined for 1 <= p <= k");
  return d_A_matrix<T>(p - 1).transpose();
}

int flag_monomial_pairing(const WeightedArrangement& arr, std::span<const std::size_t> monomial,
                          std::span<const std::size_t> flag_tuple) {
  const std::size_t p = flag_tuple.size();
  if (monomial.size() != p) throw InvalidInput("pairing of elements of different degree");
  if (!general_position(arr, flag_tuple)) throw PreconditionViolation("flag tuple is not in general position");
  std::vector<bool> used(p, false);
  std::vector<std::size_t> order;  // order[m] = position in `monomial` chosen at step m
  for (std::size_t m = 1; m <= p; ++m) {
    const std::span<const std::size_t> stratum = flag_tuple.first(m);
    std::size_t containing = 0;
    std::size_t fresh = p;
    for (std::size_t l = 0; l < p; ++l) {
      if (!contains_stratum(arr, monomial[l], stratum, m)) continue;
      ++containing;
      if (!used[l]) fresh = l;
    }
    if (containing != m || fresh == p) return 0;
    used[fresh] = true;
    order.push_back(fresh);
  }
  // the chosen order reproduces the flag only if those hyperplanes are
  // themselves independent; equal counts at every level guarantee it
  return permutation_sign(order);
}

FlagVector<Rational> OrlikSolomon::flag_vector(std::span<const std::size_t> tuple) const {
  const std::size_t p = tuple.size();
  if (p > arr_.dim()) throw InvalidInput("degree exceeds ambient dimension");
  if (!general_position(arr_, tuple))
    throw PreconditionViolation("flag tuple is not in general position");
  FlagVector<Rational> f{p, std::vector<Rational>(dim(p))};
  for (std::size_t i = 0; i < dim(p); ++i) f.coords[i] = flag_monomial_pairing(arr_, basis(p)[i], tuple);
  return f;
}

template <class T>
T evaluate_form(const WeightedArrangement& arr, std::span<const std::size_t> subset,
                std::span<const T> t) {
  if (subset.size() != arr.dim()) throw InvalidInput("top-degree form needs k hyperplanes");
  T denom(1);
  for (std::size_t j : subset) {
    const T f = arr.hyperplane(j).evaluate<T>(t);
    if (ScalarTraits<T>::is_zero(f, 0.0)) throw PreconditionViolation("point on arrangement");
    denom *= f;
  }
  std::vector<std::size_t> coords(arr.dim());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  return from_rational<T>(coefficient_minor(arr, subset, coords)) / denom;
}

template <class T>
std::vector<FlagVector<T>> singular_basis(const OrlikSolomon& os) {
  const std::size_t k = os.top_degree();
  std::vector<FlagVector<T>> out;
  if (k == 0) {
    out.push_back({0, std::vector<T>(os.dim(0), T(1))});
    return out;
  }
  for (std::vector<T>& v : kernel(os.delta_F_matrix<T>(k))) out.push_back({k, std::move(v)});
  return out;
}

template Matrix<Rational> OrlikSolomon::d_A_matrix<Rational>(std::size_t) const;
template Matrix<Complex> OrlikSolomon::d_A_matrix<Complex>(std::size_t) const;
template Matrix<Rational> OrlikSolomon::delta_F_matrix<Rational>(std::size_t) const;
template Matrix<Complex> OrlikSolomon::delta_F_matrix<Complex>(std::size_t) const;
template Rational evaluate_form(const WeightedArrangement&, std::span<const std::size_t>,
                                std::span<const Rational>);
template Complex evaluate_form(const WeightedArrangement&, std::span<const std::size_t>,
                               std::span<const Complex>);
template std::vector<FlagVector<Rational>> singular_basis(const OrlikSolomon&);
template std::vector<FlagVector<Complex>> singular_basis(const OrlikSolomon&);

}  // namespace bethe
