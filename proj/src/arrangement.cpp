#include "bethe/arrangement.hpp"

#include <algorithm>
#include <random>
#include <numeric>

namespace bethe {

namespace {

bool proportional(const Hyperplane& a, const Hyperplane& b) {
  // rows (b0, b) and (b0', b') proportional <=> all 2x2 minors vanish
  std::vector<Rational> ra{a.b0};
  ra.insert(ra.end(), a.b.begin(), a.b.end());
  std::vector<Rational> rb{b.b0};
  rb.insert(rb.end(), b.b.begin(), b.b.end());
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = i + 1; j < ra.size(); ++j)
      if (ra[i] * rb[j] != ra[j] * rb[i]) return false;
  return true;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

WeightedArrangement::WeightedArrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                                         std::vector<Rational> exponents)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)), exact_(true),
      exact_exponents_(std::move(exponents)) {
  if (exact_exponents_.size() != hyperplanes_.size())
    throw InvalidInput("exponent count does not match hyperplane count");
  complex_exponents_.reserve(exact_exponents_.size());
  for (const Rational& a : exact_exponents_) complex_exponents_.emplace_back(a.get_d(), 0.0);
  validate();
}

WeightedArrangement::WeightedArrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                                         std::vector<Complex> exponents)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)), exact_(false),
      complex_exponents_(std::move(exponents)) {
  if (complex_exponents_.size() != hyperplanes_.size())
    throw InvalidInput("exponent count does not match hyperplane count");
  validate();
}

void WeightedArrangement::validate() const {
  for (const Hyperplane& h : hyperplanes_) {
    if (h.b.size() != dim_)
      throw InvalidInput("hyperplane '" + h.label + "' has " + std::to_string(h.b.size()) +
                         " coefficients, expected " + std::to_string(dim_));
    if (std::all_of(h.b.begin(), h.b.end(), [](const Rational& x) { return sgn(x) == 0; }))
      throw InvalidInput("hyperplane '" + h.label + "' has zero coefficient vector");
  }
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
    for (std::size_t j = i + 1; j < hyperplanes_.size(); ++j)
      if (proportional(hyperplanes_[i], hyperplanes_[j]))
        throw InvalidInput("hyperplanes " + std::to_string(i) + " and " + std::to_string(j) +
                           " define the same hyperplane");
  if (!has_vertex(*this)) throw PreconditionViolation("arrangement has no vertex");
}

const std::vector<Rational>& WeightedArrangement::exact_exponents() const {
  if (!exact_) throw Unsupported("arrangement has complex exponents; exact mode unavailable");
  return exact_exponents_;
}

template <>
std::vector<Rational> WeightedArrangement::exponents<Rational>() const {
  return exact_exponents();
}

template <>
std::vector<Complex> WeightedArrangement::exponents<Complex>() const {
  return complex_exponents_;
}

WeightedArrangement WeightedArrangement::with_exponents(std::vector<Rational> exponents) const {
  return WeightedArrangement(dim_, hyperplanes_, std::move(exponents));
}

WeightedArrangement WeightedArrangement::with_exponents(std::vector<Complex> exponents) const {
  return WeightedArrangement(dim_, hyperplanes_, std::move(exponents));
}

SubsetRankReport rank_report(const WeightedArrangement& arr, std::span<const std::size_t> subset) {
  SubsetRankReport report;
  report.subset.assign(subset.begin(), subset.end());
  const std::size_t k = arr.dim();
  Matrix<Rational> coeff(subset.size(), k);
  Matrix<Rational> augmented(subset.size(), k + 1);
  for (std::size_t r = 0; r < subset.size(); ++r) {
    if (subset[r] >= arr.size()) throw InvalidInput("hyperplane index out of range");
    const Hyperplane& h = arr.hyperplane(subset[r]);
    for (std::size_t i = 0; i < k; ++i) {
      coeff(r, i) = h.b[i];
      augmented(r, i) = h.b[i];
    }
    augmented(r, k) = h.b0;
  }
  report.coeff_rank = rank(coeff);
  report.consistent = rank(augmented) == report.coeff_rank;
  report.general_position = report.consistent && report.coeff_rank == subset.size();
  return report;
}

bool general_position(const WeightedArrangement& arr, std::span<const std::size_t> subset) {
  return rank_report(arr, subset).general_position;
}

bool has_vertex(const WeightedArrangement& arr) {
  const std::size_t k = arr.dim();
  if (k == 0) return true;
  std::vector<std::size_t> all(arr.size());
  std::iota(all.begin(), all.end(), 0);
  return rank_report(arr, all).coeff_rank == k;
}

std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t p) {
  std::vector<IndexSet> out;
  if (p > n) return out;
  IndexSet s(p);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    std::size_t i = p;
    while (i > 0 && s[i - 1] == n - p + (i - 1)) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < p; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::vector<IndexSet> general_position_sets(const WeightedArrangement& arr, std::size_t p) {
  std::vector<IndexSet> out;
  for (IndexSet& s : subsets_of_size(arr.size(), p))
    if (general_position(arr, s)) out.push_back(std::move(s));
  return out;
}

std::vector<IndexSet> circuits(const WeightedArrangement& arr) {
  std::vector<IndexSet> out;
  const std::size_t max_size = std::min(arr.size(), arr.dim() + 1);
  for (std::size_t size = 1; size <= max_size; ++size) {
    for (const IndexSet& s : subsets_of_size(arr.size(), size)) {
      if (general_position(arr, s)) continue;
      bool minimal = true;
      for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
        IndexSet sub;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) sub.push_back(s[i]);
        minimal = general_position(arr, sub);
      }
      if (minimal) out.push_back(s);
    }
  }
  return out;
}

std::vector<IndexSet> nbc_sets(const WeightedArrangement& arr, std::size_t p) {
  std::vector<IndexSet> broken;
  for (const IndexSet& c : circuits(arr)) {
    if (!rank_report(arr, c).consistent) continue;
    broken.emplace_back(c.begin() + 1, c.end());
  }
  std::vector<IndexSet> out;
  for (IndexSet& s : general_position_sets(arr, p)) {
    const bool contains_broken = std::any_of(broken.begin(), broken.end(),
                                             [&](const IndexSet& b) { return is_subset(b, s); });
    if (!contains_broken) out.push_back(std::move(s));
  }
  return out;
}

Rational coefficient_minor(const WeightedArrangement& arr, std::span<const std::size_t> tuple,
                           std::span<const std::size_t> coords) {
  Matrix<Rational> m(tuple.size(), coords.size());
  for (std::size_t r = 0; r < tuple.size(); ++r)
    for (std::size_t c = 0; c < coords.size(); ++c) m(r, c) = arr.hyperplane(tuple[r]).b[coords[c]];
  return determinant(std::move(m));
}

std::vector<std::vector<Rational>> sample_points(const WeightedArrangement& arr, std::size_t count) {
  // points on any fixed curve can make the forms dependent; seeded random
  // rationals are generic and reproducible
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> num(-997, 997);
  std::uniform_int_distribution<long> den(1, 89);
  std::vector<std::vector<Rational>> points;
  while (points.size() < count) {
    std::vector<Rational> t(arr.dim());
    for (Rational& x : t) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    const bool on_arrangement =
        std::any_of(arr.hyperplanes().begin(), arr.hyperplanes().end(), [&](const Hyperplane& h) {
          return sgn(h.evaluate<Rational>(t)) == 0;
        });
    if (!on_arrangement) points.push_back(std::move(t));
  }
  return points;
}

std::vector<Rational> form_evaluation_row(const WeightedArrangement& arr,
                                          std::span<const std::size_t> tuple,
                                          std::span<const std::vector<Rational>> points) {
  const std::vector<IndexSet> coord_sets = subsets_of_size(arr.dim(), tuple.size());
  std::vector<Rational> minors;
  minors.reserve(coord_sets.size());
  for (const IndexSet& cs : coord_sets) minors.push_back(coefficient_minor(arr, tuple, cs));
  std::vector<Rational> row;
  row.reserve(points.size() * coord_sets.size());
  for (const std::vector<Rational>& t : points) {
    Rational denom = 1;
    for (std::size_t j : tuple) denom *= arr.hyperplane(j).evaluate<Rational>(t);
    for (const Rational& m : minors) row.push_back(m / denom);
  }
  return row;
}

BasisValidation validate_basis(const WeightedArrangement& arr, std::size_t p) {
  BasisValidation v;
  v.degree = p;
  v.nbc = nbc_sets(arr, p);
  const std::vector<IndexSet> monomials = general_position_sets(arr, p);
  if (monomials.empty()) {
    v.oracle_rank = 0;
    v.agrees = v.nbc.empty();
    return v;
  }
  const auto points = sample_points(arr, monomials.size() + arr.dim() + 2);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(monomials.size());
  for (const IndexSet& m : monomials) rows.push_back(form_evaluation_row(arr, m, points));
  // columns of the transpose are monomials: pivot columns give the greedy
  // lexicographic maximal independent subset
  Matrix<Rational> transposed(rows.front().size(), monomials.size());
  for (std::size_t c = 0; c < monomials.size(); ++c)
    for (std::size_t r = 0; r < rows[c].size(); ++r) transposed(r, c) = rows[c][r];
  const Echelon<Rational> e = row_reduce(std::move(transposed));
  v.oracle_rank = e.pivot_cols.size();
  v.agrees = v.oracle_rank == v.nbc.size();
  if (v.agrees) {
    // rank equality alone is not enough; the nbc rows must be independent
    Matrix<Rational> nbc_rows(v.nbc.size(), rows.front().size());
    for (std::size_t i = 0; i < v.nbc.size(); ++i) {
      const auto it = std::find(monomials.begin(), monomials.end(), v.nbc[i]);
      const auto& row = rows[static_cast<std::size_t>(it - monomials.begin())];
      for (std::size_t c = 0; c < row.size(); ++c) nbc_rows(i, c) = row[c];
    }
    v.agrees = rank(nbc_rows) == v.nbc.size();
  }
  if (v.agrees) {
    v.basis = v.nbc;
  } else {
    for (std::size_t c : e.pivot_cols) v.basis.push_back(monomials[c]);
  }
  return v;
}

std::vector<std::size_t> os_dimensions(const WeightedArrangement& arr) {
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p <= arr.dim(); ++p) dims.push_back(validate_basis(arr, p).basis.size());
  return dims;
}

long euler_characteristic(const WeightedArrangement& arr) {
  long chi = 0;
  const std::vector<std::size_t> dims = os_dimensions(arr);
  for (std::size_t p = 0; p < dims.size(); ++p)
    chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(dims[p]);
  return chi;
}

}  // namespace bethe
