#include <doctest.h>

#include "fixtures.hpp"

using namespace bethe;
using fixtures::q;

TEST_CASE("standard flags of a generic arrangement are orthogonal") {
  const OrlikSolomon os(fixtures::generic4_weighted());
  const std::vector<Rational> a = os.arrangement().exact_exponents();
  const std::vector<IndexSet> standard = general_position_sets(os.arrangement(), 2);
  for (std::size_t i = 0; i < standard.size(); ++i)
    for (std::size_t j = 0; j < standard.size(); ++j) {
      const Rational s = shapovalov_form<Rational>(os, os.flag_vector(standard[i]), os.flag_vector(standard[j]));
      if (i == j)
        CHECK(s == a[standard[i][0]] * a[standard[i][1]]);
      else
        CHECK(s == 0);
    }
}

TEST_CASE("zero exponents give the zero form") {
  const OrlikSolomon os(fixtures::generic4_weighted().with_exponents(std::vector<Rational>(4)));
  for (const IndexSet& s : general_position_sets(os.arrangement(), 2))
    for (const IndexSet& r : general_position_sets(os.arrangement(), 2))
      CHECK(shapovalov_form<Rational>(os, os.flag_vector(s), os.flag_vector(r)) == 0);
}

TEST_CASE("symmetry and degree guard") {
  const OrlikSolomon os(WeightedArrangement(2, fixtures::concurrent3(), std::vector<Rational>{q(1, 2), q(-1, 3), q(5, 4)}));
  const Matrix<Rational> m = shapovalov_matrix<Rational>(os);
  CHECK(m == m.transpose());
  FlagVector<Rational> low{1, std::vector<Rational>(os.dim(1))};
  CHECK_THROWS_AS(shapovalov_form<Rational>(os, low, low), InvalidInput);
}

TEST_CASE("flag path and closed form agree exactly") {
  for (const WeightedArrangement& arr :
       {fixtures::generic3_weighted(), fixtures::generic4_weighted(),
        build_discriminantal(GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1}))}) {
    const OrlikSolomon os(arr);
    const auto pts = fixtures::rational_points(arr, 6);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const FlagVector<Rational> v1 = specialize<Rational>(os, pts[i]);
        const FlagVector<Rational> v2 = specialize<Rational>(os, pts[j]);
        const Rational closed = special_pairing<Rational>(arr, pts[i], pts[j]);
        CHECK(shapovalov_form<Rational>(os, v1, v2) == closed);
        // Shapovalov map of v(t1), read as a form at t2
        const OSElement<Rational> sv = shapovalov_map<Rational>(os, v1);
        Rational at_t2 = 0;
        for (std::size_t b = 0; b < os.dim(arr.dim()); ++b)
          at_t2 += sv.coeffs[b] * evaluate_form<Rational>(arr, os.basis(arr.dim())[b], pts[j]);
        CHECK(at_t2 == closed);
        CHECK(pairing(sv, v2) == closed);
      }
  }
}

TEST_CASE("closed form on the diagonal and for points") {
  const WeightedArrangement arr = fixtures::generic4_weighted();
  for (const auto& t : fixtures::rational_points(arr, 5))
    CHECK(special_pairing<Rational>(arr, t, t) == hessian_determinant<Rational>(arr, t));  // k = 2

  const WeightedArrangement pts = fixtures::points({0, 1, 3}, {q(1, 2), 2, q(-3, 4)});
  const std::vector<Rational> t1{q(1, 5)}, t2{q(-7, 3)};
  const Rational expected = q(1, 2) / (t1[0] * t2[0]) + 2 / ((t1[0] - 1) * (t2[0] - 1)) +
                            q(-3, 4) / ((t1[0] - 3) * (t2[0] - 3));
  CHECK(special_pairing<Rational>(pts, t1, t2) == expected);
  CHECK(special_pairing<Rational>(pts, t1, t1) == -hessian_determinant<Rational>(pts, t1));
  CHECK_THROWS_AS(special_pairing<Rational>(pts, std::vector<Rational>{1}, t2), PreconditionViolation);
}

TEST_CASE("complex mode matches exact mode") {
  const WeightedArrangement arr = fixtures::generic4_weighted();
  const OrlikSolomon os(arr);
  const auto pts = fixtures::rational_points(arr, 3);
  const std::vector<Complex> c0 = fixtures::to_complex(pts[0]);
  const std::vector<Complex> c1 = fixtures::to_complex(pts[1]);
  const Complex s = shapovalov_form<Complex>(os, specialize<Complex>(os, std::span<const Complex>(c0)),
                                             specialize<Complex>(os, std::span<const Complex>(c1)));
  const double exact = special_pairing<Rational>(arr, pts[0], pts[1]).get_d();
  CHECK(std::abs(s - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
}
