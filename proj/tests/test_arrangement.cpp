#include <doctest.h>

#include "fixtures.hpp"

using namespace bethe;
using fixtures::line;
using fixtures::q;

TEST_CASE("rank reports of small subsets") {
  const WeightedArrangement arr = fixtures::generic3_weighted();
  const IndexSet all{0, 1, 2};
  const SubsetRankReport r = rank_report(arr, all);
  CHECK(r.coeff_rank == 2);
  CHECK_FALSE(r.consistent);
  CHECK_FALSE(r.general_position);

  const IndexSet pair{0, 1};
  const SubsetRankReport p = rank_report(arr, pair);
  CHECK(p.coeff_rank == 2);
  CHECK(p.consistent);
  CHECK(p.general_position);

  const SubsetRankReport e = rank_report(arr, IndexSet{});
  CHECK(e.coeff_rank == 0);
  CHECK(e.general_position);

  const WeightedArrangement par(2, {line(0, {1, 0}), line(-1, {1, 0}), line(0, {0, 1})},
                                std::vector<Rational>{1, 1, 1});
  const SubsetRankReport pp = rank_report(par, IndexSet{0, 1});
  CHECK(pp.coeff_rank == 1);
  CHECK_FALSE(pp.consistent);
  CHECK_FALSE(pp.general_position);
}

TEST_CASE("rank is monotone under adding hyperplanes") {
  const WeightedArrangement arr = fixtures::generic4_weighted();
  for (std::size_t p = 0; p <= 3; ++p)
    for (const IndexSet& s : subsets_of_size(arr.size(), p))
      for (std::size_t j = 0; j < arr.size(); ++j) {
        if (std::find(s.begin(), s.end(), j) != s.end()) continue;
        IndexSet bigger = s;
        bigger.push_back(j);
        CHECK(rank_report(arr, bigger).coeff_rank >= rank_report(arr, s).coeff_rank);
      }
}

TEST_CASE("general position is consistency plus full rank") {
  const WeightedArrangement arr = fixtures::generic4_weighted();
  for (std::size_t p = 0; p <= 3; ++p)
    for (const IndexSet& s : subsets_of_size(arr.size(), p)) {
      const SubsetRankReport r = rank_report(arr, s);
      CHECK(r.general_position == (r.consistent && r.coeff_rank == s.size()));
    }
}

TEST_CASE("circuits") {
  const WeightedArrangement conc(2, fixtures::concurrent3(), std::vector<Rational>{1, 1, 1});
  CHECK(circuits(conc) == std::vector<IndexSet>{{0, 1, 2}});
  CHECK(circuits(fixtures::generic3_weighted()) == std::vector<IndexSet>{{0, 1, 2}});
  const WeightedArrangement par(2, {line(0, {1, 0}), line(-1, {1, 0}), line(0, {0, 1})},
                                std::vector<Rational>{1, 1, 1});
  CHECK(circuits(par) == std::vector<IndexSet>{{0, 1}});
}

TEST_CASE("nbc bases agree with the evaluation oracle") {
  // generic 3 lines: the triple circuit has empty intersection, so nothing
  // is broken and all three pairs survive
  const WeightedArrangement g3 = fixtures::generic3_weighted();
  CHECK(nbc_sets(g3, 2) == std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(validate_basis(g3, 2).agrees);
  CHECK(validate_basis(g3, 2).oracle_rank == 3);

  const WeightedArrangement conc(2, fixtures::concurrent3(), std::vector<Rational>{1, 1, 1});
  CHECK(nbc_sets(conc, 2) == std::vector<IndexSet>{{0, 1}, {0, 2}});
  CHECK(validate_basis(conc, 2).agrees);

  CHECK(nbc_sets(g3, 0) == std::vector<IndexSet>{{}});

  // discriminantal arrangement of two points and two coordinates
  const GaudinProblem p = GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1});
  const WeightedArrangement disc = build_discriminantal(p);
  for (std::size_t deg = 0; deg <= 2; ++deg) CHECK(validate_basis(disc, deg).agrees);
  CHECK(os_dimensions(disc) == std::vector<std::size_t>{1, 5, 6});
}

TEST_CASE("Euler characteristic") {
  CHECK(euler_characteristic(fixtures::generic3_weighted()) == 1);
  CHECK(euler_characteristic(fixtures::generic4_weighted()) == 3);
  CHECK(os_dimensions(fixtures::generic4_weighted()) == std::vector<std::size_t>{1, 4, 6});
  for (long n = 1; n <= 5; ++n) {
    std::vector<Rational> z, a;
    for (long s = 0; s < n; ++s) {
      z.push_back(q(s * s - 2));
      a.push_back(1);
    }
    CHECK(euler_characteristic(fixtures::points(z, a)) == 1 - n);
  }
}

TEST_CASE("construction rejects bad data") {
  CHECK_THROWS_AS(WeightedArrangement(2, {line(0, {1, 0}), line(-1, {1, 0})}, std::vector<Rational>{1, 1}),
                  PreconditionViolation);
  CHECK_THROWS_AS(WeightedArrangement(2, {line(0, {1, 0}), line(0, {2, 0}), line(0, {0, 1})},
                                      std::vector<Rational>{1, 1, 1}),
                  InvalidInput);
  CHECK_THROWS_AS(WeightedArrangement(2, {line(1, {0, 0}), line(0, {0, 1})}, std::vector<Rational>{1, 1}),
                  InvalidInput);
  CHECK_THROWS_AS(WeightedArrangement(2, {line(0, {1, 0}), line(0, {0, 1})}, std::vector<Rational>{1}),
                  InvalidInput);
}

TEST_CASE("sample points avoid the arrangement and are reproducible") {
  const WeightedArrangement arr = fixtures::generic4_weighted();
  const auto a = sample_points(arr, 30);
  const auto b = sample_points(arr, 30);
  CHECK(a == b);
  for (const auto& t : a)
    for (const Hyperplane& h : arr.hyperplanes()) CHECK(sgn(h.evaluate<Rational>(t)) != 0);
}
