#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace bethe;
using fixtures::q;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("log gradient and Hessian for two points") {
  const WeightedArrangement arr = fixtures::points({0, 1}, {1, 1});
  const std::vector<Rational> mid{q(1, 2)};
  CHECK(log_grad<Rational>(arr, mid) == std::vector<Rational>{0});
  CHECK(log_hessian<Rational>(arr, mid)(0, 0) == -8);
  CHECK_THROWS_AS(log_grad<Rational>(arr, std::vector<Rational>{1}), PreconditionViolation);
  CHECK_THROWS_AS(log_hessian<Rational>(arr, std::vector<Rational>{0}), PreconditionViolation);

  const WeightedArrangement zero = fixtures::generic4_weighted().with_exponents(std::vector<Rational>(4));
  const std::vector<Rational> t{q(1, 3), q(5, 7)};
  CHECK(log_grad<Rational>(zero, t) == std::vector<Rational>(2));
  CHECK(log_hessian<Rational>(zero, t) == Matrix<Rational>(2, 2));
}

TEST_CASE("Hessian matches central differences of the gradient") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const GaudinProblem p = GaudinProblem::sl2({2, 1, 3}, 2, std::vector<Rational>{0, 1, -2});
  for (const WeightedArrangement& arr :
       {fixtures::generic4_weighted(), build_discriminantal(p),
        fixtures::generic3_weighted().with_exponents(std::vector<Complex>{{0.3, 1.1}, {-0.7, 0.2}, {1.5, -0.4}})}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> t(arr.dim());
      for (Complex& x : t) x = {u(rng), u(rng)};
      const Matrix<Complex> h = log_hessian<Complex>(arr, std::span<const Complex>(t));
      CHECK(h == h.transpose());
      const double step = 1e-5;
      for (std::size_t l = 0; l < arr.dim(); ++l) {
        std::vector<Complex> tp = t, tm = t;
        tp[l] += step;
        tm[l] -= step;
        const auto gp = log_grad<Complex>(arr, std::span<const Complex>(tp));
        const auto gm = log_grad<Complex>(arr, std::span<const Complex>(tm));
        for (std::size_t i = 0; i < arr.dim(); ++i) {
          const Complex fd = (gp[i] - gm[i]) / (2 * step);
          CHECK(std::abs(fd - h(i, l)) <= 1e-6 * std::max(1.0, std::abs(h(i, l))));
        }
      }
    }
  }
}

TEST_CASE("Newton from a nearby start") {
  const WeightedArrangement arr = fixtures::points({0, 1}, {1, 1});
  const std::vector<Complex> t0{0.3};
  const NewtonResult r = newton_solve(arr, t0);
  REQUIRE(std::holds_alternative<CriticalPoint>(r));
  const CriticalPoint& cp = std::get<CriticalPoint>(r);
  CHECK(std::abs(cp.t[0] - 0.5) < 1e-12);
  CHECK(cp.grad_residual <= 1e-12);
  CHECK(cp.nondegenerate);

  const NewtonResult again = newton_solve(arr, cp.t);
  REQUIRE(std::holds_alternative<CriticalPoint>(again));
  CHECK(std::abs(std::get<CriticalPoint>(again).t[0] - cp.t[0]) < 1e-12);

  CHECK_THROWS_AS(newton_solve(arr, std::vector<Complex>{1.0}), PreconditionViolation);
}

TEST_CASE("Newton on three points reaches a root of the quadratic") {
  const WeightedArrangement arr = fixtures::points({0, 1, 3}, {1, 1, 1});
  // (t-1)(t-3) + t(t-3) + t(t-1) = 3t^2 - 8t + 3
  const double r1 = (8 - std::sqrt(28.0)) / 6, r2 = (8 + std::sqrt(28.0)) / 6;
  const NewtonResult r = newton_solve(arr, std::vector<Complex>{0.4});
  REQUIRE(std::holds_alternative<CriticalPoint>(r));
  const Complex t = std::get<CriticalPoint>(r).t[0];
  CHECK(std::min(std::abs(t - r1), std::abs(t - r2)) < 1e-12);
}

TEST_CASE("divergence is reported with its cause") {
  const WeightedArrangement arr = fixtures::points({0, 1}, {1, 1});
  NewtonOptions opts;
  opts.max_iter = 0;
  const NewtonResult r = newton_solve(arr, std::vector<Complex>{0.3}, opts);
  REQUIRE(std::holds_alternative<DivergenceReport>(r));
  CHECK(std::get<DivergenceReport>(r).cause == NewtonFailure::kMaxIterations);
  CHECK(to_string(NewtonFailure::kSingularJacobian) == "singular jacobian");
}

TEST_CASE("critical point counts") {
  const CriticalSearch g4 = find_critical_points(fixtures::generic4_weighted());
  CHECK(g4.found() == 3);
  CHECK(g4.matches_chi());
  for (const CriticalPoint& p : g4.points) CHECK(p.nondegenerate);

  for (long n = 3; n <= 5; ++n) {
    std::vector<Rational> z, a;
    for (long s = 0; s < n; ++s) {
      z.push_back(q(s * s, 2));
      a.push_back(q(s + 1, 2));
    }
    const CriticalSearch s = find_critical_points(fixtures::points(z, a));
    CHECK(s.found() == static_cast<std::size_t>(n - 1));
    CHECK(s.matches_chi());
  }

  const GaudinProblem p = GaudinProblem::sl2({1, 1, 1}, 1, std::vector<Rational>{0, 1, 3});
  CHECK(find_critical_points(build_discriminantal(p)).found() == 2);
}

TEST_CASE("search is reproducible for a fixed seed") {
  SearchOptions opts;
  opts.seed = 42;
  opts.n_starts = 40;
  const CriticalSearch a = find_critical_points(fixtures::generic4_weighted(), opts);
  const CriticalSearch b = find_critical_points(fixtures::generic4_weighted(), opts);
  REQUIRE(a.found() == b.found());
  for (std::size_t i = 0; i < a.found(); ++i) CHECK(a.points[i].t == b.points[i].t);
  CHECK(a.converged_starts == b.converged_starts);
}

TEST_CASE("orbits") {
  const std::vector<std::vector<Complex>> pts{{1.0, 2.0}, {2.0, 1.0}, {3.0, 5.0}};
  const auto swap = block_permutation_group(std::vector<std::size_t>{2});
  CHECK(swap.size() == 2);
  CHECK(group_orbits(pts, swap, 1e-9) == std::vector<std::size_t>{0, 0, 1});
  const std::vector<Permutation> trivial{{0, 1}};
  CHECK(group_orbits(pts, trivial, 1e-9) == std::vector<std::size_t>{0, 1, 2});
  CHECK(block_permutation_group(std::vector<std::size_t>{2, 3}).size() == 12);

  const GaudinProblem p = GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1});
  const WeightedArrangement arr = build_discriminantal(p);
  const CriticalSearch s = find_critical_points(arr);
  std::vector<std::vector<Complex>> found;
  for (const CriticalPoint& c : s.points) found.push_back(c.t);
  const auto ids = group_orbits(found, swap, 1e-6);
  REQUIRE(ids.size() == 2);
  CHECK(ids[0] == ids[1]);
}

TEST_CASE("Hessian determinant is constant on orbits") {
  const GaudinProblem p = GaudinProblem::sl2({2, 1, 3}, 3, std::vector<Rational>{0, 1, -2});
  const WeightedArrangement arr = build_discriminantal(p);
  const std::vector<Complex> t{{0.3, 0.1}, {-0.8, 0.4}, {1.7, -0.2}};
  const Complex h = hessian_determinant<Complex>(arr, std::span<const Complex>(t));
  for (const Permutation& g : block_permutation_group(std::vector<std::size_t>{3})) {
    const std::vector<Complex> gt = apply_permutation(g, t);
    CHECK(rel(hessian_determinant<Complex>(arr, std::span<const Complex>(gt)), h) < 1e-12);
  }
}
