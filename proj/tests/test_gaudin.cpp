#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace bethe;
using fixtures::q;

namespace {

GaudinProblem sl3_problem() {
  GaudinProblem p;
  p.cartan = {{{2, -1}, {-1, 2}}, {Rational(1), Rational(1)}};
  p.weights = {{1, 0}, {0, 2}, {1, 1}};
  p.k = {1, 2};
  p.z_exact = std::vector<Rational>{0, 1, q(-5, 2)};
  for (const Rational& x : *p.z_exact) p.z.emplace_back(x.get_d(), 0.0);
  p.validate();
  return p;
}

bool is_zero(const Matrix<Rational>& m) { return m == Matrix<Rational>(m.rows(), m.cols()); }

}  // namespace

TEST_CASE("discriminantal arrangements") {
  const WeightedArrangement a1 = build_discriminantal(GaudinProblem::sl2({3, 5}, 1, std::vector<Rational>{0, 1}));
  CHECK(a1.size() == 2);
  CHECK(a1.exact_exponents() == std::vector<Rational>{-3, -5});

  const GaudinProblem p2 = GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1});
  const WeightedArrangement a2 = build_discriminantal(p2);
  CHECK(a2.size() == 5);
  CHECK(a2.exact_exponents().back() == 2);
  CHECK(point_hyperplane_index(p2, 1, 0) == 2);
  CHECK(build_discriminantal(p2, PairExponentConvention::kLiteralRule).exact_exponents().back() == -2);

  const WeightedArrangement a0 = build_discriminantal(GaudinProblem::sl2({1, 1}, 0, std::vector<Rational>{0, 1}));
  CHECK(a0.dim() == 0);
  CHECK(a0.size() == 0);

  CHECK_THROWS_AS(GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{2, 2}), InvalidInput);
  CHECK_THROWS_AS(build_discriminantal(GaudinProblem::sl2({1, 1}, 1, std::vector<Complex>{{0, 1}, {1, 0}})),
                  Unsupported);
}

TEST_CASE("Bethe residual is the logarithmic gradient") {
  const GaudinProblem mid = GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{0, 1});
  CHECK(bethe_residual<Rational>(mid, std::vector<Rational>{q(1, 2)}) == std::vector<Rational>{0});
  CHECK(bethe_residual<Rational>(GaudinProblem::sl2({1, 1}, 0, std::vector<Rational>{0, 1}), std::vector<Rational>{})
            .empty());

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 9);
  for (const GaudinProblem& p : {GaudinProblem::sl2({2, 1, 3}, 3, std::vector<Rational>{0, 1, -2}), sl3_problem()}) {
    const WeightedArrangement arr = build_discriminantal(p);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Rational> t(p.total_k());
      for (Rational& x : t) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
      }
      bool on = false;
      for (const Hyperplane& h : arr.hyperplanes()) on = on || sgn(h.evaluate<Rational>(t)) == 0;
      if (on) continue;
      CHECK(bethe_residual<Rational>(p, t) == log_grad<Rational>(arr, t));
      CHECK(bethe_hessian<Rational>(p, t) == log_hessian<Rational>(arr, t));
    }
  }
}

TEST_CASE("weight space basis") {
  const std::vector<std::size_t> m{1, 2};
  CHECK(weight_space_basis(m, 2) == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 1}});
  CHECK(weight_space_basis(m, 0) == std::vector<std::vector<std::size_t>>{{0, 0}});
  CHECK(weight_space_basis(m, 4).empty());
}

TEST_CASE("canonical weight function") {
  const std::vector<Rational> t{q(1, 3)};
  const TensorVector<Rational> w = canonical_weight_function<Rational>(
      GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{0, 1}), t);
  CHECK(w.coords == std::vector<Rational>{1 / (t[0] - 1), 1 / t[0]});  // basis (0,1), (1,0)

  const Rational z = q(2, 5);
  const TensorVector<Rational> one = canonical_weight_function<Rational>(
      GaudinProblem::sl2({2}, 1, std::vector<Rational>{z}), t);
  CHECK(one.coords == std::vector<Rational>{1 / (t[0] - z)});

  const std::vector<Rational> tt{q(1, 3), q(-4, 7)};
  const TensorVector<Rational> two = canonical_weight_function<Rational>(
      GaudinProblem::sl2({2}, 2, std::vector<Rational>{z}), tt);
  const Rational expected = 1 / ((tt[0] - tt[1]) * (tt[1] - z)) + 1 / ((tt[1] - tt[0]) * (tt[0] - z));
  CHECK(two.coords == std::vector<Rational>{expected});
}

TEST_CASE("canonical weight function is symmetric in t") {
  const GaudinProblem p = GaudinProblem::sl2({2, 1, 3}, 3, std::vector<Rational>{0, 1, -2});
  const std::vector<Complex> t{{0.3, 0.1}, {-0.8, 0.4}, {1.7, -0.2}};
  const TensorVector<Complex> w = canonical_weight_function<Complex>(p, t);
  for (const Permutation& g : block_permutation_group(std::vector<std::size_t>{3})) {
    const std::vector<Complex> gt = apply_permutation(g, t);
    const TensorVector<Complex> wg = canonical_weight_function<Complex>(p, gt);
    for (std::size_t i = 0; i < w.coords.size(); ++i)
      CHECK(std::abs(w.coords[i] - wg.coords[i]) <= 1e-10 * std::max(1.0, std::abs(w.coords[i])));
  }
}

TEST_CASE("module Shapovalov form") {
  CHECK(sl2_shapovalov_norm(1, 1) == 1);
  CHECK(sl2_shapovalov_norm(2, 2) == 4);
  CHECK(sl2_shapovalov_norm(5, 0) == 1);
  CHECK(sl2_shapovalov_norm(3, 2) == 12);
  CHECK(sl2_shapovalov_norm(1, 2) == 0);
  const GaudinProblem p = GaudinProblem::sl2({2, 3}, 3, std::vector<Rational>{0, 1});
  const auto basis = weight_space_basis(std::vector<std::size_t>{2, 3}, 3);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    TensorVector<Rational> x{3, std::vector<Rational>(basis.size())};
    x.coords[b] = 1;
    CHECK(tensor_shapovalov(p, x, x) == sl2_shapovalov_norm(2, basis[b][0]) * sl2_shapovalov_norm(3, basis[b][1]));
  }
}

TEST_CASE("sl2 relations on weight spaces") {
  const GaudinProblem p = GaudinProblem::sl2({2, 1, 3}, 0, std::vector<Rational>{0, 1, -2});
  for (std::size_t level = 1; level <= 5; ++level) {
    // [e, f] = h on V[level]
    const Matrix<Rational> ef = raising_operator<Rational>(p, level + 1) * lowering_operator<Rational>(p, level);
    const Matrix<Rational> fe = lowering_operator<Rational>(p, level - 1) * raising_operator<Rational>(p, level);
    CHECK(ef - fe == cartan_operator<Rational>(p, level));
    // contravariance: S(e x, y) = S(x, f y)
    const auto src = weight_space_basis(std::vector<std::size_t>{2, 1, 3}, level);
    const auto dst = weight_space_basis(std::vector<std::size_t>{2, 1, 3}, level - 1);
    const Matrix<Rational> e = raising_operator<Rational>(p, level);
    const Matrix<Rational> f = lowering_operator<Rational>(p, level - 1);
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < dst.size(); ++b) {
        TensorVector<Rational> x{level, std::vector<Rational>(src.size())}, y{level - 1, std::vector<Rational>(dst.size())};
        x.coords[a] = 1;
        y.coords[b] = 1;
        const TensorVector<Rational> ex{level - 1, multiply(e, std::span<const Rational>(x.coords))};
        const TensorVector<Rational> fy{level, multiply(f, std::span<const Rational>(y.coords))};
        CHECK(tensor_shapovalov(p, ex, y) == tensor_shapovalov(p, x, fy));
      }
  }
}

TEST_CASE("Gaudin Hamiltonians commute with each other and with sl2") {
  const GaudinProblem p = GaudinProblem::sl2({2, 1, 3, 1}, 0, std::vector<Rational>{0, 1, -2, q(7, 3)});
  for (std::size_t level = 0; level <= 4; ++level) {
    CHECK(max_commutator(p, level) == 0);
    Matrix<Rational> total(weight_space_basis(std::vector<std::size_t>{2, 1, 3, 1}, level).size(),
                           weight_space_basis(std::vector<std::size_t>{2, 1, 3, 1}, level).size());
    for (std::size_t i = 0; i < 4; ++i) total = total + gaudin_hamiltonian<Rational>(p, i, level);
    if (level > 0) {
      const Matrix<Rational> e = raising_operator<Rational>(p, level);
      const Matrix<Rational> e_total_prev = [&] {
        Matrix<Rational> t(e.rows(), e.rows());
        for (std::size_t i = 0; i < 4; ++i) t = t + gaudin_hamiltonian<Rational>(p, i, level - 1);
        return t;
      }();
      // sum K_i = 0 since Omega^{(i,j)} / (z_i - z_j) is antisymmetric in (i, j)
      CHECK(is_zero(total));
      CHECK(is_zero(e_total_prev * e - e * total));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      const Matrix<Rational> k = gaudin_hamiltonian<Rational>(p, i, level);
      if (level > 0) {
        const Matrix<Rational> e = raising_operator<Rational>(p, level);
        CHECK(is_zero(gaudin_hamiltonian<Rational>(p, i, level - 1) * e - e * k));
      }
      const Matrix<Rational> f = lowering_operator<Rational>(p, level);
      CHECK(is_zero(gaudin_hamiltonian<Rational>(p, i, level + 1) * f - f * k));
    }
  }
}

TEST_CASE("singlet eigenvalue of two spins") {
  const GaudinProblem p = GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{0, 1});
  const Matrix<Rational> k1 = gaudin_hamiltonian<Rational>(p, 0, 1);
  // singlet v (x) Fv - Fv (x) v in basis (0,1), (1,0)
  const std::vector<Rational> singlet{1, -1};
  const std::vector<Rational> image = multiply(k1, std::span<const Rational>(singlet));
  CHECK(image == std::vector<Rational>{q(3, 2), q(-3, 2)});
  CHECK(singular_space_dimension(p, 1) == 1);
  CHECK(singular_space_dimension(GaudinProblem::sl2({1, 1, 1}, 1, std::vector<Rational>{0, 1, 3}), 1) == 2);
  CHECK(singular_space_dimension(GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1}), 2) == 1);
}

TEST_CASE("Bethe vectors") {
  const GaudinProblem p = GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{0, 1});
  const BetheReport r = verify_bethe(p, std::vector<Complex>{0.5});
  CHECK(r.pass);
  CHECK(std::abs(r.norm_lhs - 8.0) < 1e-12);
  CHECK(std::abs(r.eigenvalues[0] - 1.5) < 1e-12);

  const GaudinProblem three = GaudinProblem::sl2({1, 1, 1}, 1, std::vector<Rational>{0, 1, 3});
  // Bethe equation 1/t + 1/(t-1) + 1/(t-3) = 0
  const std::vector<Complex> t1{(8 - std::sqrt(28.0)) / 6}, t2{(8 + std::sqrt(28.0)) / 6};
  const BetheReport b = verify_bethe(three, t1, std::span<const Complex>(t2));
  CHECK(b.pass);
  REQUIRE(b.orthogonality);
  CHECK(*b.orthogonality <= 1e-8);

  const GaudinProblem empty = GaudinProblem::sl2({1, 2}, 0, std::vector<Rational>{0, 1});
  const BetheReport e = verify_bethe(empty, std::vector<Complex>{});
  CHECK(e.pass);
  CHECK(e.norm_lhs == Complex(1.0));
  CHECK(e.norm_rhs == Complex(1.0));

  CHECK_THROWS_AS(verify_bethe(p, std::vector<Complex>{0.0}), Unsupported);
  CHECK_THROWS_AS(verify_bethe(sl3_problem(), std::vector<Complex>{0.1, 0.2, 0.3}), Unsupported);
}

TEST_CASE("Shapovalov correspondence") {
  const ShapCorrespondence k1 =
      verify_shap_correspondence(GaudinProblem::sl2({1, 3}, 1, std::vector<Rational>{0, 1}));
  CHECK(k1.pass);
  CHECK(k1.expected_factor == 1);

  const GaudinProblem p = GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1});
  const ShapCorrespondence master = verify_shap_correspondence(p);
  CHECK(master.pass);
  REQUIRE(master.ratio);
  CHECK(*master.ratio == 2);
  CHECK_FALSE(verify_shap_correspondence(p, PairExponentConvention::kLiteralRule).pass);
}

TEST_CASE("canonical element") {
  const CanonicalElementReport a = verify_canonical_element(GaudinProblem::sl2({1, 1}, 1, std::vector<Rational>{0, 1}),
                                                            std::vector<Rational>{q(1, 3)});
  CHECK(a.pass);
  const CanonicalElementReport b = verify_canonical_element(GaudinProblem::sl2({2}, 2, std::vector<Rational>{q(2, 5)}),
                                                            std::vector<Rational>{q(1, 3), q(-4, 7)});
  CHECK(b.pass);
  const CanonicalElementReport c = verify_canonical_element(GaudinProblem::sl2({2, 2}, 2, std::vector<Rational>{0, 1}),
                                                            std::vector<Rational>{q(1, 3), q(5, 7)});
  CHECK(c.pass);
  CHECK(std::abs(c.module_norm - c.arrangement_norm) <= 1e-10 * std::abs(c.module_norm));
}

TEST_CASE("module computations are sl2 only") {
  CHECK_THROWS_AS(sl3_problem().sl2_weights(), Unsupported);
  CHECK_NOTHROW(build_discriminantal(sl3_problem()));
}
