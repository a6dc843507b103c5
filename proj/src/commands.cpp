#include "bethe/commands.hpp"

#include <random>
#include <sstream>

namespace bethe {

using io::Json;
using io::to_json;

void RunConfig::validate() const {
  if (!(tol_newton > 0.0) || !(tol_verify > 0.0)) throw InvalidInput("tolerances must be positive");
  if (n_starts == 0) throw InvalidInput("at least one start is required");
}

namespace {

Json header(const char* command) { return {{"schema_version", io::kSchemaVersion}, {"command", command}}; }

Json config_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"n_starts", c.n_starts},
          {"tol_newton", c.tol_newton},
          {"tol_verify", c.tol_verify},
          {"arithmetic", c.exact ? "exact" : "float"}};
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.seed = c.seed;
  o.n_starts = c.n_starts;
  o.newton.tol = c.tol_newton;
  return o;
}

std::vector<Permutation> group_from_json(const Json& j, std::size_t dim) {
  std::vector<Permutation> group;
  if (!j.contains("group")) return group;
  for (const Json& g : j.at("group")) {
    Permutation perm = g.get<Permutation>();
    if (perm.size() != dim) throw InvalidInput("group element has wrong length");
    group.push_back(std::move(perm));
  }
  return group;
}

// Seeded rational points of U with small numerators and denominators.
std::vector<std::vector<Rational>> control_points(const WeightedArrangement& arr, std::uint64_t seed,
                                                  std::size_t count) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 11);
  std::vector<std::vector<Rational>> points;
  while (points.size() < count) {
    std::vector<Rational> t(arr.dim());
    for (Rational& x : t) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    const bool on = std::any_of(arr.hyperplanes().begin(), arr.hyperplanes().end(),
                                [&](const Hyperplane& h) { return sgn(h.evaluate<Rational>(t)) == 0; });
    if (!on) points.push_back(std::move(t));
  }
  return points;
}

std::vector<Complex> to_complex_point(std::span<const Rational> t) {
  std::vector<Complex> out;
  for (const Rational& x : t) out.emplace_back(x.get_d(), 0.0);
  return out;
}

Json critical_points_json(const CriticalSearch& search, const std::vector<std::optional<std::size_t>>& orbit) {
  Json points = Json::array();
  for (std::size_t i = 0; i < search.points.size(); ++i) {
    const CriticalPoint& p = search.points[i];
    Json jp{{"t", to_json<Complex>(p.t)},
            {"grad_residual", p.grad_residual},
            {"hess_det", to_json(p.hess_det)},
            {"nondegenerate", p.nondegenerate}};
    jp["orbit_id"] = orbit[i] ? Json(*orbit[i]) : Json(nullptr);
    points.push_back(std::move(jp));
  }
  return points;
}

std::vector<std::optional<std::size_t>> orbit_ids(const CriticalSearch& search, std::span<const Permutation> group,
                                                  double tol) {
  std::vector<std::optional<std::size_t>> ids(search.points.size());
  if (group.empty()) return ids;
  std::vector<std::vector<Complex>> pts;
  for (const CriticalPoint& p : search.points) pts.push_back(p.t);
  const std::vector<std::size_t> o = group_orbits(pts, group, tol);
  for (std::size_t i = 0; i < o.size(); ++i) ids[i] = o[i];
  return ids;
}

template <class T>
Json norm_check_json(const std::string& name, const NormCheck<T>& c) {
  return {{"name", name}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"abs_err", c.abs_err}, {"pass", c.pass}};
}

Json singular_check_json(const std::string& name, const SingularCheck& c) {
  return {{"name", name},
          {"lhs", c.delta_norm},
          {"rhs", c.grad_norm},
          {"abs_err", std::abs(c.delta_norm - c.grad_norm)},
          {"critical", c.is_critical},
          {"singular", c.is_singular},
          {"pass", c.pass}};
}

}  // namespace

CommandResult cmd_analyze(const Json& input) {
  const WeightedArrangement arr = io::arrangement_from_json(input);
  CommandResult out;
  out.report = header("analyze");
  out.report["dim"] = arr.dim();
  out.report["hyperplanes"] = arr.size();
  out.report["has_vertex"] = has_vertex(arr);
  const std::vector<std::size_t> dims = os_dimensions(arr);
  out.report["dims"] = to_json(dims);
  out.report["chi"] = euler_characteristic(arr);
  Json circ = Json::array();
  for (const IndexSet& c : circuits(arr)) circ.push_back(to_json(c));
  out.report["circuits"] = circ;
  Json bases = Json::array();
  bool agree = true;
  for (std::size_t p = 0; p <= arr.dim(); ++p) {
    const BasisValidation v = validate_basis(arr, p);
    agree = agree && v.agrees;
    Json b = Json::array();
    for (const IndexSet& s : v.basis) b.push_back(to_json(s));
    bases.push_back({{"degree", p}, {"basis", b}, {"nbc_count", v.nbc.size()}, {"oracle_rank", v.oracle_rank}});
  }
  out.report["bases"] = bases;
  out.report["nbc_matches_oracle"] = agree;
  std::ostringstream s;
  s << "analyze: dims";
  for (std::size_t d : dims) s << ' ' << d;
  s << ", chi " << euler_characteristic(arr);
  out.summary = s.str();
  return out;
}

CommandResult cmd_critical(const Json& input, const RunConfig& config) {
  config.validate();
  const WeightedArrangement arr = io::arrangement_from_json(input);
  const std::vector<Permutation> group = group_from_json(input, arr.dim());
  const CriticalSearch search = find_critical_points(arr, search_options(config));
  CommandResult out;
  out.report = header("critical");
  out.report["config"] = config_json(config);
  out.report["chi"] = search.chi;
  out.report["found"] = search.found();
  out.report["converged_starts"] = search.converged_starts;
  out.report["matches_chi"] = search.matches_chi();
  out.report["points"] = critical_points_json(search, orbit_ids(search, group, 1e-6));
  out.summary = "critical: found " + std::to_string(search.found()) + " of |chi| = " +
                std::to_string(search.chi < 0 ? -search.chi : search.chi);
  return out;
}

CommandResult cmd_verify(const Json& input, const RunConfig& config) {
  config.validate();
  const WeightedArrangement arr = io::arrangement_from_json(input);
  const bool exact = config.exact && arr.has_exact_exponents();
  const OrlikSolomon os(arr);
  const CriticalSearch search = find_critical_points(arr, search_options(config));

  CommandResult out;
  out.report = header("verify");
  out.report["config"] = config_json(config);
  out.report["arithmetic"] = exact ? "exact" : "float";
  out.report["chi"] = search.chi;
  out.report["found"] = search.found();
  out.report["points"] = critical_points_json(search, orbit_ids(search, group_from_json(input, arr.dim()), 1e-6));
  Json checks = Json::array();
  bool all = true;
  const auto record = [&](Json check) {
    all = all && check.at("pass").get<bool>();
    checks.push_back(std::move(check));
  };

  std::vector<std::size_t> nondegenerate;
  for (std::size_t i = 0; i < search.points.size(); ++i) {
    const CriticalPoint& p = search.points[i];
    if (!p.nondegenerate) continue;
    nondegenerate.push_back(i);
    const std::string tag = "critical[" + std::to_string(i) + "]";
    record(singular_check_json("singular " + tag, verify_singular<Complex>(os, std::span<const Complex>(p.t),
                                                                             config.tol_verify)));
    record(norm_check_json("norm " + tag, verify_norm_identity<Complex>(os, std::span<const Complex>(p.t), 1e-9)));
  }
  const auto controls = control_points(arr, config.seed, 20);
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const std::string tag = "control[" + std::to_string(i) + "]";
    const std::vector<Complex> tc = to_complex_point(controls[i]);
    record(singular_check_json("singular " + tag,
                               verify_singular<Complex>(os, std::span<const Complex>(tc), config.tol_verify)));
    if (exact)
      record(norm_check_json("norm " + tag, verify_norm_identity<Rational>(os, std::span<const Rational>(controls[i]))));
    else
      record(norm_check_json("norm " + tag, verify_norm_identity<Complex>(os, std::span<const Complex>(tc), 1e-9)));
  }
  for (std::size_t a = 0; a < nondegenerate.size(); ++a)
    for (std::size_t b = a + 1; b < nondegenerate.size(); ++b) {
      const OrthogonalityCheck c =
          verify_orthogonality(arr, search.points[nondegenerate[a]].t, search.points[nondegenerate[b]].t,
                               config.tol_verify);
      record({{"name", "orthogonality critical[" + std::to_string(nondegenerate[a]) + "," +
                           std::to_string(nondegenerate[b]) + "]"},
              {"lhs", to_json(c.value)},
              {"rhs", to_json(Complex(0.0))},
              {"abs_err", c.normalized},
              {"pass", c.pass}});
    }
  out.report["checks"] = checks;
  out.report["pass"] = all;
  out.exit_code = all ? kExitPass : kExitVerificationFailure;
  out.summary = std::string("verify: ") + std::to_string(checks.size()) + " checks, " + (all ? "all pass" : "FAILURES");
  return out;
}

CommandResult cmd_gaudin(const Json& input, const RunConfig& config) {
  config.validate();
  const GaudinProblem p = io::gaudin_from_json(input);
  const std::size_t k = p.total_k();
  p.sl2_weights();  // module-level checks are sl2 only
  const WeightedArrangement arr = build_discriminantal(p);
  const std::vector<Permutation> group = block_permutation_group(p.k);
  const CriticalSearch search = find_critical_points(arr, search_options(config));
  const auto orbits = orbit_ids(search, group, 1e-6);

  CommandResult out;
  out.report = header("gaudin");
  out.report["config"] = config_json(config);
  out.report["problem"] = io::gaudin_to_json(p);
  out.report["hyperplanes"] = arr.size();
  out.report["chi"] = search.chi;
  out.report["found"] = search.found();
  out.report["points"] = critical_points_json(search, orbits);
  bool all = true;

  // one nondegenerate representative per orbit
  std::vector<std::vector<Complex>> reps;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < search.points.size(); ++i) {
    if (!search.points[i].nondegenerate || !orbits[i]) continue;
    if (std::find(seen.begin(), seen.end(), *orbits[i]) != seen.end()) continue;
    seen.push_back(*orbits[i]);
    reps.push_back(search.points[i].t);
  }
  Json bethe = Json::array();
  std::vector<std::vector<Complex>> usable;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    Json entry{{"t", to_json<Complex>(reps[r])}};
    try {
      std::optional<std::span<const Complex>> other;
      if (r + 1 < reps.size()) other = std::span<const Complex>(reps[r + 1]);
      const BetheReport b = verify_bethe(p, reps[r], other, config.tol_verify);
      entry["raising_residual"] = b.raising_residual;
      entry["eigenvalues"] = to_json<Complex>(b.eigenvalues);
      entry["eigen_residuals"] = b.eigen_residuals;
      entry["norm_lhs"] = to_json(b.norm_lhs);
      entry["norm_rhs"] = to_json(b.norm_rhs);
      entry["norm_rel_err"] = b.norm_rel_err;
      entry["orthogonality"] = b.orthogonality ? Json(*b.orthogonality) : Json(nullptr);
      entry["pass"] = b.pass;
      all = all && b.pass;
      usable.push_back(reps[r]);
    } catch (const Unsupported& e) {
      entry["skipped"] = e.what();
    }
    bethe.push_back(std::move(entry));
  }
  out.report["bethe_vectors"] = bethe;

  const std::size_t sing_dim = singular_space_dimension(p, k);
  out.report["sing_dim"] = sing_dim;
  if (!usable.empty()) {
    const BetheGram g = bethe_gram(p, usable);
    out.report["gram"] = {{"rank", g.rank},
                          {"determinant", to_json(g.determinant)},
                          {"hessian_product", to_json(g.hessian_product)},
                          {"relative_error", g.relative_error}};
  }
  out.report["bethe_rank_equals_sing_dim"] = out.report.contains("gram") && out.report["gram"]["rank"] == sing_dim;

  const Rational commutator = max_commutator(p, k);
  out.report["max_commutator"] = to_json(commutator);
  all = all && sgn(commutator) == 0;

  Json shap = Json::object();
  for (const auto& [name, conv] : {std::pair{"master_function", PairExponentConvention::kMasterFunction},
                                   std::pair{"literal_rule", PairExponentConvention::kLiteralRule}}) {
    const ShapCorrespondence s = verify_shap_correspondence(p, conv);
    shap[name] = {{"pass", s.pass},
                  {"ratio", s.ratio ? to_json(*s.ratio) : Json(nullptr)},
                  {"expected_factor", to_json(s.expected_factor)}};
    if (conv == PairExponentConvention::kMasterFunction) all = all && s.pass;
  }
  out.report["shapovalov_correspondence"] = shap;

  const auto ce_points = control_points(arr, config.seed, 1);
  const CanonicalElementReport ce = verify_canonical_element(p, ce_points.front(), 1e-10);
  out.report["canonical_element"] = {{"t", to_json<Rational>(ce_points.front())},
                                     {"weight_function_error", ce.weight_function_error},
                                     {"duality_error", ce.duality_error},
                                     {"projection_error", ce.projection_error},
                                     {"module_norm", to_json(ce.module_norm)},
                                     {"arrangement_norm", to_json(ce.arrangement_norm)},
                                     {"norm_rel_err", ce.norm_rel_err},
                                     {"pass", ce.pass}};
  all = all && ce.pass;
  out.report["pass"] = all;
  out.exit_code = all ? kExitPass : kExitVerificationFailure;
  std::ostringstream s;
  s << "gaudin: " << usable.size() << " Bethe vectors, sing dim " << sing_dim << ", " << (all ? "all pass" : "FAILURES");
  out.summary = s.str();
  return out;
}

}  // namespace bethe
