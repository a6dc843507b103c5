#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bethe/commands.hpp"

namespace {

int run(const std::string& command, const std::string& input, const bethe::RunConfig& config,
        const std::string& out_path) {
  const bethe::io::Json data = bethe::io::read_file(input);
  bethe::CommandResult result;
  if (command == "analyze")
    result = bethe::cmd_analyze(data);
  else if (command == "critical")
    result = bethe::cmd_critical(data, config);
  else if (command == "verify")
    result = bethe::cmd_verify(data, config);
  else
    result = bethe::cmd_gaudin(data, config);
  const std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw bethe::InvalidInput("cannot write " + out_path);
    out << text;
  }
  std::cerr << result.summary << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bethe vectors and hyperplane arrangements"};
  app.require_subcommand(1);
  bethe::RunConfig config;
  std::string out_path;
  bool use_float = false;

  std::string input;
  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "ranks, circuits, Orlik-Solomon bases and Euler characteristic"},
      {"critical", "critical points of the master function"},
      {"verify", "singular vectors, norm identity and orthogonality at critical points"},
      {"gaudin", "Bethe vectors of an sl2 Gaudin model"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("input", input, "JSON instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    if (std::string(name) == "analyze") continue;
    sub->add_option("--seed", config.seed, "seed of the start generator");
    sub->add_option("--starts", config.n_starts, "number of Newton starts");
    sub->add_option("--tol-newton", config.tol_newton, "gradient tolerance for accepting a critical point");
    sub->add_option("--tol-verify", config.tol_verify, "tolerance of the verification checks");
    auto* exact = sub->add_flag("--exact", "exact rational arithmetic where possible (default)");
    sub->add_flag("--float", use_float, "double precision throughout")->excludes(exact);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bethe::kExitInputError;
  }
  config.exact = !use_float;

  try {
    return run(app.get_subcommands().front()->get_name(), input, config, out_path);
  } catch (const bethe::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return bethe::kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return bethe::kExitInputError;
  } catch (const bethe::PreconditionViolation& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return bethe::kExitPrecondition;
  } catch (const bethe::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return bethe::kExitPrecondition;
  }
}
