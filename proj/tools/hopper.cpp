#include "hopper/errors.hpp"
#include "hopper/orchestrator.hpp"
#include "hopper/verify.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace hopper;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError(path + " is not valid JSON");
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("hopper"));
  spdlog::set_level(spdlog::level::warn);

  CLI::App app{"Polytope search by arrangement hops"};
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  auto* run = app.add_subcommand("run", "Run a search described by a config file");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> agents, budget;
  std::string brain, report_path;
  bool stop_on_first = false, run_json = false;
  run->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--agents", agents, "Number of concurrent agents");
  run->add_option("--budget", budget, "Total hop budget");
  run->add_option("--brain", brain, "Scoring service address (unix:/path or host:port)");
  run->add_option("--report", report_path, "Write the JSON report here");
  run->add_flag("--stop-on-first", stop_on_first, "Stop at the first polytope meeting the target");
  run->add_flag("--json", run_json, "Print the JSON report instead of the summary");

  auto* verify = app.add_subcommand("verify", "Exact verification report for a polytope file");
  std::string verify_path;
  bool verify_json = false;
  verify->add_option("file", verify_path, "Polytope file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--json", verify_json, "Print only the JSON report");

  auto* pca = app.add_subcommand("analyze-pca", "Deck covariance profile of a prismatoid");
  std::string pca_path;
  pca->add_option("file", pca_path, "Polytope file")->required()->check(CLI::ExistingFile);

  auto* plot = app.add_subcommand("plot", "Render a run report's fitness trajectory as SVG");
  std::string plot_path, plot_out = "-";
  plot->add_option("report", plot_path, "Run report JSON")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--output", plot_out, "SVG output path (default stdout)");

  auto* exp = app.add_subcommand("export", "Write the best polytopes of a repository snapshot");
  std::string repo_path, export_dir;
  std::size_t best_k = 1;
  exp->add_option("--repo", repo_path, "Repository snapshot")->required()->check(CLI::ExistingFile);
  exp->add_option("--best", best_k, "Number of polytopes")->check(CLI::PositiveNumber);
  exp->add_option("--out", export_dir, "Directory for best_<i>.txt files (default stdout)");

  CLI11_PARSE(app, argc, argv);
  if (verbose) spdlog::set_level(spdlog::level::info);

  try {
    if (*run) {
      RunConfig config = load_run_config(config_path);
      if (seed) {
        config.seed = *seed;
        config.repository.seed = *seed;
      }
      if (agents) config.agents = *agents;
      if (budget) config.hop_budget = *budget;
      if (!brain.empty()) config.brain.address = brain;
      if (stop_on_first) config.stop_on_first = true;
      if (!report_path.empty()) config.output.report = report_path;
      config.validate();
      RunResult result = run_scenario(config);
      if (run_json) std::cout << to_json(result.report).dump(2) << "\n";
      else std::cout << summarize(result.report);
    } else if (*verify) {
      const nlohmann::json report = verify_file(verify_path);
      if (!verify_json) std::cout << format_verification(report);
      std::cout << report.dump(2) << "\n";
    } else if (*pca) {
      std::cout << pca_report(read_polytope_file(pca_path)).dump(2) << "\n";
    } else if (*plot) {
      write_text(plot_out, trajectory_svg(run_report_from_json(read_json(plot_path))));
    } else if (*exp) {
      auto repo = Repository::load(repo_path);
      const auto entries = repo->entries();
      const std::size_t k = std::min(best_k, entries.size());
      if (!export_dir.empty()) std::filesystem::create_directories(export_dir);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& e = entries[i];
        std::string text = "# rank " + std::to_string(i + 1) + " fitness " + std::to_string(e.fitness.value) + " (" +
                           e.fitness.objective + ")\n" + format_polytope(e.polytope);
        if (export_dir.empty()) std::cout << text;
        else write_text((std::filesystem::path(export_dir) / ("best_" + std::to_string(i + 1) + ".txt")).string(), text);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
