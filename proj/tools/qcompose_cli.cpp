// qcompose: experiment harness for the composition simulator.
//
//   qcompose dj --m 8
//   qcompose compose-fail --m 4 --format json
//   qcompose purifier --epsilon 1/3 --d-list 4,8,16,32 --p0-list 0.1,0.9
//   qcompose commute --graph g.json --s 0 --t 2
//   qcompose costs --profile profile.json
//   qcompose majority-vs-purifier --epsilon 1/3 --deltas 2^-5,2^-10,2^-20
//
// Exit codes: 0 success, 2 usage/validation error, 3 input parse error,
// 4 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcompose/commands.hpp"
#include "qcompose/error.hpp"
#include "qcompose/io.hpp"
#include "qcompose/promise.hpp"

namespace {

using namespace qcompose;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

struct RunConfig {
  std::size_t m = 4;
  std::optional<std::size_t> max_stop;
  std::string epsilon = "1/3";
  std::vector<std::size_t> d_list{4, 8, 16, 32};
  std::vector<std::string> p0_list{"0.1", "0.9"};
  std::vector<std::string> deltas;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  std::size_t s = 0;
  std::size_t t = 1;
  std::string format = "csv";
  std::string out;
  std::string graph;
  std::string profile;
  std::string save_instance;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return kExitParse;
    case ErrorKind::NumericalFailure: return kExitNumerical;
    default: return kExitUsage;
  }
}

// Writes via a sibling temporary and renames, so a failed run never leaves a
// truncated file behind.
void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error(ErrorKind::BadParameter, "cannot write '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

// Malformed numbers on the command line are usage errors, not input-file parse errors.
Probability arg_probability(const std::string& text) {
  try {
    return Probability::parse(text);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::BadParameter, std::string("bad numeric argument: ") + e.what());
  }
}

std::vector<Probability> parse_probabilities(const std::vector<std::string>& texts) {
  std::vector<Probability> out;
  for (const auto& t : texts) out.push_back(arg_probability(t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for composing quantum algorithms: Deutsch-Jozsa, zero-error "
               "composition failure, electric-network walks and the line purifier"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_output = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "Base random seed")->capture_default_str();
  };

  auto* dj = app.add_subcommand("dj", "Deutsch-Jozsa accept probabilities");
  dj->add_option("--m", cfg.m, "Input length (power of two, <= 16384)")->required();
  add_output(dj);

  auto* compose = app.add_subcommand("compose-fail", "Early-stopped DJ composed with h");
  compose->add_option("--m", cfg.m, "Inner length (multiple of 4)")->required();
  compose->add_option("--max-stop", cfg.max_stop, "Last finite stop time (default m/2+1)");
  compose->add_option("--save-instance", cfg.save_instance, "Also write the instance JSON here");
  add_output(compose);

  auto* purifier = app.add_subcommand("purifier", "Line purifier sweep");
  purifier->add_option("--epsilon", cfg.epsilon, "Promise gap, e.g. 1/3")->capture_default_str();
  purifier->add_option("--d", cfg.d_list, "Single depth")->expected(1);
  purifier->add_option("--d-list", cfg.d_list, "Depths")->delimiter(',')->capture_default_str();
  purifier->add_option("--p0", cfg.p0_list, "Single coin bias")->expected(1);
  purifier->add_option("--p0-list", cfg.p0_list, "Coin biases")->delimiter(',')->capture_default_str();
  add_output(purifier);

  auto* commute = app.add_subcommand("commute", "Commute-time identity check");
  commute->add_option("--graph", cfg.graph, "Graph JSON file")->required();
  commute->add_option("--s", cfg.s, "Source vertex")->capture_default_str();
  commute->add_option("--t", cfg.t, "Target vertex")->capture_default_str();
  commute->add_option("--trials", cfg.trials, "Monte-Carlo walks per direction")->capture_default_str();
  add_output(commute);

  auto* costs = app.add_subcommand("costs", "Composition cost models");
  costs->add_option("--profile", cfg.profile, "Cost profile JSON file")->required();
  add_output(costs);

  auto* mvp = app.add_subcommand("majority-vs-purifier", "Overhead to reach target perturbations");
  mvp->add_option("--epsilon", cfg.epsilon, "Per-call error")->capture_default_str();
  mvp->add_option("--deltas", cfg.deltas, "Targets, e.g. 1/8,2^-10")->delimiter(',')->required();
  add_output(mvp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    std::optional<Table> table;
    if (*dj) {
      table = cmd_dj(cfg.m, cfg.seed);
    } else if (*compose) {
      table = cmd_compose_fail(cfg.m, cfg.max_stop);
    } else if (*purifier) {
      table = cmd_purifier(arg_probability(cfg.epsilon), cfg.d_list,
                           parse_probabilities(cfg.p0_list));
    } else if (*commute) {
      const WeightedGraph g = parse_graph(read_text_file(cfg.graph));
      table = cmd_commute(g, cfg.s, cfg.t, cfg.trials, cfg.seed);
    } else if (*costs) {
      table = cmd_costs(parse_profile(read_text_file(cfg.profile)));
    } else if (*mvp) {
      std::vector<double> deltas;
      for (const auto& d : cfg.deltas) deltas.push_back(arg_probability(d).value());
      table = cmd_majority_vs_purifier(arg_probability(cfg.epsilon), deltas);
    }
    const std::string text = cfg.format == "json" ? table->to_json() : table->to_csv();
    if (*compose && !cfg.save_instance.empty()) {
      write_output(instance_to_json(structured_counterexample(cfg.m)) + "\n", cfg.save_instance);
    }
    write_output(text, cfg.out);
  } catch (const Error& e) {
    std::cerr << "qcompose: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qcompose: internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
