#include "randap/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "randap/experiments.hpp"
#include "randap/progressions.hpp"

namespace randap {

namespace {

void write_outputs(const RunConfig& config, const ResultRecord& record, std::ostream& out) {
  if (config.out.empty()) {
    out << record.csv();
    return;
  }
  std::ofstream csv(config.out, std::ios::binary);
  if (!csv) throw std::invalid_argument("cannot write '" + config.out + "'");
  csv << record.csv();
  std::ofstream json(config.out + ".json", std::ios::binary);
  if (!json) throw std::invalid_argument("cannot write '" + config.out + ".json'");
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : record.config) doc["config"][key] = value;
  doc["summary"] = record.summary;
  json << doc.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Random-difference Szemeredi experiments: quadric adversaries, Gauss sums, "
               "dual functions and concentration"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Line-based 'key = value' file; command-line flags take precedence");

  app.add_option("--p", config.p, "Odd prime modulus")->capture_default_str();
  app.add_option("--n", config.n, "Dimension, or list/range (\"4,6,8\", \"4:8\") for scans")->capture_default_str();
  app.add_option("--N", config.big_n, "Domain sizes for concentration (list)")->capture_default_str();
  app.add_option("--K", config.sizes, "Sample size(s) K");
  app.add_option("--K-frac", config.size_fractions, "Sample sizes as fractions of (n+1 choose 2)");
  app.add_option("--c", config.rates, "Bernoulli constants c for P(d in S) = c n^2 / p^n");
  app.add_option("--k", config.k, "Progression length / dual arity")->capture_default_str();
  app.add_option("--r", config.r, "Rank bound for census (default: every r)");
  app.add_option("--model", config.model, "uniform:c=10 | uniform:sigma=s | perelem:c=4 | fixed:K=...")
      ->capture_default_str();
  app.add_option("--eps", config.eps, "Concentration epsilon")->capture_default_str();
  app.add_option("--trials", config.trials, "Trials per cell")->capture_default_str();
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--mode", config.mode, "gauss-sum mode: exhaustive | sample")->capture_default_str();
  app.add_option("--set", config.set_file, "Set file for A");
  app.add_option("--S", config.difference_file, "Set file for the difference set S");
  app.add_option("--domain", config.domain, "interval:N | cyclic:N | vector:p,n");
  app.add_option("--samples", config.samples, "Monte-Carlo samples when enumeration is over budget")
      ->capture_default_str();
  app.add_option("--slack", config.slack, "Constant in (n+1 choose 2) - slack n log_p n")->capture_default_str();
  app.add_option("--budget", config.budget, "Enumeration budget (points)")->capture_default_str();
  app.add_option("--out", config.out, "CSV output path; a JSON summary is written to <out>.json");
  app.add_option("--threads", config.threads, "Worker threads (does not affect results)")->capture_default_str();

  const std::map<std::string, std::pair<std::string, std::function<ResultRecord(const RunConfig&)>>> commands = {
      {"gauss-sum", {"Gauss-sum magnitudes against p^(-rank/2)", run_gauss_sum}},
      {"adversary", {"Sample S, build an avoiding quadric, verify it", run_adversary}},
      {"threshold-scan", {"Independence/avoidance rates over a K or c schedule", run_threshold_scan}},
      {"dual", {"Dual function F_A(d) of a set file", run_dual}},
      {"concentration", {"Character-correlation tails of centered random sets", run_concentration}},
      {"census", {"Counts of n x n matrices of rank <= r against p^(2nr)", run_census}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  const auto started = std::chrono::steady_clock::now();
  try {
    const auto record = commands.at(config.command).second(config);
    write_outputs(config, record, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const SetParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  err << config.command << ": " << elapsed.count() << " s\n";
  return kSuccess;
}

}  // namespace randap
