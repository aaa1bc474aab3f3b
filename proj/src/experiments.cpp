#include "randap/experiments.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "randap/adversary.hpp"
#include "randap/parallel.hpp"
#include "randap/progressions.hpp"
#include "randap/quadratic.hpp"
#include "randap/random_models.hpp"
#include "randap/stats.hpp"

namespace randap {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string summary_text(const nlohmann::ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return format_real(value.get<double>());
  return value.dump();
}

std::string fraction(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string fraction(std::uint64_t num, std::uint64_t den) {
  return fraction(Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)));
}

std::string boolean(bool b) { return b ? "true" : "false"; }

nlohmann::ordered_json interval_json(std::uint64_t successes, std::uint64_t trials) {
  const auto ci = wilson_interval(successes, trials);
  return {{"count", successes}, {"trials", trials}, {"rate", ci.estimate},
          {"ci95_lower", ci.lower}, {"ci95_upper", ci.upper}};
}

Index single_dimension(const RunConfig& config) {
  const auto values = parse_int_list(config.n);
  if (values.size() != 1 || values.front() < 0) {
    throw std::invalid_argument("--n must be a single nonnegative integer for " + config.command);
  }
  return static_cast<Index>(values.front());
}

EnumerationBudget budget_of(const RunConfig& config) { return EnumerationBudget{config.budget}; }

std::string upper_text(const SymmetricForm& m) {
  std::string s;
  for (Index i = 0; i < m.upper().size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(m.upper()[i]);
  }
  return s;
}

}  // namespace

std::string ResultRecord::csv() const {
  std::ostringstream out;
  for (const auto& [key, value] : config) out << "# " << key << " = " << value << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  for (const auto& [key, value] : summary.items()) {
    out << "# summary " << key << " = " << summary_text(value) << "\n";
  }
  return out.str();
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  const auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("malformed integer '" + s + "' in '" + text + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const auto lo = to_int(item.substr(0, colon));
      const auto hi = to_int(item.substr(colon + 1));
      if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw std::invalid_argument("malformed number '" + item + "' in '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

// --- gauss-sum --------------------------------------------------------------------------

ResultRecord run_gauss_sum(const RunConfig& config) {
  const PrimeField field(config.p);
  const Index n = single_dimension(config);
  const auto budget = budget_of(config);
  if (config.mode != "exhaustive" && config.mode != "sample") {
    throw std::invalid_argument("--mode must be 'exhaustive' or 'sample'");
  }
  const bool exhaustive = config.mode == "exhaustive";

  ResultRecord rec;
  rec.config = {{"command", "gauss-sum"}, {"p", std::to_string(config.p)}, {"n", std::to_string(n)},
                {"mode", config.mode},     {"budget", std::to_string(config.budget)}};
  if (!exhaustive) {
    rec.config.emplace_back("trials", std::to_string(config.trials));
    rec.config.emplace_back("seed", std::to_string(config.seed));
  }
  rec.columns = {"form", "rank", "computed", "predicted", "deviation"};

  std::vector<SymmetricForm> forms;
  if (exhaustive) {
    for (const auto& v : enumerate_vectors(field, pair_count(n), budget)) {
      forms.emplace_back(field, n, v.entries());
    }
  } else {
    auto rng = make_rng(config.seed);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      forms.emplace_back(field, n, random_vector(field, pair_count(n), rng).entries());
    }
  }
  double max_deviation = 0.0;
  for (const auto& m : forms) {
    const double computed = gauss_sum(m, budget);
    const double predicted = gauss_sum_predicted(m);
    const double deviation = std::abs(computed - predicted);
    max_deviation = std::max(max_deviation, deviation);
    rec.rows.push_back({upper_text(m), std::to_string(rank(m)), format_real(computed),
                        format_real(predicted), format_real(deviation)});
  }
  rec.summary["forms"] = forms.size();
  rec.summary["max_deviation"] = max_deviation;
  rec.summary["tolerance"] = 1e-9;
  rec.summary["within_tolerance"] = max_deviation < 1e-9;
  return rec;
}

// --- adversary --------------------------------------------------------------------------

ResultRecord run_adversary(const RunConfig& config) {
  const PrimeField field(config.p);
  const Index n = single_dimension(config);
  std::size_t k = 0;
  if (config.sizes.empty()) {
    k = theorem_sample_size(config.p, n, config.slack);
  } else {
    const auto values = parse_int_list(config.sizes);
    if (values.size() != 1 || values.front() < 0) throw std::invalid_argument("--K must be one nonnegative integer");
    k = static_cast<std::size_t>(values.front());
  }
  const TrialOptions options{budget_of(config), config.samples};

  std::vector<AvoidanceCertificate> results(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const auto seed = derive_seed(config.seed, {static_cast<std::uint64_t>(n), k, t});
    results[t] = adversary_trial(field.modulus(), n, k, seed, options);
  });

  ResultRecord rec;
  rec.config = {{"command", "adversary"},
                {"p", std::to_string(config.p)},
                {"n", std::to_string(n)},
                {"K", std::to_string(k)},
                {"slack", format_real(config.slack)},
                {"trials", std::to_string(config.trials)},
                {"seed", std::to_string(config.seed)},
                {"samples", std::to_string(config.samples)},
                {"budget", std::to_string(config.budget)}};
  rec.columns = {"trial", "independent", "avoided", "quadric_density", "density_fraction",
                 "verify_mode", "rank", "progressions"};
  std::uint64_t independent = 0, avoided = 0, violations = 0;
  double min_density = 1.0;
  for (std::size_t t = 0; t < results.size(); ++t) {
    const auto& r = results[t];
    independent += r.independent;
    avoided += r.avoided;
    violations += r.independent && !r.avoided;
    if (r.density) min_density = std::min(min_density, r.density->value());
    rec.rows.push_back({std::to_string(t), boolean(r.independent), boolean(r.avoided),
                        r.density ? format_real(r.density->value()) : "NA",
                        r.density ? fraction(r.density->hits, r.density->samples) : "NA",
                        std::string(to_string(r.verify_mode)),
                        r.form_rank ? std::to_string(*r.form_rank) : "NA",
                        std::to_string(r.progressions_found)});
  }
  rec.summary["independent"] = interval_json(independent, config.trials);
  rec.summary["avoided"] = interval_json(avoided, config.trials);
  rec.summary["soundness_violations"] = violations;
  rec.summary["min_quadric_density"] = min_density;
  return rec;
}

// --- threshold-scan ---------------------------------------------------------------------

ResultRecord run_threshold_scan(const RunConfig& config) {
  const PrimeField field(config.p);
  const auto budget = budget_of(config);
  const TrialOptions options{budget, config.samples};
  std::vector<Index> dimensions;
  for (auto v : parse_int_list(config.n)) {
    if (v < 0) throw std::invalid_argument("--n values must be nonnegative");
    dimensions.push_back(static_cast<Index>(v));
  }
  const bool bernoulli = !config.rates.empty();

  ResultRecord rec;
  rec.config = {{"command", "threshold-scan"},
                {"p", std::to_string(config.p)},
                {"n", config.n},
                {"model", bernoulli ? "bernoulli" : "fixed"},
                {"K", config.sizes},
                {"K-frac", config.size_fractions},
                {"c", config.rates},
                {"trials", std::to_string(config.trials)},
                {"seed", std::to_string(config.seed)},
                {"samples", std::to_string(config.samples)},
                {"budget", std::to_string(config.budget)}};
  rec.columns = {"model", "n", "x", "pairs", "mean_size", "trials", "independent", "independent_rate",
                 "independent_lo", "independent_hi", "avoided", "avoided_rate", "mean_density"};

  for (Index n : dimensions) {
    struct Cell {
      std::string x;
      std::uint64_t key;
      std::optional<std::size_t> size;
      double rate = 0;
    };
    std::vector<Cell> cells;
    if (bernoulli) {
      for (double c : parse_real_list(config.rates)) {
        if (c < 0) throw std::invalid_argument("--c values must be nonnegative");
        cells.push_back({format_real(c), std::bit_cast<std::uint64_t>(c), std::nullopt, c});
      }
    } else if (!config.sizes.empty()) {
      for (auto v : parse_int_list(config.sizes)) {
        if (v < 0) throw std::invalid_argument("--K values must be nonnegative");
        cells.push_back({std::to_string(v), static_cast<std::uint64_t>(v), static_cast<std::size_t>(v)});
      }
    } else if (!config.size_fractions.empty()) {
      for (double f : parse_real_list(config.size_fractions)) {
        if (f < 0) throw std::invalid_argument("--K-frac values must be nonnegative");
        const auto v = static_cast<std::size_t>(std::floor(f * double(pair_count(n)) + 1e-12));
        cells.push_back({std::to_string(v), v, v});
      }
    } else {
      for (std::size_t v = 0; v <= static_cast<std::size_t>(pair_count(n)) + 1; ++v) {
        cells.push_back({std::to_string(v), v, v});
      }
    }

    for (const auto& cell : cells) {
      std::vector<AvoidanceCertificate> results(config.trials);
      parallel_for(config.trials, config.threads, [&](std::size_t t) {
        if (cell.size) {
          const auto seed = derive_seed(config.seed, {static_cast<std::uint64_t>(n), cell.key, t});
          results[t] = adversary_trial(field.modulus(), n, *cell.size, seed, options);
        } else {
          auto rng = make_rng(config.seed, {static_cast<std::uint64_t>(n), cell.key, t, 1});
          const auto sample = sample_bernoulli_differences(field, n, cell.rate, rng, budget);
          results[t] = certify_sample(sample, rng, options);
        }
      });
      std::uint64_t independent = 0, avoided = 0, with_form = 0, total_size = 0;
      double density = 0.0;
      for (const auto& r : results) {
        independent += r.independent;
        avoided += r.avoided;
        total_size += r.sample_size;
        if (r.density) {
          density += r.density->value();
          ++with_form;
        }
      }
      const auto ci = wilson_interval(independent, config.trials);
      const auto avoided_rate = config.trials ? double(avoided) / double(config.trials) : 0.0;
      rec.rows.push_back({bernoulli ? "bernoulli" : "fixed", std::to_string(n), cell.x,
                          std::to_string(pair_count(n)),
                          format_real(config.trials ? double(total_size) / double(config.trials) : 0.0),
                          std::to_string(config.trials), std::to_string(independent),
                          format_real(ci.estimate), format_real(ci.lower), format_real(ci.upper),
                          std::to_string(avoided), format_real(avoided_rate),
                          with_form ? format_real(density / double(with_form)) : "NA"});
    }
  }
  rec.summary["rows"] = rec.rows.size();
  return rec;
}

// --- dual -------------------------------------------------------------------------------

namespace {

DenseSet load_set(const std::string& path, const Domain& domain) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open set file '" + path + "'");
  try {
    return read_set(in, domain);
  } catch (const SetParseError& e) {
    throw SetParseError(e.line(), path + ": " + e.what());
  }
}

}  // namespace

ResultRecord run_dual(const RunConfig& config) {
  if (config.set_file.empty()) throw std::invalid_argument("dual needs --set FILE");
  if (config.domain.empty()) throw std::invalid_argument("dual needs --domain SPEC");
  if (config.k != 2 && config.k != 3) throw std::invalid_argument("--k must be 2 or 3 for dual functions");
  const auto domain = Domain::parse(config.domain, budget_of(config));
  const auto a = load_set(config.set_file, domain);
  const auto f = dual(a, config.k);

  ResultRecord rec;
  rec.config = {{"command", "dual"},          {"domain", domain.describe()},
                {"k", std::to_string(config.k)}, {"set", config.set_file},
                {"S", config.difference_file}, {"budget", std::to_string(config.budget)}};
  rec.columns = {"d", "count", "value", "decimal"};
  for (std::uint64_t d = 0; d < domain.size(); ++d) {
    const auto v = f.value(d);
    rec.rows.push_back({domain.element_text(d), std::to_string(f.count(d)), fraction(v),
                        format_real(boost::rational_cast<double>(v))});
  }
  rec.summary["set_size"] = a.cardinality();
  rec.summary["density"] = fraction(a.exact_density());
  if (config.k == 3) {
    const auto avg = varnavides_average(a);
    rec.summary["average_all_differences"] = fraction(avg.all_differences);
    rec.summary["average_nonzero_differences"] = fraction(avg.nonzero_differences);
  }
  if (!config.difference_file.empty()) {
    const auto s = load_set(config.difference_file, domain);
    const auto inner = inner_with_indicator(f, s);
    rec.summary["inner_product"] = fraction(inner);
    rec.summary["inner_product_decimal"] = boost::rational_cast<double>(inner);
  }
  return rec;
}

// --- concentration ----------------------------------------------------------------------

ResultRecord run_concentration(const RunConfig& config) {
  const auto spec = parse_model(config.model);
  std::vector<std::uint64_t> sizes;
  for (auto v : parse_int_list(config.big_n)) {
    if (v < 1) throw std::invalid_argument("--N values must be positive");
    sizes.push_back(static_cast<std::uint64_t>(v));
  }
  if (config.eps <= 0) throw std::invalid_argument("--eps must be positive");
  const auto table = concentration_experiment(spec, sizes, config.eps, config.trials, config.seed,
                                              config.threads);

  ResultRecord rec;
  rec.config = {{"command", "concentration"}, {"model", config.model},
                {"N", config.big_n},            {"eps", format_real(config.eps)},
                {"trials", std::to_string(config.trials)}, {"seed", std::to_string(config.seed)}};
  rec.columns = {"N", "sigma", "threshold", "trials", "exceedances", "tail", "tail_lo", "tail_hi",
                 "reference", "mean_sup", "mean_error_mass"};
  for (const auto& row : table.rows) {
    rec.rows.push_back({std::to_string(row.n), format_real(row.sigma), format_real(row.threshold),
                        std::to_string(row.trials), std::to_string(row.exceedances),
                        format_real(row.tail.estimate), format_real(row.tail.lower),
                        format_real(row.tail.upper), format_real(row.reference),
                        format_real(row.mean_sup), format_real(row.mean_error_mass)});
  }
  rec.summary["fitted_rate"] = table.fitted_rate;
  rec.summary["trend"] = table.non_increasing ? "non-increasing" : "not non-increasing";
  return rec;
}

// --- census -----------------------------------------------------------------------------

ResultRecord run_census(const RunConfig& config) {
  const PrimeField field(config.p);
  const Index n = single_dimension(config);
  if (config.r && (*config.r < 0 || *config.r > n)) throw std::invalid_argument("--r must lie in [0, n]");
  const auto hist = rank_histogram(field, n, budget_of(config));

  ResultRecord rec;
  rec.config = {{"command", "census"}, {"p", std::to_string(config.p)}, {"n", std::to_string(n)},
                {"r", config.r ? std::to_string(*config.r) : "all"},
                {"budget", std::to_string(config.budget)}};
  rec.columns = {"r", "count", "bound", "ratio"};
  bool within = true;
  std::uint64_t cumulative = 0;
  for (Index r = 0; r <= n; ++r) {
    cumulative += hist[static_cast<std::size_t>(r)];
    if (config.r && r != *config.r) continue;
    const auto bound = checked_pow(static_cast<std::uint64_t>(config.p), static_cast<std::uint64_t>(2 * n * r));
    if (!bound) throw BudgetExceeded("p^(2nr) overflows 64 bits");
    within = within && cumulative <= *bound;
    rec.rows.push_back({std::to_string(r), std::to_string(cumulative), std::to_string(*bound),
                        format_real(double(cumulative) / double(*bound))});
  }
  rec.summary["within_bound"] = within;
  return rec;
}

}  // namespace randap
