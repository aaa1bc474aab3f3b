#include "randap/random_models.hpp"

#include <cmath>
#include <sstream>

#include "randap/parallel.hpp"
#include "randap/spectral.hpp"

namespace randap {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(out)) {
    throw std::invalid_argument("model parameter " + key + " has malformed value '" + value + "'");
  }
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double DifferenceModel::probability(std::uint64_t index) const {
  return std::visit(Overloaded{
                        [](const UniformBernoulli& u) { return u.sigma; },
                        [&](const PerElement& e) { return e.mu(index + 1); },
                        [](const FixedSize&) -> double {
                          throw std::invalid_argument("fixed-size model has no per-element law");
                        },
                    },
                    law);
}

double DifferenceModel::sigma() const {
  return std::visit(Overloaded{
                        [](const UniformBernoulli& u) { return u.sigma; },
                        [&](const PerElement& e) {
                          double total = 0;
                          for (std::uint64_t d = 1; d <= size; ++d) total += e.mu(d);
                          return total / double(size);
                        },
                        [&](const FixedSize& f) { return double(f.count) / double(size); },
                    },
                    law);
}

ModelSpec parse_model(const std::string& text) {
  ModelSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  if (kind == "uniform") {
    spec.kind = ModelSpec::Kind::Uniform;
    spec.c = 10.0;
  } else if (kind == "perelem") {
    spec.kind = ModelSpec::Kind::PerElement;
    spec.c = 4.0;
  } else if (kind == "fixed") {
    spec.kind = ModelSpec::Kind::Fixed;
  } else if (kind == "bernoulli") {
    spec.kind = ModelSpec::Kind::FieldBernoulli;
    spec.c = 0.5;
  } else {
    throw std::invalid_argument("unknown model kind '" + kind + "'");
  }
  bool have_count = false;
  if (colon != std::string::npos) {
    std::stringstream params(text.substr(colon + 1));
    std::string item;
    while (std::getline(params, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("model parameter '" + item + "' needs key=value");
      const auto key = item.substr(0, eq);
      const auto value = item.substr(eq + 1);
      if (key == "c" && spec.kind != ModelSpec::Kind::Fixed) {
        spec.c = parse_double(key, value);
      } else if (key == "sigma" && spec.kind == ModelSpec::Kind::Uniform) {
        spec.sigma = parse_double(key, value);
        if (*spec.sigma < 0 || *spec.sigma > 1) throw std::invalid_argument("sigma must lie in [0, 1]");
      } else if (key == "shape" && spec.kind == ModelSpec::Kind::PerElement) {
        if (value != "log" && value != "inverse") throw std::invalid_argument("shape is 'log' or 'inverse'");
        spec.inverse_shape = value == "inverse";
      } else if (key == "K" && spec.kind == ModelSpec::Kind::Fixed) {
        const double k = parse_double(key, value);
        if (k < 0 || k != std::floor(k)) throw std::invalid_argument("K must be a nonnegative integer");
        spec.count = static_cast<std::size_t>(k);
        have_count = true;
      } else {
        throw std::invalid_argument("unknown parameter '" + key + "' for model '" + kind + "'");
      }
    }
  }
  if (spec.c < 0) throw std::invalid_argument("model constant c must be nonnegative");
  if (spec.kind == ModelSpec::Kind::Fixed && !have_count) throw std::invalid_argument("fixed model needs K=...");
  return spec;
}

double log_density(double c, std::uint64_t n) {
  return std::clamp(c * std::log(double(n)) / double(n), 0.0, 1.0);
}

DifferenceModel make_model(const ModelSpec& spec, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("model domain must be nonempty");
  switch (spec.kind) {
    case ModelSpec::Kind::Uniform: {
      const double sigma = spec.sigma ? *spec.sigma : log_density(spec.c, n);
      return {UniformBernoulli{sigma}, n, spec.text};
    }
    case ModelSpec::Kind::PerElement: {
      const double c = spec.c;
      if (spec.inverse_shape) {
        return {PerElement{[c](std::uint64_t d) { return std::min(1.0, c / double(d)); }}, n, spec.text};
      }
      return {PerElement{[c](std::uint64_t d) {
                return std::min(1.0, c * std::log(double(d) + 1.0) / double(d));
              }},
              n, spec.text};
    }
    default:
      throw std::invalid_argument("model '" + spec.text + "' is not a Bernoulli law on [N]");
  }
}

DifferenceModel make_fixed_model(PrimeField field, Index n, std::size_t count) {
  const auto size = checked_pow(static_cast<std::uint64_t>(field.modulus()), static_cast<std::uint64_t>(n));
  if (!size) throw BudgetExceeded("p^n overflows 64 bits");
  return {FixedSize{field, n, count}, *size, "fixed:K=" + std::to_string(count)};
}

std::vector<bool> sample_indicator(const DifferenceModel& model, Rng& rng) {
  if (std::holds_alternative<FixedSize>(model.law)) {
    throw std::invalid_argument("fixed-size model does not produce an indicator on [N]");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool> s(model.size);
  for (std::uint64_t i = 0; i < model.size; ++i) {
    const double q = model.probability(i);
    // q = 0 and q = 1 are exact regardless of the generator.
    s[i] = q >= 1.0 || (q > 0.0 && unit(rng) < q);
  }
  return s;
}

SampledDifferences sample_model(const DifferenceModel& model, Rng& rng) {
  if (const auto* fixed = std::get_if<FixedSize>(&model.law)) {
    return sample_differences(fixed->field, fixed->n, fixed->count, rng);
  }
  return sample_indicator(model, rng);
}

CenteredIndicator center(const std::vector<bool>& indicator, double sigma) {
  Eigen::VectorXd y(static_cast<Index>(indicator.size()));
  for (std::size_t i = 0; i < indicator.size(); ++i) y[static_cast<Index>(i)] = (indicator[i] ? 1.0 : 0.0) - sigma;
  return {sigma, std::move(y)};
}

CenteredIndicator center(const std::vector<bool>& indicator, const DifferenceModel& model) {
  if (indicator.size() != model.size) throw std::invalid_argument("indicator and model sizes differ");
  return center(indicator, model.sigma());
}

Eigen::VectorXd character_correlations(const CenteredIndicator& y) {
  return normalized_transform<double>(y.values).cwiseAbs();
}

double character_correlation_sup(const CenteredIndicator& y, std::span<const std::size_t> frequencies) {
  const auto all = character_correlations(y);
  double best = 0.0;
  for (auto xi : frequencies) {
    if (xi >= static_cast<std::size_t>(all.size())) throw std::out_of_range("frequency outside Z_N");
    best = std::max(best, all[static_cast<Index>(xi)]);
  }
  return best;
}

double character_correlation_sup(const CenteredIndicator& y) {
  return y.values.size() == 0 ? 0.0 : character_correlations(y).maxCoeff();
}

double error_term_mass(const CenteredIndicator& y) {
  return y.values.size() == 0 ? 0.0 : y.values.cwiseAbs().mean();
}

ConcentrationTable concentration_experiment(const ModelSpec& spec, std::span<const std::uint64_t> sizes,
                                            double eps, std::uint64_t trials,
                                            std::uint64_t master_seed, unsigned workers) {
  ConcentrationTable table{{}, 0.0, true};
  for (auto n : sizes) {
    const auto model = make_model(spec, n);
    const double sigma = model.sigma();
    const double threshold = 3.0 * eps * sigma;
    std::vector<double> sups(trials), masses(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
      auto rng = make_rng(master_seed, {n, t});
      const auto y = center(sample_indicator(model, rng), sigma);
      sups[t] = character_correlation_sup(y);
      masses[t] = error_term_mass(y);
    });
    ConcentrationRow row{n, sigma, threshold, trials, 0, {}, 0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < trials; ++t) {
      // Y = 0 identically has no correlation at all, whatever the threshold.
      row.exceedances += sups[t] > 0.0 && sups[t] >= threshold;
      row.mean_sup += sups[t];
      row.mean_error_mass += masses[t];
    }
    if (trials > 0) {
      row.mean_sup /= double(trials);
      row.mean_error_mass /= double(trials);
    }
    row.tail = wilson_interval(row.exceedances, trials);
    table.rows.push_back(row);
  }

  if (!table.rows.empty()) {
    const auto& first = table.rows.front();
    const double scale = first.sigma * double(first.n);
    if (first.tail.estimate <= 0.0) {
      table.fitted_rate = std::numeric_limits<double>::infinity();
    } else if (scale > 0.0) {
      table.fitted_rate = -std::log(first.tail.estimate) / scale;
    }
    for (auto& row : table.rows) {
      const double exponent = table.fitted_rate * row.sigma * double(row.n);
      row.reference = std::isfinite(exponent) ? std::exp(-exponent) : 0.0;
    }
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = i + 1; j < table.rows.size(); ++j) {
      if (table.rows[j].tail.estimate > table.rows[i].tail.upper) table.non_increasing = false;
    }
  }
  return table;
}

}  // namespace randap
