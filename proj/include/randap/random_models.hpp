#pragma once

// Random difference sets and the centered indicator Y(d) = 1_S(d) - sigma.
//
// Bernoulli laws live on [N] with difference index i standing for d = i + 1. Characters are
// e(xi d / N); the offset d = i + 1 only rotates the phase, so |<e_xi, Y>| is unaffected.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "randap/adversary.hpp"
#include "randap/random.hpp"
#include "randap/stats.hpp"

namespace randap {

/// Every d in S independently with probability sigma.
struct UniformBernoulli {
  double sigma;
};

/// d in S independently with probability mu(d), d = 1..N.
struct PerElement {
  std::function<double(std::uint64_t)> mu;
};

/// K uniform draws from F_p^n with replacement.
struct FixedSize {
  PrimeField field;
  Index n;
  std::size_t count;
};

struct DifferenceModel {
  std::variant<UniformBernoulli, PerElement, FixedSize> law;
  std::uint64_t size;  // N, or p^n for FixedSize
  std::string label;

  /// Inclusion probability of difference index i (Bernoulli laws only).
  double probability(std::uint64_t index) const;
  /// sigma for the uniform law; E_d mu(d) for the per-element law.
  double sigma() const;
};

/// Parsed form of a model string: `uniform:c=10`, `uniform:sigma=0.2`, `perelem:c=4`,
/// `perelem:c=4,shape=inverse`, `fixed:K=12`, `bernoulli:c=0.5`.
struct ModelSpec {
  enum class Kind { Uniform, PerElement, Fixed, FieldBernoulli };
  Kind kind = Kind::Uniform;
  double c = 10.0;
  std::optional<double> sigma;
  bool inverse_shape = false;  // perelem: mu(d) = min(1, c/d) instead of min(1, c ln(d+1)/d)
  std::size_t count = 0;       // fixed: K
  std::string text;
};

/// Throws std::invalid_argument on unknown kinds, keys or malformed values.
ModelSpec parse_model(const std::string& text);

/// min(1, c ln N / N).
double log_density(double c, std::uint64_t n);

/// Bernoulli law on [N] from a uniform or perelem spec.
DifferenceModel make_model(const ModelSpec& spec, std::uint64_t n);
DifferenceModel make_fixed_model(PrimeField field, Index n, std::size_t count);

using SampledDifferences = std::variant<std::vector<bool>, DifferenceSample>;

SampledDifferences sample_model(const DifferenceModel& model, Rng& rng);
/// Indicator of S for a Bernoulli law; throws std::invalid_argument for FixedSize.
std::vector<bool> sample_indicator(const DifferenceModel& model, Rng& rng);

struct CenteredIndicator {
  double sigma;
  Eigen::VectorXd values;  // 1_S(d) - sigma
};

CenteredIndicator center(const std::vector<bool>& indicator, const DifferenceModel& model);
CenteredIndicator center(const std::vector<bool>& indicator, double sigma);

/// |E_d e(xi d / N) Y(d)| for every xi in Z_N.
Eigen::VectorXd character_correlations(const CenteredIndicator& y);
/// Supremum over `frequencies` of |E_d e(xi d / N) Y(d)|.
double character_correlation_sup(const CenteredIndicator& y, std::span<const std::size_t> frequencies);
/// Supremum over all N characters.
double character_correlation_sup(const CenteredIndicator& y);

/// (1/N) sum_d |Y(d)|; its mean under the uniform law is 2 sigma (1 - sigma).
double error_term_mass(const CenteredIndicator& y);

struct ConcentrationRow {
  std::uint64_t n;
  double sigma;
  double threshold;  // 3 eps sigma
  std::uint64_t trials;
  std::uint64_t exceedances;  // trials with sup_xi |<e_xi, Y>| >= threshold
  BinomialInterval tail;
  double reference;  // exp(-rate sigma N), rate fitted at the first row
  double mean_sup;
  double mean_error_mass;
};

struct ConcentrationTable {
  std::vector<ConcentrationRow> rows;
  double fitted_rate;
  /// Every later tail estimate is at most the 95% upper bound of every earlier one.
  bool non_increasing;
};

/// For each N, `trials` draws of S from make_model(spec, N), seeded from (master_seed, N, trial).
ConcentrationTable concentration_experiment(const ModelSpec& spec, std::span<const std::uint64_t> sizes,
                                            double eps, std::uint64_t trials,
                                            std::uint64_t master_seed, unsigned workers = 1);

}  // namespace randap
