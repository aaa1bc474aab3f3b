#include "randap/random_models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

namespace randap {
namespace {

std::size_t popcount(const std::vector<bool>& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

// |E_d e(xi d / N) Y(d)| with d = i + 1, summed directly.
double naive_sup(const CenteredIndicator& y) {
  const auto n = static_cast<std::size_t>(y.values.size());
  double best = 0;
  for (std::size_t xi = 0; xi < n; ++xi) {
    std::complex<double> total = 0;
    for (std::size_t i = 0; i < n; ++i)
      total += y.values[Index(i)] * std::polar(1.0, 2 * std::numbers::pi * double((xi * (i + 1)) % n) / double(n));
    best = std::max(best, std::abs(total) / double(n));
  }
  return best;
}

TEST(ParseModel, Strings) {
  EXPECT_EQ(parse_model("uniform:c=10").c, 10.0);
  EXPECT_EQ(parse_model("uniform").c, 10.0);
  EXPECT_EQ(*parse_model("uniform:sigma=0.25").sigma, 0.25);
  EXPECT_EQ(parse_model("perelem").c, 4.0);
  EXPECT_TRUE(parse_model("perelem:c=4,shape=inverse").inverse_shape);
  EXPECT_EQ(parse_model("fixed:K=12").count, 12u);
  EXPECT_EQ(parse_model("bernoulli:c=0.5").kind, ModelSpec::Kind::FieldBernoulli);

  EXPECT_THROW(parse_model("gaussian"), std::invalid_argument);
  EXPECT_THROW(parse_model("uniform:c=abc"), std::invalid_argument);
  EXPECT_THROW(parse_model("uniform:sigma=1.5"), std::invalid_argument);
  EXPECT_THROW(parse_model("fixed"), std::invalid_argument);
  EXPECT_THROW(parse_model("fixed:K=2.5"), std::invalid_argument);
  EXPECT_THROW(parse_model("perelem:shape=cubic"), std::invalid_argument);
  EXPECT_THROW(parse_model("uniform:q=1"), std::invalid_argument);
}

TEST(Model, Probabilities) {
  const auto u = make_model(parse_model("uniform:c=10"), 1024);
  EXPECT_NEAR(u.sigma(), 10 * std::log(1024.0) / 1024.0, 1e-15);
  EXPECT_EQ(make_model(parse_model("uniform:c=10"), 8).sigma(), 1.0);

  const auto e = make_model(parse_model("perelem:c=4,shape=inverse"), 100);
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_GE(e.probability(i), 0.0);
    EXPECT_LE(e.probability(i), 1.0);
    EXPECT_EQ(e.probability(i), std::min(1.0, 4.0 / double(i + 1)));
  }
  EXPECT_THROW(make_model(parse_model("fixed:K=3"), 10), std::invalid_argument);
}

TEST(Sample, Degenerate) {
  Rng rng(40);
  EXPECT_EQ(popcount(sample_indicator(make_model(parse_model("uniform:sigma=0"), 500), rng)), 0u);
  EXPECT_EQ(popcount(sample_indicator(make_model(parse_model("uniform:sigma=1"), 500), rng)), 500u);
}

TEST(Sample, FixedSizeDispatch) {
  Rng rng(41);
  const auto model = make_fixed_model(PrimeField(3), 4, 7);
  EXPECT_EQ(model.size, 81u);
  const auto s = sample_model(model, rng);
  ASSERT_TRUE(std::holds_alternative<DifferenceSample>(s));
  EXPECT_EQ(std::get<DifferenceSample>(s).size(), 7u);
  EXPECT_THROW(sample_indicator(model, rng), std::invalid_argument);
}

TEST(Sample, PerElementExpectedSize) {
  const std::uint64_t n = 10000;
  const auto model = make_model(parse_model("perelem:c=4,shape=inverse"), n);
  double mean = 0, var = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    const double q = std::min(1.0, 4.0 / double(d));
    mean += q;
    var += q * (1 - q);
  }
  EXPECT_NEAR(mean, 4 * (1 + std::log(double(n) / 4)), 2.0);

  Rng rng(42);
  double total = 0;
  const int samples = 200;
  for (int t = 0; t < samples; ++t) total += double(popcount(sample_indicator(model, rng)));
  EXPECT_NEAR(total / samples, mean, 3 * std::sqrt(var / samples));
}

TEST(Properties, PerElementMeanSizeLogShape) {
  const std::uint64_t n = 2000;
  const auto model = make_model(parse_model("perelem:c=4"), n);
  double mean = 0, var = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    mean += model.probability(i);
    var += model.probability(i) * (1 - model.probability(i));
  }
  EXPECT_NEAR(model.sigma(), mean / double(n), 1e-12);
  Rng rng(43);
  double total = 0;
  const int samples = 1000;
  for (int t = 0; t < samples; ++t) total += double(popcount(sample_indicator(model, rng)));
  EXPECT_NEAR(total / samples, mean, 3 * std::sqrt(var / samples));
}

TEST(Properties, Determinism) {
  const auto model = make_model(parse_model("uniform:c=10"), 4096);
  auto a = make_rng(9, {4096, 3});
  auto b = make_rng(9, {4096, 3});
  EXPECT_EQ(sample_indicator(model, a), sample_indicator(model, b));
  auto c = make_rng(9, {4096, 4});
  EXPECT_NE(sample_indicator(model, a), sample_indicator(model, c));
}

TEST(Center, Examples) {
  const std::vector<bool> empty(10, false), full(10, true);
  const auto lo = center(empty, 0.5);
  const auto hi = center(full, 0.5);
  for (Index i = 0; i < 10; ++i) {
    EXPECT_EQ(lo.values[i], -0.5);
    EXPECT_EQ(hi.values[i], 0.5);
  }
  EXPECT_NEAR(error_term_mass(center(empty, 0.3)), 0.3, 1e-15);
  EXPECT_NEAR(error_term_mass(center(full, 0.3)), 0.7, 1e-15);
}

TEST(Center, ValuesAreTwoPoint) {
  Rng rng(44);
  const auto model = make_model(parse_model("perelem:c=4"), 300);
  const auto y = center(sample_indicator(model, rng), model);
  EXPECT_EQ(y.sigma, model.sigma());
  for (Index i = 0; i < y.values.size(); ++i)
    EXPECT_TRUE(y.values[i] == -y.sigma || y.values[i] == 1 - y.sigma);
}

TEST(Properties, CenteringIsMeanZero) {
  // sigma (1 - sigma) + (1 - sigma)(-sigma) = 0 for every sigma.
  for (double s : {0.0, 0.1, 0.37, 0.5, 1.0}) EXPECT_NEAR(s * (1 - s) + (1 - s) * (-s), 0.0, 1e-15);

  Rng rng(45);
  const std::uint64_t n = 1000;
  const double sigma = 0.2;
  const auto model = make_model(parse_model("uniform:sigma=0.2"), n);
  double sum = 0, sum_mass = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto y = center(sample_indicator(model, rng), model);
    sum += y.values.mean();
    sum_mass += error_term_mass(y);
  }
  const double se_mean = std::sqrt(sigma * (1 - sigma) / double(n) / trials);
  EXPECT_NEAR(sum / trials, 0.0, 3 * se_mean);
  // |Y| is 1 - sigma w.p. sigma and sigma otherwise.
  const double var_abs = sigma * (1 - sigma) * std::pow(1 - 2 * sigma, 2);
  EXPECT_NEAR(sum_mass / trials, 2 * sigma * (1 - sigma), 3 * std::sqrt(var_abs / double(n) / trials));
}

TEST(Correlation, Examples) {
  const CenteredIndicator zero{1.0, Eigen::VectorXd::Zero(64)};
  EXPECT_EQ(character_correlation_sup(zero), 0.0);

  Rng rng(46);
  const auto model = make_model(parse_model("uniform:sigma=0.3"), 100);
  const auto y = center(sample_indicator(model, rng), model);
  const std::vector<std::size_t> dc{0};
  EXPECT_NEAR(character_correlation_sup(y, dc), std::abs(y.values.mean()), 1e-12);
  const std::vector<std::size_t> outside{100};
  EXPECT_THROW(character_correlation_sup(y, outside), std::out_of_range);
}

TEST(Properties, CorrelationMatchesNaiveEvaluation) {
  Rng rng(47);
  for (std::uint64_t n : {1, 2, 17, 64, 100, 255, 256}) {
    const auto model = make_model(parse_model("uniform:sigma=0.3"), n);
    for (int t = 0; t < 5; ++t) {
      const auto y = center(sample_indicator(model, rng), model);
      EXPECT_NEAR(character_correlation_sup(y), naive_sup(y), 1e-9);
    }
  }
}

TEST(Concentration, Degenerate) {
  const std::vector<std::uint64_t> sizes{64, 128};
  const auto full = concentration_experiment(parse_model("uniform:sigma=1"), sizes, 0.1, 20, 1);
  for (const auto& row : full.rows) EXPECT_EQ(row.exceedances, 0u);

  // |<e, Y>| <= 1 < 3 eps sigma once eps >= 1 / sigma.
  const auto big = concentration_experiment(parse_model("uniform:sigma=0.2"), sizes, 5.0 / 0.2, 20, 1);
  for (const auto& row : big.rows) EXPECT_EQ(row.exceedances, 0u);
}

TEST(Concentration, TableShape) {
  const std::vector<std::uint64_t> sizes{256, 512};
  const auto table = concentration_experiment(parse_model("uniform:c=10"), sizes, 0.1, 30, 5);
  ASSERT_EQ(table.rows.size(), 2u);
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.trials, 30u);
    EXPECT_NEAR(row.threshold, 0.3 * row.sigma, 1e-15);
    EXPECT_LE(row.tail.lower, row.tail.estimate);
    EXPECT_GE(row.tail.upper, row.tail.estimate);
  }
  if (table.rows[0].tail.estimate > 0) EXPECT_NEAR(table.rows[0].reference, table.rows[0].tail.estimate, 1e-12);
}

TEST(Concentration, IndependentOfWorkerCount) {
  const std::vector<std::uint64_t> sizes{256, 1024};
  const auto spec = parse_model("uniform:c=10");
  const auto a = concentration_experiment(spec, sizes, 0.1, 25, 3, 1);
  const auto b = concentration_experiment(spec, sizes, 0.1, 25, 3, 4);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].exceedances, b.rows[i].exceedances);
    EXPECT_EQ(a.rows[i].mean_sup, b.rows[i].mean_sup);
  }
}

}  // namespace
}  // namespace randap
