#include "randap/adversary.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "randap/parallel.hpp"

namespace randap {

DifferenceSample sample_differences(PrimeField field, Index n, std::size_t count, Rng& rng) {
  DifferenceSample sample{field, n, {}};
  sample.draws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) sample.draws.push_back(random_vector(field, n, rng));
  return sample;
}

DifferenceSample sample_bernoulli_differences(PrimeField field, Index n, double c, Rng& rng,
                                              const EnumerationBudget& budget) {
  const auto points = budgeted_pow(static_cast<std::uint64_t>(field.modulus()),
                                   static_cast<std::uint64_t>(n), budget, "bernoulli sampler");
  const double q = std::clamp(c * double(n) * double(n) / double(points), 0.0, 1.0);
  std::bernoulli_distribution keep(q);
  DifferenceSample sample{field, n, {}};
  for (std::uint64_t code = 1; code < points; ++code) {
    if (keep(rng)) sample.draws.push_back(decode_index(field, n, code));
  }
  return sample;
}

std::size_t theorem_sample_size(std::int64_t p, Index n, double slack) {
  if (n <= 0) return 0;
  const double total = static_cast<double>(pair_count(n));
  const double log_term = slack * double(n) * std::log(double(n)) / std::log(double(p));
  // Guard against log_p of exact powers landing a hair above an integer.
  const double removed = std::ceil(log_term - 1e-9);
  return removed >= total ? 0 : static_cast<std::size_t>(total - removed);
}

namespace {

std::vector<FieldVector> veronese_rows(const DifferenceSample& sample) {
  std::vector<FieldVector> rows;
  rows.reserve(sample.size());
  for (const auto& d : sample.draws) rows.push_back(veronese(d));
  return rows;
}

}  // namespace

bool independence_certificate(const DifferenceSample& sample) {
  if (sample.draws.empty()) return true;
  if (static_cast<Index>(sample.size()) > pair_count(sample.n)) return false;
  const auto rows = veronese_rows(sample);
  return is_independent(rows);
}

std::optional<SymmetricForm> find_avoiding_form(const DifferenceSample& sample) {
  if (sample.draws.empty()) return SymmetricForm::identity(sample.field, sample.n);
  if (!independence_certificate(sample)) return std::nullopt;
  const auto rows = veronese_rows(sample);
  const auto a = FieldMatrix::from_rows(sample.field, pair_count(sample.n), rows);
  const FieldVector ones(sample.field, ResidueVector::Ones(a.rows()));
  const auto v = solve(a, ones);
  if (!v) return std::nullopt;  // unreachable for independent rows
  return form_of_vec(*v);
}

std::uint64_t hyperplane_union_count(std::span<const FieldVector> vectors) {
  if (vectors.empty()) return 0;
  if (!is_independent(vectors)) {
    throw std::invalid_argument("hyperplane_union_count requires linearly independent vectors");
  }
  const auto p = static_cast<std::uint64_t>(vectors.front().field().modulus());
  const auto m = static_cast<std::uint64_t>(vectors.front().size());
  const auto k = static_cast<std::uint64_t>(vectors.size());
  // p^m (1 - ((p-1)/p)^k) = p^m - p^(m-k) (p-1)^k
  const auto whole = checked_pow(p, m);
  const auto rest = checked_pow(p, m - k);
  const auto outside = rest ? checked_pow(p - 1, k) : std::nullopt;
  if (!whole || !outside) throw BudgetExceeded("hyperplane union count overflows 64 bits");
  return *whole - *rest * *outside;
}

namespace {

// Adds `step` times d to the digit vector x in place.
void add_scaled(std::vector<Residue>& x, const FieldVector& d, Residue step, const PrimeField& f) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = f.add(x[i], f.mul(step, d[static_cast<Index>(i)]));
  }
}

std::uint64_t encode_digits(const std::vector<Residue>& x, std::uint64_t p) {
  std::uint64_t code = 0;
  for (auto digit : x) code = code * p + static_cast<std::uint64_t>(digit);
  return code;
}

}  // namespace

std::uint64_t count_quadric_progressions(const SymmetricForm& m, const DifferenceSample& sample,
                                         const EnumerationBudget& budget) {
  const auto& f = m.field();
  const auto p = static_cast<std::uint64_t>(f.modulus());
  const auto points = budgeted_pow(p, static_cast<std::uint64_t>(m.dimension()), budget,
                                   "quadric progression scan");
  std::vector<bool> member(points);
  for (std::uint64_t code = 0; code < points; ++code) {
    member[code] = evaluate(m, decode_index(f, m.dimension(), code)) == 0;
  }
  std::uint64_t found = 0;
  for (const auto& d : sample.draws) {
    for (std::uint64_t code = 0; code < points; ++code) {
      if (!member[code]) continue;
      auto x = decode_index(f, m.dimension(), code);
      std::vector<Residue> digits(x.entries().data(), x.entries().data() + x.size());
      add_scaled(digits, d, 1, f);
      if (!member[encode_digits(digits, p)]) continue;
      add_scaled(digits, d, 1, f);
      if (member[encode_digits(digits, p)]) ++found;
    }
  }
  return found;
}

// --- subspace hits ----------------------------------------------------------------------

double SubspaceHit::rhs() const {
  if (forms == 0) return 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < rank_counts.size(); ++r) {
    total += double(rank_counts[r]) * std::pow(double(p), -0.5 * double(r));
  }
  return total / double(forms);
}

bool SubspaceHit::holds() const {
  if (!exhaustive) return lhs() <= rhs();
  using boost::multiprecision::cpp_int;
  // Scale both sides by forms * points * p^h, h = ceil(max_rank / 2):
  //   sum_r c_r p^{-r/2} p^h = X + Y sqrt(p).
  const std::size_t max_rank = rank_counts.empty() ? 0 : rank_counts.size() - 1;
  const std::size_t h = (max_rank + 1) / 2;
  const cpp_int big_p = p;
  cpp_int x = 0, y = 0;
  for (std::size_t r = 0; r < rank_counts.size(); ++r) {
    if (r % 2 == 0) {
      x += cpp_int(rank_counts[r]) * boost::multiprecision::pow(big_p, static_cast<unsigned>(h - r / 2));
    } else {
      y += cpp_int(rank_counts[r]) *
           boost::multiprecision::pow(big_p, static_cast<unsigned>(h - (r + 1) / 2));
    }
  }
  const cpp_int lhs_scaled =
      cpp_int(hits) * forms * boost::multiprecision::pow(big_p, static_cast<unsigned>(h));
  const cpp_int excess = lhs_scaled - cpp_int(points) * x;
  if (excess <= 0) return true;
  const cpp_int surd = cpp_int(points) * y;
  return excess * excess <= surd * surd * big_p;
}

SubspaceHit subspace_hit_probability(const Subspace& w, const EnumerationBudget& budget, Rng& rng,
                                     std::uint64_t samples) {
  const auto& f = w.field();
  const auto p = static_cast<std::uint64_t>(f.modulus());
  const Index n = dimension_of_pair_count(w.ambient_dimension());
  const auto complement = orthogonal_complement(w).basis_vectors();

  SubspaceHit out{f.modulus(), 0, 0, std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0),
                  0, true};
  for (const auto& d : enumerate_vectors(f, n, budget)) {
    const auto image = veronese(d);
    bool inside = true;
    for (const auto& u : complement) {
      if (dot(image, u) != 0) {
        inside = false;
        break;
      }
    }
    if (inside) ++out.hits;
    ++out.points;
  }

  const auto k = static_cast<Index>(complement.size());
  const auto combine = [&](const FieldVector& coefficients) {
    auto v = FieldVector::zero(f, w.ambient_dimension());
    for (Index i = 0; i < k; ++i) v = v + scale(coefficients[i], complement[static_cast<std::size_t>(i)]);
    ++out.rank_counts[static_cast<std::size_t>(rank(form_of_vec(v)))];
    ++out.forms;
  };
  const auto size = checked_pow(p, static_cast<std::uint64_t>(k));
  if (size && *size <= budget.max_points) {
    for (const auto& c : enumerate_vectors(f, k, budget)) combine(c);
  } else {
    out.exhaustive = false;
    for (std::uint64_t s = 0; s < samples; ++s) combine(random_vector(f, k, rng));
  }
  return out;
}

ImageMaximizer max_image_subspace(PrimeField field, Index n, Index k,
                                  const EnumerationBudget& budget) {
  const Index m = pair_count(n);
  // Distinct images with multiplicity; veronese(d) = veronese(-d).
  std::vector<std::pair<FieldVector, std::uint64_t>> images;
  std::uint64_t points = 0;
  for (const auto& d : enumerate_vectors(field, n, budget)) {
    auto image = veronese(d);
    ++points;
    auto it = std::find_if(images.begin(), images.end(),
                           [&](const auto& entry) { return entry.first == image; });
    if (it == images.end()) {
      images.emplace_back(std::move(image), 1);
    } else {
      ++it->second;
    }
  }

  std::optional<ImageMaximizer> best;
  for_each_subspace(field, m, k, [&](const Subspace& w) {
    const auto complement = orthogonal_complement(w).basis_vectors();
    std::uint64_t hits = 0;
    for (const auto& [image, multiplicity] : images) {
      bool inside = true;
      for (const auto& u : complement) {
        if (dot(image, u) != 0) {
          inside = false;
          break;
        }
      }
      if (inside) hits += multiplicity;
    }
    if (!best || hits > best->hits) best = ImageMaximizer{w, hits, points};
  });
  if (!best) throw std::invalid_argument("no subspace of the requested dimension");
  return *best;
}

double independence_lower_bound(PrimeField field, Index n, Index k, const EnumerationBudget& budget) {
  const auto best = max_image_subspace(field, n, k, budget);
  const double hit = double(best.hits) / double(best.points);
  return std::pow(1.0 - hit, double(k));
}

// --- trials -------------------------------------------------------------------------------

std::string_view to_string(VerifyMode mode) {
  return mode == VerifyMode::Exhaustive ? "exhaustive" : "algebraic";
}

AvoidanceCertificate certify_sample(const DifferenceSample& sample, Rng& rng,
                                    const TrialOptions& options) {
  AvoidanceCertificate cert;
  cert.sample_size = sample.size();
  cert.independent = independence_certificate(sample);
  cert.form = find_avoiding_form(sample);
  if (!cert.form) return cert;

  const auto& form = *cert.form;
  cert.form_rank = rank(form);
  bool all_nonzero = true;
  for (const auto& d : sample.draws) {
    cert.witness_values.push_back(evaluate(form, d));
    all_nonzero = all_nonzero && cert.witness_values.back() != 0;
  }

  const auto p = static_cast<std::uint64_t>(sample.field.modulus());
  const auto points = checked_pow(p, static_cast<std::uint64_t>(sample.n));
  const bool enumerable = points && *points <= options.budget.max_points;
  cert.density = enumerable ? quadric_density_exact(form, options.budget)
                            : quadric_density_sampled(form, options.density_samples, rng);

  std::uint64_t scan_cost = 0;
  const bool scannable =
      enumerable && !__builtin_mul_overflow(*points, std::max<std::uint64_t>(sample.size(), 1), &scan_cost) &&
      scan_cost <= options.budget.max_points;
  if (scannable) {
    cert.verify_mode = VerifyMode::Exhaustive;
    cert.progressions_found = count_quadric_progressions(form, sample, options.budget);
  }
  cert.avoided = all_nonzero && cert.progressions_found == 0;
  return cert;
}

AvoidanceCertificate adversary_trial(std::int64_t p, Index n, std::size_t count,
                                     std::uint64_t seed, const TrialOptions& options) {
  Rng rng(seed);
  const auto sample = sample_differences(PrimeField(p), n, count, rng);
  return certify_sample(sample, rng, options);
}

std::vector<ScanRow> success_rate_scan(std::int64_t p, std::span<const Index> dimensions,
                                       std::span<const std::size_t> sizes, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned workers,
                                       const TrialOptions& options) {
  std::vector<ScanRow> rows;
  for (Index n : dimensions) {
    for (std::size_t k : sizes) {
      std::vector<AvoidanceCertificate> results(trials);
      parallel_for(trials, workers, [&](std::size_t t) {
        const auto seed = derive_seed(master_seed, {static_cast<std::uint64_t>(n), k, t});
        results[t] = adversary_trial(p, n, k, seed, options);
      });
      ScanRow row{n, k, trials, 0, 0, 0.0};
      std::uint64_t with_form = 0;
      for (const auto& r : results) {
        row.independent += r.independent;
        row.avoided += r.avoided;
        if (r.density) {
          row.mean_density += r.density->value();
          ++with_form;
        }
      }
      if (with_form > 0) row.mean_density /= double(with_form);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace randap
