#pragma once

// Random difference sets S in F_p^n and quadrics A_M = {x : x^T M x = 0} that avoid them.
//
// If the Veronese images of S are linearly independent, the system veronese(d) . v = 1 for
// d in S is consistent; M = form_of_vec(v) then has d^T M d = 1 on all of S, so A_M contains
// no 3-term progression x, x+d, x+2d with d in S.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "randap/field.hpp"
#include "randap/quadratic.hpp"
#include "randap/random.hpp"

namespace randap {

/// Ordered draws from F_p^n; repeats allowed.
struct DifferenceSample {
  PrimeField field;
  Index n;
  std::vector<FieldVector> draws;

  std::size_t size() const { return draws.size(); }
};

/// K i.i.d. uniform draws from F_p^n, with replacement.
DifferenceSample sample_differences(PrimeField field, Index n, std::size_t count, Rng& rng);

/// Each nonzero d in F_p^n kept independently with probability min(1, c n^2 / p^n).
DifferenceSample sample_bernoulli_differences(PrimeField field, Index n, double c, Rng& rng,
                                              const EnumerationBudget& budget = {});

/// max(0, (n+1 choose 2) - ceil(slack * n * log_p n)).
std::size_t theorem_sample_size(std::int64_t p, Index n, double slack = 11.0);

/// True iff {veronese(d) : d in S} is linearly independent.
bool independence_certificate(const DifferenceSample& sample);

/// A form with d^T M d = 1 for every d in S; nullopt unless the certificate holds.
/// The empty sample yields the identity form.
std::optional<SymmetricForm> find_avoiding_form(const DifferenceSample& sample);

/// |union of v_i^perp| = p^m (1 - ((p-1)/p)^k) for independent v_1..v_k in F_p^m.
/// Throws std::invalid_argument on a dependent family.
std::uint64_t hyperplane_union_count(std::span<const FieldVector> vectors);

/// Number of pairs (x, d), x in F_p^n and d a draw of S, with x, x+d, x+2d all in A_M.
std::uint64_t count_quadric_progressions(const SymmetricForm& m, const DifferenceSample& sample,
                                         const EnumerationBudget& budget = {});

struct SubspaceHit {
  std::int64_t p;
  std::uint64_t hits;    // d in F_p^n with veronese(d) in W
  std::uint64_t points;  // p^n
  std::vector<std::uint64_t> rank_counts;  // forms M_v, v in W^perp, bucketed by rank
  std::uint64_t forms;   // |W^perp|, or the number of sampled v
  bool exhaustive;

  double lhs() const { return double(hits) / double(points); }
  double rhs() const;
  /// lhs <= rhs, compared exactly in Z[sqrt p] when exhaustive, in floating point otherwise.
  bool holds() const;
};

/// P_d(veronese(d) in W) against the average of p^{-rank(M_v)/2} over v in W^perp.
/// W lives in F_p^{(n+1 choose 2)}. W^perp is enumerated when it fits the budget and
/// sampled (`samples` draws from `rng`) otherwise.
SubspaceHit subspace_hit_probability(const Subspace& w, const EnumerationBudget& budget, Rng& rng,
                                     std::uint64_t samples = 1 << 16);

struct ImageMaximizer {
  Subspace subspace;
  std::uint64_t hits;  // d with veronese(d) in subspace
  std::uint64_t points;
};

/// Exhaustive search over all k-dimensional subspaces of F_p^{(n+1 choose 2)} for one containing
/// the most Veronese images. Desk scale only.
ImageMaximizer max_image_subspace(PrimeField field, Index n, Index k,
                                  const EnumerationBudget& budget = {});

/// (1 - P_d(veronese(d) in W_k))^k with W_k from max_image_subspace.
double independence_lower_bound(PrimeField field, Index n, Index k,
                                const EnumerationBudget& budget = {});

enum class VerifyMode { Exhaustive, Algebraic };
std::string_view to_string(VerifyMode mode);

struct TrialOptions {
  EnumerationBudget budget;
  std::uint64_t density_samples = 4096;  // used when p^n exceeds the budget
};

struct AvoidanceCertificate {
  std::size_t sample_size = 0;
  bool independent = false;
  std::optional<SymmetricForm> form;
  std::vector<Residue> witness_values;  // evaluate(M, d) per draw, empty without a form
  /// A form was found, every witness is nonzero, and (exhaustive mode) no progression was seen.
  bool avoided = false;
  std::optional<DensityEstimate> density;
  VerifyMode verify_mode = VerifyMode::Algebraic;
  std::uint64_t progressions_found = 0;
  std::optional<Index> form_rank;
};

AvoidanceCertificate certify_sample(const DifferenceSample& sample, Rng& rng,
                                    const TrialOptions& options = {});

/// sample_differences followed by certify_sample, all driven by `seed`.
AvoidanceCertificate adversary_trial(std::int64_t p, Index n, std::size_t count,
                                     std::uint64_t seed, const TrialOptions& options = {});

struct ScanRow {
  Index n;
  std::size_t sample_size;
  std::uint64_t trials;
  std::uint64_t independent;
  std::uint64_t avoided;
  double mean_density;  // over trials that produced a form
};

/// Fixed-size model: for each (n, K) cell, `trials` adversary trials seeded from
/// (master_seed, n, K, trial). Rows are ordered by n then K.
std::vector<ScanRow> success_rate_scan(std::int64_t p, std::span<const Index> dimensions,
                                       std::span<const std::size_t> sizes, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned workers = 1,
                                       const TrialOptions& options = {});

}  // namespace randap
