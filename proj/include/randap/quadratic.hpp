#pragma once

// Symmetric forms over F_p and the degree-2 Veronese correspondence
//   d^T M d = veronese(d) . vec_of_form(M).
//
// Pairs (i, j) with i <= j are indexed lexicographically: (0,0), (0,1), ..., (0,n-1), (1,1), ...
// The factor 2 on off-diagonal pairs lives in the form vector, so veronese() is the plain map
// d -> (d_i d_j)_{i <= j}.

#include <cstdint>
#include <random>
#include <vector>

#include "randap/field.hpp"

namespace randap {

inline Index pair_count(Index n) { return n * (n + 1) / 2; }
Index pair_index(Index n, Index i, Index j);
/// Inverse of pair_count; throws std::invalid_argument if `length` is not triangular.
Index dimension_of_pair_count(Index length);

class SymmetricForm {
 public:
  /// `upper` holds M_ij for i <= j in pair order.
  SymmetricForm(PrimeField field, Index n, ResidueVector upper);

  static SymmetricForm zero(PrimeField field, Index n);
  static SymmetricForm identity(PrimeField field, Index n);
  /// Throws std::invalid_argument if `m` is not square and symmetric.
  static SymmetricForm from_symmetric_matrix(const FieldMatrix& m);

  const PrimeField& field() const { return field_; }
  Index dimension() const { return n_; }
  Residue operator()(Index i, Index j) const;
  const ResidueVector& upper() const { return upper_; }
  FieldMatrix to_matrix() const;

  friend bool operator==(const SymmetricForm& a, const SymmetricForm& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.upper_ == b.upper_;
  }

 private:
  PrimeField field_;
  Index n_;
  ResidueVector upper_;
};

/// (M + M^T) / 2; preserves d^T M d for every d.
SymmetricForm symmetrize(const FieldMatrix& m);

FieldVector veronese(const FieldVector& d);
FieldVector vec_of_form(const SymmetricForm& m);
SymmetricForm form_of_vec(const FieldVector& v);

/// d^T M d mod p.
Residue evaluate(const SymmetricForm& m, const FieldVector& d);
/// d^T M d for an arbitrary square matrix, no symmetrization.
Residue evaluate(const FieldMatrix& m, const FieldVector& d);

Index rank(const SymmetricForm& m);

/// |E_x omega^{x^T M x}|, omega = exp(2 pi i / p), by exhaustive summation over F_p^n.
double gauss_sum(const SymmetricForm& m, const EnumerationBudget& budget = {});
/// p^{-rank(M)/2}.
double gauss_sum_predicted(const SymmetricForm& m);

struct RankCensus {
  std::uint64_t count;  // n x n matrices of rank <= r
  std::uint64_t bound;  // p^{2nr}
};

/// Histogram of ranks over all p^{n^2} square matrices (not only symmetric ones).
std::vector<std::uint64_t> rank_histogram(PrimeField field, Index n,
                                          const EnumerationBudget& budget = {});
RankCensus count_rank_at_most(PrimeField field, Index n, Index r,
                              const EnumerationBudget& budget = {});

struct DensityEstimate {
  std::uint64_t hits;
  std::uint64_t samples;
  bool exact;
  double value() const { return samples == 0 ? 0.0 : double(hits) / double(samples); }
};

/// |{x : x^T M x = 0}| / p^n by enumeration.
DensityEstimate quadric_density_exact(const SymmetricForm& m, const EnumerationBudget& budget = {});
DensityEstimate quadric_density_sampled(const SymmetricForm& m, std::uint64_t samples,
                                        std::mt19937_64& rng);

/// Uniformly random vector of F_p^n.
FieldVector random_vector(PrimeField field, Index n, std::mt19937_64& rng);

}  // namespace randap
