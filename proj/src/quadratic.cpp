#include "randap/quadratic.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace randap {

Index pair_index(Index n, Index i, Index j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n) throw std::out_of_range("pair index out of range");
  // Rows 0..i-1 contribute n, n-1, ..., n-i+1 pairs.
  return i * n - i * (i - 1) / 2 + (j - i);
}

Index dimension_of_pair_count(Index length) {
  Index n = 0;
  while (pair_count(n) < length) ++n;
  if (pair_count(n) != length) {
    throw std::invalid_argument("length " + std::to_string(length) + " is not n(n+1)/2");
  }
  return n;
}

SymmetricForm::SymmetricForm(PrimeField field, Index n, ResidueVector upper)
    : field_(field), n_(n), upper_(std::move(upper)) {
  if (upper_.size() != pair_count(n)) throw std::invalid_argument("upper-triangle length mismatch");
  for (Index i = 0; i < upper_.size(); ++i) upper_[i] = field_.reduce(upper_[i]);
}

SymmetricForm SymmetricForm::zero(PrimeField field, Index n) {
  return SymmetricForm(field, n, ResidueVector::Zero(pair_count(n)));
}

SymmetricForm SymmetricForm::identity(PrimeField field, Index n) {
  ResidueVector u = ResidueVector::Zero(pair_count(n));
  for (Index i = 0; i < n; ++i) u[pair_index(n, i, i)] = 1;
  return SymmetricForm(field, n, std::move(u));
}

SymmetricForm SymmetricForm::from_symmetric_matrix(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("form matrix must be square");
  if (m.entries() != m.entries().transpose()) throw std::invalid_argument("matrix is not symmetric");
  const Index n = m.rows();
  ResidueVector u(pair_count(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) u[pair_index(n, i, j)] = m(i, j);
  }
  return SymmetricForm(m.field(), n, std::move(u));
}

Residue SymmetricForm::operator()(Index i, Index j) const { return upper_[pair_index(n_, i, j)]; }

FieldMatrix SymmetricForm::to_matrix() const {
  ResidueMatrix m(n_, n_);
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  }
  return FieldMatrix(field_, std::move(m));
}

SymmetricForm symmetrize(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("symmetrize: matrix must be square");
  const auto& f = m.field();
  const Residue half = f.inv(2);
  const Index n = m.rows();
  ResidueVector u(pair_count(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) u[pair_index(n, i, j)] = f.mul(half, f.add(m(i, j), m(j, i)));
  }
  return SymmetricForm(f, n, std::move(u));
}

FieldVector veronese(const FieldVector& d) {
  const auto& f = d.field();
  const Index n = d.size();
  ResidueVector out(pair_count(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) out[k++] = f.mul(d[i], d[j]);
  }
  return FieldVector(f, std::move(out));
}

FieldVector vec_of_form(const SymmetricForm& m) {
  const auto& f = m.field();
  const Index n = m.dimension();
  ResidueVector out(pair_count(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j, ++k) out[k] = i == j ? m(i, j) : f.mul(2, m(i, j));
  }
  return FieldVector(f, std::move(out));
}

SymmetricForm form_of_vec(const FieldVector& v) {
  const auto& f = v.field();
  const Index n = dimension_of_pair_count(v.size());
  const Residue half = f.inv(2);
  ResidueVector u(pair_count(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j, ++k) u[k] = i == j ? v[k] : f.mul(half, v[k]);
  }
  return SymmetricForm(f, n, std::move(u));
}

Residue evaluate(const SymmetricForm& m, const FieldVector& d) {
  if (d.size() != m.dimension() || !(d.field() == m.field())) {
    throw std::invalid_argument("evaluate: form and vector dimensions differ");
  }
  const auto& f = m.field();
  const Index n = m.dimension();
  Residue acc = 0;
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j, ++k) {
      const Residue term = f.mul(m.upper()[k], f.mul(d[i], d[j]));
      acc = f.add(acc, i == j ? term : f.mul(2, term));
    }
  }
  return acc;
}

Residue evaluate(const FieldMatrix& m, const FieldVector& d) {
  if (m.rows() != m.cols() || m.cols() != d.size()) {
    throw std::invalid_argument("evaluate: matrix and vector dimensions differ");
  }
  return dot(d, multiply(m, d));
}

Index rank(const SymmetricForm& m) { return rank(m.to_matrix()); }

namespace {

// Histogram of x^T M x over all x in F_p^n, using raw residues for speed.
std::vector<std::uint64_t> value_histogram(const SymmetricForm& m, const EnumerationBudget& budget,
                                           const char* what) {
  const auto& f = m.field();
  const Index n = m.dimension();
  const auto total = budgeted_pow(static_cast<std::uint64_t>(f.modulus()),
                                  static_cast<std::uint64_t>(n), budget, what);
  const FieldMatrix mat = m.to_matrix();
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(f.modulus()), 0);
  std::vector<Residue> x(static_cast<std::size_t>(n), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    Residue q = 0;
    for (Index i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Residue row = 0;
      for (Index j = 0; j < n; ++j) row += mat(i, j) * x[j];
      q = f.add(q, f.mul(x[i], f.reduce(row)));
    }
    ++hist[static_cast<std::size_t>(q)];
    for (Index i = n - 1; i >= 0; --i) {
      if (++x[i] < f.modulus()) break;
      x[i] = 0;
    }
  }
  return hist;
}

}  // namespace

double gauss_sum(const SymmetricForm& m, const EnumerationBudget& budget) {
  const auto hist = value_histogram(m, budget, "gauss_sum");
  const double p = static_cast<double>(m.field().modulus());
  std::uint64_t total = 0;
  std::complex<double> acc = 0.0;
  for (std::size_t r = 0; r < hist.size(); ++r) {
    acc += static_cast<double>(hist[r]) * std::polar(1.0, 2.0 * std::numbers::pi * double(r) / p);
    total += hist[r];
  }
  return std::abs(acc) / static_cast<double>(total);
}

double gauss_sum_predicted(const SymmetricForm& m) {
  return std::pow(static_cast<double>(m.field().modulus()), -0.5 * static_cast<double>(rank(m)));
}

std::vector<std::uint64_t> rank_histogram(PrimeField field, Index n, const EnumerationBudget& budget) {
  const auto p = static_cast<std::uint64_t>(field.modulus());
  const auto total = budgeted_pow(p, static_cast<std::uint64_t>(n * n), budget, "rank census");
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n + 1), 0);
  ResidueMatrix m = ResidueMatrix::Zero(n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (Index k = n * n - 1; k >= 0; --k) {
      m(k / n, k % n) = static_cast<Residue>(c % p);
      c /= p;
    }
    ++hist[static_cast<std::size_t>(rank(FieldMatrix(field, m)))];
  }
  return hist;
}

RankCensus count_rank_at_most(PrimeField field, Index n, Index r, const EnumerationBudget& budget) {
  if (r < 0) throw std::invalid_argument("rank bound must be nonnegative");
  const auto hist = rank_histogram(field, n, budget);
  std::uint64_t count = 0;
  for (Index k = 0; k <= std::min(r, n); ++k) count += hist[static_cast<std::size_t>(k)];
  const auto bound = checked_pow(static_cast<std::uint64_t>(field.modulus()),
                                 static_cast<std::uint64_t>(2 * n * r));
  if (!bound) throw BudgetExceeded("rank census bound p^(2nr) overflows 64 bits");
  return {count, *bound};
}

DensityEstimate quadric_density_exact(const SymmetricForm& m, const EnumerationBudget& budget) {
  const auto hist = value_histogram(m, budget, "quadric_density");
  std::uint64_t total = 0;
  for (auto h : hist) total += h;
  return {hist[0], total, true};
}

FieldVector random_vector(PrimeField field, Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> digit(0, field.modulus() - 1);
  ResidueVector x(n);
  for (Index i = 0; i < n; ++i) x[i] = digit(rng);
  return FieldVector(field, std::move(x));
}

DensityEstimate quadric_density_sampled(const SymmetricForm& m, std::uint64_t samples,
                                        std::mt19937_64& rng) {
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    if (evaluate(m, random_vector(m.field(), m.dimension(), rng)) == 0) ++hits;
  }
  return {hits, samples, false};
}

}  // namespace randap
