#pragma once

// Exact linear algebra over a prime field F_p, p an odd prime.
//
// Storage is Eigen; arithmetic is always done through PrimeField so that every
// stored residue lies in {0, ..., p-1}.

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace randap {

using Index = Eigen::Index;
using Residue = std::int64_t;
using ResidueVector = Eigen::Matrix<Residue, Eigen::Dynamic, 1>;
using ResidueMatrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Thrown when an exhaustive loop would exceed the configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Upper bound on the number of points any exhaustive loop may visit.
struct EnumerationBudget {
  std::uint64_t max_points = std::uint64_t{1} << 24;
};

/// base^exponent, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exponent);

/// base^exponent if it fits in `budget`, otherwise throws BudgetExceeded naming `what`.
std::uint64_t budgeted_pow(std::uint64_t base, std::uint64_t exponent,
                           const EnumerationBudget& budget, const std::string& what);

class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  explicit PrimeField(std::int64_t p);

  std::int64_t modulus() const { return p_; }

  Residue reduce(std::int64_t x) const {
    const std::int64_t r = x % p_;
    return r < 0 ? r + p_ : r;
  }
  Residue add(Residue a, Residue b) const { return (a + b) % p_; }
  Residue sub(Residue a, Residue b) const { return (a - b + p_) % p_; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const { return (a * b) % p_; }
  /// Multiplicative inverse by the extended Euclidean algorithm; throws std::domain_error on 0.
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::int64_t p_;
};

class FieldVector {
 public:
  FieldVector(PrimeField field, ResidueVector entries);
  FieldVector(PrimeField field, std::initializer_list<std::int64_t> entries);

  static FieldVector zero(PrimeField field, Index size);
  static FieldVector unit(PrimeField field, Index size, Index position);

  const PrimeField& field() const { return field_; }
  Index size() const { return entries_.size(); }
  Residue operator[](Index i) const { return entries_[i]; }
  const ResidueVector& entries() const { return entries_; }
  bool is_zero() const { return (entries_.array() == 0).all(); }

  friend bool operator==(const FieldVector& a, const FieldVector& b) {
    return a.field_ == b.field_ && a.entries_.size() == b.entries_.size() &&
           a.entries_ == b.entries_;
  }

 private:
  PrimeField field_;
  ResidueVector entries_;
};

class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, ResidueMatrix entries);
  FieldMatrix(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static FieldMatrix zero(PrimeField field, Index rows, Index cols);
  static FieldMatrix identity(PrimeField field, Index n);
  /// Matrix whose rows are the given vectors (all of length `cols`).
  static FieldMatrix from_rows(PrimeField field, Index cols, std::span<const FieldVector> rows);

  const PrimeField& field() const { return field_; }
  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  Residue operator()(Index i, Index j) const { return entries_(i, j); }
  const ResidueMatrix& entries() const { return entries_; }
  FieldVector row(Index i) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.rows() == b.rows() && a.cols() == b.cols() &&
           a.entries_ == b.entries_;
  }

 private:
  PrimeField field_;
  ResidueMatrix entries_;
};

Residue dot(const FieldVector& a, const FieldVector& b);
FieldVector operator+(const FieldVector& a, const FieldVector& b);
FieldVector operator-(const FieldVector& a, const FieldVector& b);
FieldVector scale(Residue c, const FieldVector& v);
FieldVector multiply(const FieldMatrix& a, const FieldVector& x);
FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix transpose(const FieldMatrix& a);

struct EchelonForm {
  FieldMatrix reduced;
  Index rank;
  std::vector<Index> pivots;
};

/// Reduced row-echelon form: pivots are the first nonzero column of each row, scaled to 1,
/// with zeros above and below.
EchelonForm reduce_row_echelon(const FieldMatrix& a);

Index rank(const FieldMatrix& a);

/// Some x with a*x = b, free variables set to 0; nullopt when inconsistent.
std::optional<FieldVector> solve(const FieldMatrix& a, const FieldVector& b);

bool is_independent(std::span<const FieldVector> vectors);

/// A subspace of F_p^m held as its canonical (RREF) basis, so equal spaces compare equal.
class Subspace {
 public:
  static Subspace span(PrimeField field, Index ambient, std::span<const FieldVector> vectors);
  static Subspace zero(PrimeField field, Index ambient);
  static Subspace full(PrimeField field, Index ambient);

  const PrimeField& field() const { return basis_.field(); }
  Index ambient_dimension() const { return basis_.cols(); }
  Index dimension() const { return basis_.rows(); }
  const FieldMatrix& basis() const { return basis_; }
  std::vector<FieldVector> basis_vectors() const;
  bool contains(const FieldVector& v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  explicit Subspace(FieldMatrix basis) : basis_(std::move(basis)) {}
  FieldMatrix basis_;
};

Subspace orthogonal_complement(const Subspace& w);

/// Lexicographic encoding of F_p^n vectors as integers in [0, p^n); coordinate 0 is most
/// significant.
std::uint64_t encode_index(const FieldVector& v);
FieldVector decode_index(PrimeField field, Index n, std::uint64_t code);

/// All p^n vectors of F_p^n in lexicographic order, as a lazily advancing range.
class VectorEnumeration {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FieldVector;
    using difference_type = std::ptrdiff_t;
    using pointer = const FieldVector*;
    using reference = const FieldVector&;

    iterator() = default;
    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.remaining_ == b.remaining_;
    }

   private:
    friend class VectorEnumeration;
    iterator(PrimeField field, Index n, std::uint64_t count);
    std::optional<FieldVector> current_;
    std::uint64_t remaining_ = 0;
  };

  iterator begin() const { return iterator(field_, n_, count_); }
  iterator end() const { return iterator(); }
  std::uint64_t size() const { return count_; }

 private:
  friend VectorEnumeration enumerate_vectors(PrimeField, Index, const EnumerationBudget&);
  VectorEnumeration(PrimeField field, Index n, std::uint64_t count)
      : field_(field), n_(n), count_(count) {}
  PrimeField field_;
  Index n_;
  std::uint64_t count_;
};

/// Throws BudgetExceeded when p^n exceeds the budget.
VectorEnumeration enumerate_vectors(PrimeField field, Index n,
                                    const EnumerationBudget& budget = {});

/// Calls `visit` with every k-dimensional subspace of F_p^m, each once, via its RREF basis.
void for_each_subspace(PrimeField field, Index ambient, Index k,
                       const std::function<void(const Subspace&)>& visit);

}  // namespace randap
