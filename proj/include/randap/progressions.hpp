#pragma once

// Arithmetic progressions and dual functions over [N], Z_N and F_p^n.
//
// Elements and differences of a domain are addressed by an index in [0, size):
//   interval [N]   index i <-> value i+1, for elements and for differences d in [N];
//   cyclic Z_N     index i <-> residue i;
//   vector F_p^n   index i <-> lexicographic code of the vector (see encode_index).
// Interval domains use zero-extension (x + jd past N is never in A); cyclic ones wrap.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "randap/field.hpp"

namespace randap {

using Rational = boost::rational<std::int64_t>;

enum class DomainKind { Interval, Cyclic, Vector };

class Domain {
 public:
  static Domain interval(std::uint64_t n);
  static Domain cyclic(std::uint64_t n);
  static Domain vector_space(PrimeField field, Index n, const EnumerationBudget& budget = {});
  /// "interval:N", "cyclic:N" or "vector:p,n".
  static Domain parse(const std::string& spec, const EnumerationBudget& budget = {});

  DomainKind kind() const { return kind_; }
  std::uint64_t size() const { return size_; }
  /// Field and dimension of a vector domain.
  const std::optional<PrimeField>& field() const { return field_; }
  Index dimension() const { return dimension_; }
  std::string describe() const;

  /// Index of x + step * d, or nullopt when that leaves an interval domain.
  std::optional<std::uint64_t> shift(std::uint64_t x, std::uint64_t d, std::uint64_t step) const;
  /// d = 0 exists only in cyclic and vector domains.
  bool is_zero_difference(std::uint64_t d) const { return kind_ != DomainKind::Interval && d == 0; }

  /// Element text as it appears in set files, and its inverse.
  std::string element_text(std::uint64_t index) const;
  /// Throws std::invalid_argument when malformed or out of range.
  std::uint64_t parse_element(const std::string& text) const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.size_ == b.size_ && a.dimension_ == b.dimension_ &&
           a.field_ == b.field_;
  }

 private:
  Domain(DomainKind kind, std::uint64_t size, std::optional<PrimeField> field, Index dimension)
      : kind_(kind), size_(size), field_(field), dimension_(dimension) {}
  DomainKind kind_;
  std::uint64_t size_;
  std::optional<PrimeField> field_;
  Index dimension_;
};

/// A subset of a domain as a bitset; also used for difference sets S.
class DenseSet {
 public:
  explicit DenseSet(Domain domain) : domain_(std::move(domain)), members_(domain_.size(), false) {}
  DenseSet(Domain domain, std::span<const std::uint64_t> indices);
  static DenseSet full(Domain domain);

  const Domain& domain() const { return domain_; }
  void insert(std::uint64_t index);
  bool contains(std::uint64_t index) const { return members_[index]; }
  std::uint64_t cardinality() const { return cardinality_; }
  double density() const { return double(cardinality_) / double(domain_.size()); }
  Rational exact_density() const;
  std::vector<std::uint64_t> indices() const;

 private:
  Domain domain_;
  std::vector<bool> members_;
  std::uint64_t cardinality_ = 0;
};

using DifferenceSet = DenseSet;

struct ProgressionCount {
  std::uint64_t nontrivial;  // pairs (x, d) with d != 0
  std::uint64_t trivial;     // pairs with d = 0 (cyclic and vector domains only)
  std::uint64_t total() const { return nontrivial + trivial; }
};

/// Pairs (x, d), d in S, with x, x+d, ..., x+(k-1)d all in A. Throws on domain mismatch.
ProgressionCount count_progressions(const DenseSet& a, const DifferenceSet& s, unsigned k);

class DualFunction {
 public:
  DualFunction(Domain domain, unsigned arity, std::vector<std::uint64_t> counts);

  const Domain& domain() const { return domain_; }
  unsigned arity() const { return arity_; }
  /// Number of x with all `arity` terms in A, for difference index d.
  std::uint64_t count(std::uint64_t d) const { return counts_[d]; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  Rational value(std::uint64_t d) const;
  Eigen::VectorXd values() const;

 private:
  Domain domain_;
  unsigned arity_;
  std::vector<std::uint64_t> counts_;
};

/// d -> E_x 1_A(x) 1_A(x+d) ... 1_A(x+(arity-1)d).
DualFunction dual(const DenseSet& a, unsigned arity);
inline DualFunction dual2(const DenseSet& a) { return dual(a, 2); }
inline DualFunction dual3(const DenseSet& a) { return dual(a, 3); }

/// E_d F(d) 1_S(d).
Rational inner_with_indicator(const DualFunction& f, const DifferenceSet& s);

struct VarnavidesAverage {
  Rational all_differences;       // E_{x,d} over every d of the domain
  Rational nonzero_differences;   // d = 0 excluded (equal to the above on intervals)
};

VarnavidesAverage varnavides_average(const DenseSet& a);

class SetParseError : public std::runtime_error {
 public:
  SetParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One element per line; '#' lines and blank lines are skipped.
DenseSet read_set(std::istream& in, const Domain& domain);
void write_set(std::ostream& out, const DenseSet& set);

}  // namespace randap
