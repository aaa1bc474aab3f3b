#include "randap/field.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace randap {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) return std::nullopt;
  }
  return result;
}

std::uint64_t budgeted_pow(std::uint64_t base, std::uint64_t exponent,
                           const EnumerationBudget& budget, const std::string& what) {
  const auto count = checked_pow(base, exponent);
  if (!count || *count > budget.max_points) {
    throw BudgetExceeded(what + ": " + std::to_string(base) + "^" + std::to_string(exponent) +
                         " points exceeds enumeration budget of " +
                         std::to_string(budget.max_points));
  }
  return *count;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  bool prime = p >= 3 && p < (std::int64_t{1} << 31) && p % 2 == 1;
  for (std::int64_t q = 3; prime && q * q <= p; q += 2) {
    if (p % q == 0) prime = false;
  }
  if (!prime) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

Residue PrimeField::inv(Residue a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("zero has no inverse in F_p");
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return reduce(t0);
}

// --- vectors and matrices -------------------------------------------------------------

FieldVector::FieldVector(PrimeField field, ResidueVector entries)
    : field_(field), entries_(std::move(entries)) {
  for (Index i = 0; i < entries_.size(); ++i) entries_[i] = field_.reduce(entries_[i]);
}

FieldVector::FieldVector(PrimeField field, std::initializer_list<std::int64_t> entries)
    : field_(field), entries_(static_cast<Index>(entries.size())) {
  Index i = 0;
  for (auto e : entries) entries_[i++] = field_.reduce(e);
}

FieldVector FieldVector::zero(PrimeField field, Index size) {
  return FieldVector(field, ResidueVector::Zero(size));
}

FieldVector FieldVector::unit(PrimeField field, Index size, Index position) {
  ResidueVector e = ResidueVector::Zero(size);
  e[position] = 1;
  return FieldVector(field, std::move(e));
}

FieldMatrix::FieldMatrix(PrimeField field, ResidueMatrix entries)
    : field_(field), entries_(std::move(entries)) {
  entries_ = entries_.unaryExpr([&](Residue x) { return field_.reduce(x); });
}

FieldMatrix::FieldMatrix(PrimeField field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(field) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  entries_.resize(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw std::invalid_argument("ragged matrix rows");
    Index j = 0;
    for (auto e : row) entries_(i, j++) = field_.reduce(e);
    ++i;
  }
}

FieldMatrix FieldMatrix::zero(PrimeField field, Index rows, Index cols) {
  return FieldMatrix(field, ResidueMatrix::Zero(rows, cols));
}

FieldMatrix FieldMatrix::identity(PrimeField field, Index n) {
  return FieldMatrix(field, ResidueMatrix::Identity(n, n));
}

FieldMatrix FieldMatrix::from_rows(PrimeField field, Index cols, std::span<const FieldVector> rows) {
  ResidueMatrix m(static_cast<Index>(rows.size()), cols);
  for (Index i = 0; i < m.rows(); ++i) {
    const auto& v = rows[static_cast<std::size_t>(i)];
    if (v.size() != cols || !(v.field() == field)) {
      throw std::invalid_argument("row vector does not match matrix shape or field");
    }
    m.row(i) = v.entries().transpose();
  }
  return FieldMatrix(field, std::move(m));
}

FieldVector FieldMatrix::row(Index i) const {
  return FieldVector(field_, entries_.row(i).transpose());
}

namespace {

void require_same(const FieldVector& a, const FieldVector& b) {
  if (!(a.field() == b.field()) || a.size() != b.size()) {
    throw std::invalid_argument("vector dimension or field mismatch");
  }
}

}  // namespace

Residue dot(const FieldVector& a, const FieldVector& b) {
  require_same(a, b);
  const auto& f = a.field();
  Residue acc = 0;
  for (Index i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

FieldVector operator+(const FieldVector& a, const FieldVector& b) {
  require_same(a, b);
  return FieldVector(a.field(), a.entries() + b.entries());
}

FieldVector operator-(const FieldVector& a, const FieldVector& b) {
  require_same(a, b);
  return FieldVector(a.field(), a.entries() - b.entries());
}

FieldVector scale(Residue c, const FieldVector& v) {
  return FieldVector(v.field(), v.entries() * v.field().reduce(c));
}

FieldVector multiply(const FieldMatrix& a, const FieldVector& x) {
  if (a.cols() != x.size() || !(a.field() == x.field())) {
    throw std::invalid_argument("matrix-vector dimension mismatch");
  }
  const auto& f = a.field();
  ResidueVector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    Residue acc = 0;
    for (Index j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), x[j]));
    y[i] = acc;
  }
  return FieldVector(f, std::move(y));
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows() || !(a.field() == b.field())) {
    throw std::invalid_argument("matrix-matrix dimension mismatch");
  }
  const auto& f = a.field();
  ResidueMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      Residue acc = 0;
      for (Index k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  }
  return FieldMatrix(f, std::move(c));
}

FieldMatrix transpose(const FieldMatrix& a) {
  return FieldMatrix(a.field(), a.entries().transpose());
}

// --- elimination ------------------------------------------------------------------------

EchelonForm reduce_row_echelon(const FieldMatrix& a) {
  const auto& f = a.field();
  ResidueMatrix m = a.entries();
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    m.row(r).swap(m.row(pivot));
    const Residue scale_by = f.inv(m(r, c));
    for (Index j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), scale_by);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Residue factor = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {FieldMatrix(f, std::move(m)), r, std::move(pivots)};
}

Index rank(const FieldMatrix& a) { return reduce_row_echelon(a).rank; }

std::optional<FieldVector> solve(const FieldMatrix& a, const FieldVector& b) {
  if (a.rows() != b.size() || !(a.field() == b.field())) {
    throw std::invalid_argument("solve: matrix rows must equal right-hand side length");
  }
  ResidueMatrix augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a.entries();
  augmented.col(a.cols()) = b.entries();
  const auto ech = reduce_row_echelon(FieldMatrix(a.field(), std::move(augmented)));
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;

  ResidueVector x = ResidueVector::Zero(a.cols());
  for (Index i = 0; i < ech.rank; ++i) {
    x[ech.pivots[static_cast<std::size_t>(i)]] = ech.reduced(i, a.cols());
  }
  return FieldVector(a.field(), std::move(x));
}

bool is_independent(std::span<const FieldVector> vectors) {
  if (vectors.empty()) return true;
  const auto field = vectors.front().field();
  const Index dim = vectors.front().size();
  if (static_cast<Index>(vectors.size()) > dim) return false;
  return rank(FieldMatrix::from_rows(field, dim, vectors)) == static_cast<Index>(vectors.size());
}

// --- subspaces --------------------------------------------------------------------------

Subspace Subspace::span(PrimeField field, Index ambient, std::span<const FieldVector> vectors) {
  const auto ech = reduce_row_echelon(FieldMatrix::from_rows(field, ambient, vectors));
  return Subspace(FieldMatrix(field, ech.reduced.entries().topRows(ech.rank)));
}

Subspace Subspace::zero(PrimeField field, Index ambient) {
  return Subspace(FieldMatrix::zero(field, 0, ambient));
}

Subspace Subspace::full(PrimeField field, Index ambient) {
  return Subspace(FieldMatrix::identity(field, ambient));
}

std::vector<FieldVector> Subspace::basis_vectors() const {
  std::vector<FieldVector> out;
  out.reserve(static_cast<std::size_t>(dimension()));
  for (Index i = 0; i < dimension(); ++i) out.push_back(basis_.row(i));
  return out;
}

bool Subspace::contains(const FieldVector& v) const {
  if (v.size() != ambient_dimension()) throw std::invalid_argument("subspace dimension mismatch");
  auto rows = basis_vectors();
  rows.push_back(v);
  return rank(FieldMatrix::from_rows(field(), ambient_dimension(), rows)) == dimension();
}

Subspace orthogonal_complement(const Subspace& w) {
  const auto& f = w.field();
  const Index m = w.ambient_dimension();
  const auto ech = reduce_row_echelon(w.basis());
  std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  // One null-space vector per free column: x_free = 1, x_pivot(i) = -R(i, free).
  std::vector<FieldVector> kernel;
  for (Index free = 0; free < m; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    ResidueVector x = ResidueVector::Zero(m);
    x[free] = 1;
    for (Index i = 0; i < ech.rank; ++i) {
      x[ech.pivots[static_cast<std::size_t>(i)]] = f.neg(ech.reduced(i, free));
    }
    kernel.emplace_back(f, std::move(x));
  }
  return Subspace::span(f, m, kernel);
}

// --- enumeration ------------------------------------------------------------------------

std::uint64_t encode_index(const FieldVector& v) {
  const auto p = static_cast<std::uint64_t>(v.field().modulus());
  std::uint64_t code = 0;
  for (Index i = 0; i < v.size(); ++i) code = code * p + static_cast<std::uint64_t>(v[i]);
  return code;
}

FieldVector decode_index(PrimeField field, Index n, std::uint64_t code) {
  const auto p = static_cast<std::uint64_t>(field.modulus());
  ResidueVector x(n);
  for (Index i = n - 1; i >= 0; --i) {
    x[i] = static_cast<Residue>(code % p);
    code /= p;
  }
  return FieldVector(field, std::move(x));
}

VectorEnumeration::iterator::iterator(PrimeField field, Index n, std::uint64_t count)
    : current_(FieldVector::zero(field, n)), remaining_(count) {}

VectorEnumeration::iterator& VectorEnumeration::iterator::operator++() {
  if (--remaining_ == 0) {
    current_.reset();
    return *this;
  }
  const auto& f = current_->field();
  ResidueVector x = current_->entries();
  for (Index i = x.size() - 1; i >= 0; --i) {
    if (++x[i] < f.modulus()) break;
    x[i] = 0;
  }
  current_ = FieldVector(f, std::move(x));
  return *this;
}

VectorEnumeration enumerate_vectors(PrimeField field, Index n, const EnumerationBudget& budget) {
  const auto count = budgeted_pow(static_cast<std::uint64_t>(field.modulus()),
                                  static_cast<std::uint64_t>(n), budget, "enumerate_vectors");
  return VectorEnumeration(field, n, count);
}

void for_each_subspace(PrimeField field, Index ambient, Index k,
                       const std::function<void(const Subspace&)>& visit) {
  if (k < 0 || k > ambient) return;
  const auto p = field.modulus();
  std::vector<Index> pivots(static_cast<std::size_t>(k));
  std::iota(pivots.begin(), pivots.end(), Index{0});

  while (true) {
    // Free slots: entries (i, c) with c > pivot i and c not a pivot column.
    std::vector<std::pair<Index, Index>> slots;
    for (Index i = 0; i < k; ++i) {
      for (Index c = pivots[static_cast<std::size_t>(i)] + 1; c < ambient; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) slots.emplace_back(i, c);
      }
    }
    ResidueMatrix basis = ResidueMatrix::Zero(k, ambient);
    for (Index i = 0; i < k; ++i) basis(i, pivots[static_cast<std::size_t>(i)]) = 1;
    std::vector<Residue> values(slots.size(), 0);
    while (true) {
      for (std::size_t s = 0; s < slots.size(); ++s) {
        basis(slots[s].first, slots[s].second) = values[s];
      }
      std::vector<FieldVector> rows;
      for (Index i = 0; i < k; ++i) rows.emplace_back(field, basis.row(i).transpose());
      visit(Subspace::span(field, ambient, rows));
      std::size_t s = 0;
      for (; s < values.size(); ++s) {
        if (++values[s] < p) break;
        values[s] = 0;
      }
      if (s == values.size()) break;
    }
    // Next pivot combination in lexicographic order.
    Index i = k - 1;
    while (i >= 0 && pivots[static_cast<std::size_t>(i)] == ambient - k + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace randap
