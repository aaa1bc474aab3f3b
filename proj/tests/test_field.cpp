#include "randap/field.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "randap/random.hpp"

namespace randap {
namespace {

const PrimeField F3(3);
const PrimeField F5(5);

FieldMatrix random_matrix(PrimeField f, Index rows, Index cols, Rng& rng) {
  std::uniform_int_distribution<Residue> digit(0, f.modulus() - 1);
  ResidueMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = digit(rng);
  return FieldMatrix(f, m);
}

FieldVector random_vec(PrimeField f, Index n, Rng& rng) {
  std::uniform_int_distribution<Residue> digit(0, f.modulus() - 1);
  ResidueVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = digit(rng);
  return FieldVector(f, v);
}

// Brute force: some nonzero coefficient vector gives the zero combination.
bool dependent_by_enumeration(const std::vector<FieldVector>& vs) {
  if (vs.empty()) return false;
  const auto f = vs.front().field();
  const auto dim = vs.front().size();
  const auto count = static_cast<Index>(vs.size());
  std::uint64_t total = 1;
  for (Index i = 0; i < count; ++i) total *= static_cast<std::uint64_t>(f.modulus());
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    ResidueVector acc = ResidueVector::Zero(dim);
    for (Index i = 0; i < count; ++i) {
      acc += (static_cast<Residue>(c % f.modulus())) * vs[static_cast<std::size_t>(i)].entries();
      c /= static_cast<std::uint64_t>(f.modulus());
    }
    if (FieldVector(f, acc).is_zero()) return true;
  }
  return false;
}

// Number of distinct vectors in the row space, by enumerating all combinations.
std::size_t row_space_size(const FieldMatrix& a) {
  std::set<std::vector<Residue>> seen;
  std::vector<FieldVector> rows;
  for (Index i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  std::uint64_t total = 1;
  for (Index i = 0; i < a.rows(); ++i) total *= static_cast<std::uint64_t>(a.field().modulus());
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    ResidueVector acc = ResidueVector::Zero(a.cols());
    for (const auto& r : rows) {
      acc += static_cast<Residue>(c % a.field().modulus()) * r.entries();
      c /= static_cast<std::uint64_t>(a.field().modulus());
    }
    const FieldVector v(a.field(), acc);
    seen.insert(std::vector<Residue>(v.entries().data(), v.entries().data() + v.size()));
  }
  return seen.size();
}

TEST(PrimeField, RejectsNonOddPrimes) {
  EXPECT_THROW(PrimeField(2), std::invalid_argument);
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
  EXPECT_THROW(PrimeField(-3), std::invalid_argument);
  EXPECT_NO_THROW(PrimeField(7));
}

TEST(PrimeField, InversesByExtendedEuclid) {
  for (std::int64_t p : {3, 5, 7, 101, 65537}) {
    const PrimeField f(p);
    for (Residue a = 1; a < std::min<std::int64_t>(p, 500); ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
    EXPECT_THROW(f.inv(0), std::domain_error);
  }
  EXPECT_EQ(F3.inv(2), 2);
  EXPECT_EQ(F3.reduce(-1), 2);
}

TEST(Echelon, Examples) {
  EXPECT_EQ(reduce_row_echelon(FieldMatrix::zero(F3, 2, 2)).rank, 0);
  EXPECT_EQ(reduce_row_echelon(FieldMatrix::identity(F3, 3)).rank, 3);

  const FieldMatrix a(F3, {{1, 2}, {2, 1}});
  // Oracle: the row space has 3^rank elements.
  ASSERT_EQ(row_space_size(a), 3u);
  const auto ech = reduce_row_echelon(a);
  EXPECT_EQ(ech.rank, 1);
  EXPECT_EQ(ech.pivots, std::vector<Index>{0});
  EXPECT_EQ(ech.reduced, FieldMatrix(F3, {{1, 2}, {0, 0}}));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(FieldMatrix::zero(F5, 3, 4)), 0);
  EXPECT_EQ(rank(FieldMatrix::identity(F5, 4)), 4);
  EXPECT_EQ(rank(FieldMatrix(F3, {{0, 1}, {1, 0}})), 2);
}

TEST(Solve, Examples) {
  const FieldVector b(F5, {3, 1, 4});
  EXPECT_EQ(solve(FieldMatrix::identity(F5, 3), b), b);

  const auto x = solve(FieldMatrix(F3, {{1, 0, 0}, {0, 0, 1}}), FieldVector(F3, {1, 1}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, FieldVector(F3, {1, 0, 1}));

  EXPECT_FALSE(solve(FieldMatrix(F3, {{1}, {2}}), FieldVector(F3, {1, 1})));
  EXPECT_THROW(solve(FieldMatrix::identity(F3, 2), FieldVector(F3, {1, 1, 1})), std::invalid_argument);
}

TEST(Independence, Examples) {
  const std::vector<FieldVector> basis{FieldVector::unit(F3, 2, 0), FieldVector::unit(F3, 2, 1)};
  EXPECT_TRUE(is_independent(basis));

  const FieldVector v(F3, {1, 2, 0});
  const std::vector<FieldVector> multiple{v, scale(2, v)};
  EXPECT_FALSE(is_independent(multiple));

  const std::vector<FieldVector> triple{FieldVector(F3, {1, 2, 1}), FieldVector(F3, {1, 0, 0}),
                                        FieldVector(F3, {0, 0, 1})};
  // (1,2,1) - (1,0,0) - (0,0,1) = (0,2,0) != 0; enumeration of all 26 nonzero combinations agrees.
  ASSERT_FALSE(dependent_by_enumeration(triple));
  EXPECT_TRUE(is_independent(triple));

  const std::vector<FieldVector> with_zero{FieldVector::unit(F3, 3, 0), FieldVector::zero(F3, 3)};
  EXPECT_FALSE(is_independent(with_zero));
  const std::vector<FieldVector> duplicate{v, v};
  EXPECT_FALSE(is_independent(duplicate));
}

TEST(Independence, AgreesWithEnumerationOracle) {
  Rng rng(11);
  std::uniform_int_distribution<Index> count(1, 4), dim(1, 4);
  for (int t = 0; t < 1000; ++t) {
    const Index n = dim(rng);
    std::vector<FieldVector> vs;
    for (Index i = 0, c = count(rng); i < c; ++i) vs.push_back(random_vec(F3, n, rng));
    EXPECT_EQ(is_independent(vs), !dependent_by_enumeration(vs));
  }
}

TEST(OrthogonalComplement, Examples) {
  EXPECT_EQ(orthogonal_complement(Subspace::zero(F3, 3)), Subspace::full(F3, 3));
  EXPECT_EQ(orthogonal_complement(Subspace::full(F3, 3)), Subspace::zero(F3, 3));
  const std::vector<FieldVector> w{FieldVector(F3, {1, 1})};
  const std::vector<FieldVector> expected{FieldVector(F3, {1, 2})};
  EXPECT_EQ(orthogonal_complement(Subspace::span(F3, 2, w)), Subspace::span(F3, 2, expected));
}

TEST(Enumeration, LexicographicOrder) {
  std::vector<FieldVector> seen;
  for (const auto& v : enumerate_vectors(F3, 1)) seen.push_back(v);
  ASSERT_EQ(seen.size(), 3u);
  for (Residue r = 0; r < 3; ++r) EXPECT_EQ(seen[static_cast<std::size_t>(r)], FieldVector(F3, {r}));

  EXPECT_EQ(enumerate_vectors(F3, 2).size(), 9u);
  std::size_t count = 0;
  for (const auto& v : enumerate_vectors(F3, 2)) {
    EXPECT_EQ(encode_index(v), count);
    EXPECT_EQ(decode_index(F3, 2, count), v);
    ++count;
  }
  EXPECT_EQ(count, 9u);

  seen.clear();
  for (const auto& v : enumerate_vectors(F5, 3)) seen.push_back(v);
  ASSERT_EQ(seen.size(), 125u);
  EXPECT_EQ(seen.front(), FieldVector::zero(F5, 3));
  EXPECT_EQ(seen.back(), FieldVector(F5, {4, 4, 4}));
}

TEST(Enumeration, BudgetGuard) {
  EXPECT_THROW(enumerate_vectors(F3, 5, EnumerationBudget{100}), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_vectors(F3, 4, EnumerationBudget{81}));
  EXPECT_THROW(enumerate_vectors(F3, 200), BudgetExceeded);
}

TEST(Properties, SolveReproducesRightHandSide) {
  Rng rng(1);
  std::uniform_int_distribution<Index> dim(1, 8);
  for (int t = 0; t < 1000; ++t) {
    const PrimeField f = t % 2 ? F3 : F5;
    const auto a = random_matrix(f, dim(rng), dim(rng), rng);
    const auto b = multiply(a, random_vec(f, a.cols(), rng));
    const auto x = solve(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(multiply(a, *x), b);
  }
}

TEST(Properties, RankOfTransposeMatches) {
  Rng rng(2);
  std::uniform_int_distribution<Index> dim(1, 8);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_matrix(t % 2 ? F3 : F5, dim(rng), dim(rng), rng);
    EXPECT_EQ(rank(a), rank(transpose(a)));
  }
}

// Number of k-dimensional subspaces of F_q^m.
std::uint64_t gaussian_binomial(std::uint64_t q, std::uint64_t m, std::uint64_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= (*checked_pow(q, m - i) - 1);
    den *= (*checked_pow(q, i + 1) - 1);
  }
  return num / den;
}

TEST(Properties, ComplementDimensionsExhaustive) {
  for (Index m = 1; m <= 4; ++m) {
    for (Index k = 0; k <= m; ++k) {
      std::uint64_t visited = 0;
      std::set<std::vector<Residue>> distinct;
      for_each_subspace(F3, m, k, [&](const Subspace& w) {
        ++visited;
        const auto& b = w.basis().entries();
        distinct.insert(std::vector<Residue>(b.data(), b.data() + b.size()));
        EXPECT_EQ(w.dimension(), k);
        const auto perp = orthogonal_complement(w);
        EXPECT_EQ(w.dimension() + perp.dimension(), m);
        EXPECT_EQ(orthogonal_complement(perp), w);
        for (const auto& u : w.basis_vectors())
          for (const auto& v : perp.basis_vectors()) EXPECT_EQ(dot(u, v), 0);
      });
      EXPECT_EQ(visited, gaussian_binomial(3, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)));
      EXPECT_EQ(distinct.size(), visited);
    }
  }
}

TEST(Properties, SubspaceRepresentationIsCanonical) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const PrimeField f = t % 2 ? F3 : F5;
    std::vector<FieldVector> spanning;
    for (int i = 0; i < 3; ++i) spanning.push_back(random_vec(f, 5, rng));
    // Random combinations plus the originals span the same space.
    std::vector<FieldVector> other;
    for (int i = 0; i < 4; ++i) {
      auto v = FieldVector::zero(f, 5);
      for (const auto& s : spanning) v = v + scale(random_vec(f, 1, rng)[0], s);
      other.push_back(v);
    }
    for (auto it = spanning.rbegin(); it != spanning.rend(); ++it) other.push_back(scale(2, *it));
    EXPECT_EQ(Subspace::span(f, 5, spanning), Subspace::span(f, 5, other));
  }
}

TEST(Subspace, Contains) {
  const std::vector<FieldVector> w{FieldVector(F5, {1, 2, 0}), FieldVector(F5, {0, 1, 1})};
  const auto s = Subspace::span(F5, 3, w);
  EXPECT_TRUE(s.contains(FieldVector(F5, {1, 3, 1})));
  EXPECT_FALSE(s.contains(FieldVector(F5, {0, 0, 1})));
  EXPECT_TRUE(s.contains(FieldVector::zero(F5, 3)));
}

}  // namespace
}  // namespace randap
