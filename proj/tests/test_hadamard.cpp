#include "maxdet/finite_field.hpp"
#include "maxdet/hadamard.hpp"
#include "maxdet/linalg.hpp"
#include "maxdet/sign_matrix.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace maxdet;

TEST(SignMatrix, RejectsBadEntriesAndShapes)
{
  SignMatrix m(2, 2);
  EXPECT_THROW(m.set(0, 0, 2), std::invalid_argument);
  EXPECT_THROW(SignMatrix(0, 3), std::invalid_argument);
}

TEST(SignMatrix, TextRoundTrip)
{
  SignMatrix m(2, 3);
  m.set(0, 1, -1);
  m.set(1, 2, -1);
  std::istringstream in(to_text(m));
  EXPECT_EQ(read_sign_matrix(in), m);
  EXPECT_EQ(to_text(m), "2 3\n+-+\n++-\n");
}

TEST(SignMatrix, ZeroEntriesCannotBeWritten)
{
  SignMatrix m(1, 2);
  m.set(0, 0, 0);
  EXPECT_THROW(to_text(m), std::invalid_argument);
}

TEST(SignMatrix, ReaderRejectsMalformedInput)
{
  std::istringstream bad_header("x y\n");
  EXPECT_THROW(read_sign_matrix(bad_header), std::runtime_error);
  std::istringstream short_row("2 2\n++\n+\n");
  EXPECT_THROW(read_sign_matrix(short_row), std::runtime_error);
  std::istringstream bad_char("1 2\n+x\n");
  EXPECT_THROW(read_sign_matrix(bad_char), std::runtime_error);
}

TEST(FiniteField, PrimePowerDetection)
{
  EXPECT_EQ(prime_power(27), (std::pair<long, int>{3, 3}));
  EXPECT_EQ(prime_power(25), (std::pair<long, int>{5, 2}));
  EXPECT_EQ(prime_power(11), (std::pair<long, int>{11, 1}));
  EXPECT_FALSE(prime_power(15));
  EXPECT_FALSE(prime_power(1));
  EXPECT_TRUE(is_prime(331));
  EXPECT_FALSE(is_prime(91));
}

class FieldAxioms : public ::testing::TestWithParam<long> {};

TEST_P(FieldAxioms, BruteForce)
{
  const long q = GetParam();
  const FiniteField f(q);
  for (long a = 0; a < q; ++a) {
    EXPECT_EQ(f.add(a, 0), a);
    EXPECT_EQ(f.mul(a, 1), a);
    EXPECT_EQ(f.sub(a, a), 0);
    long inverses = 0;
    for (long b = 0; b < q; ++b) {
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.add(f.sub(a, b), b), a);
      if (f.mul(a, b) == 1) ++inverses;
      for (long c = 0; c < q; c += 3) EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }
    EXPECT_EQ(inverses, a == 0 ? 0 : 1) << "a = " << a;
  }
  const auto chi = f.quadratic_character();
  long squares = 0;
  for (long x = 1; x < q; ++x) squares += chi[static_cast<std::size_t>(x)] == 1;
  EXPECT_EQ(chi[0], 0);
  EXPECT_EQ(squares, (q - 1) / 2);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms, ::testing::Values(3L, 5L, 7L, 9L, 25L, 27L, 49L));

TEST(Hadamard, ValidatorAcceptsAndRejects)
{
  SignMatrix h2(2, 2);
  h2.set(1, 1, -1);
  EXPECT_TRUE(is_hadamard(h2));
  EXPECT_FALSE(is_hadamard(SignMatrix(2, 2)));
  EXPECT_THROW(HadamardMatrix(SignMatrix(2, 2), "ones"), std::invalid_argument);
}

TEST(Hadamard, SylvesterFromOrderOne)
{
  const HadamardMatrix h2 = sylvester(hadamard_order_one());
  SignMatrix expect(2, 2);
  expect.set(1, 1, -1);
  EXPECT_EQ(h2.matrix(), expect);
  const HadamardMatrix h4 = sylvester(h2);
  EXPECT_EQ(h4.order(), 4);
  EXPECT_TRUE(is_hadamard(h4.matrix()));
  EXPECT_EQ(det_exact(h4.matrix()), 16);
}

TEST(Hadamard, SylvesterOf332Gives664)
{
  const HadamardMatrix core = paley(331);
  ASSERT_EQ(core.order(), 332);
  const HadamardMatrix h = sylvester(core);
  EXPECT_EQ(h.order(), 664);
  EXPECT_TRUE(is_hadamard(h.matrix()));
}

TEST(Hadamard, PaleyOrders)
{
  EXPECT_EQ(paley(3).order(), 4);
  EXPECT_EQ(paley(11).order(), 12);
  EXPECT_EQ(paley(5).order(), 12);
  EXPECT_EQ(paley(27).order(), 28);
  EXPECT_EQ(paley(25).order(), 52);
  EXPECT_EQ(paley(9).order(), 20);
  for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 19L, 25L, 27L, 49L})
    EXPECT_TRUE(is_hadamard(paley(q).matrix())) << q;
  EXPECT_EQ(paley(11).provenance(), "paley1(q=11)");
  EXPECT_EQ(paley(5).provenance(), "paley2(q=5)");
}

TEST(Hadamard, PaleyRejectsBadFieldOrders)
{
  EXPECT_THROW(paley(4), std::invalid_argument);
  EXPECT_THROW(paley(15), std::invalid_argument);
  EXPECT_THROW(paley(1), std::invalid_argument);
}

TEST(Hadamard, KroneckerProducts)
{
  const HadamardMatrix h2 = sylvester(hadamard_order_one());
  EXPECT_EQ(kronecker(h2, h2).order(), 4);
  const HadamardMatrix h48 = kronecker(paley(3), paley(11));
  EXPECT_EQ(h48.order(), 48);
  EXPECT_TRUE(is_hadamard(h48.matrix()));
  const HadamardMatrix h144 = kronecker(paley(11), paley(5));
  EXPECT_EQ(h144.order(), 144);
  EXPECT_TRUE(is_hadamard(h144.matrix()));
}

TEST(Hadamard, NormalizedFirstRowAndColumn)
{
  const SignMatrix m = normalized(paley(7).matrix());
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(m(0, i), 1);
    EXPECT_EQ(m(i, 0), 1);
  }
}

TEST(Hadamard, ScrambledIsDistinctButValid)
{
  const HadamardMatrix a = paley(11);
  const HadamardMatrix b = scrambled(a, 7);
  EXPECT_TRUE(is_hadamard(b.matrix()));
  EXPECT_NE(a.matrix(), b.matrix());
  EXPECT_EQ(scrambled(a, 7).matrix(), b.matrix());
}

TEST(Determinant, SmallCases)
{
  IntMatrix m(2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = -1;
  EXPECT_EQ(det_exact(m), -2);
  EXPECT_EQ(det_exact(IntMatrix(3, BigInt(2))), 0);
}
