#include "maxdet/hadamard.hpp"
#include "maxdet/registry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace maxdet;

namespace {

std::vector<long> known_list(long top, std::vector<long> skip)
{
  std::vector<long> v = {1, 2};
  for (long o = 4; o <= top; o += 4)
    if (std::find(skip.begin(), skip.end(), o) == skip.end()) v.push_back(o);
  return v;
}

}  // namespace

TEST(Registry, SmallClosure)
{
  const OrderRegistry r = build_registry(16);
  for (long o : {1L, 2L, 4L, 8L, 12L, 16L}) EXPECT_TRUE(r.contains(o)) << o;
  EXPECT_FALSE(r.contains(6));
  EXPECT_FALSE(r.contains(10));
}

TEST(Registry, FirstMissingConstructiveOrderIs92)
{
  const OrderRegistry r = build_registry(100);
  EXPECT_FALSE(r.contains(92));
  for (long o = 4; o < 92; o += 4) EXPECT_TRUE(r.contains(o)) << o;
  EXPECT_EQ(first_missing_multiple_of_four(r, 100), 92);
}

TEST(Registry, ImportedOrders)
{
  const OrderRegistry r = build_registry(100, {92});
  ASSERT_TRUE(r.contains(92));
  EXPECT_EQ(r.provenance(92).kind, Provenance::Kind::imported);
  EXPECT_EQ(r.describe(92), "imported");
  EXPECT_FALSE(r.constructible(92));
  EXPECT_THROW(r.materialize(92), std::invalid_argument);
  try {
    r.materialize(92);
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("imported order has no construction"), std::string::npos);
  }
  EXPECT_THROW(build_registry(100, {90}), std::invalid_argument);
}

TEST(Registry, ImportDoesNotOverrideConstruction)
{
  const OrderRegistry r = build_registry(100, {12});
  EXPECT_TRUE(r.constructible(12));
}

TEST(Registry, MaterializeEveryConstructibleOrder)
{
  const OrderRegistry r = build_registry(200);
  for (long o : r.orders()) {
    const HadamardMatrix m = r.materialize(o);
    EXPECT_EQ(m.order(), o);
    EXPECT_TRUE(is_hadamard(m.matrix())) << o << " " << r.describe(o);
    EXPECT_EQ(m.provenance(), r.describe(o));
  }
}

TEST(Registry, ProvenanceChains)
{
  const OrderRegistry r = build_registry(700);
  EXPECT_EQ(r.describe(4), "paley1(q=3)");
  EXPECT_EQ(r.describe(2), "sylvester(base(1))");
  EXPECT_EQ(r.describe(664), "sylvester(paley1(q=331))");
  EXPECT_FALSE(r.contains(668));
}

TEST(Registry, MonotoneInLimitAndImports)
{
  const OrderRegistry small = build_registry(300);
  const OrderRegistry big = build_registry(600);
  const OrderRegistry more = build_registry(600, {92, 116});
  for (long o : small.orders()) EXPECT_TRUE(big.contains(o)) << o;
  for (long o : big.orders()) EXPECT_TRUE(more.contains(o)) << o;
  EXPECT_TRUE(more.contains(92));
}

TEST(Registry, ReadOrderList)
{
  std::istringstream in("# comment\n1\n2\n\n4  # trailing\n8\n");
  EXPECT_EQ(read_order_list(in), (std::vector<long>{1, 2, 4, 8}));
  std::istringstream bad("4\nfour\n");
  EXPECT_THROW(read_order_list(bad), std::runtime_error);
}

TEST(Decompose, PublishedCases)
{
  const OrderRegistry r = build_registry(1000, known_list(1000, {668, 716, 892}));
  EXPECT_EQ(decompose(668, r).h, 664);
  EXPECT_EQ(decompose(668, r).d, 4);
  EXPECT_EQ(decompose(671, r).h, 664);
  EXPECT_EQ(decompose(671, r).d, 7);
  EXPECT_EQ(decompose(999, r).h, 996);
  EXPECT_EQ(decompose(999, r).d, 3);
  EXPECT_EQ(decompose(4, r).h, 4);
  EXPECT_EQ(decompose(4, r).d, 0);
  EXPECT_THROW(decompose(1001, r), std::invalid_argument);
}

TEST(GapFunction, Examples)
{
  const OrderRegistry r = build_registry(64);
  EXPECT_EQ(gap_function(0.5, r), 0);
  EXPECT_EQ(gap_function(10, r), 4);
  const OrderRegistry known = build_registry(1000, known_list(1000, {668, 716, 892}));
  EXPECT_EQ(gap_function(100, known), 4);
  EXPECT_EQ(gap_function(664, known), 8);
  EXPECT_THROW(gap_function(1000, known), std::invalid_argument);
}

TEST(GapFunction, WidestGapWithinLimit)
{
  const OrderRegistry r = build_registry(16);
  const GapInterval g = widest_gap_within(r, 4);
  EXPECT_EQ(g.lo, 2);
  EXPECT_EQ(g.hi, 4);
  const OrderRegistry known = build_registry(1000, known_list(1000, {668, 716, 892}));
  const GapInterval k = widest_gap_within(known, 668);
  EXPECT_EQ(k.hi - k.lo, 4);
}

TEST(GapBound, Values)
{
  EXPECT_NEAR(gap_bound(0.2, 12.8, 1e6), 855786.0257426223, 1e-9 * 855786.0);
  EXPECT_NEAR(gap_bound(2.0 / 3.0, 16.0 / 3.0, 4096), 12 * std::pow(2.0, 16.0 / 3.0) * std::pow(4096.0, 0.4), 1e-9);
  EXPECT_NEAR(gap_bound(0.2, 12.8, 1.0), 12 * std::pow(2.0, 12.8), 1e-9);
}

TEST(DistinctConstructions, AtLeastTwoPerOrder)
{
  for (long h : {4L, 8L, 12L, 20L}) {
    const auto ms = distinct_constructions(h);
    ASSERT_GE(ms.size(), 2u) << h;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      EXPECT_TRUE(is_hadamard(ms[i].matrix()));
      for (std::size_t j = i + 1; j < ms.size(); ++j) EXPECT_NE(ms[i].matrix(), ms[j].matrix());
    }
  }
}
