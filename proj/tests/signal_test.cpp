#include "mbqc/signal.hpp"

#include <gtest/gtest.h>

#include <map>

namespace mbqc {
namespace {

TEST(Signal, AddTogglesMembership) {
  Signal s;
  EXPECT_TRUE(s.empty());
  s.add(4);
  s.add(8);
  s.add(5);
  EXPECT_EQ(s.terms(), (std::vector<QubitId>{4, 5, 8}));
  s.add(5);
  EXPECT_EQ(s.terms(), (std::vector<QubitId>{4, 8}));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(5));
}

TEST(Signal, AddIsSymmetricDifference) {
  Signal a{1, 2, 3};
  const Signal b{2, 3, 4};
  a.add(b);
  EXPECT_EQ(a, (Signal{1, 4}));

  EXPECT_EQ(signal_add(Signal{1, 2}, Signal{1, 2}), Signal{});
  EXPECT_EQ(signal_add(Signal{}, Signal{7}), Signal{7});
}

TEST(Signal, SubstituteShiftsOnlyWhenPresent) {
  Signal s{1, 5};
  s.substitute(3, Signal{2});
  EXPECT_EQ(s, (Signal{1, 5}));

  s.substitute(5, Signal{2, 4});
  EXPECT_EQ(s, (Signal{1, 2, 4, 5}));

  Signal t{5};
  t.substitute(5, Signal{5, 2});
  EXPECT_EQ(t, Signal{2});
}

TEST(Signal, EvaluateIsParity) {
  const Signal s{1, 2, 3};
  const std::map<QubitId, bool> outcomes{{1, true}, {2, true}, {3, false}};
  EXPECT_FALSE(s.evaluate([&](QubitId q) { return outcomes.at(q); }));
  EXPECT_TRUE(Signal{3}.evaluate([](QubitId) { return true; }));
  EXPECT_FALSE(Signal{}.evaluate([](QubitId) { return true; }));
}

TEST(Signal, RendersDescending) {
  EXPECT_EQ((Signal{4, 5, 8}).to_string(), "s8+s5+s4");
  EXPECT_EQ(Signal{2}.to_string(), "s2");
  EXPECT_EQ(Signal{}.to_string(), "");
}

}  // namespace
}  // namespace mbqc
