#include "mbqc/angle.hpp"

#include <gtest/gtest.h>

namespace mbqc {
namespace {

TEST(Angle, NormalizesToLowestTermsInHalfOpenInterval) {
  EXPECT_EQ(Angle(3, 9), Angle(1, 3));
  EXPECT_EQ(Angle(3, 2), Angle(-1, 2));
  EXPECT_EQ(Angle(-3, 2), Angle(1, 2));
  EXPECT_EQ(Angle(2, 2), Angle(1, 1));
  EXPECT_EQ(Angle(-1, 1), Angle(1, 1));
  EXPECT_EQ(Angle(0, 5), Angle());
  EXPECT_EQ(Angle(5, -3), Angle(1, 3));
  EXPECT_EQ(Angle(22, 4), Angle(-1, 2));

  EXPECT_EQ(Angle(5, 9).num(), 5);
  EXPECT_EQ(Angle(5, 9).den(), 9);
  EXPECT_EQ(Angle(-1, 2).num(), -1);
  EXPECT_EQ(Angle(-1, 2).den(), 2);
}

TEST(Angle, RejectsZeroDenominator) {
  EXPECT_THROW(Angle(1, 0), std::invalid_argument);
}

TEST(Angle, Parse) {
  EXPECT_EQ(Angle::parse("1/3"), Angle(1, 3));
  EXPECT_EQ(Angle::parse("-1/2"), Angle(-1, 2));
  EXPECT_EQ(Angle::parse("0"), Angle());
  EXPECT_EQ(Angle::parse("1"), Angle(1, 1));
  EXPECT_EQ(Angle::parse("-1"), Angle(1, 1));
  EXPECT_EQ(Angle::parse("5/9"), Angle(5, 9));
  EXPECT_EQ(Angle::parse("3/9"), Angle(1, 3));
  EXPECT_EQ(Angle::parse("7/2"), Angle(-1, 2));

  EXPECT_FALSE(Angle::parse(""));
  EXPECT_FALSE(Angle::parse("x"));
  EXPECT_FALSE(Angle::parse("1/"));
  EXPECT_FALSE(Angle::parse("1/0"));
  EXPECT_FALSE(Angle::parse("1.5"));
  EXPECT_FALSE(Angle::parse("1 /2"));
  EXPECT_FALSE(Angle::parse("/2"));
}

TEST(Angle, PauliAxes) {
  EXPECT_TRUE(Angle(0, 1).is_pauli_x());
  EXPECT_FALSE(Angle(0, 1).is_pauli_y());

  EXPECT_TRUE(Angle(1, 2).is_pauli_y());
  EXPECT_TRUE(Angle(-1, 2).is_pauli_y());
  EXPECT_FALSE(Angle(1, 2).is_pauli_x());

  EXPECT_FALSE(Angle(1, 1).is_pauli_x());
  EXPECT_FALSE(Angle(1, 1).is_pauli_y());
  EXPECT_FALSE(Angle(1, 4).is_pauli_x());
  EXPECT_FALSE(Angle(1, 4).is_pauli_y());
}

TEST(Angle, OutcomeAdjustment) {
  const Angle a(1, 4);
  EXPECT_EQ(a.adjusted(false, false), Angle(1, 4));
  EXPECT_EQ(a.adjusted(true, false), Angle(-1, 4));
  EXPECT_EQ(a.adjusted(false, true), Angle(-3, 4));
  EXPECT_EQ(a.adjusted(true, true), Angle(3, 4));

  EXPECT_EQ(Angle(1, 2).adjusted(true, true), Angle(1, 2));
  EXPECT_EQ(Angle().adjusted(true, false), Angle());
  EXPECT_EQ(Angle().adjusted(false, true), Angle(1, 1));
}

TEST(Angle, ToString) {
  EXPECT_EQ(Angle(1, 3).to_string(), "1/3");
  EXPECT_EQ(Angle(5, 9).to_string(), "5/9");
  EXPECT_EQ(Angle(-1, 2).to_string(), "-1/2");
  EXPECT_EQ(Angle().to_string(), "0");
  EXPECT_EQ(Angle(1, 1).to_string(), "1");
  EXPECT_EQ(Angle(-1, 1).to_string(), "1");
}

TEST(Angle, Radians) {
  EXPECT_DOUBLE_EQ(Angle(1, 2).radians(), kPi / 2);
  EXPECT_DOUBLE_EQ(Angle(-1, 2).radians(), -kPi / 2);
  EXPECT_DOUBLE_EQ(Angle().radians(), 0.0);
  EXPECT_DOUBLE_EQ(Angle(1, 1).radians(), kPi);
}

}  // namespace
}  // namespace mbqc
