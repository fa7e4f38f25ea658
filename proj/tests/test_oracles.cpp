#include <gtest/gtest.h>

#include "oracles.hpp"

TEST(Oracle, AccuracyCountsAgreement) {
  EXPECT_DOUBLE_EQ(oracle::accuracy({1, 0, 1, 1}, {1, 0, 0, 1}), 0.75);
  EXPECT_DOUBLE_EQ(oracle::accuracy({0, 0}, {0, 0}), 1.0);
}

TEST(Oracle, SpeedScoresNormalize) {
  const auto s = oracle::speed_scores({{1, 0, 1.0, 1, 1}, {2, 0, 3.0, 1, 1}, {3, 0, 2.0, 1, 1}});
  EXPECT_DOUBLE_EQ(s[0], 1.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_DOUBLE_EQ(s[2], 0.5);
  EXPECT_DOUBLE_EQ(oracle::speed_scores({{1, 0, 5.0, 1, 1}})[0], 1.0);
}

TEST(Oracle, ArgmaxTieGoesToSmallerIndex) {
  EXPECT_EQ(oracle::argmax({0.5, 0.9, 0.9}, {1, 5, 2}), 2);
  EXPECT_EQ(oracle::argmax({0.1}, {4}), 4);
}

TEST(Oracle, FifoServesInOrderAndDrops) {
  // service 10 ns, room for 2: third simultaneous arrival is dropped
  const auto d = oracle::fifo({0, 0, 0, 25}, 10.0, 2);
  EXPECT_EQ(d[0], 10.0);
  EXPECT_EQ(d[1], 20.0);
  EXPECT_FALSE(d[2].has_value());
  EXPECT_EQ(d[3], 35.0);
}
