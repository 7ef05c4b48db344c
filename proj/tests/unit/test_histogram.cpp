#include <gtest/gtest.h>

#include "diffloc/error.hpp"
#include "diffloc/histogram.hpp"

using namespace diffloc;

TEST(Histogram, TwoValuesTwoBins) {
  const std::vector<double> v{1.0, 0.5};
  const Histogram h = make_histogram(v, 0.5, 1.0, 2);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(h.total(), 2u);
}

TEST(Histogram, ZeroWidthRangeUsesFirstBin) {
  const std::vector<double> v{0.3, 0.3, 0.3};
  const Histogram h = make_histogram(v, 0.3, 0.3, 4);
  EXPECT_EQ(h.occupied(), 1u);
  EXPECT_EQ(h.counts[0], 3u);
}

TEST(Histogram, OutOfRangeClamps) {
  const std::vector<double> v{-5.0, 0.1, 0.9, 7.0};
  const Histogram h = make_histogram(v, 0.0, 1.0, 2);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_DOUBLE_EQ(h.bin_width(), 0.5);
  EXPECT_DOUBLE_EQ(h.bin_upper(1), 1.0);
}

TEST(Histogram, ZeroBinsRejected) {
  const std::vector<double> v{1.0};
  EXPECT_THROW(make_histogram(v, 0.0, 1.0, 0), InputError);
}
