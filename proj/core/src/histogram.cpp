#include "diffloc/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diffloc/error.hpp"

namespace diffloc {

double Histogram::bin_width() const {
  return counts.empty() ? 0.0 : (upper - lower) / static_cast<double>(counts.size());
}

double Histogram::bin_lower(std::size_t bin) const { return lower + bin_width() * static_cast<double>(bin); }

double Histogram::bin_upper(std::size_t bin) const {
  return bin + 1 == counts.size() ? upper : lower + bin_width() * static_cast<double>(bin + 1);
}

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::size_t Histogram::occupied() const {
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

Histogram make_histogram(std::span<const double> values, double lower, double upper, std::size_t bins) {
  if (bins == 0) throw InputError("histogram needs at least one bin");
  if (!(upper >= lower)) throw InputError("histogram range is empty");
  Histogram h{lower, upper, std::vector<std::size_t>(bins, 0)};
  const double span = upper - lower;
  for (double v : values) {
    std::size_t bin = 0;
    if (span > 0.0) {
      const double pos = std::floor((v - lower) / span * static_cast<double>(bins));
      bin = pos <= 0.0 ? 0 : std::min(bins - 1, static_cast<std::size_t>(pos));
    }
    ++h.counts[bin];
  }
  return h;
}

}  // namespace diffloc
