#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diffloc {

/// Equal-width bins over [lower, upper]. The last bin is closed on the right.
struct Histogram {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::size_t> counts;

  double bin_width() const;
  double bin_lower(std::size_t bin) const;
  double bin_upper(std::size_t bin) const;
  std::size_t total() const;
  /// Number of bins with a nonzero count.
  std::size_t occupied() const;
};

/// Counts `values` into `bins` bins over [lower, upper]; values outside the
/// range are clamped into the end bins. A zero-width range puts everything
/// into the first bin. Throws InputError when bins == 0.
Histogram make_histogram(std::span<const double> values, double lower, double upper, std::size_t bins);

}  // namespace diffloc
