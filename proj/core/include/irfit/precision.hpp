#pragma once

#include <cstdint>

namespace irfit {

/// An element of the set of admissible evaluation settings together with its
/// accuracy score. Smaller accuracy means a more precise evaluation; zero is
/// exact. The meaning of `id` belongs to the problem (for the dam model it is
/// the SPG iteration budget).
struct PrecisionToken {
  std::int64_t id = 0;
  double accuracy = 0.0;

  friend bool operator==(const PrecisionToken&, const PrecisionToken&) = default;
};

}  // namespace irfit
