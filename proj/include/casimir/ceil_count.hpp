#pragma once

#include <cmath>

namespace casimir {

/// ceil(v) for truncation counts built from length ratios; ratios that are
/// integers up to rounding (5e-6 / 1e-6) do not round up to the next count.
inline int ceil_count(double v) { return static_cast<int>(std::ceil(v * (1.0 - 1e-12))); }

}  // namespace casimir
