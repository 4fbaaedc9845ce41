#pragma once

#include <algorithm>

namespace specseq {

/// Filtration indices are clamped to [0, N]: X_s = ∅ for s <= 0 and
/// X_s = X for s >= N. Every module resolves out-of-range indices here.
inline constexpr int clamp_index(int s, int n_max) noexcept { return s <= 0 ? 0 : std::min(s, n_max); }

}  // namespace specseq
