#pragma once

#include <cstddef>

#include "twinlab/frame.hpp"

namespace twinlab {

// Population statistics over a pixel region (divide-by-n variance).
struct RegionStats {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t n = 0;
};

RegionStats region_stats(const Frame& frame, const Region& region);
RegionStats region_stats(const Frame& frame);

// variance / mean. Throws for an exactly zero mean.
double fano(const RegionStats& stats);

// A background-corrected ratio keeps its value even when statistical
// fluctuations push the numerator negative; the flag reports that so callers
// can annotate instead of silently clipping.
struct Corrected {
    double value = 0.0;
    bool negative_numerator = false;
};

// Removes background variance and mean from a difference-variance ratio:
// (var_diff - Var_bg_s - Var_bg_i) / (mean_sum - M_bg_s - M_bg_i).
Corrected sigma_corrected(double var_diff, double mean_sum,
                          const RegionStats& bg_signal,
                          const RegionStats& bg_idler);

// Same correction for a single-arm Fano factor.
Corrected fano_corrected(const RegionStats& raw, const RegionStats& bg);

}  // namespace twinlab
