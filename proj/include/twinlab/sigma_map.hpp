#pragma once

#include <cstdint>
#include <vector>

#include "twinlab/frame.hpp"

namespace twinlab {

// The paired pixel of signal pixel (x, y) under point reflection about the
// frame center, displaced by integers (dx, dy), is
//   (width - 1 - x + dx, height - 1 - y + dy).
// Displacement (0, 0) is the nominal twin geometry.

struct DiffStats {
    double var_diff = 0.0;  // population variance of N_s(x) - N_i(paired x)
    double mean_sum = 0.0;  // mean of N_s(x) + N_i(paired x)
    std::size_t n = 0;
};

// Spatial statistics of the pixel-wise difference between a signal region and
// its reflected, displaced idler partner region. The difference mean is
// subtracted per displacement.
DiffStats difference_stats(const Frame& signal, const Frame& idler,
                           const Region& region, std::int64_t dx,
                           std::int64_t dy);

// var_diff / mean_sum; NaN when the region holds no flux.
double sigma_from(const DiffStats& stats);

// Square map of sigma over displacements |dx|, |dy| <= radius,
// row-major with dy slow and dx fast.
struct CorrelationMap {
    std::uint32_t radius = 0;
    std::vector<double> sigma;

    std::uint32_t side() const { return 2 * radius + 1; }
    double at(std::int64_t dx, std::int64_t dy) const;
    double& at(std::int64_t dx, std::int64_t dy);
};

struct MapParams {
    Region region;                   // in analysis-binned coordinates
    std::uint32_t window = 2;        // displacement radius, binned pixels
    std::uint32_t analysis_bin = 1;  // software binning applied first
};

// Entries are independent, so the map parallelizes over displacements; each
// entry is written to its own slot and the result is identical at any thread
// count. sigma_map_serial runs the same kernel without threads.
CorrelationMap sigma_map(const Frame& signal, const Frame& idler,
                         const MapParams& params);
CorrelationMap sigma_map_serial(const Frame& signal, const Frame& idler,
                                const MapParams& params);

// Entrywise arithmetic mean of per-shot maps.
CorrelationMap average_maps(const std::vector<CorrelationMap>& maps);

// Diagnostic sigma at a fractional displacement, sampling the idler partner
// by bilinear interpolation. Interpolation averages neighbouring pixels and
// damps the idler shot noise, so off-integer values read slightly low; use
// integer displacements for headline figures.
double sigma_at_subpixel(const Frame& signal, const Frame& idler,
                         const Region& region, double dx, double dy);

}  // namespace twinlab
