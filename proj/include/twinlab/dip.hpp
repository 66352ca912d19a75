#pragma once

#include <cstdint>

#include "twinlab/frame.hpp"
#include "twinlab/sigma_map.hpp"

namespace twinlab {

// Shape of the correlation dip of a sigma map.
struct DipResult {
    std::int64_t ix = 0;       // integer displacement of the minimum
    std::int64_t iy = 0;
    Displacement xi;           // refined subpixel displacement
    double sigma_min = 0.0;    // map value at the integer minimum
    double plateau = 0.0;      // far-from-dip sigma level
    double fwhm_x = 0.0;       // half-depth full widths, map pixels
    double fwhm_y = 0.0;
    bool refined = false;          // paraboloid vertex was convex and in range
    bool plateau_from_ring = false;  // window too small to isolate the plateau
    bool fwhm_truncated = false;     // a half-depth crossing left the window
};

// Locates the dip. The minimum must be interior to the map with a finite 3x3
// neighbourhood; the plateau is estimated from entries far from the dip
// (falling back to the border ring on small maps) and the widths come from
// half-depth crossings of the axis sections through the minimum, linearly
// interpolated between entries.
DipResult find_minimum(const CorrelationMap& map);

struct SubpixelResult {
    Displacement offset;   // relative to the integer minimum
    bool refined = false;  // false when the fit was rejected
};

// Least-squares paraboloid over the 3x3 neighbourhood of (ix, iy). Fits that
// are not convex or whose vertex leaves the unit cell are rejected and return
// a zero offset.
SubpixelResult subpixel_center(const CorrelationMap& map, std::int64_t ix,
                               std::int64_t iy);

// Depth-weighted centroid of the 3x3 neighbourhood of (ix, iy), weights
// plateau minus entry. Pairing kernels of a square coherence cell put their
// whole first moment inside that stencil once the analysis bin matches the
// cell, so this refinement is exact in expectation there, and it keeps far
// plateau noise out of the estimate. A stencil with no net weight below the
// plateau, or a centroid outside the unit cell, is rejected like a failed
// paraboloid fit.
SubpixelResult centroid_center(const CorrelationMap& map, std::int64_t ix,
                               std::int64_t iy, double plateau);

}  // namespace twinlab
