#include "twinlab/stats.hpp"

#include "twinlab/error.hpp"

namespace twinlab {

RegionStats region_stats(const Frame& frame, const Region& region) {
    validate_region(frame, region);
    RegionStats out;
    out.n = region.area();
    double sum = 0.0;
    for (std::uint32_t y = region.y0; y < region.y0 + region.height; ++y)
        for (std::uint32_t x = region.x0; x < region.x0 + region.width; ++x)
            sum += frame.at(x, y);
    out.mean = sum / static_cast<double>(out.n);
    double ss = 0.0;
    for (std::uint32_t y = region.y0; y < region.y0 + region.height; ++y)
        for (std::uint32_t x = region.x0; x < region.x0 + region.width; ++x) {
            const double d = frame.at(x, y) - out.mean;
            ss += d * d;
        }
    out.variance = ss / static_cast<double>(out.n);
    return out;
}

RegionStats region_stats(const Frame& frame) {
    return region_stats(frame, Region{0, 0, frame.width, frame.height});
}

double fano(const RegionStats& stats) {
    if (stats.mean == 0.0)
        throw Error(ErrorCategory::domain, "Fano factor undefined at zero mean");
    return stats.variance / stats.mean;
}

Corrected sigma_corrected(double var_diff, double mean_sum,
                          const RegionStats& bg_signal,
                          const RegionStats& bg_idler) {
    const double num = var_diff - bg_signal.variance - bg_idler.variance;
    const double den = mean_sum - bg_signal.mean - bg_idler.mean;
    if (den <= 0.0)
        throw Error(ErrorCategory::domain,
                    "background-corrected photon flux is not positive");
    return {num / den, num < 0.0};
}

Corrected fano_corrected(const RegionStats& raw, const RegionStats& bg) {
    const double num = raw.variance - bg.variance;
    const double den = raw.mean - bg.mean;
    if (den <= 0.0)
        throw Error(ErrorCategory::domain,
                    "background-corrected photon flux is not positive");
    return {num / den, num < 0.0};
}

}  // namespace twinlab
