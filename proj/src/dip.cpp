#include "twinlab/dip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

// Mean of the outermost ring of the map, NaN entries skipped.
double border_mean(const CorrelationMap& map) {
    const auto r = static_cast<std::int64_t>(map.radius);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::int64_t dy = -r; dy <= r; ++dy)
        for (std::int64_t dx = -r; dx <= r; ++dx) {
            if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
            const double v = map.at(dx, dy);
            if (std::isfinite(v)) {
                sum += v;
                ++n;
            }
        }
    if (n == 0)
        throw Error(ErrorCategory::domain, "map border holds no finite entries");
    return sum / static_cast<double>(n);
}

// Half-width of the dip on one side of the minimum along one axis: walks
// outward until the section crosses the half level, interpolating linearly
// between the last entry below and the first at or above it.
double half_width(const CorrelationMap& map, std::int64_t ix, std::int64_t iy,
                  int step_x, int step_y, double half, bool& truncated) {
    const auto r = static_cast<std::int64_t>(map.radius);
    double prev = map.at(ix, iy);
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t x = ix + k * step_x;
        const std::int64_t y = iy + k * step_y;
        if (std::abs(x) > r || std::abs(y) > r) {
            truncated = true;
            return static_cast<double>(k - 1);
        }
        const double v = map.at(x, y);
        if (!std::isfinite(v)) {
            truncated = true;
            return static_cast<double>(k - 1);
        }
        if (v >= half) {
            const double t = v > prev ? (half - prev) / (v - prev) : 1.0;
            return static_cast<double>(k - 1) + t;
        }
        prev = v;
    }
}

double fwhm_along(const CorrelationMap& map, std::int64_t ix, std::int64_t iy,
                  bool horizontal, double half, bool& truncated) {
    const int sx = horizontal ? 1 : 0;
    const int sy = horizontal ? 0 : 1;
    return half_width(map, ix, iy, sx, sy, half, truncated) +
           half_width(map, ix, iy, -sx, -sy, half, truncated);
}

}  // namespace

DipResult find_minimum(const CorrelationMap& map) {
    const auto r = static_cast<std::int64_t>(map.radius);
    DipResult out;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::int64_t dy = -r; dy <= r; ++dy)
        for (std::int64_t dx = -r; dx <= r; ++dx) {
            const double v = map.at(dx, dy);
            if (std::isfinite(v) && v < best) {
                best = v;
                out.ix = dx;
                out.iy = dy;
                found = true;
            }
        }
    if (!found)
        throw Error(ErrorCategory::domain, "sigma map holds no finite entries");
    if (std::max(std::abs(out.ix), std::abs(out.iy)) == r)
        throw Error(ErrorCategory::domain,
                    "correlation minimum sits on the map boundary; widen the "
                    "displacement window");
    for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            if (!std::isfinite(map.at(out.ix + dx, out.iy + dy)))
                throw Error(ErrorCategory::domain,
                            "sigma map is not finite around the minimum");
    out.sigma_min = best;

    // Two fixed passes: a provisional plateau from the border ring sets the
    // half level, the widths then define the region far enough from the dip
    // to average a cleaner plateau, and the widths are refit against it.
    double plateau = border_mean(map);
    out.plateau_from_ring = true;
    for (int pass = 0; pass < 2; ++pass) {
        out.fwhm_truncated = false;
        const double half = 0.5 * (plateau + out.sigma_min);
        out.fwhm_x = fwhm_along(map, out.ix, out.iy, true, half,
                                out.fwhm_truncated);
        out.fwhm_y = fwhm_along(map, out.ix, out.iy, false, half,
                                out.fwhm_truncated);
        if (pass == 1) break;
        const auto margin = static_cast<std::int64_t>(
            std::ceil(1.5 * std::max({out.fwhm_x, out.fwhm_y, 2.0})));
        double sum = 0.0;
        std::size_t n = 0;
        for (std::int64_t dy = -r; dy <= r; ++dy)
            for (std::int64_t dx = -r; dx <= r; ++dx) {
                if (std::max(std::abs(dx - out.ix), std::abs(dy - out.iy)) <=
                    margin)
                    continue;
                const double v = map.at(dx, dy);
                if (std::isfinite(v)) {
                    sum += v;
                    ++n;
                }
            }
        if (n == 0) break;  // window too tight, keep the ring estimate
        plateau = sum / static_cast<double>(n);
        out.plateau_from_ring = false;
    }
    out.plateau = plateau;

    const SubpixelResult fit = subpixel_center(map, out.ix, out.iy);
    out.refined = fit.refined;
    out.xi = Displacement{static_cast<double>(out.ix) + fit.offset.dx,
                          static_cast<double>(out.iy) + fit.offset.dy};
    return out;
}

SubpixelResult subpixel_center(const CorrelationMap& map, std::int64_t ix,
                               std::int64_t iy) {
    const auto r = static_cast<std::int64_t>(map.radius);
    if (std::max(std::abs(ix), std::abs(iy)) >= r)
        throw Error(ErrorCategory::domain,
                    "subpixel fit needs an interior 3x3 neighbourhood");
    double b = 0.0, c = 0.0, d = 0.0, e = 0.0, g = 0.0;
    double fmax = 0.0;
    for (int sy = -1; sy <= 1; ++sy)
        for (int sx = -1; sx <= 1; ++sx) {
            const double f = map.at(ix + sx, iy + sy);
            if (!std::isfinite(f))
                throw Error(ErrorCategory::domain,
                            "subpixel fit needs finite neighbours");
            fmax = std::max(fmax, std::abs(f));
            b += f * sx;
            c += f * sy;
            g += f * sx * sy;
            d += f * (sx * sx - 2.0 / 3.0);
            e += f * (sy * sy - 2.0 / 3.0);
        }
    b /= 6.0;
    c /= 6.0;
    g /= 4.0;
    d /= 2.0;
    e /= 2.0;

    // a curvature that is pure rounding residue is no curvature at all
    const double tol = 1e-9 * fmax;
    const double det = 4.0 * d * e - g * g;
    SubpixelResult out;
    if (d <= tol || det <= tol * tol) return out;
    const double vx = (g * c - 2.0 * e * b) / det;
    const double vy = (g * b - 2.0 * d * c) / det;
    if (std::abs(vx) > 1.0 || std::abs(vy) > 1.0) return out;
    out.offset = Displacement{vx, vy};
    out.refined = true;
    return out;
}

SubpixelResult centroid_center(const CorrelationMap& map, std::int64_t ix,
                               std::int64_t iy, double plateau) {
    const auto r = static_cast<std::int64_t>(map.radius);
    if (std::max(std::abs(ix), std::abs(iy)) >= r)
        throw Error(ErrorCategory::domain,
                    "centroid needs an interior 3x3 neighbourhood");
    double wsum = 0.0, xsum = 0.0, ysum = 0.0;
    for (int sy = -1; sy <= 1; ++sy)
        for (int sx = -1; sx <= 1; ++sx) {
            const double v = map.at(ix + sx, iy + sy);
            if (!std::isfinite(v))
                throw Error(ErrorCategory::domain,
                            "centroid needs finite neighbours");
            // weights stay unclipped: noise above the plateau must cancel
            // noise below it or the estimate acquires an inward bias
            const double weight = plateau - v;
            wsum += weight;
            xsum += weight * sx;
            ysum += weight * sy;
        }
    SubpixelResult out;
    if (wsum <= 0.0) return out;
    const double vx = xsum / wsum;
    const double vy = ysum / wsum;
    if (std::abs(vx) > 1.0 || std::abs(vy) > 1.0) return out;
    out.offset = Displacement{vx, vy};
    out.refined = true;
    return out;
}

}  // namespace twinlab
