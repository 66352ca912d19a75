#include "twinlab/sigma_map.hpp"

#include <cmath>
#include <limits>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

void check_same_shape(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height)
        throw Error(ErrorCategory::domain,
                    "signal and idler frames must share dimensions");
}

}  // namespace

DiffStats difference_stats(const Frame& signal, const Frame& idler,
                           const Region& region, std::int64_t dx,
                           std::int64_t dy) {
    check_same_shape(signal, idler);
    validate_region(signal, region);
    const std::int64_t w = signal.width;
    const std::int64_t h = signal.height;
    const std::int64_t x0 = region.x0;
    const std::int64_t y0 = region.y0;
    const std::int64_t rw = region.width;
    const std::int64_t rh = region.height;
    if (dx > x0 || dx < x0 + rw - w || dy > y0 || dy < y0 + rh - h)
        throw Error(ErrorCategory::domain,
                    "displacement reaches outside the idler frame");

    DiffStats out;
    out.n = region.area();
    double sum_d = 0.0;
    double sum_s = 0.0;
    for (std::int64_t y = y0; y < y0 + rh; ++y) {
        const auto py = static_cast<std::uint32_t>(h - 1 - y + dy);
        for (std::int64_t x = x0; x < x0 + rw; ++x) {
            const double s = signal.at(static_cast<std::uint32_t>(x),
                                       static_cast<std::uint32_t>(y));
            const double i =
                idler.at(static_cast<std::uint32_t>(w - 1 - x + dx), py);
            sum_d += s - i;
            sum_s += s + i;
        }
    }
    const auto n = static_cast<double>(out.n);
    const double mean_d = sum_d / n;
    out.mean_sum = sum_s / n;
    double ss = 0.0;
    for (std::int64_t y = y0; y < y0 + rh; ++y) {
        const auto py = static_cast<std::uint32_t>(h - 1 - y + dy);
        for (std::int64_t x = x0; x < x0 + rw; ++x) {
            const double s = signal.at(static_cast<std::uint32_t>(x),
                                       static_cast<std::uint32_t>(y));
            const double i =
                idler.at(static_cast<std::uint32_t>(w - 1 - x + dx), py);
            const double d = (s - i) - mean_d;
            ss += d * d;
        }
    }
    out.var_diff = ss / n;
    return out;
}

double sigma_from(const DiffStats& stats) {
    if (!(stats.mean_sum > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return stats.var_diff / stats.mean_sum;
}

double CorrelationMap::at(std::int64_t dx, std::int64_t dy) const {
    const auto r = static_cast<std::int64_t>(radius);
    if (dx < -r || dx > r || dy < -r || dy > r)
        throw Error(ErrorCategory::domain, "displacement outside the map");
    return sigma[static_cast<std::size_t>((dy + r) * side() + (dx + r))];
}

double& CorrelationMap::at(std::int64_t dx, std::int64_t dy) {
    const auto r = static_cast<std::int64_t>(radius);
    if (dx < -r || dx > r || dy < -r || dy > r)
        throw Error(ErrorCategory::domain, "displacement outside the map");
    return sigma[static_cast<std::size_t>((dy + r) * side() + (dx + r))];
}

namespace {

CorrelationMap build_map(const Frame& signal, const Frame& idler,
                         const MapParams& params, bool parallel) {
    check_same_shape(signal, idler);
    Frame s = signal;
    Frame i = idler;
    if (params.analysis_bin > 1) {
        const BinMode mode{params.analysis_bin, BinKind::software, false};
        s = bin_frame(signal, mode);
        i = bin_frame(idler, mode);
    }
    validate_region(s, params.region);
    const std::int64_t w = params.window;
    if (static_cast<std::int64_t>(params.region.x0) < w ||
        static_cast<std::int64_t>(params.region.y0) < w ||
        params.region.x0 + params.region.width + w > s.width ||
        params.region.y0 + params.region.height + w > s.height)
        throw Error(ErrorCategory::domain,
                    "displacement window reaches outside the idler frame");

    CorrelationMap map;
    map.radius = params.window;
    const std::int64_t side = map.side();
    map.sigma.assign(static_cast<std::size_t>(side * side), 0.0);
    auto entry = [&](std::int64_t k) {
        const std::int64_t dy = k / side - w;
        const std::int64_t dx = k % side - w;
        map.sigma[static_cast<std::size_t>(k)] =
            sigma_from(difference_stats(s, i, params.region, dx, dy));
    };
    const std::int64_t total = side * side;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < total; ++k) entry(k);
    } else {
        for (std::int64_t k = 0; k < total; ++k) entry(k);
    }
    return map;
}

}  // namespace

CorrelationMap sigma_map(const Frame& signal, const Frame& idler,
                         const MapParams& params) {
    return build_map(signal, idler, params, true);
}

CorrelationMap sigma_map_serial(const Frame& signal, const Frame& idler,
                                const MapParams& params) {
    return build_map(signal, idler, params, false);
}

CorrelationMap average_maps(const std::vector<CorrelationMap>& maps) {
    if (maps.empty())
        throw Error(ErrorCategory::domain, "cannot average zero maps");
    CorrelationMap out = maps.front();
    for (std::size_t m = 1; m < maps.size(); ++m) {
        if (maps[m].radius != out.radius)
            throw Error(ErrorCategory::domain,
                        "cannot average maps of different radius");
        for (std::size_t k = 0; k < out.sigma.size(); ++k)
            out.sigma[k] += maps[m].sigma[k];
    }
    for (auto& v : out.sigma) v /= static_cast<double>(maps.size());
    return out;
}

double sigma_at_subpixel(const Frame& signal, const Frame& idler,
                         const Region& region, double dx, double dy) {
    check_same_shape(signal, idler);
    validate_region(signal, region);
    if (signal.width < 2 || signal.height < 2)
        throw Error(ErrorCategory::domain,
                    "subpixel sampling needs at least a 2x2 frame");
    const std::int64_t w = signal.width;
    const std::int64_t h = signal.height;
    const double px_min = w - static_cast<double>(region.x0 + region.width) + dx;
    const double px_max = w - 1.0 - region.x0 + dx;
    const double py_min = h - static_cast<double>(region.y0 + region.height) + dy;
    const double py_max = h - 1.0 - region.y0 + dy;
    if (px_min < 0.0 || px_max > w - 1.0 || py_min < 0.0 || py_max > h - 1.0)
        throw Error(ErrorCategory::domain,
                    "displacement reaches outside the idler frame");

    auto sample = [&](double x, double y) {
        auto ix = static_cast<std::int64_t>(x);
        auto iy = static_cast<std::int64_t>(y);
        if (ix > w - 2) ix = w - 2;
        if (iy > h - 2) iy = h - 2;
        const double fx = x - static_cast<double>(ix);
        const double fy = y - static_cast<double>(iy);
        const auto ux = static_cast<std::uint32_t>(ix);
        const auto uy = static_cast<std::uint32_t>(iy);
        const double v00 = idler.at(ux, uy);
        const double v10 = idler.at(ux + 1, uy);
        const double v01 = idler.at(ux, uy + 1);
        const double v11 = idler.at(ux + 1, uy + 1);
        return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
               fy * ((1.0 - fx) * v01 + fx * v11);
    };

    DiffStats out;
    out.n = region.area();
    double sum_d = 0.0;
    double sum_s = 0.0;
    std::vector<double> diffs;
    diffs.reserve(out.n);
    for (std::uint32_t y = region.y0; y < region.y0 + region.height; ++y)
        for (std::uint32_t x = region.x0; x < region.x0 + region.width; ++x) {
            const double s = signal.at(x, y);
            const double i = sample(w - 1.0 - x + dx, h - 1.0 - y + dy);
            diffs.push_back(s - i);
            sum_d += s - i;
            sum_s += s + i;
        }
    const auto n = static_cast<double>(out.n);
    const double mean_d = sum_d / n;
    out.mean_sum = sum_s / n;
    double ss = 0.0;
    for (double d : diffs) ss += (d - mean_d) * (d - mean_d);
    out.var_diff = ss / n;
    return sigma_from(out);
}

}  // namespace twinlab
