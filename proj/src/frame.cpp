#include "twinlab/frame.hpp"

#include <cmath>

#include "twinlab/error.hpp"

namespace twinlab {

double Frame::sum() const {
    double total = 0.0;
    for (float v : data) total += v;
    return total;
}

bool Frame::integral_counts() const {
    for (float v : data) {
        if (!(v >= 0.0f) || std::floor(v) != v) return false;
    }
    return true;
}

Frame make_frame(std::uint32_t width, std::uint32_t height,
                 double pixel_pitch_um, float fill) {
    if (width == 0 || height == 0)
        throw Error(ErrorCategory::domain, "frame dimensions must be positive");
    if (!(pixel_pitch_um > 0.0))
        throw Error(ErrorCategory::domain, "pixel pitch must be positive");
    Frame f;
    f.width = width;
    f.height = height;
    f.pixel_pitch_um = pixel_pitch_um;
    f.data.assign(std::size_t(width) * height, fill);
    return f;
}

void validate_region(const Frame& frame, const Region& region) {
    if (region.width == 0 || region.height == 0)
        throw Error(ErrorCategory::domain, "region is empty");
    if (region.x0 + std::uint64_t(region.width) > frame.width ||
        region.y0 + std::uint64_t(region.height) > frame.height)
        throw Error(ErrorCategory::domain, "region reaches outside the frame");
}

Frame bin_frame(const Frame& frame, const BinMode& mode) {
    if (mode.factor == 0)
        throw Error(ErrorCategory::domain, "bin factor must be >= 1");
    if (mode.kind == BinKind::hardware && !frame.integral_counts())
        throw Error(ErrorCategory::domain,
                    "hardware binning applies to pure photon frames only");
    if (mode.factor == 1) return frame;

    const std::uint32_t f = mode.factor;
    if (!mode.truncate && (frame.width % f != 0 || frame.height % f != 0))
        throw Error(ErrorCategory::domain,
                    "frame dimensions not divisible by bin factor");
    const std::uint32_t ow = frame.width / f;
    const std::uint32_t oh = frame.height / f;
    if (ow == 0 || oh == 0)
        throw Error(ErrorCategory::domain, "bin factor exceeds frame size");

    Frame out = make_frame(ow, oh, frame.pixel_pitch_um * f);
    for (std::uint32_t sy = 0; sy < oh; ++sy) {
        for (std::uint32_t sx = 0; sx < ow; ++sx) {
            double acc = 0.0;
            for (std::uint32_t dy = 0; dy < f; ++dy)
                for (std::uint32_t dx = 0; dx < f; ++dx)
                    acc += frame.at(sx * f + dx, sy * f + dy);
            out.at(sx, sy) = float(acc);
        }
    }
    return out;
}

Frame extract_region(const Frame& frame, const Region& region) {
    validate_region(frame, region);
    Frame out = make_frame(region.width, region.height, frame.pixel_pitch_um);
    for (std::uint32_t y = 0; y < region.height; ++y)
        for (std::uint32_t x = 0; x < region.width; ++x)
            out.at(x, y) = frame.at(region.x0 + x, region.y0 + y);
    return out;
}

}  // namespace twinlab
