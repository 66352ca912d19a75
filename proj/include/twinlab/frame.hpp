#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace twinlab {

// One detector half: a row-major real-valued pixel grid. Origin is the top-left
// pixel, x runs along columns, y along rows. Entries are photoelectron counts,
// real-valued because read noise and corrections make them non-integral.
struct Frame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    double pixel_pitch_um = 20.0;
    std::vector<float> data;

    float& at(std::uint32_t x, std::uint32_t y) {
        return data[std::size_t(y) * width + x];
    }
    float at(std::uint32_t x, std::uint32_t y) const {
        return data[std::size_t(y) * width + x];
    }
    std::size_t size() const { return data.size(); }

    // Total of all entries, accumulated in double.
    double sum() const;

    // True when every entry is a non-negative integer, i.e. the frame is a
    // pure photon-count image with no read noise applied.
    bool integral_counts() const;
};

Frame make_frame(std::uint32_t width, std::uint32_t height,
                 double pixel_pitch_um = 20.0, float fill = 0.0f);

// Rectangular pixel subset, in the coordinates of the frame it is applied to.
struct Region {
    std::uint32_t x0 = 0;
    std::uint32_t y0 = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;

    std::size_t area() const { return std::size_t(width) * height; }
};

// Displacement between a pixel and its point-reflected partner, in pixels of
// the grid the map was evaluated on. Real-valued so sub-pixel results fit.
struct Displacement {
    double dx = 0.0;
    double dy = 0.0;
};

enum class BinKind { software, hardware };

// factor x factor summation into superpixels. "software" models off-line
// binning of an already acquired frame; "hardware" is only meaningful at
// acquisition time, before read noise exists, and is rejected on frames that
// carry non-integral entries.
struct BinMode {
    std::uint32_t factor = 1;
    BinKind kind = BinKind::software;
    bool truncate = false;
};

// Throws Error(domain) when the region is empty or reaches outside the frame.
void validate_region(const Frame& frame, const Region& region);

// Sum-preserving reduction into superpixels. Output pixel pitch is the input
// pitch times the factor. Non-divisible dimensions are an error unless
// mode.truncate is set, in which case the trailing remainder rows/columns are
// dropped.
Frame bin_frame(const Frame& frame, const BinMode& mode);

// Copy of the given rectangle as a standalone frame (pitch preserved).
Frame extract_region(const Frame& frame, const Region& region);

}  // namespace twinlab
