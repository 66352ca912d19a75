// Twin-beam shot generation. One shot consumes one Rng stream in a fixed
// documented order, so a shot is reproducible from its seed alone no matter
// how many shots run concurrently around it.

#include "twinlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

constexpr std::uint32_t kMaxGridSide = 8192;

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCategory::domain, what);
}

// Diffuse background, then acquisition: hardware binning sums pixels on the
// chip before a single per-superpixel read-noise draw, software binning reads
// every pixel (with its own noise draw) and sums afterwards. Consumption
// order: background raster scan, then read-noise raster scan.
Frame finish_frame(Frame frame, const DetectorConfig& det, Rng& rng) {
    if (det.background_mean > 0.0) {
        for (auto& v : frame.data)
            v += static_cast<float>(rng.poisson(det.background_mean));
    }
    const bool noisy = det.read_noise > 0.0;
    if (det.bin.factor > 1 && det.bin.kind == BinKind::hardware) {
        frame = bin_frame(frame, det.bin);
        if (noisy)
            for (auto& v : frame.data)
                v += static_cast<float>(rng.gaussian(0.0, det.read_noise));
        return frame;
    }
    if (noisy)
        for (auto& v : frame.data)
            v += static_cast<float>(rng.gaussian(0.0, det.read_noise));
    if (det.bin.factor > 1) frame = bin_frame(frame, det.bin);
    return frame;
}

}  // namespace

void validate_source(const SourceConfig& src) {
    require(src.grid_width >= 1 && src.grid_width <= kMaxGridSide &&
                src.grid_height >= 1 && src.grid_height <= kMaxGridSide,
            "grid side must be between 1 and 8192 pixels");
    require(src.pixel_pitch_um > 0.0 && std::isfinite(src.pixel_pitch_um),
            "pixel pitch must be positive");
    require(src.mu >= 0.0 && std::isfinite(src.mu),
            "mean photons per mode must be non-negative");
    require(src.temporal_modes >= 1 && src.temporal_modes <= 1000000,
            "temporal mode count must be between 1 and 1e6");
    const double side = std::min(src.grid_width, src.grid_height);
    require(src.coherence_fwhm >= 0.25 && src.coherence_fwhm <= side,
            "coherence length must be between 0.25 pixels and the grid side");
    require(std::abs(src.center_offset.dx) <= side / 4.0 &&
                std::abs(src.center_offset.dy) <= side / 4.0,
            "center offset must stay within a quarter grid");
}

void validate_object_mask(const ObjectMask& mask, const SourceConfig& src) {
    require(mask.width == src.grid_width && mask.height == src.grid_height,
            "object mask must match the source grid");
    for (float v : mask.data)
        require(v >= 0.0f && v <= 1.0f,
                "object mask values must lie in [0, 1]");
}

DetectorModel::DetectorModel(const SourceConfig& src, const DetectorConfig& det,
                             std::uint64_t root_seed)
    : src_(src), det_(det) {
    validate_source(src);
    require(det.eta >= 0.0 && det.eta <= 1.0,
            "quantum efficiency must lie in [0, 1]");
    require(det.eta_sigma >= 0.0 && det.eta_sigma <= 1.0,
            "efficiency spread must lie in [0, 1]");
    require(det.read_noise >= 0.0 && std::isfinite(det.read_noise),
            "read noise must be non-negative");
    require(det.background_mean >= 0.0 && std::isfinite(det.background_mean),
            "background mean must be non-negative");
    require(det.bin.factor >= 1, "acquisition bin factor must be at least 1");
    if (det.bin.factor > 1 && !det.bin.truncate)
        require(src.grid_width % det.bin.factor == 0 &&
                    src.grid_height % det.bin.factor == 0,
                "acquisition bin factor must divide the grid");

    const std::size_t n =
        std::size_t{src.grid_width} * std::size_t{src.grid_height};
    eta_s_.assign(n, static_cast<float>(det.eta));
    eta_i_.assign(n, static_cast<float>(det.eta));
    if (det.eta_sigma > 0.0) {
        for (int arm = 0; arm < 2; ++arm) {
            Rng rng(derive_seed(root_seed, seed_tag::eta_field,
                                static_cast<std::uint64_t>(arm)));
            auto& field = arm == 0 ? eta_s_ : eta_i_;
            for (auto& v : field) {
                const double e = det.eta * (1.0 + det.eta_sigma * rng.gaussian());
                v = static_cast<float>(std::clamp(e, 0.0, 1.0));
            }
        }
    }
}

// Stream order per shot: cells in raster order, one pair-count draw each,
// then per pair two signal position draws, one signal survival draw, two
// idler position draws and (if the partner stayed on the grid) one idler
// survival draw. After generation the two frames are finished signal first,
// idler second. A pair whose signal draw falls off the grid (the clipped
// part of an edge cell) is discarded after its two position draws.
//
// The two photons of a pair land independently: the signal uniformly in its
// coherence cell, the idler uniformly in the point-reflected cell shifted by
// the center offset. Bins at least a cell wide therefore pair up completely,
// while a bin of side b inside a cell of side c pairs only the fraction
// (b/c)^2, and the correlation dip against displacement is the triangular
// autocorrelation of the cell with a base of two cell widths.
ShotPair simulate_twin_pair(const DetectorModel& model, std::uint64_t shot_seed,
                            const ObjectMask* mask) {
    const SourceConfig& src = model.source();
    const DetectorConfig& det = model.config();
    if (mask) validate_object_mask(*mask, src);

    const std::uint32_t w = src.grid_width;
    const std::uint32_t h = src.grid_height;
    const double c = src.coherence_fwhm;
    const auto cells_x = static_cast<std::uint32_t>(std::ceil(w / c));
    const auto cells_y = static_cast<std::uint32_t>(std::ceil(h / c));

    ShotPair shot{make_frame(w, h, src.pixel_pitch_um),
                  make_frame(w, h, src.pixel_pitch_um),
                  ShotTruth{shot_seed, 0, src.center_offset, 0}};
    Rng rng(shot_seed);
    float* sig = shot.signal.data.data();
    float* idl = shot.idler.data.data();

    for (std::uint32_t ky = 0; ky < cells_y; ++ky) {
        const double y0 = ky * c;
        for (std::uint32_t kx = 0; kx < cells_x; ++kx) {
            const double x0 = kx * c;
            const std::uint64_t pairs = rng.pair_count(src.mu, src.temporal_modes);
            for (std::uint64_t p = 0; p < pairs; ++p) {
                const double sx = x0 + rng.uniform() * c;
                const double sy = y0 + rng.uniform() * c;
                if (sx >= w || sy >= h) continue;  // beyond-edge part of a cell
                ++shot.truth.pair_count;

                const auto px = static_cast<std::uint32_t>(sx);
                const auto py = static_cast<std::uint32_t>(sy);
                const std::size_t si = std::size_t{py} * w + px;
                double keep = model.eta_signal(si);
                if (mask) keep *= mask->data[si];
                if (rng.uniform() < keep) sig[si] += 1.0f;

                const double rx = w - (x0 + rng.uniform() * c) +
                                  src.center_offset.dx;
                const double ry = h - (y0 + rng.uniform() * c) +
                                  src.center_offset.dy;
                if (rx < 0.0 || rx >= w || ry < 0.0 || ry >= h) {
                    ++shot.truth.idler_dropped;
                    continue;
                }
                const auto qx = static_cast<std::uint32_t>(rx);
                const auto qy = static_cast<std::uint32_t>(ry);
                const std::size_t ii = std::size_t{qy} * w + qx;
                if (rng.uniform() < model.eta_idler(ii)) idl[ii] += 1.0f;
            }
        }
    }

    shot.signal = finish_frame(std::move(shot.signal), det, rng);
    shot.idler = finish_frame(std::move(shot.idler), det, rng);
    return shot;
}

ShotPair simulate_coherent_pair(const DetectorModel& model,
                                double mean_per_pixel, std::uint64_t shot_seed,
                                const ObjectMask* mask) {
    const SourceConfig& src = model.source();
    require(mean_per_pixel >= 0.0 && std::isfinite(mean_per_pixel),
            "coherent mean per pixel must be non-negative");
    if (mask) validate_object_mask(*mask, src);

    ShotPair shot{make_frame(src.grid_width, src.grid_height, src.pixel_pitch_um),
                  make_frame(src.grid_width, src.grid_height, src.pixel_pitch_um),
                  ShotTruth{shot_seed, 0, src.center_offset, 0}};
    Rng rng(shot_seed);
    const std::size_t n = shot.signal.size();
    for (std::size_t i = 0; i < n; ++i) {
        double m = mean_per_pixel * model.eta_signal(i);
        if (mask) m *= mask->data[i];
        shot.signal.data[i] = static_cast<float>(rng.poisson(m));
    }
    for (std::size_t i = 0; i < n; ++i)
        shot.idler.data[i] =
            static_cast<float>(rng.poisson(mean_per_pixel * model.eta_idler(i)));

    shot.signal = finish_frame(std::move(shot.signal), model.config(), rng);
    shot.idler = finish_frame(std::move(shot.idler), model.config(), rng);
    return shot;
}

Frame simulate_background_frame(const DetectorModel& model,
                                std::uint64_t shot_seed, int arm) {
    require(arm == 0 || arm == 1, "detector arm must be 0 or 1");
    const SourceConfig& src = model.source();
    Frame frame = make_frame(src.grid_width, src.grid_height, src.pixel_pitch_um);
    Rng rng(derive_seed(shot_seed, seed_tag::background,
                        static_cast<std::uint64_t>(arm)));
    return finish_frame(std::move(frame), model.config(), rng);
}

double far_field_position_um(double q_rad_per_um, double lambda_nm,
                             double focal_mm) {
    require(lambda_nm > 0.0 && focal_mm > 0.0,
            "wavelength and focal length must be positive");
    const double lambda_um = lambda_nm * 1e-3;
    const double focal_um = focal_mm * 1e3;
    return lambda_um * focal_um / (2.0 * std::numbers::pi) * q_rad_per_um;
}

double coherence_fwhm_from_geometry(double lambda_nm, double focal_mm,
                                    double pump_waist_mm, double pitch_um) {
    require(lambda_nm > 0.0 && focal_mm > 0.0 && pump_waist_mm > 0.0 &&
                pitch_um > 0.0,
            "geometry parameters must be positive");
    const double coherence_um = lambda_nm * focal_mm / pump_waist_mm * 1e-3;
    return coherence_um / pitch_um;
}

}  // namespace twinlab
