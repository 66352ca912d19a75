#pragma once

#include <cstdint>

#include "twinlab/frame.hpp"
#include "twinlab/rng.hpp"

namespace twinlab {

// Far-field photon-pair source. The beam cross section is tiled into square
// coherence cells of side coherence_fwhm pixels. Each cell's pair count is a
// sum of temporal_modes independent Bose-Einstein draws of mean mu (a negative
// binomial), and each pair places its signal photon uniformly inside the cell
// and its idler photon uniformly inside the point-reflected cell shifted by
// center_offset. Photon positions of a pair are independent within the cell,
// which makes the pair displacement distribution the triangle autocorrelation
// of the cell: the correlation dip has FWHM = coherence_fwhm by construction,
// and detection areas that contain whole cells collect perfectly paired
// fluxes.
struct SourceConfig {
    std::uint32_t grid_width = 160;
    std::uint32_t grid_height = 160;
    double pixel_pitch_um = 20.0;
    double mu = 1.0;                 // mean photons per mode
    std::uint32_t temporal_modes = 1;
    double coherence_fwhm = 8.0;     // cell side and dip FWHM, pixels
    Displacement center_offset;      // true symmetry-center offset, pixels
};

struct DetectorConfig {
    double eta = 1.0;              // mean quantum efficiency
    double eta_sigma = 0.0;        // relative std of the frozen efficiency field
    double read_noise = 0.0;       // gaussian sigma per pixel, or per superpixel
                                   // when acquisition binning is hardware
    double background_mean = 0.0;  // diffuse-light photoelectrons per pixel
    BinMode bin;                   // acquisition binning
};

struct ShotTruth {
    std::uint64_t seed = 0;
    std::uint64_t pair_count = 0;     // pairs generated inside the grid
    Displacement center_offset;       // offset the shot was generated with
    std::uint64_t idler_dropped = 0;  // idler photons that left the grid
};

struct ShotPair {
    Frame signal;
    Frame idler;
    ShotTruth truth;
};

// Per-pixel transmission in [0,1] over the signal half, same grid as the
// source. Applied as an extra per-photon thinning before detection.
using ObjectMask = Frame;

void validate_source(const SourceConfig& src);
void validate_object_mask(const ObjectMask& mask, const SourceConfig& src);

// Detector state shared by every shot of a campaign: the per-pixel quantum
// efficiency fields of the two halves, frozen from seeds derived off the
// campaign root so that reruns and re-simulated single shots agree.
class DetectorModel {
public:
    DetectorModel(const SourceConfig& src, const DetectorConfig& det,
                  std::uint64_t root_seed);

    const SourceConfig& source() const { return src_; }
    const DetectorConfig& config() const { return det_; }

    float eta_signal(std::size_t pixel) const { return eta_s_[pixel]; }
    float eta_idler(std::size_t pixel) const { return eta_i_[pixel]; }

private:
    SourceConfig src_;
    DetectorConfig det_;
    std::vector<float> eta_s_;
    std::vector<float> eta_i_;
};

// One twin-beam shot: pair generation, optional object thinning on the signal
// arm, per-pixel detection, diffuse background, acquisition binning and read
// noise. Identical seeds produce bit-identical results.
ShotPair simulate_twin_pair(const DetectorModel& model, std::uint64_t shot_seed,
                            const ObjectMask* mask = nullptr);

// Shot-noise control: two independent Poisson frames whose pre-detection mean
// per pixel is mean_per_pixel, pushed through the same detector pipeline.
ShotPair simulate_coherent_pair(const DetectorModel& model,
                                double mean_per_pixel, std::uint64_t shot_seed,
                                const ObjectMask* mask = nullptr);

// Pump-blocked acquisition of one detector half (arm 0 = signal, 1 = idler):
// background and read noise only.
Frame simulate_background_frame(const DetectorModel& model,
                                std::uint64_t shot_seed, int arm);

// Far-field mapping x = (lambda f / 2 pi) q, in micrometers on the detector.
double far_field_position_um(double q_rad_per_um, double lambda_nm,
                             double focal_mm);

// Order-of-magnitude transverse coherence length lambda f / w_p, in pixels.
double coherence_fwhm_from_geometry(double lambda_nm, double focal_mm,
                                    double pump_waist_mm, double pitch_um);

}  // namespace twinlab
