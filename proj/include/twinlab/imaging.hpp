#pragma once

#include <cstdint>
#include <vector>

#include "twinlab/frame.hpp"
#include "twinlab/simulator.hpp"

namespace twinlab {

// Differential transmission imaging on superpixels. The signal arm carries
// the object, the idler arm is free, and the estimate per superpixel is
//   alpha_hat = 1 - (N_idler(paired sp) - N_signal(sp)) / flux,
// where flux is the unobstructed detected flux per superpixel per shot. The
// twin correlation removes most of the shot noise of the subtraction.

// Unobstructed flux per superpixel per shot, averaged over both arms of an
// object-free ensemble.
double calibrate_flux(const std::vector<ShotPair>& reference,
                      std::uint32_t superpixel);

// Idler-side flux of an object-bearing ensemble; usable for calibration
// because the object never touches the idler arm.
double calibrate_flux_from_idler(const std::vector<ShotPair>& shots,
                                 std::uint32_t superpixel);

struct ImageResult {
    Frame alpha;        // estimated transmission per superpixel
    Frame stderr_map;   // standard error of each estimate
    std::size_t shots = 0;
    bool single_shot = false;  // errors from spatial spread, not repetition
};

ImageResult reconstruct(const std::vector<ShotPair>& shots,
                        std::uint32_t superpixel, double flux);

// Single-shot signal-to-noise of the reconstructed object, compared across
// three matched campaigns: twin-beam differential, classical differential
// (two independent coherent beams) and classical direct (one coherent beam,
// no reference subtraction). SNR = mean estimate over object superpixels
// divided by the pooled per-shot standard deviation of the estimate.
struct SnrComparison {
    double snr_twin = 0.0;
    double snr_classical_diff = 0.0;
    double snr_direct = 0.0;
    double sigma_object = 0.0;    // pooled temporal sigma of the twin data
    double fano_classical = 0.0;  // same pooling on the classical difference
    double alpha_mean = 0.0;      // mean reconstructed transmission
    std::size_t shots = 0;
    std::size_t object_superpixels = 0;
};

SnrComparison snr_compare(const std::vector<ShotPair>& twin,
                          const std::vector<ShotPair>& classical,
                          const std::vector<ShotPair>& direct,
                          const ObjectMask& mask, std::uint32_t superpixel,
                          double flux);

}  // namespace twinlab
