// Timing comparison of the threaded sigma-map kernel against the serial
// reference, plus ensemble generation throughput.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "twinlab/rng.hpp"
#include "twinlab/sigma_map.hpp"
#include "twinlab/simulator.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

}  // namespace

int main() {
    using namespace twinlab;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    SourceConfig src;
    src.grid_width = 160;
    src.grid_height = 160;
    src.mu = 13.0;
    src.temporal_modes = 64;
    src.coherence_fwhm = 8.0;
    DetectorConfig det;
    det.eta = 0.67;
    const DetectorModel model(src, det, 42);

    const int shots = 8;
    auto start = clock_type::now();
    std::vector<ShotPair> ensemble(shots);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < shots; ++k)
        ensemble[k] = simulate_twin_pair(
            model, derive_seed(42, seed_tag::shot,
                               static_cast<std::uint64_t>(k)));
    const double sim_time = seconds_since(start);
    std::printf("simulate: %d shots in %.3f s (%.1f shots/s)\n", shots,
                sim_time, shots / sim_time);

    const MapParams params{Region{30, 30, 100, 100}, 28, 1};
    start = clock_type::now();
    CorrelationMap parallel_map =
        sigma_map(ensemble[0].signal, ensemble[0].idler, params);
    const double par_time = seconds_since(start);

    start = clock_type::now();
    CorrelationMap serial_map =
        sigma_map_serial(ensemble[0].signal, ensemble[0].idler, params);
    const double ser_time = seconds_since(start);

    bool identical = parallel_map.sigma.size() == serial_map.sigma.size();
    if (identical)
        for (std::size_t k = 0; k < parallel_map.sigma.size(); ++k)
            if (parallel_map.sigma[k] != serial_map.sigma[k]) {
                identical = false;
                break;
            }

    std::printf("sigma map %ux%u window %u:\n", params.region.width,
                params.region.height, params.window);
    std::printf("  parallel: %.3f s\n", par_time);
    std::printf("  serial:   %.3f s\n", ser_time);
    std::printf("  speedup:  %.2fx, results %s\n", ser_time / par_time,
                identical ? "identical" : "DIFFER");
    return identical ? 0 : 1;
}
