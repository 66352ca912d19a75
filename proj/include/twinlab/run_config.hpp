#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "twinlab/frame.hpp"
#include "twinlab/simulator.hpp"

namespace twinlab {

// Campaign description: source, detector, acquisition and analysis settings.
// Serialized as flat key = value lines with '#' comments.
struct RunConfig {
    SourceConfig source;
    DetectorConfig detector;
    std::uint32_t shots = 16;
    std::uint64_t seed = 1;

    Region region{0, 0, 0, 0};  // analysis region, binned coordinates
    bool region_set = false;    // unset: centered with a window-wide margin
    std::uint32_t window = 2;
    std::uint32_t analysis_bin = 1;
    std::string object = "none";  // none | disc:cx:cy:r:alpha | rect:x0:y0:w:h:alpha
};

// Applies one key = value setting; throws a config error on unknown keys or
// unparseable values.
void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value);

RunConfig parse_run_config(std::istream& in, const std::string& origin);
RunConfig load_run_config(const std::string& path);

// Full-precision echo of every setting; parsing it back reproduces the
// campaign exactly.
std::string serialize_run_config(const RunConfig& cfg);
void save_run_config(const RunConfig& cfg, const std::string& path);

// The analysis region used when none is configured: centered, keeping a
// window-wide margin all around in binned coordinates.
Region default_region(std::uint32_t binned_width, std::uint32_t binned_height,
                      std::uint32_t window);

// Builds the per-pixel transmission mask described by an object spec.
ObjectMask make_object_mask(const std::string& spec, const SourceConfig& src);

}  // namespace twinlab
