#include "twinlab/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw Error(ErrorCategory::config,
                "invalid value '" + value + "' for key '" + key + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(out))
        bad_value(key, value);
    return out;
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value) {
    T out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) bad_value(key, value);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
    if (key == "grid") {
        cfg.source.grid_width = parse_unsigned<std::uint32_t>(key, value);
        cfg.source.grid_height = cfg.source.grid_width;
    } else if (key == "grid_width") {
        cfg.source.grid_width = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "grid_height") {
        cfg.source.grid_height = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "pixel_pitch_um") {
        cfg.source.pixel_pitch_um = parse_double(key, value);
    } else if (key == "mu") {
        cfg.source.mu = parse_double(key, value);
    } else if (key == "temporal_modes") {
        cfg.source.temporal_modes = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "coherence_fwhm_px") {
        cfg.source.coherence_fwhm = parse_double(key, value);
    } else if (key == "center_offset_x") {
        cfg.source.center_offset.dx = parse_double(key, value);
    } else if (key == "center_offset_y") {
        cfg.source.center_offset.dy = parse_double(key, value);
    } else if (key == "eta") {
        cfg.detector.eta = parse_double(key, value);
    } else if (key == "eta_sigma") {
        cfg.detector.eta_sigma = parse_double(key, value);
    } else if (key == "read_noise") {
        cfg.detector.read_noise = parse_double(key, value);
    } else if (key == "background_mean") {
        cfg.detector.background_mean = parse_double(key, value);
    } else if (key == "acquisition_bin") {
        cfg.detector.bin.factor = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "acquisition_mode") {
        if (value == "software")
            cfg.detector.bin.kind = BinKind::software;
        else if (value == "hardware")
            cfg.detector.bin.kind = BinKind::hardware;
        else
            bad_value(key, value);
    } else if (key == "shots") {
        cfg.shots = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "region_x0") {
        cfg.region.x0 = parse_unsigned<std::uint32_t>(key, value);
        cfg.region_set = true;
    } else if (key == "region_y0") {
        cfg.region.y0 = parse_unsigned<std::uint32_t>(key, value);
        cfg.region_set = true;
    } else if (key == "region_width") {
        cfg.region.width = parse_unsigned<std::uint32_t>(key, value);
        cfg.region_set = true;
    } else if (key == "region_height") {
        cfg.region.height = parse_unsigned<std::uint32_t>(key, value);
        cfg.region_set = true;
    } else if (key == "window") {
        cfg.window = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "analysis_bin") {
        cfg.analysis_bin = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "object") {
        cfg.object = value;
    } else {
        throw Error(ErrorCategory::config, "unknown config key '" + key + "'");
    }
}

RunConfig parse_run_config(std::istream& in, const std::string& origin) {
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::config,
                        origin + ":" + std::to_string(line_no) +
                            ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCategory::config,
                        origin + ":" + std::to_string(line_no) +
                            ": empty key");
        try {
            set_config_key(cfg, key, value);
        } catch (const Error& e) {
            throw Error(ErrorCategory::config,
                        origin + ":" + std::to_string(line_no) + ": " +
                            e.what());
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open config file: " + path);
    return parse_run_config(in, path);
}

std::string serialize_run_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "grid_width = " << cfg.source.grid_width << "\n";
    os << "grid_height = " << cfg.source.grid_height << "\n";
    os << "pixel_pitch_um = " << format_double(cfg.source.pixel_pitch_um)
       << "\n";
    os << "mu = " << format_double(cfg.source.mu) << "\n";
    os << "temporal_modes = " << cfg.source.temporal_modes << "\n";
    os << "coherence_fwhm_px = " << format_double(cfg.source.coherence_fwhm)
       << "\n";
    os << "center_offset_x = " << format_double(cfg.source.center_offset.dx)
       << "\n";
    os << "center_offset_y = " << format_double(cfg.source.center_offset.dy)
       << "\n";
    os << "eta = " << format_double(cfg.detector.eta) << "\n";
    os << "eta_sigma = " << format_double(cfg.detector.eta_sigma) << "\n";
    os << "read_noise = " << format_double(cfg.detector.read_noise) << "\n";
    os << "background_mean = " << format_double(cfg.detector.background_mean)
       << "\n";
    os << "acquisition_bin = " << cfg.detector.bin.factor << "\n";
    os << "acquisition_mode = "
       << (cfg.detector.bin.kind == BinKind::hardware ? "hardware" : "software")
       << "\n";
    os << "shots = " << cfg.shots << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "window = " << cfg.window << "\n";
    os << "analysis_bin = " << cfg.analysis_bin << "\n";
    os << "object = " << cfg.object << "\n";
    if (cfg.region_set) {
        os << "region_x0 = " << cfg.region.x0 << "\n";
        os << "region_y0 = " << cfg.region.y0 << "\n";
        os << "region_width = " << cfg.region.width << "\n";
        os << "region_height = " << cfg.region.height << "\n";
    }
    return os.str();
}

void save_run_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCategory::io, "cannot create config file: " + path);
    out << serialize_run_config(cfg);
    if (!out)
        throw Error(ErrorCategory::io, "short write to config file: " + path);
}

Region default_region(std::uint32_t binned_width, std::uint32_t binned_height,
                      std::uint32_t window) {
    if (2u * window >= binned_width || 2u * window >= binned_height)
        throw Error(ErrorCategory::domain,
                    "displacement window leaves no analysis region");
    return Region{window, window, binned_width - 2 * window,
                  binned_height - 2 * window};
}

ObjectMask make_object_mask(const std::string& spec, const SourceConfig& src) {
    ObjectMask mask =
        make_frame(src.grid_width, src.grid_height, src.pixel_pitch_um, 1.0f);
    if (spec == "none" || spec.empty()) return mask;

    const std::vector<std::string> parts = split(spec, ':');
    const std::string kind = parts.front();
    auto field = [&](std::size_t i) { return parse_double(kind, parts[i]); };

    if (kind == "disc") {
        if (parts.size() != 5)
            throw Error(ErrorCategory::config,
                        "object spec must be disc:cx:cy:radius:alpha");
        const double cx = field(1), cy = field(2), r = field(3),
                     alpha = field(4);
        if (r <= 0.0 || alpha < 0.0 || alpha > 1.0)
            throw Error(ErrorCategory::config,
                        "object disc needs radius > 0 and alpha in [0, 1]");
        for (std::uint32_t y = 0; y < mask.height; ++y)
            for (std::uint32_t x = 0; x < mask.width; ++x) {
                const double ddx = x + 0.5 - cx;
                const double ddy = y + 0.5 - cy;
                if (ddx * ddx + ddy * ddy <= r * r)
                    mask.at(x, y) = static_cast<float>(alpha);
            }
        return mask;
    }
    if (kind == "rect") {
        if (parts.size() != 6)
            throw Error(ErrorCategory::config,
                        "object spec must be rect:x0:y0:width:height:alpha");
        const double x0 = field(1), y0 = field(2), w = field(3), h = field(4),
                     alpha = field(5);
        if (w <= 0.0 || h <= 0.0 || alpha < 0.0 || alpha > 1.0)
            throw Error(ErrorCategory::config,
                        "object rect needs positive size and alpha in [0, 1]");
        for (std::uint32_t y = 0; y < mask.height; ++y)
            for (std::uint32_t x = 0; x < mask.width; ++x) {
                const double px = x + 0.5;
                const double py = y + 0.5;
                if (px >= x0 && px < x0 + w && py >= y0 && py < y0 + h)
                    mask.at(x, y) = static_cast<float>(alpha);
            }
        return mask;
    }
    throw Error(ErrorCategory::config, "unknown object spec '" + spec + "'");
}

}  // namespace twinlab
