// Command-line front end: simulate, analyze, sweep and imaging subcommands.
// All campaign randomness descends from the configured root seed, so a rerun
// of any subcommand with the same inputs writes byte-identical outputs.

#include "twinlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twinlab/dip.hpp"
#include "twinlab/error.hpp"
#include "twinlab/imaging.hpp"
#include "twinlab/rng.hpp"
#include "twinlab/run_config.hpp"
#include "twinlab/sigma_map.hpp"
#include "twinlab/stats.hpp"
#include "twinlab/tbf.hpp"

namespace twinlab {

namespace {

namespace fs = std::filesystem;

int exit_code(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::usage: return 2;
        case ErrorCategory::config: return 3;
        case ErrorCategory::io: return 4;
        case ErrorCategory::format: return 5;
        case ErrorCategory::domain: return 6;
    }
    return 1;
}

std::string shot_name(const char* prefix, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu.tbf", prefix, index);
    return buf;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCategory::io,
                    "cannot create directory: " + dir.string());
}

std::ofstream open_csv(const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCategory::io, "cannot create file: " + path.string());
    out << std::setprecision(12);
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> shots;
    std::optional<std::uint32_t> bin;
    std::optional<std::uint32_t> window;
    std::string region;
};

Region parse_region(const std::string& text) {
    std::uint32_t v[4] = {0, 0, 0, 0};
    int n = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (n == 4) break;
        try {
            v[n++] = static_cast<std::uint32_t>(std::stoul(tok));
        } catch (const std::exception&) {
            n = -1;
            break;
        }
    }
    if (n != 4)
        throw Error(ErrorCategory::config,
                    "region must be x0,y0,width,height: " + text);
    return Region{v[0], v[1], v[2], v[3]};
}

RunConfig resolve_config(const CommonOpts& opts) {
    RunConfig cfg;
    if (!opts.config_path.empty()) cfg = load_run_config(opts.config_path);
    for (const std::string& kv : opts.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::config,
                        "override must be key=value: " + kv);
        set_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.shots) cfg.shots = *opts.shots;
    if (opts.bin) cfg.analysis_bin = *opts.bin;
    if (opts.window) cfg.window = *opts.window;
    if (!opts.region.empty()) {
        cfg.region = parse_region(opts.region);
        cfg.region_set = true;
    }
    return cfg;
}

struct Ensemble {
    std::vector<ShotPair> shots;
    std::vector<Frame> bg_signal;
    std::vector<Frame> bg_idler;
};

bool has_object(const RunConfig& cfg) {
    return !cfg.object.empty() && cfg.object != "none";
}

Ensemble simulate_ensemble(const RunConfig& cfg) {
    if (cfg.shots == 0)
        throw Error(ErrorCategory::config, "shot count must be at least 1");
    const DetectorModel model(cfg.source, cfg.detector, cfg.seed);
    const ObjectMask mask = make_object_mask(cfg.object, cfg.source);
    const ObjectMask* mask_ptr = has_object(cfg) ? &mask : nullptr;
    if (mask_ptr) validate_object_mask(mask, cfg.source);

    Ensemble e;
    e.shots.resize(cfg.shots);
    const bool wants_bg = cfg.detector.background_mean > 0.0 ||
                          cfg.detector.read_noise > 0.0;
    if (wants_bg) {
        e.bg_signal.resize(cfg.shots);
        e.bg_idler.resize(cfg.shots);
    }
    const auto n = static_cast<std::int64_t>(cfg.shots);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        const std::uint64_t s = derive_seed(cfg.seed, seed_tag::shot,
                                            static_cast<std::uint64_t>(k));
        e.shots[static_cast<std::size_t>(k)] =
            simulate_twin_pair(model, s, mask_ptr);
        if (wants_bg) {
            e.bg_signal[static_cast<std::size_t>(k)] =
                simulate_background_frame(model, s, 0);
            e.bg_idler[static_cast<std::size_t>(k)] =
                simulate_background_frame(model, s, 1);
        }
    }
    return e;
}

// Spatial stats of each background frame over the region, averaged across
// the ensemble.
RegionStats pooled_region_stats(const std::vector<Frame>& frames,
                                std::uint32_t analysis_bin,
                                const Region& region) {
    RegionStats out;
    for (const Frame& f : frames) {
        const Frame b =
            analysis_bin > 1
                ? bin_frame(f, BinMode{analysis_bin, BinKind::software, false})
                : f;
        const RegionStats s = region_stats(b, region);
        out.mean += s.mean;
        out.variance += s.variance;
        out.n += s.n;
    }
    const auto count = static_cast<double>(frames.size());
    out.mean /= count;
    out.variance /= count;
    return out;
}

struct ShotAnalysis {
    double mean_s = 0.0, mean_i = 0.0;
    double fano_s = 0.0, fano_i = 0.0;
    double sigma = 0.0;
    std::optional<Corrected> sigma_c;
    std::optional<Corrected> fano_c;
    Displacement xi;
    double fwhm_x = 0.0, fwhm_y = 0.0;
};

struct EnsembleAnalysis {
    std::vector<ShotAnalysis> shots;
    CorrelationMap mean_map;
    DipResult ensemble_dip;
    Region region;
};

EnsembleAnalysis analyze_ensemble(const RunConfig& cfg, const Ensemble& e,
                                  bool centroid) {
    if (e.shots.empty())
        throw Error(ErrorCategory::domain, "ensemble holds no shots");
    const BinMode soft{cfg.analysis_bin, BinKind::software, false};
    const Frame probe = cfg.analysis_bin > 1
                            ? bin_frame(e.shots.front().signal, soft)
                            : e.shots.front().signal;
    EnsembleAnalysis out;
    out.region = cfg.region_set
                     ? cfg.region
                     : default_region(probe.width, probe.height, cfg.window);
    // Frames are binned once here so the region statistics and the map share
    // them; the map must not bin again.
    const MapParams params{out.region, cfg.window, 1};

    std::optional<RegionStats> bg_s, bg_i;
    if (!e.bg_signal.empty()) {
        bg_s = pooled_region_stats(e.bg_signal, cfg.analysis_bin, out.region);
        bg_i = pooled_region_stats(e.bg_idler, cfg.analysis_bin, out.region);
    }

    std::vector<CorrelationMap> maps(e.shots.size());
    out.shots.resize(e.shots.size());
    for (std::size_t k = 0; k < e.shots.size(); ++k) {
        const Frame s = cfg.analysis_bin > 1
                            ? bin_frame(e.shots[k].signal, soft)
                            : e.shots[k].signal;
        const Frame i = cfg.analysis_bin > 1 ? bin_frame(e.shots[k].idler, soft)
                                             : e.shots[k].idler;
        maps[k] = sigma_map(s, i, params);
        const DipResult dip = find_minimum(maps[k]);

        ShotAnalysis& row = out.shots[k];
        const RegionStats st_s = region_stats(s, out.region);
        const RegionStats st_i = region_stats(i, out.region);
        row.mean_s = st_s.mean;
        row.mean_i = st_i.mean;
        row.fano_s = fano(st_s);
        row.fano_i = fano(st_i);
        row.sigma = dip.sigma_min;
        if (centroid) {
            const SubpixelResult c =
                centroid_center(maps[k], dip.ix, dip.iy, dip.plateau);
            row.xi = Displacement{static_cast<double>(dip.ix) + c.offset.dx,
                                  static_cast<double>(dip.iy) + c.offset.dy};
        } else {
            row.xi = dip.xi;
        }
        row.fwhm_x = dip.fwhm_x;
        row.fwhm_y = dip.fwhm_y;
        if (bg_s) {
            const DiffStats ds =
                difference_stats(s, i, out.region, dip.ix, dip.iy);
            row.sigma_c =
                sigma_corrected(ds.var_diff, ds.mean_sum, *bg_s, *bg_i);
            row.fano_c = fano_corrected(st_s, *bg_s);
        }
    }
    out.mean_map = average_maps(maps);
    out.ensemble_dip = find_minimum(out.mean_map);
    if (centroid) {
        DipResult& dip = out.ensemble_dip;
        const SubpixelResult c =
            centroid_center(out.mean_map, dip.ix, dip.iy, dip.plateau);
        dip.refined = c.refined;
        dip.xi = Displacement{static_cast<double>(dip.ix) + c.offset.dx,
                              static_cast<double>(dip.iy) + c.offset.dy};
    }
    return out;
}

void write_truth_csv(const fs::path& path, const Ensemble& e) {
    std::ofstream csv = open_csv(path);
    csv << std::setprecision(17);
    csv << "shot_id,seed,pair_count,center_offset_x,center_offset_y,"
           "idler_dropped\n";
    for (std::size_t k = 0; k < e.shots.size(); ++k) {
        const ShotTruth& t = e.shots[k].truth;
        csv << k << ',' << t.seed << ',' << t.pair_count << ','
            << t.center_offset.dx << ',' << t.center_offset.dy << ','
            << t.idler_dropped << '\n';
    }
}

void write_ensemble(const fs::path& dir, const RunConfig& cfg,
                    const Ensemble& e) {
    ensure_dir(dir);
    save_run_config(cfg, (dir / "effective.cfg").string());
    if (has_object(cfg))
        write_frame(make_object_mask(cfg.object, cfg.source),
                    (dir / "object_mask.tbf").string());
    for (std::size_t k = 0; k < e.shots.size(); ++k) {
        write_frame(e.shots[k].signal, (dir / shot_name("signal", k)).string());
        write_frame(e.shots[k].idler, (dir / shot_name("idler", k)).string());
    }
    for (std::size_t k = 0; k < e.bg_signal.size(); ++k) {
        write_frame(e.bg_signal[k],
                    (dir / shot_name("background_signal", k)).string());
        write_frame(e.bg_idler[k],
                    (dir / shot_name("background_idler", k)).string());
    }
    write_truth_csv(dir / "truth.csv", e);
}

int cmd_simulate(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = resolve_config(opts);
    const fs::path dir = opts.out_dir.empty() ? "run" : opts.out_dir;
    const Ensemble e = simulate_ensemble(cfg);
    write_ensemble(dir, cfg, e);
    out << "wrote " << e.shots.size() << " shot pairs to " << dir.string()
        << "\n";
    return 0;
}

struct LoadedRun {
    RunConfig cfg;
    Ensemble e;
};

LoadedRun load_run(const fs::path& dir) {
    const fs::path cfg_path = dir / "effective.cfg";
    if (!fs::exists(cfg_path))
        throw Error(ErrorCategory::io,
                    "no effective.cfg in " + dir.string() +
                        "; run simulate first");
    LoadedRun run;
    run.cfg = load_run_config(cfg_path.string());
    for (std::size_t k = 0;; ++k) {
        const fs::path sp = dir / shot_name("signal", k);
        if (!fs::exists(sp)) break;
        const fs::path ip = dir / shot_name("idler", k);
        if (!fs::exists(ip))
            throw Error(ErrorCategory::io,
                        "missing idler frame: " + ip.string());
        run.e.shots.push_back(
            ShotPair{read_frame(sp.string()), read_frame(ip.string()), {}});
    }
    if (run.e.shots.empty())
        throw Error(ErrorCategory::io,
                    "no shot frames found in " + dir.string());
    for (std::size_t k = 0;; ++k) {
        const fs::path sp = dir / shot_name("background_signal", k);
        if (!fs::exists(sp)) break;
        const fs::path ip = dir / shot_name("background_idler", k);
        if (!fs::exists(ip))
            throw Error(ErrorCategory::io,
                        "missing background frame: " + ip.string());
        run.e.bg_signal.push_back(read_frame(sp.string()));
        run.e.bg_idler.push_back(read_frame(ip.string()));
    }
    return run;
}

void write_report_csv(const fs::path& path, const EnsembleAnalysis& a) {
    std::ofstream csv = open_csv(path);
    csv << "shot_id,mean_s,mean_i,fano_s,fano_i,sigma,sigma_corrected,"
           "fano_corrected,xi_x,xi_y,fwhm_x,fwhm_y\n";
    for (std::size_t k = 0; k < a.shots.size(); ++k) {
        const ShotAnalysis& r = a.shots[k];
        csv << k << ',' << r.mean_s << ',' << r.mean_i << ',' << r.fano_s
            << ',' << r.fano_i << ',' << r.sigma << ',';
        if (r.sigma_c) csv << r.sigma_c->value;
        csv << ',';
        if (r.fano_c) csv << r.fano_c->value;
        csv << ',' << r.xi.dx << ',' << r.xi.dy << ',' << r.fwhm_x << ','
            << r.fwhm_y << '\n';
    }
}

void write_map_csv(const fs::path& path, const CorrelationMap& map) {
    std::ofstream csv = open_csv(path);
    csv << "dx,dy,sigma\n";
    const auto r = static_cast<std::int64_t>(map.radius);
    for (std::int64_t dy = -r; dy <= r; ++dy)
        for (std::int64_t dx = -r; dx <= r; ++dx)
            csv << dx << ',' << dy << ',' << map.at(dx, dy) << '\n';
}

int cmd_analyze(const CommonOpts& opts, const std::string& in_dir,
                const std::string& center_method, std::ostream& out) {
    if (center_method != "paraboloid" && center_method != "centroid")
        throw Error(ErrorCategory::config,
                    "center method must be paraboloid or centroid");
    LoadedRun run = load_run(in_dir);
    RunConfig& cfg = run.cfg;
    if (opts.bin) cfg.analysis_bin = *opts.bin;
    if (opts.window) cfg.window = *opts.window;
    if (!opts.region.empty()) {
        cfg.region = parse_region(opts.region);
        cfg.region_set = true;
    }
    const fs::path dir = opts.out_dir.empty() ? fs::path(in_dir)
                                              : fs::path(opts.out_dir);
    ensure_dir(dir);

    const EnsembleAnalysis a =
        analyze_ensemble(cfg, run.e, center_method == "centroid");
    write_report_csv(dir / "report.csv", a);
    write_map_csv(dir / "map.csv", a.mean_map);

    double mean_sigma = 0.0;
    for (const ShotAnalysis& r : a.shots) mean_sigma += r.sigma;
    mean_sigma /= static_cast<double>(a.shots.size());
    const DipResult& dip = a.ensemble_dip;
    out << std::setprecision(6) << "shots=" << a.shots.size()
        << " bin=" << cfg.analysis_bin << " window=" << cfg.window
        << " region=" << a.region.x0 << ',' << a.region.y0 << ','
        << a.region.width << ',' << a.region.height
        << " sigma_min=" << dip.sigma_min << " mean_sigma=" << mean_sigma
        << " xi=(" << dip.xi.dx << ',' << dip.xi.dy << ") fwhm=("
        << dip.fwhm_x << ',' << dip.fwhm_y << ")\n";
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& variable,
              const std::string& values, std::ostream& out) {
    const RunConfig base = resolve_config(opts);
    std::vector<std::string> tokens;
    std::stringstream ss(values);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) tokens.push_back(tok);
    if (tokens.empty())
        throw Error(ErrorCategory::config, "sweep needs at least one value");
    {
        RunConfig probe = base;  // reject unknown variables before running
        set_config_key(probe, variable, tokens.front());
    }

    const fs::path dir = opts.out_dir.empty() ? "sweep" : opts.out_dir;
    ensure_dir(dir);
    save_run_config(base, (dir / "effective.cfg").string());
    std::ofstream csv = open_csv(dir / "sweep.csv");
    csv << "variable,value,mean_sigma,se_sigma,mean_fano,se_fano,shots\n";

    for (std::size_t vi = 0; vi < tokens.size(); ++vi) {
        RunConfig cfg = base;
        set_config_key(cfg, variable, tokens[vi]);
        cfg.seed = derive_seed(base.seed, seed_tag::campaign, vi);
        const Ensemble e = simulate_ensemble(cfg);
        const EnsembleAnalysis a = analyze_ensemble(cfg, e, false);

        double ms = 0.0, mf = 0.0;
        for (const ShotAnalysis& r : a.shots) {
            ms += r.sigma;
            mf += r.fano_s;
        }
        const auto n = static_cast<double>(a.shots.size());
        ms /= n;
        mf /= n;
        double vs = 0.0, vf = 0.0;
        for (const ShotAnalysis& r : a.shots) {
            vs += (r.sigma - ms) * (r.sigma - ms);
            vf += (r.fano_s - mf) * (r.fano_s - mf);
        }
        const double se_s = n > 1 ? std::sqrt(vs / (n - 1) / n) : 0.0;
        const double se_f = n > 1 ? std::sqrt(vf / (n - 1) / n) : 0.0;
        csv << variable << ',' << tokens[vi] << ',' << ms << ',' << se_s << ','
            << mf << ',' << se_f << ',' << a.shots.size() << '\n';
        out << std::setprecision(6) << variable << '=' << tokens[vi]
            << " sigma=" << ms << "+-" << se_s << " fano=" << mf << "+-"
            << se_f << "\n";
    }
    return 0;
}

int cmd_imaging(const CommonOpts& opts, std::ostream& out) {
    const RunConfig cfg = resolve_config(opts);
    if (!has_object(cfg))
        throw Error(ErrorCategory::config,
                    "imaging needs an object spec (e.g. disc:cx:cy:r:alpha)");
    const fs::path dir = opts.out_dir.empty() ? "imaging" : opts.out_dir;
    ensure_dir(dir);
    save_run_config(cfg, (dir / "effective.cfg").string());

    const DetectorModel model(cfg.source, cfg.detector, cfg.seed);
    const ObjectMask mask = make_object_mask(cfg.object, cfg.source);
    validate_object_mask(mask, cfg.source);
    const std::uint32_t sp = cfg.analysis_bin;
    const double coh_mean = cfg.source.mu * cfg.source.temporal_modes /
                            (cfg.source.coherence_fwhm * cfg.source.coherence_fwhm);

    const std::uint64_t root_twin = derive_seed(cfg.seed, seed_tag::campaign, 0);
    const std::uint64_t root_cl = derive_seed(cfg.seed, seed_tag::campaign, 1);
    const std::uint64_t root_dir = derive_seed(cfg.seed, seed_tag::campaign, 2);
    const std::uint64_t root_ref = derive_seed(cfg.seed, seed_tag::campaign, 3);

    std::vector<ShotPair> twin(cfg.shots), classical(cfg.shots),
        direct(cfg.shots), reference(cfg.shots);
    const auto n = static_cast<std::int64_t>(cfg.shots);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto ku = static_cast<std::uint64_t>(k);
        const auto ks = static_cast<std::size_t>(k);
        twin[ks] = simulate_twin_pair(
            model, derive_seed(root_twin, seed_tag::shot, ku), &mask);
        reference[ks] = simulate_twin_pair(
            model, derive_seed(root_ref, seed_tag::shot, ku), nullptr);
        classical[ks] = simulate_coherent_pair(
            model, coh_mean, derive_seed(root_cl, seed_tag::coherent, ku),
            &mask);
        direct[ks] = simulate_coherent_pair(
            model, coh_mean, derive_seed(root_dir, seed_tag::coherent, ku),
            &mask);
    }

    const double flux = calibrate_flux(reference, sp);
    const ImageResult img = reconstruct(twin, sp, flux);
    const SnrComparison snr = snr_compare(twin, classical, direct, mask, sp,
                                          flux);

    Frame alpha_true = bin_frame(mask, BinMode{sp, BinKind::software, false});
    const double area = static_cast<double>(sp) * sp;
    for (auto& v : alpha_true.data) v = static_cast<float>(v / area);

    std::ofstream csv = open_csv(dir / "imaging.csv");
    csv << "superpixel_x,superpixel_y,alpha_true,alpha_est,stderr\n";
    for (std::uint32_t y = 0; y < img.alpha.height; ++y)
        for (std::uint32_t x = 0; x < img.alpha.width; ++x)
            csv << x << ',' << y << ',' << alpha_true.at(x, y) << ','
                << img.alpha.at(x, y) << ',' << img.stderr_map.at(x, y)
                << '\n';

    std::ofstream snr_csv = open_csv(dir / "snr.csv");
    snr_csv << "shots,object_superpixels,flux,alpha_mean,sigma_object,"
               "fano_classical,snr_twin,snr_classical_diff,snr_direct,"
               "ratio_twin_classical,ratio_twin_direct,predicted_ratio\n";
    snr_csv << snr.shots << ',' << snr.object_superpixels << ',' << flux << ','
            << snr.alpha_mean << ',' << snr.sigma_object << ','
            << snr.fano_classical << ',' << snr.snr_twin << ','
            << snr.snr_classical_diff << ',' << snr.snr_direct << ','
            << snr.snr_twin / snr.snr_classical_diff << ','
            << snr.snr_twin / snr.snr_direct << ','
            << 1.0 / std::sqrt(snr.sigma_object) << '\n';

    out << std::setprecision(6) << "shots=" << snr.shots << " flux=" << flux
        << " alpha=" << snr.alpha_mean << " sigma=" << snr.sigma_object
        << " snr_twin=" << snr.snr_twin
        << " snr_classical_diff=" << snr.snr_classical_diff
        << " snr_direct=" << snr.snr_direct << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"twin-beam correlation laboratory"};
    app.name("twinlab");
    app.require_subcommand(1);

    CommonOpts sim_opts;
    CLI::App* sim = app.add_subcommand("simulate",
                                       "generate twin-beam shot frames");
    sim->add_option("--config", sim_opts.config_path, "config file");
    sim->add_option("--set", sim_opts.sets, "override key=value (repeatable)");
    sim->add_option("--out", sim_opts.out_dir, "output directory [run]");
    sim->add_option("--seed", sim_opts.seed, "root seed");
    sim->add_option("--shots", sim_opts.shots, "number of shots");

    CommonOpts an_opts;
    std::string an_in;
    std::string an_center = "paraboloid";
    CLI::App* an = app.add_subcommand("analyze",
                                      "measure correlations of a run");
    an->add_option("--in", an_in, "simulated run directory")->required();
    an->add_option("--out", an_opts.out_dir, "report directory [--in]");
    an->add_option("--bin", an_opts.bin, "analysis bin factor");
    an->add_option("--window", an_opts.window, "displacement window radius");
    an->add_option("--region", an_opts.region,
                   "analysis region x0,y0,width,height (binned)");
    an->add_option("--center-method", an_center, "paraboloid|centroid");

    CommonOpts sw_opts;
    std::string sw_variable;
    std::string sw_values;
    CLI::App* sw = app.add_subcommand("sweep",
                                      "rerun a campaign over parameter values");
    sw->add_option("--config", sw_opts.config_path, "config file");
    sw->add_option("--set", sw_opts.sets, "override key=value (repeatable)");
    sw->add_option("--out", sw_opts.out_dir, "output directory [sweep]");
    sw->add_option("--seed", sw_opts.seed, "root seed");
    sw->add_option("--shots", sw_opts.shots, "shots per value");
    sw->add_option("--variable", sw_variable, "config key to sweep")
        ->required();
    sw->add_option("--values", sw_values, "comma-separated values")
        ->required();

    CommonOpts im_opts;
    CLI::App* im = app.add_subcommand("imaging",
                                      "differential transmission imaging");
    im->add_option("--config", im_opts.config_path, "config file");
    im->add_option("--set", im_opts.sets, "override key=value (repeatable)");
    im->add_option("--out", im_opts.out_dir, "output directory [imaging]");
    im->add_option("--seed", im_opts.seed, "root seed");
    im->add_option("--shots", im_opts.shots, "number of shots");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("twinlab");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts, out);
        if (an->parsed()) return cmd_analyze(an_opts, an_in, an_center, out);
        if (sw->parsed()) return cmd_sweep(sw_opts, sw_variable, sw_values, out);
        if (im->parsed()) return cmd_imaging(im_opts, out);
        err << "error: usage: no subcommand given\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << to_string(e.category()) << ": " << e.what()
            << "\n";
        return exit_code(e.category());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace twinlab
