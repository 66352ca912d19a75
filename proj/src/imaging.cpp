#include "twinlab/imaging.hpp"

#include <cmath>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

Frame bin_soft(const Frame& f, std::uint32_t factor) {
    return bin_frame(f, BinMode{factor, BinKind::software, false});
}

void check_ensemble(const std::vector<ShotPair>& shots) {
    if (shots.empty())
        throw Error(ErrorCategory::domain, "ensemble holds no shots");
    const Frame& first = shots.front().signal;
    for (const ShotPair& s : shots)
        if (s.signal.width != first.width || s.signal.height != first.height ||
            s.idler.width != first.width || s.idler.height != first.height)
            throw Error(ErrorCategory::domain,
                        "ensemble frames must share dimensions");
}

std::size_t paired_index(const Frame& binned, std::size_t idx) {
    const std::size_t x = idx % binned.width;
    const std::size_t y = idx / binned.width;
    return (binned.height - 1 - y) * binned.width + (binned.width - 1 - x);
}

// Superpixels the object actually obstructs, from the area-averaged mask.
std::vector<std::size_t> object_superpixels(const Frame& alpha_binned) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < alpha_binned.data.size(); ++k)
        if (alpha_binned.data[k] < 0.999f) out.push_back(k);
    if (out.empty())
        throw Error(ErrorCategory::domain,
                    "object mask obstructs no superpixel");
    return out;
}

// Across-shot mean and unbiased variance for each column of a shot-major
// matrix of per-superpixel values.
struct Pooled {
    std::vector<double> mean;
    std::vector<double> var;
};

Pooled pool_over_shots(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t k = rows.front().size();
    Pooled out{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    for (const auto& row : rows)
        for (std::size_t j = 0; j < k; ++j) out.mean[j] += row[j];
    for (auto& m : out.mean) m /= static_cast<double>(n);
    if (n > 1) {
        for (const auto& row : rows)
            for (std::size_t j = 0; j < k; ++j) {
                const double d = row[j] - out.mean[j];
                out.var[j] += d * d;
            }
        for (auto& v : out.var) v /= static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

double calibrate_flux(const std::vector<ShotPair>& reference,
                      std::uint32_t superpixel) {
    check_ensemble(reference);
    double sum = 0.0;
    std::size_t n = 0;
    for (const ShotPair& shot : reference) {
        const Frame s = bin_soft(shot.signal, superpixel);
        const Frame i = bin_soft(shot.idler, superpixel);
        for (float v : s.data) sum += v;
        for (float v : i.data) sum += v;
        n += s.data.size() + i.data.size();
    }
    const double flux = sum / static_cast<double>(n);
    if (flux <= 0.0)
        throw Error(ErrorCategory::domain, "calibration flux is not positive");
    return flux;
}

double calibrate_flux_from_idler(const std::vector<ShotPair>& shots,
                                 std::uint32_t superpixel) {
    check_ensemble(shots);
    double sum = 0.0;
    std::size_t n = 0;
    for (const ShotPair& shot : shots) {
        const Frame i = bin_soft(shot.idler, superpixel);
        for (float v : i.data) sum += v;
        n += i.data.size();
    }
    const double flux = sum / static_cast<double>(n);
    if (flux <= 0.0)
        throw Error(ErrorCategory::domain, "calibration flux is not positive");
    return flux;
}

ImageResult reconstruct(const std::vector<ShotPair>& shots,
                        std::uint32_t superpixel, double flux) {
    check_ensemble(shots);
    if (!(flux > 0.0))
        throw Error(ErrorCategory::domain, "calibration flux is not positive");

    std::vector<std::vector<double>> rows;
    rows.reserve(shots.size());
    Frame model;
    for (const ShotPair& shot : shots) {
        const Frame s = bin_soft(shot.signal, superpixel);
        const Frame i = bin_soft(shot.idler, superpixel);
        if (rows.empty()) model = s;
        std::vector<double> row(s.data.size());
        for (std::size_t k = 0; k < row.size(); ++k)
            row[k] = 1.0 - (i.data[paired_index(s, k)] - s.data[k]) / flux;
        rows.push_back(std::move(row));
    }

    const Pooled pooled = pool_over_shots(rows);
    ImageResult out;
    out.shots = shots.size();
    out.alpha = make_frame(model.width, model.height, model.pixel_pitch_um);
    out.stderr_map = make_frame(model.width, model.height, model.pixel_pitch_um);
    for (std::size_t k = 0; k < pooled.mean.size(); ++k)
        out.alpha.data[k] = static_cast<float>(pooled.mean[k]);

    if (shots.size() > 1) {
        const auto n = static_cast<double>(shots.size());
        for (std::size_t k = 0; k < pooled.var.size(); ++k)
            out.stderr_map.data[k] =
                static_cast<float>(std::sqrt(pooled.var[k] / n));
    } else {
        out.single_shot = true;
        double m = 0.0, ss = 0.0;
        for (double v : rows.front()) m += v;
        m /= static_cast<double>(rows.front().size());
        for (double v : rows.front()) ss += (v - m) * (v - m);
        const auto spread = static_cast<float>(
            std::sqrt(ss / static_cast<double>(rows.front().size())));
        for (auto& v : out.stderr_map.data) v = spread;
    }
    return out;
}

SnrComparison snr_compare(const std::vector<ShotPair>& twin,
                          const std::vector<ShotPair>& classical,
                          const std::vector<ShotPair>& direct,
                          const ObjectMask& mask, std::uint32_t superpixel,
                          double flux) {
    check_ensemble(twin);
    check_ensemble(classical);
    check_ensemble(direct);
    if (twin.size() != classical.size() || twin.size() != direct.size())
        throw Error(ErrorCategory::domain,
                    "compared ensembles must hold the same number of shots");
    if (twin.size() < 2)
        throw Error(ErrorCategory::domain,
                    "per-shot noise needs at least two shots");
    if (!(flux > 0.0))
        throw Error(ErrorCategory::domain, "calibration flux is not positive");

    const Frame alpha_binned = bin_soft(mask, superpixel);
    Frame alpha_mean_sp = alpha_binned;
    const double area = static_cast<double>(superpixel) * superpixel;
    for (auto& v : alpha_mean_sp.data) v = static_cast<float>(v / area);
    const std::vector<std::size_t> object = object_superpixels(alpha_mean_sp);

    const std::size_t n_shots = twin.size();
    // Per-shot rows restricted to object superpixels: the differential
    // estimate for the two differential methods, the plain normalized count
    // for the direct method, and the raw difference and sum needed for the
    // pooled sigma of the twin data.
    std::vector<std::vector<double>> est_twin(n_shots), est_cl(n_shots),
        est_dir(n_shots), diff_twin(n_shots), sum_twin(n_shots),
        diff_cl(n_shots), sum_cl(n_shots);
    for (std::size_t s = 0; s < n_shots; ++s) {
        const Frame ts = bin_soft(twin[s].signal, superpixel);
        const Frame ti = bin_soft(twin[s].idler, superpixel);
        const Frame cs = bin_soft(classical[s].signal, superpixel);
        const Frame ci = bin_soft(classical[s].idler, superpixel);
        const Frame ds = bin_soft(direct[s].signal, superpixel);
        for (std::size_t k : object) {
            const std::size_t p = paired_index(ts, k);
            est_twin[s].push_back(1.0 - (ti.data[p] - ts.data[k]) / flux);
            est_cl[s].push_back(1.0 - (ci.data[p] - cs.data[k]) / flux);
            est_dir[s].push_back(ds.data[k] / flux);
            diff_twin[s].push_back(ts.data[k] - ti.data[p]);
            sum_twin[s].push_back(ts.data[k] + ti.data[p]);
            diff_cl[s].push_back(cs.data[k] - ci.data[p]);
            sum_cl[s].push_back(cs.data[k] + ci.data[p]);
        }
    }

    auto snr_of = [](const Pooled& p) {
        double mean = 0.0, var = 0.0;
        for (double m : p.mean) mean += m;
        for (double v : p.var) var += v;
        mean /= static_cast<double>(p.mean.size());
        var /= static_cast<double>(p.var.size());
        if (var <= 0.0)
            throw Error(ErrorCategory::domain,
                        "per-shot variance vanished; cannot form an SNR");
        return mean / std::sqrt(var);
    };
    auto pooled_ratio = [](const Pooled& diff, const Pooled& sum) {
        double var = 0.0, mean = 0.0;
        for (double v : diff.var) var += v;
        for (double m : sum.mean) mean += m;
        if (mean <= 0.0)
            throw Error(ErrorCategory::domain,
                        "object superpixels hold no flux");
        return var / mean;
    };

    SnrComparison out;
    out.shots = n_shots;
    out.object_superpixels = object.size();
    const Pooled pt = pool_over_shots(est_twin);
    out.snr_twin = snr_of(pt);
    out.snr_classical_diff = snr_of(pool_over_shots(est_cl));
    out.snr_direct = snr_of(pool_over_shots(est_dir));
    out.sigma_object =
        pooled_ratio(pool_over_shots(diff_twin), pool_over_shots(sum_twin));
    out.fano_classical =
        pooled_ratio(pool_over_shots(diff_cl), pool_over_shots(sum_cl));
    double am = 0.0;
    for (double m : pt.mean) am += m;
    out.alpha_mean = am / static_cast<double>(pt.mean.size());
    return out;
}

}  // namespace twinlab
