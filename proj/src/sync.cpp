#include "mami/sync.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fft.hpp"
#include "mami/errors.hpp"

namespace mami {

std::vector<double> PssConfig::grid(double span_hz, std::size_t steps) {
    std::vector<double> g;
    if (steps <= 1) {
        g.push_back(0.0);
        return g;
    }
    for (std::size_t i = 0; i < steps; i++)
        g.push_back(-span_hz + 2.0 * span_hz * double(i) / double(steps - 1));
    return g;
}

std::vector<double> PssConfig::effective_grid() const {
    if (!cfo_grid_hz.empty()) return cfo_grid_hz;
    return grid(7.5e3, 19);
}

std::vector<cplx> zadoff_chu(std::size_t root, std::size_t length) {
    if (length == 0 || length % 2 == 0)
        throw InvalidRoot("zadoff_chu: length must be odd");
    if (root == 0 || std::gcd(root, length) != 1)
        throw InvalidRoot("zadoff_chu: root must be coprime with length");
    std::vector<cplx> x(length);
    for (std::size_t n = 0; n < length; n++) {
        // keep the quadratic phase argument exact with integer arithmetic
        const std::uint64_t num = std::uint64_t(root) * n * (n + 1) % (2 * length);
        x[n] = std::polar(1.0, -M_PI * double(num) / double(length));
    }
    return x;
}

std::vector<cplx> pss_time_replica(const PssConfig& cfg, double sample_rate_hz) {
    if (sample_rate_hz <= 0.0) throw DimensionMismatch("pss: bad sample rate");
    const double n_exact = sample_rate_hz / cfg.subcarrier_spacing_hz;
    const std::size_t n = std::size_t(std::llround(n_exact));
    if (n < cfg.length + 1 || std::abs(n_exact - double(n)) > 1e-6)
        throw DimensionMismatch("pss: sample rate not a multiple of the subcarrier spacing");

    const std::vector<cplx> zc = zadoff_chu(cfg.root, cfg.length);
    // Center element punctured, halves on each side of the (null) DC bin.
    const std::size_t half = cfg.length / 2;  // 31 for length 63
    std::vector<cplx> spectrum(n, cplx{});
    for (std::size_t i = 0; i < half; i++) spectrum[n - half + i] = zc[i];
    for (std::size_t i = 0; i < half; i++) spectrum[1 + i] = zc[half + 1 + i];
    detail::fft(spectrum, /*inverse=*/true);
    double energy = 0.0;
    for (const auto& v : spectrum) energy += std::norm(v);
    const double s = 1.0 / std::sqrt(energy);
    for (auto& v : spectrum) v *= s;
    return spectrum;
}

namespace {

struct Candidate {
    std::size_t offset = 0;
    std::size_t cfo_index = 0;
    double metric = -1.0;
};

// |<window, replica>| / (||window|| ||replica||), replicas pre-normalized.
double window_metric(const std::vector<cplx>& sig, std::size_t off,
                     const std::vector<cplx>& replica, double window_energy) {
    if (window_energy <= 0.0) return 0.0;
    cplx acc = 0.0;
    const std::size_t n = replica.size();
    const cplx* s = sig.data() + off;
    for (std::size_t i = 0; i < n; i++) acc += s[i] * std::conj(replica[i]);
    return std::abs(acc) / std::sqrt(window_energy);
}

bool better(const Candidate& a, const Candidate& b, const std::vector<double>& grid) {
    if (a.metric != b.metric) return a.metric > b.metric;
    const double fa = std::abs(grid[a.cfo_index]), fb = std::abs(grid[b.cfo_index]);
    if (fa != fb) return fa < fb;
    return a.offset < b.offset;
}

}  // namespace

SyncResult acquire(const std::vector<cplx>& signal, const PssConfig& cfg,
                   double sample_rate_hz) {
    const std::vector<cplx> base = pss_time_replica(cfg, sample_rate_hz);
    const std::size_t n = base.size();
    if (signal.size() < n) throw LengthMismatch("acquire: signal shorter than the replica");

    const std::vector<double> grid = cfg.effective_grid();
    std::vector<std::vector<cplx>> bank;
    bank.reserve(grid.size());
    for (double f : grid) {
        std::vector<cplx> r = base;
        const double w = 2.0 * M_PI * f / sample_rate_hz;
        for (std::size_t i = 0; i < n; i++) r[i] *= std::polar(1.0, w * double(i));
        bank.push_back(std::move(r));
    }

    // running window energy via prefix sums
    std::vector<double> prefix(signal.size() + 1, 0.0);
    for (std::size_t i = 0; i < signal.size(); i++)
        prefix[i + 1] = prefix[i] + std::norm(signal[i]);
    auto energy = [&](std::size_t off) { return prefix[off + n] - prefix[off]; };

    const std::size_t last = signal.size() - n;

    // Coarse scan: every offset against every bank branch. The correlation
    // against a branch is a linear cross-correlation, evaluated with FFTs:
    // corr_b(t) = sum_i sig[t+i] conj(rep_b[i]).
    std::size_t fft_len = 1;
    while (fft_len < signal.size() + n) fft_len <<= 1;
    std::vector<cplx> sig_f(signal);
    sig_f.resize(fft_len, cplx{});
    detail::fft(sig_f, /*inverse=*/false);

    Candidate coarse;
    std::vector<cplx> work(fft_len);
    for (std::size_t b = 0; b < bank.size(); b++) {
        std::fill(work.begin(), work.end(), cplx{});
        std::copy(bank[b].begin(), bank[b].end(), work.begin());
        detail::fft(work, /*inverse=*/false);
        for (std::size_t i = 0; i < fft_len; i++) work[i] = sig_f[i] * std::conj(work[i]);
        detail::fft(work, /*inverse=*/true);
        const double inv_len = 1.0 / double(fft_len);
        for (std::size_t off = 0; off <= last; off++) {
            const double e = energy(off);
            if (e <= 0.0) continue;
            Candidate c{off, b, std::abs(work[off]) * inv_len / std::sqrt(e)};
            if (better(c, coarse, grid)) coarse = c;
        }
    }

    // tracking: direct re-scoring around the coarse candidate
    const std::size_t lo = coarse.offset > cfg.track_window ? coarse.offset - cfg.track_window : 0;
    const std::size_t hi = std::min(last, coarse.offset + cfg.track_window);
    Candidate best;  // rebuilt from direct evaluations only
    for (std::size_t off = lo; off <= hi; off++) {
        const double e = energy(off);
        for (std::size_t b = 0; b < bank.size(); b++) {
            Candidate c{off, b, window_metric(signal, off, bank[b], e)};
            if (better(c, best, grid)) best = c;
        }
    }

    if (best.metric < cfg.detection_threshold)
        throw NoPeak("acquire: best metric " + std::to_string(best.metric) +
                     " below threshold " + std::to_string(cfg.detection_threshold));
    return {best.offset, grid[best.cfo_index], best.metric};
}

}  // namespace mami
