#include "mami/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "mami/rng.hpp"

namespace mami {

void SweepConfig::check() const {
    if (m < 1 || k < 1 || m < k) throw DimensionMismatch("sweep: requires m >= k >= 1");
    if (gain_grid_db.empty()) throw LengthMismatch("sweep: empty gain grid");
    if (used_subcarriers < k) throw LengthMismatch("sweep: fewer subcarriers than users");
    if (!ul_power_db.empty() && ul_power_db.size() != k)
        throw LengthMismatch("sweep: ul_power_db needs one entry per user");
    if (noise_power < 0.0) throw DimensionMismatch("sweep: negative noise power");
}

FrameGains gains_for_point(const SweepConfig& cfg, double gain_db) {
    FrameGains g;
    if (cfg.direction == SweepDirection::UL) {
        g.ul_data_db = gain_db;
        g.ul_pilot_db =
            cfg.pilot_gain_mode == PilotGainMode::Sweep ? gain_db : cfg.ul_pilot_gain_db;
        g.dl_db = 0.0;
    } else {
        g.dl_db = gain_db;
        g.ul_pilot_db = cfg.ul_pilot_gain_db;
        g.ul_data_db = cfg.ul_pilot_gain_db;
    }
    return g;
}

std::size_t LinkState::channel_index(std::size_t subcarrier) const {
    switch (cfg.channel_mode) {
        case ChannelMode::IidPerSubcarrier: return subcarrier;
        case ChannelMode::FlatBlock: return subcarrier / cfg.k;
        case ChannelMode::AwgnUnit:
        default: return 0;
    }
}

LinkState make_link_state(const SweepConfig& cfg, std::uint64_t seed) {
    cfg.check();
    LinkState st;
    st.cfg = cfg;
    st.seed = seed;
    std::size_t entities = 1;
    if (cfg.channel_mode == ChannelMode::IidPerSubcarrier)
        entities = cfg.blocks() * cfg.k;  // whole blocks only
    else if (cfg.channel_mode == ChannelMode::FlatBlock)
        entities = cfg.blocks();
    st.channels.reserve(entities);
    for (std::size_t i = 0; i < entities; i++) {
        if (cfg.channel_mode == ChannelMode::AwgnUnit) {
            CMat ones(cfg.m, cfg.k);
            for (auto& v : ones.data()) v = 1.0;
            st.channels.push_back(std::move(ones));
        } else {
            st.channels.push_back(
                draw_rayleigh(cfg.m, cfg.k, rng::derive(seed, {rng::kChannel, i})));
        }
    }
    return st;
}

namespace {

double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }

std::vector<double> user_amps(const SweepConfig& cfg, double gain_db) {
    std::vector<double> a(cfg.k);
    for (std::size_t u = 0; u < cfg.k; u++) a[u] = db_to_amp(gain_db + cfg.user_power_db(u));
    return a;
}

// Detection weight plus the per-user demap reference (W times the CSI it
// was built from, diagonal entries).
struct DetectBlock {
    CMat w;
    std::vector<cplx> ref;
};

DetectBlock build_detector(const CMat& csi, const Detector& det) {
    DetectBlock d;
    d.w = detect_matrix(csi, det);
    CMat wg = multiply(d.w, csi);
    d.ref.resize(csi.cols());
    for (std::size_t u = 0; u < csi.cols(); u++) d.ref[u] = wg(u, u);
    return d;
}

}  // namespace

std::vector<SymbolOutcome> run_tdd_frame(LinkState& st, const FrameSchedule& schedule,
                                         const FrameGains& gains) {
    const SweepConfig& cfg = st.cfg;
    const std::size_t m = cfg.m, k = cfg.k;
    const std::size_t blocks = cfg.blocks();
    const std::size_t used = blocks * k;  // whole blocks only
    const PilotAllocation alloc = PilotAllocation::standard(k);
    const std::size_t bps = bits_per_symbol(cfg.modulation);
    const double rho =
        cfg.doppler_hz > 0.0
            ? jakes_correlation(cfg.doppler_hz, OfdmParams::lte20().symbol_duration_s)
            : 1.0;

    // Detection/precoding caches, invalidated when inputs move.
    std::vector<DetectBlock> det_cache;
    std::vector<CMat> pre_cache;
    bool det_valid = false, pre_valid = false;

    auto csi_for_entity = [&](std::size_t entity, double amp_ratio) -> CMat {
        if (cfg.csi_mode == CsiMode::Perfect) {
            CMat g = st.channels[entity];
            const std::vector<double> amps = user_amps(cfg, gains.ul_data_db);
            for (std::size_t r = 0; r < m; r++)
                for (std::size_t u = 0; u < k; u++) g(r, u) *= amps[u];
            return g;
        }
        return scale(st.bs_csi.g_hat[entity], amp_ratio);
    };

    // Number of detection/precoding entities: per subcarrier when CSI is
    // perfect and the channel varies per subcarrier, else per block.
    const bool per_subcarrier_w =
        cfg.csi_mode == CsiMode::Perfect && cfg.channel_mode == ChannelMode::IidPerSubcarrier;
    const std::size_t det_entities = per_subcarrier_w ? used : blocks;

    auto detect_entity_of = [&](std::size_t s) { return per_subcarrier_w ? s : s / k; };
    auto channel_entity_for_det = [&](std::size_t e) {
        // maps a detection entity to a channel entity
        if (cfg.csi_mode == CsiMode::Perfect) {
            if (cfg.channel_mode == ChannelMode::AwgnUnit) return std::size_t{0};
            if (cfg.channel_mode == ChannelMode::FlatBlock) return e;  // per block
            return e;                                                  // per subcarrier
        }
        return e;  // unused for estimated mode
    };

    auto rebuild_detectors = [&]() {
        det_cache.clear();
        det_cache.reserve(det_entities);
        const double ratio = db_to_amp(gains.ul_data_db - st.bs_csi_pilot_db);
        for (std::size_t e = 0; e < det_entities; e++) {
            const std::size_t src = cfg.csi_mode == CsiMode::Perfect
                                        ? channel_entity_for_det(e)
                                        : e;
            det_cache.push_back(build_detector(csi_for_entity(src, ratio), cfg.scheme_ul));
        }
        det_valid = true;
    };

    auto rebuild_precoders = [&]() {
        pre_cache.clear();
        pre_cache.reserve(det_entities);
        for (std::size_t e = 0; e < det_entities; e++) {
            CMat csi;
            if (cfg.csi_mode == CsiMode::Perfect)
                csi = st.channels[channel_entity_for_det(e)];
            else
                csi = st.bs_csi.g_hat[e];
            pre_cache.push_back(precode_matrix(csi, cfg.scheme_dl));
        }
        pre_valid = true;
    };

    std::vector<SymbolOutcome> outcomes;
    outcomes.reserve(schedule.size());

    for (SymbolType sym : schedule.symbols) {
        // channel aging between consecutive symbols
        if (st.symbol_counter > 0 && rho < 1.0 && cfg.channel_mode != ChannelMode::AwgnUnit) {
            for (std::size_t i = 0; i < st.channels.size(); i++)
                st.channels[i] = evolve_channel(
                    st.channels[i], rho,
                    rng::derive(st.seed, {rng::kEvolve, st.symbol_counter, i}));
            det_valid = pre_valid = false;
            if (cfg.csi_mode == CsiMode::Perfect) st.bs_csi_valid = false;
        }

        SymbolOutcome out;
        out.type = sym;
        out.per_user_bits.assign(k, 0);
        out.per_user_errors.assign(k, 0);

        rng::Stream noise(rng::derive(st.seed, {rng::kNoise, st.symbol_counter}));
        rng::Stream data(rng::derive(st.seed, {rng::kData, st.symbol_counter}));
        const double sigma = std::sqrt(cfg.noise_power);

        switch (sym) {
            case SymbolType::Guard:
                break;

            case SymbolType::UlPilot: {
                const std::vector<double> amps = user_amps(cfg, gains.ul_pilot_db);
                CMat rx(m, used);
                for (std::size_t s = 0; s < used; s++) {
                    const std::size_t user = s % k;  // standard comb
                    const CMat& g = st.channel_at(s);
                    for (std::size_t r = 0; r < m; r++) {
                        cplx v = g(r, user) * amps[user];
                        if (sigma > 0.0) v += sigma * noise.cgauss();
                        rx(r, s) = v;
                    }
                }
                const std::vector<cplx> tx_pilots(k, cplx{1.0});
                st.bs_csi = ls_estimate(rx, tx_pilots, alloc);
                st.bs_csi_pilot_db = gains.ul_pilot_db;
                st.bs_csi_valid = true;
                det_valid = pre_valid = false;
                break;
            }

            case SymbolType::UlData: {
                if (cfg.csi_mode == CsiMode::Estimated && !st.bs_csi_valid)
                    throw LengthMismatch("run_tdd_frame: UL data before any UL pilot");
                if (!det_valid) rebuild_detectors();
                const std::vector<double> amps = user_amps(cfg, gains.ul_data_db);
                std::vector<std::uint8_t> bits(bps * k);
                std::vector<cplx> z(k), r(m);
                for (std::size_t s = 0; s < used; s++) {
                    for (std::size_t u = 0; u < k; u++) {
                        for (std::size_t b = 0; b < bps; b++) bits[u * bps + b] = data.bit();
                        z[u] = map_symbol(cfg.modulation, &bits[u * bps]) * amps[u];
                    }
                    const CMat& g = st.channel_at(s);
                    for (std::size_t row = 0; row < m; row++) {
                        cplx acc = 0.0;
                        for (std::size_t u = 0; u < k; u++) acc += g(row, u) * z[u];
                        if (sigma > 0.0) acc += sigma * noise.cgauss();
                        r[row] = acc;
                    }
                    const DetectBlock& det = det_cache[detect_entity_of(s)];
                    std::vector<cplx> zh = equalize(det.w, r);
                    std::uint8_t rx_bits[8];
                    for (std::size_t u = 0; u < k; u++) {
                        const cplx ref = det.ref[u];
                        const cplx y = std::abs(ref) > 1e-300 ? zh[u] / ref : zh[u];
                        demap_symbol(cfg.modulation, y, rx_bits);
                        out.per_user_bits[u] += bps;
                        for (std::size_t b = 0; b < bps; b++)
                            if (rx_bits[b] != bits[u * bps + b]) out.per_user_errors[u]++;
                    }
                }
                break;
            }

            case SymbolType::DlPilot: {
                if (cfg.csi_mode == CsiMode::Estimated && !st.bs_csi_valid)
                    throw LengthMismatch("run_tdd_frame: DL pilot before any UL pilot");
                if (!pre_valid) rebuild_precoders();
                const double dl_amp = db_to_amp(gains.dl_db);
                if (st.ue_csi.size() != blocks) st.ue_csi.assign(blocks, std::vector<cplx>(k));
                for (std::size_t blk = 0; blk < blocks; blk++) {
                    for (std::size_t u = 0; u < k; u++) {
                        const std::size_t s = blk * k + u;  // user's comb bin
                        const CMat& g = st.channel_at(s);
                        const CMat& p = pre_cache[detect_entity_of(s)];
                        // h_eff = H[u,:] P[:,u] with H = G^T (identity hardware)
                        cplx h_eff = 0.0;
                        for (std::size_t row = 0; row < m; row++)
                            h_eff += g(row, u) * p(row, u);
                        cplx y = dl_amp * h_eff;
                        if (sigma > 0.0) y += sigma * noise.cgauss();
                        st.ue_csi[blk][u] = y;  // pilot value is 1
                    }
                }
                st.ue_csi_valid = true;
                break;
            }

            case SymbolType::DlData: {
                if (cfg.csi_mode == CsiMode::Estimated && !st.bs_csi_valid)
                    throw LengthMismatch("run_tdd_frame: DL data before any UL pilot");
                if (!st.ue_csi_valid)
                    throw ZeroPilot("run_tdd_frame: DL data before any DL pilot");
                if (!pre_valid) rebuild_precoders();
                const double dl_amp = db_to_amp(gains.dl_db);
                std::vector<std::uint8_t> bits(bps * k);
                std::vector<cplx> u_sym(k), x(m), y(k);
                for (std::size_t s = 0; s < used; s++) {
                    const std::size_t blk = s / k;
                    for (std::size_t u = 0; u < k; u++) {
                        for (std::size_t b = 0; b < bps; b++) bits[u * bps + b] = data.bit();
                        u_sym[u] = map_symbol(cfg.modulation, &bits[u * bps]);
                    }
                    const CMat& p = pre_cache[detect_entity_of(s)];
                    for (std::size_t row = 0; row < m; row++) {
                        cplx acc = 0.0;
                        for (std::size_t u = 0; u < k; u++) acc += p(row, u) * u_sym[u];
                        x[row] = dl_amp * acc;
                    }
                    const CMat& g = st.channel_at(s);
                    for (std::size_t u = 0; u < k; u++) {
                        cplx acc = 0.0;  // H = G^T
                        for (std::size_t row = 0; row < m; row++) acc += g(row, u) * x[row];
                        if (sigma > 0.0) acc += sigma * noise.cgauss();
                        y[u] = acc;
                    }
                    std::vector<cplx> eq = ue_equalize_dl(y, st.ue_csi[blk]);
                    std::uint8_t rx_bits[8];
                    for (std::size_t u = 0; u < k; u++) {
                        demap_symbol(cfg.modulation, eq[u], rx_bits);
                        out.per_user_bits[u] += bps;
                        for (std::size_t b = 0; b < bps; b++)
                            if (rx_bits[b] != bits[u * bps + b]) out.per_user_errors[u]++;
                    }
                }
                break;
            }
        }

        st.symbol_counter++;
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

std::vector<BerRecord> ber_sweep(const SweepConfig& cfg, const FrameSchedule& schedule) {
    cfg.check();
    schedule.check();
    const SymbolType counted = cfg.direction == SweepDirection::UL ? SymbolType::UlData
                                                                   : SymbolType::DlData;
    if (std::count(schedule.symbols.begin(), schedule.symbols.end(), counted) == 0)
        throw LengthMismatch("ber_sweep: schedule has no data symbols in the swept direction");

    std::vector<BerRecord> records;
    records.reserve(cfg.gain_grid_db.size());
    for (std::size_t p = 0; p < cfg.gain_grid_db.size(); p++) {
        const double gain = cfg.gain_grid_db[p];
        const FrameGains gains = gains_for_point(cfg, gain);
        std::vector<std::uint64_t> bits(cfg.k, 0), errors(cfg.k, 0);
        std::uint64_t frame = 0;
        while (*std::min_element(bits.begin(), bits.end()) < cfg.bits_per_point) {
            LinkState st =
                make_link_state(cfg, rng::derive(cfg.seed, {rng::kSweepPoint, p, frame}));
            const auto outcomes = run_tdd_frame(st, schedule, gains);
            for (const auto& out : outcomes) {
                if (out.type != counted) continue;
                for (std::size_t u = 0; u < cfg.k; u++) {
                    bits[u] += out.per_user_bits[u];
                    errors[u] += out.per_user_errors[u];
                }
            }
            frame++;
        }
        BerRecord rec;
        rec.gain_db = gain;
        rec.direction = cfg.direction;
        rec.bits_counted = *std::min_element(bits.begin(), bits.end());
        rec.per_user_ber.resize(cfg.k);
        rec.per_user_errors = errors;
        for (std::size_t u = 0; u < cfg.k; u++)
            rec.per_user_ber[u] = bits[u] ? double(errors[u]) / double(bits[u]) : 0.0;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<UserSnr> snr_from_consecutive_estimates(const CMat& h1, const CMat& h2) {
    if (!h1.same_shape(h2))
        throw DimensionMismatch("snr_from_consecutive_estimates: shape mismatch");
    std::vector<UserSnr> out(h1.cols());
    for (std::size_t u = 0; u < h1.cols(); u++) {
        double diff = 0.0, sum = 0.0;
        for (std::size_t r = 0; r < h1.rows(); r++) {
            diff += std::norm(h1(r, u) - h2(r, u));
            sum += std::norm(h1(r, u) + h2(r, u));
        }
        const double noise = diff / 2.0;
        const double splusn = sum / 4.0;
        if (noise <= 0.0) {
            out[u] = {std::numeric_limits<double>::infinity(), false};
            continue;
        }
        const double snr = (splusn - noise) / noise;
        out[u] = {snr, snr <= 0.0};
    }
    return out;
}

void CsiRecorder::record(const CsiEstimate& csi, double t_s) {
    std::uint64_t bytes = 0;
    for (const auto& g : csi.g_hat)
        bytes += std::uint64_t(g.rows()) * g.cols() * bytes_per_entry_;
    if (modeled_bytes_ + bytes > capacity_bytes_)
        throw BufferOverrun("csi recorder: snapshot would exceed " +
                            std::to_string(capacity_bytes_) + " bytes");
    if (timestamps_.empty() && !csi.g_hat.empty()) {
        blocks_ = std::uint32_t(csi.g_hat.size());
        m_ = std::uint32_t(csi.g_hat[0].rows());
        k_ = std::uint32_t(csi.g_hat[0].cols());
    }
    modeled_bytes_ += bytes;
    timestamps_.push_back(t_s);
    if (keep_samples_) samples_.push_back(csi.g_hat);
}

CsiTrace csi_snapshot(CsiRecorder& recorder,
                      const std::function<CsiEstimate(double)>& source, double interval_ms,
                      double duration_s) {
    if (interval_ms <= 0.0) throw DimensionMismatch("csi_snapshot: interval must be positive");
    const std::uint64_t n = std::uint64_t(std::floor(duration_s * 1000.0 / interval_ms));
    for (std::uint64_t i = 0; i < n; i++) {
        const double t = double(i) * interval_ms / 1000.0;
        recorder.record(source(t), t);
    }
    CsiTrace trace;
    trace.interval_ms = interval_ms;
    trace.timestamps = recorder.timestamps();
    trace.samples = recorder.samples();
    trace.m = recorder.m();
    trace.k = recorder.k();
    trace.blocks = recorder.blocks();
    return trace;
}

namespace {

void put_u32(std::ofstream& f, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    f.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& f) {
    unsigned char b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

}  // namespace

void write_csi_trace(const std::string& path, const CsiTrace& trace) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw LengthMismatch("write_csi_trace: cannot open " + path);
    f.write("LMMT", 4);
    put_u32(f, 1);  // version
    put_u32(f, trace.m);
    put_u32(f, trace.k);
    put_u32(f, trace.blocks);
    put_u32(f, std::uint32_t(std::llround(trace.interval_ms)));
    for (const auto& snapshot : trace.samples) {
        for (const auto& blockmat : snapshot) {
            for (const auto& v : blockmat.data()) {
                const double re = v.real(), im = v.imag();
                f.write(reinterpret_cast<const char*>(&re), 8);
                f.write(reinterpret_cast<const char*>(&im), 8);
            }
        }
    }
}

CsiTrace read_csi_trace(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw LengthMismatch("read_csi_trace: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (std::memcmp(magic, "LMMT", 4) != 0)
        throw LengthMismatch("read_csi_trace: bad magic");
    const std::uint32_t version = get_u32(f);
    if (version != 1) throw LengthMismatch("read_csi_trace: unsupported version");
    CsiTrace trace;
    trace.m = get_u32(f);
    trace.k = get_u32(f);
    trace.blocks = get_u32(f);
    trace.interval_ms = double(get_u32(f));
    const std::size_t entries = std::size_t(trace.m) * trace.k;
    while (f) {
        std::vector<CMat> snapshot;
        snapshot.reserve(trace.blocks);
        for (std::uint32_t b = 0; b < trace.blocks; b++) {
            CMat mat(trace.m, trace.k);
            for (std::size_t i = 0; i < entries; i++) {
                double re, im;
                f.read(reinterpret_cast<char*>(&re), 8);
                f.read(reinterpret_cast<char*>(&im), 8);
                if (!f) break;
                mat.data()[i] = {re, im};
            }
            if (!f) break;
            snapshot.push_back(std::move(mat));
        }
        if (!f || snapshot.size() != trace.blocks) break;
        trace.timestamps.push_back(double(trace.samples.size()) * trace.interval_ms / 1000.0);
        trace.samples.push_back(std::move(snapshot));
    }
    return trace;
}

}  // namespace mami
