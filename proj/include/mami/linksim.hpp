#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mami/channel.hpp"
#include "mami/mimoproc.hpp"
#include "mami/modulation.hpp"
#include "mami/ofdm.hpp"

namespace mami {

enum class ChannelMode { IidPerSubcarrier, FlatBlock, AwgnUnit };
enum class CsiMode { Estimated, Perfect };
enum class SweepDirection { UL, DL };
// Whether uplink pilots follow the swept gain (shared PA with the data, the
// measurement-campaign behaviour) or stay at a fixed level.
enum class PilotGainMode { Sweep, Fixed };

struct SweepConfig {
    std::size_t m = 4;
    std::size_t k = 2;
    Detector scheme_ul;
    Precoder scheme_dl;
    Modulation modulation = Modulation::QPSK;
    std::vector<double> gain_grid_db = {0.0};
    std::uint64_t bits_per_point = 100000;
    std::uint64_t seed = 1;
    ChannelMode channel_mode = ChannelMode::FlatBlock;
    std::vector<double> ul_power_db;  // per-user offsets (diag P_ul); empty = equal
    SweepDirection direction = SweepDirection::UL;
    CsiMode csi_mode = CsiMode::Estimated;
    PilotGainMode pilot_gain_mode = PilotGainMode::Sweep;
    double ul_pilot_gain_db = 10.0;  // pilot level when not swept; always used for DL sweeps
    double noise_power = 1.0;
    double doppler_hz = 0.0;
    std::size_t used_subcarriers = 1200;

    void check() const;
    std::size_t blocks() const { return used_subcarriers / k; }
    double user_power_db(std::size_t u) const {
        return ul_power_db.empty() ? 0.0 : ul_power_db.at(u);
    }
};

// Gains applied to one frame, in dB relative to unit noise.
struct FrameGains {
    double ul_pilot_db = 0.0;
    double ul_data_db = 0.0;
    double dl_db = 0.0;
};

FrameGains gains_for_point(const SweepConfig& cfg, double gain_db);

struct SymbolOutcome {
    SymbolType type = SymbolType::Guard;
    std::vector<std::uint64_t> per_user_bits;
    std::vector<std::uint64_t> per_user_errors;
};

// Mutable per-frame simulation state: channel realizations, the held CSI on
// both ends, and the symbol counter that drives seed derivation.
//
// Random streams derive from the state seed as
//   channel entity i:      derive(seed, {rng::kChannel, i})
//   noise at symbol n:     derive(seed, {rng::kNoise, n})
//   data bits at symbol n: derive(seed, {rng::kData, n})
//   evolution at symbol n: derive(seed, {rng::kEvolve, n, i})
// so outcomes are reproducible and independent of evaluation order.
struct LinkState {
    SweepConfig cfg;
    std::uint64_t seed = 0;
    std::vector<CMat> channels;  // per entity: subcarrier, block, or single
    CsiEstimate bs_csi;
    double bs_csi_pilot_db = 0.0;       // pilot gain the estimate was taken at
    bool bs_csi_valid = false;
    std::vector<std::vector<cplx>> ue_csi;  // per block, per user
    bool ue_csi_valid = false;
    std::size_t symbol_counter = 0;

    std::size_t channel_index(std::size_t subcarrier) const;
    const CMat& channel_at(std::size_t subcarrier) const {
        return channels[channel_index(subcarrier)];
    }
};

LinkState make_link_state(const SweepConfig& cfg, std::uint64_t seed);

// Processes one frame symbol by symbol: UL pilots refresh the BS estimate,
// UL data is detected and counted, DL pilots refresh the UE single-tap
// estimates, DL data is precoded/equalized and counted, guards only advance
// the channel.
std::vector<SymbolOutcome> run_tdd_frame(LinkState& state, const FrameSchedule& schedule,
                                         const FrameGains& gains);

struct BerRecord {
    double gain_db = 0.0;
    std::vector<double> per_user_ber;
    std::vector<std::uint64_t> per_user_errors;
    std::uint64_t bits_counted = 0;  // per user
    SweepDirection direction = SweepDirection::UL;
};

// Runs frames at every grid point until bits_per_point bits per user are
// counted in the swept direction. Frame f of point p uses the seed
// derive(cfg.seed, {rng::kSweepPoint, p, f}); results do not depend on
// scheduling order.
std::vector<BerRecord> ber_sweep(const SweepConfig& cfg, const FrameSchedule& schedule);

struct UserSnr {
    double snr_linear = 0.0;
    bool non_positive = false;
};

// Per-user SNR from two channel estimates of a static channel: difference
// extracts the noise level, sum the signal-plus-noise level.
std::vector<UserSnr> snr_from_consecutive_estimates(const CMat& h1, const CMat& h2);

// Bounded CSI snapshot buffer. Capacity accounting models the co-processor
// store: blocks x M x K entries of bytes_per_entry per snapshot. With
// keep_samples off only the budget and timestamps are tracked, for auditing
// long recordings without holding them in host memory.
class CsiRecorder {
  public:
    explicit CsiRecorder(std::uint64_t capacity_bytes = 2000000000ULL,
                         std::uint64_t bytes_per_entry = 5, bool keep_samples = true)
        : capacity_bytes_(capacity_bytes),
          bytes_per_entry_(bytes_per_entry),
          keep_samples_(keep_samples) {}

    void record(const CsiEstimate& csi, double t_s);

    std::uint64_t modeled_bytes() const { return modeled_bytes_; }
    std::uint64_t bytes_per_entry() const { return bytes_per_entry_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t blocks() const { return blocks_; }
    const std::vector<double>& timestamps() const { return timestamps_; }
    const std::vector<std::vector<CMat>>& samples() const { return samples_; }

  private:
    std::uint64_t capacity_bytes_;
    std::uint64_t bytes_per_entry_;
    bool keep_samples_;
    std::uint64_t modeled_bytes_ = 0;
    std::uint32_t m_ = 0, k_ = 0, blocks_ = 0;
    std::vector<double> timestamps_;
    std::vector<std::vector<CMat>> samples_;
};

struct CsiTrace {
    std::uint32_t m = 0, k = 0, blocks = 0;
    double interval_ms = 0.0;
    std::vector<double> timestamps;
    std::vector<std::vector<CMat>> samples;  // per snapshot, per block
};

// Samples the source every interval_ms for duration_s into the recorder and
// returns the stored trace. Timestamps start at zero.
CsiTrace csi_snapshot(CsiRecorder& recorder,
                      const std::function<CsiEstimate(double)>& source, double interval_ms,
                      double duration_s);

// Flat binary trace format: "LMMT", then version, M, K, blocks, interval_ms
// as little-endian 32-bit words, then per snapshot and block the row-major
// matrix entries as interleaved real/imag float64.
void write_csi_trace(const std::string& path, const CsiTrace& trace);
CsiTrace read_csi_trace(const std::string& path);

}  // namespace mami
