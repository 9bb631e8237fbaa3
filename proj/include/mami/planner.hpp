#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mami/ofdm.hpp"

namespace mami {

// Dimensioning inputs. f_sub is derived from the OFDM numerology; rate
// arithmetic uses the value quoted to 0.1 MB/s, the convention the published
// budget figures follow, while f_sub_exact_hz keeps full precision.
struct SystemParams {
    std::size_t m = 100;
    std::size_t k = 12;
    OfdmParams ofdm;
    std::size_t n_ant = 2;        // antennas per SDR
    std::size_t word_bytes = 3;   // w, I+Q combined, subcarrier transport
    std::size_t word_bytes_ant = 4;  // w_ant, antenna-rate transport
    double fc_hz = 3.7e9;

    double f_sub_exact_hz() const {
        return ofdm.sample_rate_hz * double(ofdm.used_subcarriers) /
               double(ofdm.fft_size + ofdm.cp_len);
    }
    // quoted to 0.1 MB/s steps (16.8 for the LTE-like numerology)
    double f_sub_quoted_hz() const;
    void check() const;

    static SystemParams lumami();
};

struct HardwareProfile {
    double sdr_max_rate_Bps = 830e6;
    std::size_t sdr_max_links = 15;
    double co_max_rate_Bps = 2400e6;
    std::size_t co_max_links = 32;
    double rf_tx_delay_s = 2.25e-6;
    double rf_rx_delay_s = 2.25e-6;
    double fft_delay_s = 35e-6;

    void check() const;
    static HardwareProfile lumami();
};

struct ProcessingRequirements {
    double fft_gops = 0.0;
    double detection_gops = 0.0;
    double precoding_gops = 0.0;
    double recip_cal_gops = 0.0;
    double pseudo_inverse_gops = 0.0;
};

struct ShufflingRequirements {
    std::size_t links_to_central = 0;  // 2M
    double antenna_rate_Bps = 0.0;     // w_ant M F_s
    double subcarrier_rate_Bps = 0.0;  // w M F_sub
    double information_rate_Bps = 0.0; // K F_sub
};

struct ConstraintCheck {
    std::string name;
    double lhs = 0.0;  // evaluated requirement
    double rhs = 0.0;  // hardware bound
    bool pass = false;
};

struct LatencyBudget {
    double window_s = 0.0;     // UL pilot end to first DL symbol start
    double rf_s = 0.0;         // TX + RX front-end delays
    double ofdm_s = 0.0;       // FFT + IFFT
    double remaining_s = 0.0;  // left for CSI + precoding + routing
    bool feasible = false;
};

struct PlanReport {
    ProcessingRequirements processing;
    ShufflingRequirements shuffling;
    std::size_t n_sub = 0;
    std::size_t n_co = 0;
    std::size_t subsystems = 0;         // ceil(M / (n_sub n_ant))
    std::size_t p2p_co_formula = 0;     // 2 ceil(M/n_sub) + 2
    std::size_t p2p_co_physical = 0;    // 2 subsystems + 2
    double host_extra_Bps = 0.0;
    std::vector<ConstraintCheck> checks;
    std::optional<LatencyBudget> latency;
    std::vector<std::string> annotations;

    bool all_pass() const;
};

// Real-valued operation rates of the five baseband functions, in ops/s.
// A complex multiply counts as four real multiplies; the pseudo-inverse must
// finish within two OFDM symbols.
ProcessingRequirements processing_requirements(const SystemParams& p);

ShufflingRequirements shuffling_requirements(const SystemParams& p);

// Largest n_sub whose aggregated subcarrier stream fits the SDR throughput
// bound, optionally also respecting the SDR link budget against n_co.
std::size_t max_subsystem_size(const SystemParams& p, const HardwareProfile& hw,
                               std::optional<std::size_t> n_co = std::nullopt);

// Smallest n_co keeping the per-co-processor rate under its bound.
std::size_t min_coprocessors(const SystemParams& p, const HardwareProfile& hw);

// Evaluates the four partitioning inequalities for a chosen configuration.
// extras_Bps adds per-direction host traffic onto the co-processor rate.
PlanReport validate(const SystemParams& p, std::size_t n_sub, std::size_t n_co,
                    const HardwareProfile& hw, std::optional<double> extras_Bps = std::nullopt);

// Turnaround decomposition for a schedule: the window between the first UL
// pilot and the next DL symbol, minus front-end and OFDM terms.
LatencyBudget latency_budget(const FrameSchedule& schedule, const SystemParams& p,
                             const HardwareProfile& hw);

// f_sub / K: zeroth-order hold produces one weighting matrix per K subcarriers.
double detection_matrix_rate(const SystemParams& p);

// Host visualization stream added per co-processor: n_sc constellation points
// at 2 bytes plus two raw subcarrier symbols at 4 bytes each, per frame.
// Quoted in the published convention (bytes over ms read as MB/s).
double host_visualization_rate_Bps(std::size_t subcarriers_per_co, double frame_ms);

// Aligned text rendering of the report.
std::string format_report(const PlanReport& report);
// CSV rows: check_name,lhs,rhs,pass with MB/s units for rates.
std::string report_csv(const PlanReport& report);

}  // namespace mami
