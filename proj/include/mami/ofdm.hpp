#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mami/cmat.hpp"

namespace mami {

struct OfdmParams {
    std::size_t fft_size = 2048;
    std::size_t used_subcarriers = 1200;
    std::size_t cp_len = 144;
    double sample_rate_hz = 30.72e6;
    double symbol_duration_s = 2192.0 / 30.72e6;

    // LTE-like 20 MHz numerology.
    static OfdmParams lte20();

    std::size_t symbol_samples() const { return fft_size + cp_len; }
    double subcarrier_spacing_hz() const { return sample_rate_hz / double(fft_size); }
    void check() const;  // throws DimensionMismatch on inconsistent fields
};

enum class SymbolType : char {
    UlPilot = 'P',
    UlData = 'U',
    DlPilot = 'p',
    DlData = 'D',
    Guard = 'G',
};

bool is_uplink(SymbolType t);
bool is_downlink(SymbolType t);

// Ordered OFDM symbol types of one radio frame.
struct FrameSchedule {
    std::vector<SymbolType> symbols;
    std::size_t slot_len = 7;
    std::size_t slots_per_subframe = 2;
    std::size_t subframes = 10;

    std::size_t size() const { return symbols.size(); }
    std::string to_string() const;
    // slots_per_subframe 0 groups automatically: pairs of slots when the
    // length allows, single-slot subframes otherwise.
    static FrameSchedule parse(const std::string& s, std::size_t slot_len = 7,
                               std::size_t slots_per_subframe = 0);

    // Checks the structural invariants: symbol count, a UL pilot ahead of
    // any DL data, and a guard at every link-direction change.
    void check() const;
};

// Default 10 ms frame: one control subframe (guards), then 18 data slots of
// seven symbols each. Slot layout P U U G x D G where x is a DL pilot in
// the first data subframe and DL data elsewhere.
FrameSchedule default_frame();

// Per-user comb allocation: user k owns subcarriers {offset_k, offset_k+K, ...}.
struct PilotAllocation {
    std::size_t num_users = 0;
    std::vector<std::size_t> comb_offset;  // permutation of 0..K-1

    static PilotAllocation standard(std::size_t k);  // offset_k = k
};

std::vector<std::vector<std::size_t>> pilot_grid(const PilotAllocation& alloc,
                                                 std::size_t used);

// Frequency symbols (length used_subcarriers) to cyclic-prefixed time
// samples (length fft+cp). Guard bands and DC are zero; unitary scaling.
std::vector<cplx> ofdm_modulate(const std::vector<cplx>& freq_symbols, const OfdmParams& p);

// Inverse of ofdm_modulate: strip CP, FFT, pick the used bins.
std::vector<cplx> ofdm_demodulate(const std::vector<cplx>& time_samples, const OfdmParams& p);

struct MobilityLimit {
    double nu_max_hz = 0.0;
    double v_max_mps = 0.0;
};

// Solves J0(2 pi nu tp) = corr_threshold on the first monotone branch and
// converts to a speed at the given carrier. Threshold must lie in (0.4, 1).
MobilityLimit mobility_limit(double tp_s, double corr_threshold, double fc_hz);

}  // namespace mami
