#include "mami/ofdm.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace mami {

OfdmParams OfdmParams::lte20() { return OfdmParams{}; }

void OfdmParams::check() const {
    if (used_subcarriers > fft_size)
        throw DimensionMismatch("ofdm: used subcarriers exceed FFT size");
    if (cp_len >= fft_size) throw DimensionMismatch("ofdm: CP not shorter than FFT");
    if (sample_rate_hz <= 0.0) throw DimensionMismatch("ofdm: sample rate must be positive");
    const double expected = double(fft_size + cp_len) / sample_rate_hz;
    if (std::abs(symbol_duration_s - expected) > 1e-9 * expected)
        throw DimensionMismatch("ofdm: symbol duration inconsistent with samples");
}

bool is_uplink(SymbolType t) { return t == SymbolType::UlPilot || t == SymbolType::UlData; }
bool is_downlink(SymbolType t) { return t == SymbolType::DlPilot || t == SymbolType::DlData; }

std::string FrameSchedule::to_string() const {
    std::string s;
    s.reserve(symbols.size());
    for (SymbolType t : symbols) s.push_back(static_cast<char>(t));
    return s;
}

FrameSchedule FrameSchedule::parse(const std::string& s, std::size_t slot_len,
                                   std::size_t slots_per_subframe) {
    FrameSchedule f;
    f.slot_len = slot_len;
    for (char c : s) {
        switch (c) {
            case 'P': f.symbols.push_back(SymbolType::UlPilot); break;
            case 'U': f.symbols.push_back(SymbolType::UlData); break;
            case 'p': f.symbols.push_back(SymbolType::DlPilot); break;
            case 'D': f.symbols.push_back(SymbolType::DlData); break;
            case 'G': f.symbols.push_back(SymbolType::Guard); break;
            default:
                throw LengthMismatch(std::string("schedule: unknown symbol letter '") + c + "'");
        }
    }
    if (slot_len == 0 || f.symbols.size() % slot_len != 0)
        throw LengthMismatch("schedule: length not a whole number of slots");
    const std::size_t slots = f.symbols.size() / slot_len;
    if (slots_per_subframe == 0) slots_per_subframe = (slots % 2 == 0) ? 2 : 1;
    if (slots % slots_per_subframe != 0)
        throw LengthMismatch("schedule: length not a whole number of subframes");
    f.slots_per_subframe = slots_per_subframe;
    f.subframes = slots / slots_per_subframe;
    return f;
}

void FrameSchedule::check() const {
    if (symbols.size() != slot_len * slots_per_subframe * subframes)
        throw LengthMismatch("schedule: symbol count disagrees with slot geometry");
    bool pilot_seen = false;
    for (std::size_t i = 0; i < symbols.size(); i++) {
        if (symbols[i] == SymbolType::UlPilot) pilot_seen = true;
        if (symbols[i] == SymbolType::DlData && !pilot_seen)
            throw LengthMismatch("schedule: DL data before any UL pilot");
    }
    // every UL->DL or DL->UL change must cross a guard
    SymbolType prev = SymbolType::Guard;
    bool have_prev = false;
    for (SymbolType t : symbols) {
        if (t == SymbolType::Guard) {
            have_prev = false;
            continue;
        }
        if (have_prev && ((is_uplink(prev) && is_downlink(t)) ||
                          (is_downlink(prev) && is_uplink(t))))
            throw LengthMismatch("schedule: link direction change without guard");
        prev = t;
        have_prev = true;
    }
}

FrameSchedule default_frame() {
    FrameSchedule f;
    f.slot_len = 7;
    f.slots_per_subframe = 2;
    f.subframes = 10;
    f.symbols.reserve(140);
    // control subframe: synchronization and control signaling, no payload here
    for (std::size_t i = 0; i < f.slot_len * f.slots_per_subframe; i++)
        f.symbols.push_back(SymbolType::Guard);
    for (std::size_t sf = 1; sf < f.subframes; sf++) {
        for (std::size_t slot = 0; slot < f.slots_per_subframe; slot++) {
            const bool dl_pilot_slot = (sf == 1);
            f.symbols.push_back(SymbolType::UlPilot);
            f.symbols.push_back(SymbolType::UlData);
            f.symbols.push_back(SymbolType::UlData);
            f.symbols.push_back(SymbolType::Guard);
            f.symbols.push_back(dl_pilot_slot ? SymbolType::DlPilot : SymbolType::DlData);
            f.symbols.push_back(SymbolType::DlData);
            f.symbols.push_back(SymbolType::Guard);
        }
    }
    f.check();
    return f;
}

PilotAllocation PilotAllocation::standard(std::size_t k) {
    PilotAllocation a;
    a.num_users = k;
    a.comb_offset.resize(k);
    for (std::size_t i = 0; i < k; i++) a.comb_offset[i] = i;
    return a;
}

std::vector<std::vector<std::size_t>> pilot_grid(const PilotAllocation& alloc,
                                                 std::size_t used) {
    const std::size_t k = alloc.num_users;
    if (k == 0 || alloc.comb_offset.size() != k)
        throw LengthMismatch("pilot_grid: bad allocation");
    std::vector<std::vector<std::size_t>> grid(k);
    for (std::size_t u = 0; u < k; u++) {
        for (std::size_t s = alloc.comb_offset[u]; s < used; s += k)
            grid[u].push_back(s);
    }
    return grid;
}

namespace {

// Used bins sit symmetrically around a null DC bin: half below, half above.
// Input index i < used/2 maps to negative frequencies (FFT bins N-used/2+i),
// the rest to bins 1..used-used/2.
std::size_t bin_for_index(std::size_t i, std::size_t used, std::size_t n) {
    const std::size_t lower = used / 2;
    if (i < lower) return n - lower + i;
    return i - lower + 1;
}

}  // namespace

std::vector<cplx> ofdm_modulate(const std::vector<cplx>& freq_symbols, const OfdmParams& p) {
    p.check();
    if (freq_symbols.size() != p.used_subcarriers)
        throw LengthMismatch("ofdm_modulate: expected one symbol per used subcarrier");
    std::vector<cplx> spectrum(p.fft_size, cplx{});
    for (std::size_t i = 0; i < freq_symbols.size(); i++)
        spectrum[bin_for_index(i, p.used_subcarriers, p.fft_size)] = freq_symbols[i];
    detail::fft(spectrum, /*inverse=*/true);
    const double s = 1.0 / std::sqrt(double(p.fft_size));
    for (auto& v : spectrum) v *= s;
    std::vector<cplx> out;
    out.reserve(p.symbol_samples());
    out.insert(out.end(), spectrum.end() - p.cp_len, spectrum.end());
    out.insert(out.end(), spectrum.begin(), spectrum.end());
    return out;
}

std::vector<cplx> ofdm_demodulate(const std::vector<cplx>& time_samples, const OfdmParams& p) {
    p.check();
    if (time_samples.size() != p.symbol_samples())
        throw LengthMismatch("ofdm_demodulate: expected fft+cp samples");
    std::vector<cplx> core(time_samples.begin() + p.cp_len, time_samples.end());
    detail::fft(core, /*inverse=*/false);
    const double s = 1.0 / std::sqrt(double(p.fft_size));
    std::vector<cplx> out(p.used_subcarriers);
    for (std::size_t i = 0; i < out.size(); i++)
        out[i] = core[bin_for_index(i, p.used_subcarriers, p.fft_size)] * s;
    return out;
}

MobilityLimit mobility_limit(double tp_s, double corr_threshold, double fc_hz) {
    if (tp_s <= 0.0) throw DimensionMismatch("mobility_limit: pilot spacing must be positive");
    if (fc_hz <= 0.0) throw DimensionMismatch("mobility_limit: carrier must be positive");
    if (!(corr_threshold > 0.4 && corr_threshold < 1.0))
        throw NoRoot("mobility_limit: threshold outside the first-branch range (0.4, 1)");

    constexpr double kJ0FirstZero = 2.404825557695773;
    constexpr double kC = 299792458.0;
    const double scale = 2.0 * M_PI * tp_s;
    double lo = 0.0, hi = kJ0FirstZero / scale;
    // J0 is 1 at lo and 0 at hi, so the threshold is bracketed.
    for (int it = 0; it < 200; it++) {
        const double mid = 0.5 * (lo + hi);
        if (std::cyl_bessel_j(0.0, scale * mid) > corr_threshold)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) <= 1e-6 * std::max(hi, 1e-300) * 0.5) break;
    }
    MobilityLimit lim;
    lim.nu_max_hz = 0.5 * (lo + hi);
    lim.v_max_mps = kC * lim.nu_max_hz / fc_hz;
    return lim;
}

}  // namespace mami
