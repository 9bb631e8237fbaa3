#pragma once

#include <cstdint>
#include <vector>

#include "mami/cmat.hpp"

namespace mami {

// LTE-style primary synchronization signal in the band center. The length-63
// root sequence is punctured at its middle element and mapped onto the 62
// subcarriers around DC at 15 kHz spacing (center 1.2 MHz, DC null).
struct PssConfig {
    std::size_t root = 25;
    std::size_t length = 63;
    double occupied_bw_hz = 1.2e6;
    double subcarrier_spacing_hz = 15e3;
    std::vector<double> cfo_grid_hz;  // empty selects the default grid
    double detection_threshold = 0.3;
    std::size_t track_window = 32;    // +/- samples re-scored around the coarse peak

    // +/- span in `steps` equally spaced offsets (odd count keeps 0 on grid).
    static std::vector<double> grid(double span_hz, std::size_t steps);
    std::vector<double> effective_grid() const;
};

struct SyncResult {
    std::size_t timing_offset = 0;
    double cfo_hz = 0.0;
    double peak_metric = 0.0;  // normalized correlation in [0, 1]
};

// x[n] = exp(-j pi root n (n+1) / length), n = 0..length-1 (odd length).
// Requires gcd(root, length) = 1.
std::vector<cplx> zadoff_chu(std::size_t root, std::size_t length);

// Time-domain PSS replica of one OFDM symbol (no CP) at the given rate.
std::vector<cplx> pss_time_replica(const PssConfig& cfg, double sample_rate_hz);

// Coarse scan over the whole buffer with a bank of frequency-shifted
// replicas, then per-sample tracking in a window around the coarse peak.
// Ties break toward lower |cfo| then lower offset. Throws NoPeak when the
// best metric stays under the detection threshold.
SyncResult acquire(const std::vector<cplx>& signal, const PssConfig& cfg,
                   double sample_rate_hz);

}  // namespace mami
