#pragma once

#include <cstdint>
#include <vector>

#include "mami/cmat.hpp"

namespace mami {

// Diagonal transceiver transfer function (one complex gain per chain).
// Holds R_B, T_B, R_U, T_U and the calibration coefficients.
struct DiagonalTransfer {
    std::vector<cplx> entries;

    static DiagonalTransfer identity(std::size_t n) {
        return {std::vector<cplx>(n, cplx{1.0})};
    }
    std::size_t size() const { return entries.size(); }
};

// Reciprocal propagation matrix, stored once and shared by both link
// directions: rows are users, columns are base-station antennas, so the
// downlink sees b directly and the uplink sees its transpose.
struct PropagationChannel {
    CMat b;  // K x M
    std::size_t subcarrier_index = 0;
};

// Non-reciprocal transceiver front-ends on both ends of the link.
struct HardwareFront {
    DiagonalTransfer r_bs;  // M
    DiagonalTransfer t_bs;  // M
    DiagonalTransfer r_ue;  // K
    DiagonalTransfer t_ue;  // K

    static HardwareFront identity(std::size_t m, std::size_t k) {
        return {DiagonalTransfer::identity(m), DiagonalTransfer::identity(m),
                DiagonalTransfer::identity(k), DiagonalTransfer::identity(k)};
    }
};

// i.i.d. CN(0,1) entries, deterministic for a fixed seed.
CMat draw_rayleigh(std::size_t m, std::size_t k, std::uint64_t seed);

// Random transceiver responses: uniform phase, log-normal magnitude with
// the given sigma in dB. Exercises calibration non-trivially.
HardwareFront draw_hardware_front(std::size_t m, std::size_t k, std::uint64_t seed,
                                  double mag_sigma_db = 1.0);

// Uplink radio channel G = R_B B^T T_U  (M x K).
CMat compose_ul(const PropagationChannel& prop, const HardwareFront& hw);

// Downlink radio channel H = R_U B T_B  (K x M).
CMat compose_dl(const PropagationChannel& prop, const HardwareFront& hw);

// signal + CN(0, noise_power) noise; noise_power 0 returns the input.
std::vector<cplx> awgn(const std::vector<cplx>& signal, double noise_power,
                       std::uint64_t seed);

// Channel time correlation J0(2 pi doppler dt) under the Jakes model.
double jakes_correlation(double doppler_hz, double dt_s);

// Gauss-Markov step: rho g + sqrt(1-rho^2) innovation, innovation iid
// CN(0,1). rho = 1 returns g unchanged.
CMat evolve_channel(const CMat& g_prev, double rho, std::uint64_t seed);

}  // namespace mami
