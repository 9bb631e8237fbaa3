#pragma once

#include <vector>

#include "mami/channel.hpp"
#include "mami/cmat.hpp"
#include "mami/matrixkit.hpp"
#include "mami/ofdm.hpp"

namespace mami {

enum class DetectScheme { MRC, ZF, RZF };
enum class PrecodeScheme { MRT, ZF, RZF };

struct Detector {
    DetectScheme scheme = DetectScheme::ZF;
    double beta_dec = 0.0;  // used by RZF only
    InverseEngine engine = InverseEngine::Direct;
    std::size_t neumann_terms = 3;
};

struct Precoder {
    PrecodeScheme scheme = PrecodeScheme::ZF;
    double beta_pre = 0.0;
    DiagonalTransfer calibration;  // C, length M; empty means identity
    InverseEngine engine = InverseEngine::Direct;
    std::size_t neumann_terms = 3;
};

// One channel estimate per block of hold_block adjacent subcarriers.
struct CsiEstimate {
    std::vector<CMat> g_hat;  // per block, M x K
    std::size_t hold_block = 0;

    std::size_t blocks() const { return g_hat.size(); }
    const CMat& at_subcarrier(std::size_t s) const { return g_hat[s / hold_block]; }
};

// K x M uplink weighting matrix for the selected scheme and engine.
// MRC: G^H.  ZF: (G^H G)^-1 G^H.  RZF: (G^H G + beta I)^-1 G^H.
CMat detect_matrix(const CMat& g, const Detector& d);

// M x K downlink precoding matrix: diag(C) times the conjugate-transposed
// detection weighting of the matching scheme, scaled so ||P||_F^2 = K
// (equal radiated power across schemes).
CMat precode_matrix(const CMat& g, const Precoder& p);

// C = R_B T_B^-1, estimated entrywise from the base-station front-end.
DiagonalTransfer calibration_matrix(const HardwareFront& hw);

// Least-squares estimation from one pilot symbol. Each user's comb bin in a
// block yields that user's column; a zeroth-order hold spreads the estimate
// over the K subcarriers of the block.
CsiEstimate ls_estimate(const CMat& rx_pilot_subcarriers, const std::vector<cplx>& tx_pilots,
                        const PilotAllocation& alloc);

// z_hat = W r
std::vector<cplx> equalize(const CMat& w, const std::vector<cplx>& r);

// Per-user single-tap equalization against the estimated effective DL channel.
std::vector<cplx> ue_equalize_dl(const std::vector<cplx>& rx,
                                 const std::vector<cplx>& dl_pilot_est);

}  // namespace mami
