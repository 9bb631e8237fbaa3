#include "mami/mimoproc.hpp"

#include <cmath>

namespace mami {

CMat detect_matrix(const CMat& g, const Detector& d) {
    if (g.rows() < g.cols()) throw DimensionMismatch("detect_matrix: requires M >= K");
    switch (d.scheme) {
        case DetectScheme::MRC:
            return hermitian(g);
        case DetectScheme::ZF:
            return regularized_pinv(g, 0.0, d.engine, d.neumann_terms);
        case DetectScheme::RZF:
        default:
            return regularized_pinv(g, d.beta_dec, d.engine, d.neumann_terms);
    }
}

CMat precode_matrix(const CMat& g, const Precoder& p) {
    const std::size_t m = g.rows(), k = g.cols();
    Detector d;
    d.engine = p.engine;
    d.neumann_terms = p.neumann_terms;
    switch (p.scheme) {
        case PrecodeScheme::MRT: d.scheme = DetectScheme::MRC; break;
        case PrecodeScheme::ZF: d.scheme = DetectScheme::ZF; break;
        case PrecodeScheme::RZF:
        default:
            d.scheme = DetectScheme::RZF;
            d.beta_dec = p.beta_pre;
            break;
    }
    // DL weighting is the transpose of the UL one: G^H -> G*,
    // (G^H G)^-1 G^H -> G* (G^H G)^-T, and likewise regularized.
    CMat pre = transpose(detect_matrix(g, d));
    if (!p.calibration.entries.empty()) {
        if (p.calibration.size() != m)
            throw DimensionMismatch("precode_matrix: calibration length must be M");
        pre = diag_left_multiply(p.calibration.entries, pre);
    }
    const double norm = frobenius_norm(pre);
    if (norm == 0.0) throw RankDeficient("precode_matrix: zero precoder");
    return scale(pre, std::sqrt(double(k)) / norm);
}

DiagonalTransfer calibration_matrix(const HardwareFront& hw) {
    if (hw.r_bs.size() != hw.t_bs.size())
        throw DimensionMismatch("calibration_matrix: front-end lengths disagree");
    DiagonalTransfer c;
    c.entries.resize(hw.r_bs.size());
    for (std::size_t i = 0; i < c.entries.size(); i++) {
        if (std::abs(hw.t_bs.entries[i]) < 1e-14)
            throw SingularDiagonal("calibration_matrix: zero TX entry at " + std::to_string(i));
        c.entries[i] = hw.r_bs.entries[i] / hw.t_bs.entries[i];
    }
    return c;
}

CsiEstimate ls_estimate(const CMat& rx_pilot_subcarriers, const std::vector<cplx>& tx_pilots,
                        const PilotAllocation& alloc) {
    const std::size_t m = rx_pilot_subcarriers.rows();
    const std::size_t used = rx_pilot_subcarriers.cols();
    const std::size_t k = alloc.num_users;
    if (tx_pilots.size() != k)
        throw LengthMismatch("ls_estimate: one pilot value per user required");
    if (k == 0 || used < k) throw LengthMismatch("ls_estimate: too few subcarriers");
    for (const auto& pv : tx_pilots)
        if (std::abs(pv) < 1e-14) throw ZeroPilot("ls_estimate: zero pilot value");

    CsiEstimate est;
    est.hold_block = k;
    const std::size_t blocks = used / k;
    est.g_hat.reserve(blocks);
    for (std::size_t b = 0; b < blocks; b++) {
        CMat gb(m, k);
        for (std::size_t u = 0; u < k; u++) {
            const std::size_t s = b * k + alloc.comb_offset[u];
            const cplx inv_pilot = 1.0 / tx_pilots[u];
            for (std::size_t r = 0; r < m; r++) gb(r, u) = rx_pilot_subcarriers(r, s) * inv_pilot;
        }
        est.g_hat.push_back(std::move(gb));
    }
    return est;
}

std::vector<cplx> equalize(const CMat& w, const std::vector<cplx>& r) {
    return multiply(w, r);
}

std::vector<cplx> ue_equalize_dl(const std::vector<cplx>& rx,
                                 const std::vector<cplx>& dl_pilot_est) {
    if (rx.size() != dl_pilot_est.size())
        throw LengthMismatch("ue_equalize_dl: per-user lengths disagree");
    std::vector<cplx> out(rx.size());
    for (std::size_t i = 0; i < rx.size(); i++) {
        if (std::abs(dl_pilot_est[i]) < 1e-300)
            throw ZeroPilot("ue_equalize_dl: zero pilot estimate for user " + std::to_string(i));
        out[i] = rx[i] / dl_pilot_est[i];
    }
    return out;
}

}  // namespace mami
