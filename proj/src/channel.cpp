#include "mami/channel.hpp"

#include <cmath>

#include "mami/rng.hpp"

namespace mami {

CMat draw_rayleigh(std::size_t m, std::size_t k, std::uint64_t seed) {
    if (m < 1 || k < 1) throw DimensionMismatch("draw_rayleigh: empty shape");
    rng::Stream s(seed);
    CMat g(m, k);
    for (auto& v : g.data()) v = s.cgauss();
    return g;
}

HardwareFront draw_hardware_front(std::size_t m, std::size_t k, std::uint64_t seed,
                                  double mag_sigma_db) {
    rng::Stream s(seed);
    auto draw = [&](std::size_t n) {
        DiagonalTransfer d;
        d.entries.resize(n);
        for (auto& v : d.entries) {
            const double phase = 2.0 * M_PI * s.uniform();
            const double mag = std::pow(10.0, mag_sigma_db * s.gauss() / 20.0);
            v = std::polar(mag, phase);
        }
        return d;
    };
    HardwareFront hw;
    hw.r_bs = draw(m);
    hw.t_bs = draw(m);
    hw.r_ue = draw(k);
    hw.t_ue = draw(k);
    return hw;
}

CMat compose_ul(const PropagationChannel& prop, const HardwareFront& hw) {
    const std::size_t k = prop.b.rows(), m = prop.b.cols();
    if (hw.r_bs.size() != m || hw.t_ue.size() != k)
        throw DimensionMismatch("compose_ul: transfer lengths disagree with channel");
    CMat g(m, k);
    for (std::size_t mm = 0; mm < m; mm++)
        for (std::size_t kk = 0; kk < k; kk++)
            g(mm, kk) = hw.r_bs.entries[mm] * prop.b(kk, mm) * hw.t_ue.entries[kk];
    return g;
}

CMat compose_dl(const PropagationChannel& prop, const HardwareFront& hw) {
    const std::size_t k = prop.b.rows(), m = prop.b.cols();
    if (hw.r_ue.size() != k || hw.t_bs.size() != m)
        throw DimensionMismatch("compose_dl: transfer lengths disagree with channel");
    CMat h(k, m);
    for (std::size_t kk = 0; kk < k; kk++)
        for (std::size_t mm = 0; mm < m; mm++)
            h(kk, mm) = hw.r_ue.entries[kk] * prop.b(kk, mm) * hw.t_bs.entries[mm];
    return h;
}

std::vector<cplx> awgn(const std::vector<cplx>& signal, double noise_power,
                       std::uint64_t seed) {
    if (noise_power < 0.0) throw DimensionMismatch("awgn: negative noise power");
    if (noise_power == 0.0) return signal;
    rng::Stream s(seed);
    std::vector<cplx> out = signal;
    const double sigma = std::sqrt(noise_power);
    for (auto& v : out) v += sigma * s.cgauss();
    return out;
}

double jakes_correlation(double doppler_hz, double dt_s) {
    if (doppler_hz < 0.0 || dt_s < 0.0)
        throw DimensionMismatch("jakes_correlation: negative argument");
    return std::cyl_bessel_j(0.0, 2.0 * M_PI * doppler_hz * dt_s);
}

CMat evolve_channel(const CMat& g_prev, double rho, std::uint64_t seed) {
    if (std::abs(rho) > 1.0) throw DimensionMismatch("evolve_channel: |rho| must be <= 1");
    if (rho == 1.0) return g_prev;
    rng::Stream s(seed);
    const double w = std::sqrt(1.0 - rho * rho);
    CMat g = g_prev;
    for (auto& v : g.data()) v = rho * v + w * s.cgauss();
    return g;
}

}  // namespace mami
