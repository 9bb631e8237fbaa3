#include "mami/modulation.hpp"

#include <cmath>

namespace mami {

namespace {

// Per-axis Gray maps. Amplitudes normalized for unit average symbol energy:
// QPSK 1/sqrt(2), 16-QAM 1/sqrt(10), 64-QAM 1/sqrt(42).

double pam2(std::uint8_t b) { return b ? 1.0 : -1.0; }

std::uint8_t pam2_demap(double x) { return x > 0.0 ? 1 : 0; }

// Gray order over {-3,-1,+1,+3}: 00 01 11 10
double pam4(const std::uint8_t* b) {
    static const double lvl[4] = {-3.0, -1.0, 1.0, 3.0};
    static const int gray[4] = {0, 1, 3, 2};
    const int idx = (b[0] << 1) | b[1];
    for (int i = 0; i < 4; i++)
        if (gray[i] == idx) return lvl[i];
    return 0.0;
}

void pam4_demap(double x, std::uint8_t* b) {
    int i = x < -2.0 ? 0 : x < 0.0 ? 1 : x < 2.0 ? 2 : 3;
    static const int gray[4] = {0, 1, 3, 2};
    b[0] = (gray[i] >> 1) & 1;
    b[1] = gray[i] & 1;
}

// Gray order over {-7..+7}: 000 001 011 010 110 111 101 100
double pam8(const std::uint8_t* b) {
    static const double lvl[8] = {-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0};
    static const int gray[8] = {0, 1, 3, 2, 6, 7, 5, 4};
    const int idx = (b[0] << 2) | (b[1] << 1) | b[2];
    for (int i = 0; i < 8; i++)
        if (gray[i] == idx) return lvl[i];
    return 0.0;
}

void pam8_demap(double x, std::uint8_t* b) {
    int i = int(std::floor((x + 7.0) / 2.0 + 0.5));
    if (i < 0) i = 0;
    if (i > 7) i = 7;
    static const int gray[8] = {0, 1, 3, 2, 6, 7, 5, 4};
    b[0] = (gray[i] >> 2) & 1;
    b[1] = (gray[i] >> 1) & 1;
    b[2] = gray[i] & 1;
}

}  // namespace

std::size_t bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::QPSK: return 2;
        case Modulation::QAM16: return 4;
        case Modulation::QAM64: return 6;
    }
    return 2;
}

cplx map_symbol(Modulation m, const std::uint8_t* bits) {
    switch (m) {
        case Modulation::QPSK:
            return {pam2(bits[0]) * M_SQRT1_2, pam2(bits[1]) * M_SQRT1_2};
        case Modulation::QAM16: {
            const double s = 1.0 / std::sqrt(10.0);
            return {pam4(bits) * s, pam4(bits + 2) * s};
        }
        case Modulation::QAM64: {
            const double s = 1.0 / std::sqrt(42.0);
            return {pam8(bits) * s, pam8(bits + 3) * s};
        }
    }
    return {};
}

void demap_symbol(Modulation m, cplx y, std::uint8_t* bits) {
    switch (m) {
        case Modulation::QPSK:
            bits[0] = pam2_demap(y.real());
            bits[1] = pam2_demap(y.imag());
            return;
        case Modulation::QAM16:
            pam4_demap(y.real() * std::sqrt(10.0), bits);
            pam4_demap(y.imag() * std::sqrt(10.0), bits + 2);
            return;
        case Modulation::QAM64:
            pam8_demap(y.real() * std::sqrt(42.0), bits);
            pam8_demap(y.imag() * std::sqrt(42.0), bits + 3);
            return;
    }
}

}  // namespace mami
