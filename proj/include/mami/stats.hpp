#pragma once

#include <cstdint>

namespace mami {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion (default 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959964);

// Gaussian tail Q(x) = P(N(0,1) > x).
double q_function(double x);

}  // namespace mami
