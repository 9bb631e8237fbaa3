#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mami::detail {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;

fftw_plan plan_for(int n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    // Dummy buffer only for planning; execution happens on caller arrays,
    // which requires the UNALIGNED flag.
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plan_cache.emplace(key, p);
    return p;
}

}  // namespace

void fft(std::vector<cplx>& x, bool inverse) {
    if (x.empty()) return;
    const int n = static_cast<int>(x.size());
    fftw_plan p = plan_for(n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
    auto* buf = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace mami::detail
