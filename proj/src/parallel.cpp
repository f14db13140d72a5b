#include "vlt/parallel.hpp"

#include <algorithm>
#include <vector>

#include <omp.h>

namespace vlt::par {

namespace {
constexpr std::ptrdiff_t kBlock = 4096;
}

void set_threads(int n) { omp_set_num_threads(std::max(1, n)); }

int threads() { return omp_get_max_threads(); }

void for_each(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& fn) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) fn(k);
}

double deterministic_sum(std::ptrdiff_t n, const std::function<double(std::ptrdiff_t)>& term) {
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::ptrdiff_t end = std::min(n, (b + 1) * kBlock);
        double s = 0.0;
        for (std::ptrdiff_t k = b * kBlock; k < end; ++k) s += term(k);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace vlt::par
