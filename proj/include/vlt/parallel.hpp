#pragma once

#include <cstddef>
#include <functional>

namespace vlt::par {

/// Worker count used by every parallel kernel. Results never depend on it:
/// each output sample is written by exactly one task and reductions use a
/// fixed blocking independent of the thread count.
void set_threads(int n);
int threads();

/// Runs fn(k) for k in [0, n). Iterations may run concurrently and in any
/// order; fn must only write outputs owned by k.
void for_each(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& fn);

/// Sum of term(k) over k in [0, n) with a summation order that depends only
/// on n: fixed-size blocks are summed in parallel, then combined in order.
double deterministic_sum(std::ptrdiff_t n, const std::function<double(std::ptrdiff_t)>& term);

}  // namespace vlt::par
