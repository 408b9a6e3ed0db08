#pragma once

#include <cstddef>
#include <functional>

namespace flatcurve {

// Worker count: FLATCURVE_THREADS if set and positive, else hardware concurrency.
int worker_count();
void set_worker_count(int n);  // 0 restores the environment default

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers write to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace flatcurve
