#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace rarenet {

// Static contiguous chunking over [0, count). Each index is processed exactly
// once; outputs must be written to disjoint per-index slots so the result is
// identical for any worker count. Exceptions from workers are rethrown.
template <class Body>
void parallel_for(long long count, int workers, Body&& body) {
    if (count <= 0) return;
    workers = std::max(1, workers);
    long long nthreads = std::min<long long>(workers, count);
    if (nthreads == 1) {
        for (long long i = 0; i < count; ++i) body(i);
        return;
    }
    long long chunk = (count + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
    for (long long t = 0; t < nthreads; ++t) {
        long long lo = t * chunk;
        long long hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi, t] {
            try {
                for (long long i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace rarenet
