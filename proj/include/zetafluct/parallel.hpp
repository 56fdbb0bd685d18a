#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zetafluct {

// Deterministic chunked parallel loop.  The range [begin, end) is split into
// a fixed number of chunks that depends only on the range size, never on the
// worker count, so results assembled per-chunk are bit-for-bit reproducible.
// body(chunk_index, lo, hi) must only write to state owned by its chunk.
inline void parallel_chunks(std::size_t begin, std::size_t end,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                            std::size_t min_chunk = 1024) {
    if (end <= begin) return;
    const std::size_t n = end - begin;
    std::size_t nchunks = (n + min_chunk - 1) / min_chunk;
    if (nchunks > 256) nchunks = 256;
    if (nchunks == 0) nchunks = 1;
    const std::size_t chunk = (n + nchunks - 1) / nchunks;

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, nchunks));

    if (nthreads <= 1) {
        for (std::size_t c = 0; c * chunk < n; ++c) {
            const std::size_t lo = begin + c * chunk;
            const std::size_t hi = std::min(end, lo + chunk);
            body(c, lo, hi);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            const std::size_t lo = begin + c * chunk;
            if (lo >= end) return;
            const std::size_t hi = std::min(end, lo + chunk);
            try {
                body(c, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::size_t chunk_count(std::size_t n, std::size_t min_chunk = 1024) {
    if (n == 0) return 0;
    std::size_t nchunks = (n + min_chunk - 1) / min_chunk;
    if (nchunks > 256) nchunks = 256;
    const std::size_t chunk = (n + nchunks - 1) / nchunks;
    return (n + chunk - 1) / chunk;
}

}  // namespace zetafluct
