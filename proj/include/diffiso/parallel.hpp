#pragma once

// Deterministic fork/join over an index range. Work is split into fixed
// blocks; per-block results are merged in block order, so the outcome is
// independent of thread count and scheduling.

#include <cstdint>
#include <thread>
#include <vector>

namespace diffiso {

inline unsigned default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

// Runs fn(begin, end) over disjoint blocks covering [lo, hi).
template <class BlockFn>
void parallel_blocks(std::uint64_t lo, std::uint64_t hi, unsigned threads, BlockFn fn) {
    if (hi <= lo) return;
    if (threads <= 1) {
        fn(lo, hi);
        return;
    }
    std::uint64_t total = hi - lo;
    unsigned nblocks = threads;
    if (total < nblocks) nblocks = static_cast<unsigned>(total);
    std::uint64_t chunk = (total + nblocks - 1) / nblocks;
    std::vector<std::thread> pool;
    pool.reserve(nblocks);
    for (unsigned b = 0; b < nblocks; ++b) {
        std::uint64_t s = lo + b * chunk;
        std::uint64_t e = s + chunk < hi ? s + chunk : hi;
        if (s >= e) break;
        pool.emplace_back([fn, s, e] { fn(s, e); });
    }
    for (auto& t : pool) t.join();
}

// Map each block to a partial result, then reduce partials in block order.
template <class T, class BlockFn, class MergeFn>
T parallel_reduce(std::uint64_t lo, std::uint64_t hi, unsigned threads, T init, BlockFn block_fn,
                  MergeFn merge) {
    if (hi <= lo) return init;
    if (threads <= 1) {
        T part = block_fn(lo, hi);
        merge(init, part);
        return init;
    }
    std::uint64_t total = hi - lo;
    unsigned nblocks = threads;
    if (total < nblocks) nblocks = static_cast<unsigned>(total);
    std::uint64_t chunk = (total + nblocks - 1) / nblocks;
    std::vector<T> parts;
    std::vector<std::thread> pool;
    unsigned used = 0;
    for (unsigned b = 0; b < nblocks; ++b) {
        std::uint64_t s = lo + b * chunk;
        if (s >= hi) break;
        ++used;
    }
    parts.resize(used, init);
    for (unsigned b = 0; b < used; ++b) {
        std::uint64_t s = lo + b * chunk;
        std::uint64_t e = s + chunk < hi ? s + chunk : hi;
        pool.emplace_back([&parts, b, block_fn, s, e] { parts[b] = block_fn(s, e); });
    }
    for (auto& t : pool) t.join();
    for (unsigned b = 0; b < used; ++b) merge(init, parts[b]);
    return init;
}

}  // namespace diffiso
