#ifndef CUTFORGE_PARALLEL_HPP
#define CUTFORGE_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace cutforge {

/// Worker count: explicit jobs if > 0, else CUTFORGE_JOBS, else hardware.
inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("CUTFORGE_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Splits [0, count) into contiguous chunks and runs fn(begin, end) on each.
/// fn must not touch shared mutable state except through its own chunk.
template <typename Fn>
void parallel_chunks(std::size_t count, int jobs, Fn&& fn) {
    int workers = resolve_jobs(jobs);
    if (workers <= 1 || count <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::size_t nchunks = std::min<std::size_t>(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    std::size_t base = count / nchunks, extra = count % nchunks, begin = 0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t len = base + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, len] { fn(begin, begin + len); });
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace cutforge

#endif
