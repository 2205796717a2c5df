#ifndef RESONANCE_PARALLEL_HPP
#define RESONANCE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace resonance {

/// Worker count: RESONANCE_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned thread_count()
{
    if (const char *env = std::getenv("RESONANCE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 *  Calls fn(begin, end, chunk) over [0, n) split into contiguous chunks, one
 *  per worker. Chunk boundaries depend only on n and the worker count; callers
 *  reduce per-chunk results in chunk order.
 */
template<typename Fn>
std::size_t parallel_chunks(std::size_t n, Fn &&fn, unsigned workers = thread_count())
{
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n / 4096 + 1));
    const std::size_t per = (n + chunks - 1) / chunks;
    if (chunks == 1) {
        fn(std::size_t{0}, n, std::size_t{0});
        return 1;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t b = std::min(n, c * per), e = std::min(n, b + per);
        pool.emplace_back([&fn, b, e, c] { fn(b, e, c); });
    }
    for (auto &t : pool)
        t.join();
    return chunks;
}

} // namespace resonance
#endif // RESONANCE_PARALLEL_HPP
