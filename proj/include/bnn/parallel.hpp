#ifndef BNN_PARALLEL_HPP
#define BNN_PARALLEL_HPP

#include <cstddef>
#include <future>
#include <vector>

namespace bnn {

// Fixed slicing of [0, n) into at most `threads` contiguous chunks.
// Boundaries depend only on (n, threads), never on scheduling, so reducing
// the per-chunk results in chunk order is deterministic for any thread count.
template <typename T, typename Fn>
std::vector<T> map_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = 1;
    const std::size_t nchunks = std::min<std::size_t>(threads, n == 0 ? 1 : n);
    std::vector<T> results;
    results.reserve(nchunks);
    if (nchunks <= 1) {
        results.push_back(fn(std::size_t{0}, n));
        return results;
    }
    std::vector<std::future<T>> futures;
    futures.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t begin = n * c / nchunks;
        const std::size_t end = n * (c + 1) / nchunks;
        futures.push_back(std::async(std::launch::async, [&fn, begin, end] {
            return fn(begin, end);
        }));
    }
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

} // namespace bnn

#endif
