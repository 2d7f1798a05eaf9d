#include "cpf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cpf {

std::size_t default_chunk_count(std::size_t n) {
    if (n == 0) return 0;
    // Chunk layout depends only on n, so per-chunk RNG substreams (and
    // therefore results) do not depend on the machine's thread count.
    return std::clamp<std::size_t>(n / 4096, 1, 1024);
}

void parallel_chunks(
    std::size_t n, std::size_t n_chunks,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0 || n_chunks == 0) return;
    n_chunks = std::min(n_chunks, n);
    const std::size_t base = n / n_chunks;
    const std::size_t extra = n % n_chunks;
    auto bounds = [&](std::size_t c) {
        const std::size_t begin = c * base + std::min(c, extra);
        const std::size_t len = base + (c < extra ? 1 : 0);
        return std::pair<std::size_t, std::size_t>(begin, begin + len);
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>({hw, n_chunks});
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            auto [b, e] = bounds(c);
            fn(c, b, e);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (std::size_t c; (c = next.fetch_add(1)) < n_chunks;) {
                    auto [b, e] = bounds(c);
                    fn(c, b, e);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n_chunks); // stop handing out further chunks
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cpf
