#pragma once

#include <cstddef>
#include <functional>

// Deterministic data-parallel helper. Work is cut into chunks by index; the
// chunk decomposition depends only on `n`, never on the thread count, so any
// per-chunk RNG substream or output slot is reproducible across machines.

namespace cpf {

// Invokes fn(chunk_index, begin, end) for a fixed chunk decomposition of
// [0, n). Chunks run on a small thread pool; exceptions propagate to the
// caller. fn must only write to state owned by its chunk.
void parallel_chunks(std::size_t n, std::size_t n_chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Suggested chunk count for n work items.
std::size_t default_chunk_count(std::size_t n);

} // namespace cpf
