// Minimal index-parallel loop. Work items must be independent; callers that
// need deterministic output write into pre-sized slots and reduce in index
// order afterwards. Worker count defaults to the machine parallelism and is
// capped by the ATOM_THREADS environment variable.

#pragma once

#include <cstddef>
#include <functional>

namespace atom {

// Resolved worker count (>= 1).
std::size_t worker_count();

// Calls fn(i) for every i in [0, n). Chunks are assigned statically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace atom
