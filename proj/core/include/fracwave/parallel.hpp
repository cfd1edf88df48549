#pragma once

#include <cstddef>
#include <functional>

namespace fracwave {

/// Number of worker threads used by parallel_for. Affects speed only: every
/// parallel loop in the library writes disjoint outputs and reduces serially.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracwave
