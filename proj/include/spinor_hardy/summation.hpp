#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace spinh {

// Pairwise (tree) summation with a fixed split point. The reduction tree
// depends only on the array length, never on thread count or scheduling,
// so repeated runs over identical inputs produce identical bits.
double pairwise_sum(std::span<const double> v);

// Number of worker threads: SPINOR_HARDY_THREADS if set (clamped to
// [1, 256]), otherwise the hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one
// per worker. fn must only write to slots indexed by its own i; under
// that contract results are independent of the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace spinh
