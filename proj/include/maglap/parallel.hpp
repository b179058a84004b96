#pragma once

#include <cstddef>
#include <functional>

namespace maglap {

/// Worker count used when a call site passes threads == 0: the MAGLAP_THREADS
/// environment variable, the value set by set_default_thread_count, or
/// hardware concurrency, in that order.
unsigned default_thread_count();
void set_default_thread_count(unsigned threads);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Iterations must be independent; the first exception thrown is rethrown
/// on the calling thread after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace maglap
