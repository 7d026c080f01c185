#ifndef GLOSS_PARALLEL_HPP_
#define GLOSS_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gloss {

/// Process-wide worker count used by parallel_for. 0 = hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/**
 * Runs fn(i) for i in [0, n). Work items must be independent and write to
 * disjoint slots; results are then identical for any thread count.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace gloss

#endif // GLOSS_PARALLEL_HPP_
