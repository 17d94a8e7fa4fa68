#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace cdlab {

/// Worker count: CDLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
/// outcome does not depend on scheduling. The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cdlab
