#pragma once

#include <cstddef>
#include <functional>

namespace coneq::detail {

// Worker cap: CONE_QUANTILE_THREADS when set and positive, otherwise the
// hardware concurrency. Results must not depend on the cap; callers keep
// that true by writing to disjoint indices or merging order-independent
// sums.
int max_threads();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace coneq::detail
