#pragma once

#include <functional>

namespace vleb {

// chunked index loop over [0, n); worker count capped by VLEB_THREADS
// (0 or unset = hardware concurrency). Results must be written to per-index
// slots so the outcome is independent of the schedule.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace vleb
