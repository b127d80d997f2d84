#pragma once

#include <functional>

namespace qcorr {

/// Runs body(0..n-1) across worker threads (hardware concurrency when
/// threads == 0). Callers keep determinism by writing results into
/// per-index slots; no ordering of execution is promised.
void parallel_for(int n, const std::function<void(int)>& body, int threads = 0);

} // namespace qcorr
