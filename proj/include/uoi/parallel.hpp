#pragma once

#include <functional>

namespace uoi {

/// Runs fn(0..n_tasks-1) on up to `workers` threads. Tasks must write only
/// to their own output slot; combined with per-task seed streams this makes
/// results independent of scheduling and worker count.
void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn);

/// Default worker count: UOI_WORKERS env var if set, else 1.
int default_workers();

}  // namespace uoi
