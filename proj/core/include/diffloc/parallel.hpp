#pragma once

namespace diffloc {

/// Environment variable read by the CLI to cap worker threads.
inline constexpr const char* kThreadsEnv = "DIFFLOC_THREADS";

/// Sets the worker count for parallel matrix-vector products. No-op when
/// built without OpenMP.
void set_thread_count(int threads);
int thread_count();

}  // namespace diffloc
