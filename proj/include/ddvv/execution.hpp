#pragma once

namespace ddvv {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results; the serial path is kept for testing and benchmarks.
enum class Execution { Serial, Parallel };

/// Caps OpenMP worker count for subsequent parallel kernels (0 = runtime
/// default).
void set_thread_limit(int threads);
int thread_limit();

}  // namespace ddvv
