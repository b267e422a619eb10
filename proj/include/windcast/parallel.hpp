#pragma once

// Thread-count control for the OpenMP kernel paths.

namespace windcast {

// Number of threads the parallel kernels may use (1 when built without OpenMP).
int max_threads();

// Caps the OpenMP thread count. Values <= 0 are ignored.
void set_threads(int n);

}  // namespace windcast
