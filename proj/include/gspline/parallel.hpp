#pragma once

namespace gspline {

/// Kernels that have an OpenMP path also keep a plain loop used as the
/// reference in tests and benchmarks.
enum class ExecPolicy { Serial, Parallel };

/// Applies a thread count to the OpenMP runtime. The GSPLINE_THREADS
/// environment variable, when set to a positive integer, takes precedence;
/// a requested count <= 0 means the hardware default. Returns the count used.
int configure_threads(int requested);

int max_threads();

}  // namespace gspline
