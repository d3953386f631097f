#pragma once

// Execution policy shared by the data-parallel kernels. Every kernel keeps a
// serial reference path; the OpenMP path must produce bit-identical results.

#include <optional>

namespace kerramp {

enum class Execution { Serial, Parallel };

/// Thread count for OpenMP regions: explicit request, else KERRAMP_THREADS,
/// else all cores. Returns the value applied (1 without OpenMP).
int configure_threads(std::optional<int> requested);

[[nodiscard]] int max_threads() noexcept;

}  // namespace kerramp
