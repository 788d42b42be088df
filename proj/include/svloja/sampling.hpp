#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "svloja/dense.hpp"

namespace svloja {

using Rng = std::mt19937_64;

// Independent stream for sample `index` under `seed` (splitmix64 mixing), so
// results never depend on which worker handles which sample.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
Rng sample_rng(std::uint64_t seed, std::uint64_t index);

// Uniform on the unit sphere in R^n.
Vector unit_vector(std::size_t n, Rng &rng);
// Uniform on the sphere of radius r around center.
Vector on_sphere(std::span<const double> center, double r, Rng &rng);
// Uniform in the closed ball of radius r around center.
Vector in_ball(std::span<const double> center, double r, Rng &rng);

// Worker count from SVLOJA_WORKERS, else hardware concurrency, at least 1.
unsigned default_workers();

// Runs body(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)> &body);

} // namespace svloja
