#include "svloja/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace svloja {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(derive_seed(seed, index));
}

Vector unit_vector(std::size_t n, Rng &rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  double len = 0.0;
  do {
    for (auto &c : v)
      c = g(rng);
    len = norm(v);
  } while (len == 0.0);
  for (auto &c : v)
    c /= len;
  return v;
}

Vector on_sphere(std::span<const double> center, double r, Rng &rng) {
  Vector v = unit_vector(center.size(), rng);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = center[i] + r * v[i];
  return v;
}

Vector in_ball(std::span<const double> center, double r, Rng &rng) {
  Vector v = unit_vector(center.size(), rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s =
      r * std::pow(u(rng), 1.0 / static_cast<double>(center.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = center[i] + s * v[i];
  return v;
}

unsigned default_workers() {
  if (const char *env = std::getenv("SVLOJA_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1)
        return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)> &body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first;
  std::size_t first_index = count;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < first_index) {
          first_index = i;
          first = std::current_exception();
        }
      }
    }
  };
  const unsigned n = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(n - 1);
  for (unsigned t = 1; t < n; ++t)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  if (first)
    std::rethrow_exception(first);
}

} // namespace svloja
