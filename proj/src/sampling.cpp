#include "ballmap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace ballmap {

DVec sample_sphere(Rng& rng, int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  DVec x(m);
  double r2 = 0;
  do {
    r2 = 0;
    for (auto& v : x) {
      v = g(rng);
      r2 += v * v;
    }
  } while (r2 < 1e-300);
  double r = std::sqrt(r2);
  for (auto& v : x) v /= r;
  return x;
}

DVec sample_ball(Rng& rng, int m) {
  DVec x = sample_sphere(rng, m);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = std::pow(u(rng), 1.0 / m);
  for (auto& v : x) v *= r;
  return x;
}

DVec sample_cube(Rng& rng, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DVec x(m);
  for (auto& v : x) v = u(rng);
  return x;
}

std::vector<DVec> sample_ball_points(uint64_t seed, int m, size_t n) {
  Rng rng(seed);
  std::vector<DVec> pts;
  pts.reserve(n);
  for (size_t i = 0; i < n; ++i) pts.push_back(sample_ball(rng, m));
  return pts;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BALLMAP_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned w = std::min<size_t>(worker_count(), std::max<size_t>(n, 1));
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < w; ++k)
    pool.emplace_back([&, k] {
      try {
        for (size_t i = k; i < n; i += w) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ballmap
