#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ballmap/rational.hpp"

namespace ballmap {

using Rng = std::mt19937_64;

DVec sample_ball(Rng& rng, int m);
DVec sample_sphere(Rng& rng, int m);  // unit sphere in R^m
DVec sample_cube(Rng& rng, int m);    // [-1,1]^m

std::vector<DVec> sample_ball_points(uint64_t seed, int m, size_t n);

// Worker count: hardware concurrency, capped by BALLMAP_THREADS.
unsigned worker_count();
// Runs fn(i) for i in [0, n) on the worker pool.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace ballmap
