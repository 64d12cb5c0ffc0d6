// Benchmark: OpenMP-parallel lift3 against the serial reference.
// Usage: bench [iterations]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "lg/plucker.hpp"

using namespace lg;

int main(int argc, char** argv) {
  int iters = argc > 1 ? std::atoi(argv[1]) : 200;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-1.0, 1.0);

  std::vector<Mat6> inputs(iters);
  for (Mat6& b : inputs)
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) b(r, c) = d(rng);

  using clock = std::chrono::steady_clock;
  double sink = 0.0;

  auto t0 = clock::now();
  for (const Mat6& b : inputs) sink += lift3_serial(b)(0, 0);
  auto t1 = clock::now();
  for (const Mat6& b : inputs) sink += lift3(b)(0, 0);
  auto t2 = clock::now();

  double worst = 0.0;
  for (const Mat6& b : inputs) {
    double e = (lift3(b) - lift3_serial(b)).cwiseAbs().maxCoeff();
    if (e > worst) worst = e;
  }

  auto ms = [](auto a, auto b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  std::printf("lift3 serial:   %8.2f ms (%d iterations)\n", ms(t0, t1), iters);
  std::printf("lift3 parallel: %8.2f ms (%d iterations)\n", ms(t1, t2), iters);
  std::printf("speedup:        %8.2fx\n", ms(t0, t1) / ms(t1, t2));
  std::printf("max |parallel - serial| = %.3e  (checksum %g)\n", worst, sink);
  return 0;
}
