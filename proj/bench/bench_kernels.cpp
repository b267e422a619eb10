// Timing comparison of the OpenMP kernel entry points against the serial
// reference implementations, plus an end-to-end decomposition timing.
// Results also sanity-check that both paths agree bitwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "windcast/kernels.hpp"
#include "windcast/parallel.hpp"
#include "windcast/rng.hpp"
#include "windcast/wavelet.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_of(int repeats, const std::function<void()>& body) {
  // one warmup
  body();
  const auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r) body();
  const auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-34s %10.3f ms %10.3f ms %8.2fx   %s\n", name.c_str(), serial_s * 1e3,
              parallel_s * 1e3, serial_s / parallel_s, identical ? "bitwise-equal" : "DIFFER");
}

}  // namespace

int main() {
  windcast::Rng rng(20240416);
  std::printf("threads: %d\n", windcast::max_threads());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    const std::size_t n = 1 << 20;
    std::vector<double> x(n), out_s(n), out_p(n);
    for (auto& v : x) v = rng.normal();
    const auto filter = windcast::wavelet::make_filter("db4");
    const double s = time_of(5, [&] {
      windcast::kernels::serial::circular_filter_causal(x, filter.h, 16, out_s);
    });
    const double p = time_of(5, [&] {
      windcast::kernels::circular_filter_causal(x, filter.h, 16, out_p);
    });
    report("circular_filter_causal n=2^20", s, p, out_s == out_p);
  }

  {
    const std::size_t n = 1 << 20;
    std::vector<double> x(n), out_s(n), out_p(n);
    for (auto& v : x) v = rng.normal();
    const auto filter = windcast::wavelet::make_filter("db4");
    const double s = time_of(5, [&] {
      windcast::kernels::serial::circular_filter_anticausal(x, filter.h, 16, out_s);
    });
    const double p = time_of(5, [&] {
      windcast::kernels::circular_filter_anticausal(x, filter.h, 16, out_p);
    });
    report("circular_filter_anticausal n=2^20", s, p, out_s == out_p);
  }

  {
    const std::size_t n = 4096, dim = 12;
    std::vector<double> xmat(n * dim), out_s(n), out_p(n);
    for (auto& v : xmat) v = rng.normal();
    windcast::kernels::KernelParams kp;
    kp.kind = windcast::kernels::KernelKind::rbf;
    kp.gamma = 1.0 / dim;
    const double s = time_of(50, [&] {
      windcast::kernels::serial::kernel_vs_rows(xmat.data(), n, dim, kp, xmat.data(),
                                                out_s.data());
    });
    const double p = time_of(50, [&] {
      windcast::kernels::kernel_vs_rows(xmat.data(), n, dim, kp, xmat.data(), out_p.data());
    });
    report("kernel_vs_rows rbf n=4096 m=12", s, p, out_s == out_p);
  }

  {
    const std::size_t n = 1 << 17;
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    windcast::wavelet::DecompositionSpec spec;
    spec.filter = windcast::wavelet::make_filter("db4");
    spec.levels = 9;
    const double t = time_of(3, [&] { windcast::wavelet::decompose(x, spec); });
    std::printf("%-34s %10.3f ms  (db4, J=9, end to end)\n", "decompose n=2^17", t * 1e3);
  }

  return 0;
}
