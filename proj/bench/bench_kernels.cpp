// Serial vs OpenMP timings of the parallel kernels.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>

#include "gspline/g1.hpp"
#include "gspline/galerkin.hpp"
#include "gspline/nets.hpp"
#include "gspline/quality.hpp"
#include "gspline/refine.hpp"

using namespace gspline;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, const std::function<void(ExecPolicy)>& f, int reps = 3) {
  const double s = seconds([&] { f(ExecPolicy::Serial); }, reps);
  const double p = seconds([&] { f(ExecPolicy::Parallel); }, reps);
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", name, s, p, s / p);
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = configure_threads(argc > 1 ? std::atoi(argv[1]) : 0);
  const ControlNet net = refine_n(lift_z(flipped_square(6), 0.3), 2);
  std::printf("threads %d, %zu elements\n", threads, net.cnet.num_faces());
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  row("refine x2", [&](ExecPolicy p) { refine_n(net, 2, nullptr, p); });
  row("build G1P", [&](ExecPolicy p) { build_surface(net, Variant::G1P, p); });
  row("build G1R", [&](ExecPolicy p) { build_surface(net, Variant::G1R, p); });
  const GSplineSurface s = build_surface(net, Variant::G1P);
  row("assemble poisson", [&](ExecPolicy p) { assemble_poisson(s, sine_solution(), false, p); });
  row("quality bisection", [&](ExecPolicy p) { min_invalid_thickness(s, 0.01, 100.0, 0.005, p); }, 1);
  return 0;
}
