// Serial reference vs OpenMP path for the three data-parallel kernels.

#include <chrono>
#include <cstdio>
#include <functional>

#include <CLI11.hpp>

#include "mup/bipartite.hpp"
#include "mup/multipartite.hpp"
#include "mup/profile.hpp"

using namespace mup;

namespace {

double best_of(int reps, const std::function<double()>& fn, double& sink) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    sink += fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, int reps, const std::function<double(Execution)>& fn) {
  double sink = 0.0;
  const double ts = best_of(reps, [&] { return fn(Execution::serial); }, sink);
  const double tp = best_of(reps, [&] { return fn(Execution::parallel); }, sink);
  std::printf("%-28s %10.4f %10.4f %8.2fx   (checksum %.6g)\n", name, ts, tp, ts / tp, sink);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark"};
  int reps = 3;
  app.add_option("--reps", reps, "repetitions per timing (best is reported)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", hardware_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

  row("quadrature: product 2-D", reps, [](Execution e) {
    return bipartite::uncertainty_product(0.9, ProductRoute::quadrature, e).product;
  });
  row("quadrature: h family norms", reps, [](Execution e) {
    return multipartite::OdeFamilyProfile::h_family(0.99, e).norms().norm_sq;
  });
  row("scan: Z4 on 10 xi points", reps, [](Execution e) {
    auto v = map_indexed<double>(10, e, [](std::size_t i) {
      return multipartite::z4_product(0.05 + 0.1 * static_cast<double>(i), Execution::serial).product;
    });
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  });
  row("series: R(1 - 1e-6)", reps, [](Execution e) { return bipartite::r_series(1 - 1e-6, e).value; });
  return 0;
}
