// Serial reference kernels against their OpenMP builds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>

#include "CLI11.hpp"
#include "gmf/gmf.hpp"
#include "gmf/kernels.hpp"
#include "gmf/permgroup.hpp"
#include "gmf/random.hpp"

namespace k = gmf::kernels;

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

void row(const char* kernel, int n, double serial, double parallel, double diff) {
  std::printf("%-22s %3d %12.6f %12.6f %8.2fx %10.2e\n", kernel, n, serial, parallel, serial / parallel, diff);
}

double rel(gmf::Complex a, gmf::Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

double rel(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel timings"};
  int ryser_max = 22;
  int group_max = 6;
  int reps = 3;
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--ryser-max", ryser_max, "largest permanent size")->check(CLI::Range(4, 26));
  app.add_option("--group-max", group_max, "largest symmetric group degree")->check(CLI::Range(3, 8));
  app.add_option("--reps", reps)->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "0 = all cores");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  k::omp::set_thread_count(threads);
  gmf::Rng rng(seed);
  std::printf("threads %d\n", k::omp::thread_count());
  std::printf("%-22s %3s %12s %12s %9s %10s\n", "kernel", "n", "serial[s]", "omp[s]", "speedup", "rel.diff");

  for (int n = 12; n <= ryser_max; n += 2) {
    const auto a = gmf::random_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng);
    gmf::Complex s, p;
    const double ts = seconds([&] { s = k::serial::permanent_ryser(a); }, reps);
    const double tp = seconds([&] { p = k::omp::permanent_ryser(a); }, reps);
    row("permanent_ryser", n, ts, tp, rel(s, p));
  }

  for (int n = 4; n <= group_max; ++n) {
    const auto g = std::make_shared<const gmf::PermGroup>(gmf::symmetric_group(n));
    const auto chi = gmf::sign_character(g);
    const auto w = gmf::weighted_elements(chi);
    const auto a = gmf::random_psd(n, rng);
    const auto l = gmf::cholesky(a).l;

    gmf::Complex s, p;
    double ts = seconds([&] { s = k::serial::weighted_diagonal_sum(a, w); }, reps);
    double tp = seconds([&] { p = k::omp::weighted_diagonal_sum(a, w); }, reps);
    row("weighted_diagonal_sum", n, ts, tp, rel(s, p));

    std::vector<std::uint64_t> reps_codes;
    for (const auto& o : gmf::orbit_decomposition(*g, n)) reps_codes.push_back(o.representative.code(n));
    const k::OrbitTermInput in{&l, &w, n, k::CosetChoice::Lexicographic, 0};
    std::vector<double> vs, vp;
    ts = seconds([&] { vs = k::serial::orbit_terms(in, reps_codes); }, reps);
    tp = seconds([&] { vp = k::omp::orbit_terms(in, reps_codes); }, reps);
    row("orbit_terms", n, ts, tp, rel(vs, vp));
    ts = seconds([&] { vs = k::serial::linear_orbit_terms(in, reps_codes); }, reps);
    tp = seconds([&] { vp = k::omp::linear_orbit_terms(in, reps_codes); }, reps);
    row("linear_orbit_terms", n, ts, tp, rel(vs, vp));

    if (n <= 6) {
      std::vector<std::uint64_t> all(static_cast<std::size_t>(std::pow(n, n)));
      for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
      double ds = 0.0, dp = 0.0;
      ts = seconds([&] { ds = k::serial::squared_gmf_sum(l, w, n, all); }, reps);
      tp = seconds([&] { dp = k::omp::squared_gmf_sum(l, w, n, all); }, reps);
      row("squared_gmf_sum", n, ts, tp, std::abs(ds - dp) / std::max(1.0, ds));
    }
  }
  return 0;
}
