// Times the data-parallel kernels against their serial reference and checks
// that both paths agree bitwise.

#include <chrono>
#include <cstdio>

#include "grushin/kernels.hpp"
#include "grushin/legendre.hpp"

using namespace grushin;

namespace {

template <typename F>
double time_ms(F&& f, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

}  // namespace

int main() {
  std::printf("%-28s %12s %12s %8s %s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "identical");

  {
    const int n = 4, L = 160;
    QuadratureRule rule = make_latitude_rule(default_rule_order(n, L));
    ModeBasis serial, parallel;
    const double ts =
        time_ms([&] { serial = make_mode_basis(n, L, rule, Exec::Serial); }, 3);
    const double tp =
        time_ms([&] { parallel = make_mode_basis(n, L, rule, Exec::Parallel); }, 3);
    const bool same = serial.samples.cwiseEqual(parallel.samples).all();
    std::printf("%-28s %12.3f %12.3f %8.2f %s\n", "make_mode_basis(4,160)", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }

  {
    ModeBasis basis = make_mode_basis(2, 220);
    Eigen::MatrixXd gs, gp;
    const double ts = time_ms([&] { gs = gram_matrix(basis.samples, basis.rule, Exec::Serial); }, 3);
    const double tp =
        time_ms([&] { gp = gram_matrix(basis.samples, basis.rule, Exec::Parallel); }, 3);
    const bool same = gs.cwiseEqual(gp).all();
    std::printf("%-28s %12.3f %12.3f %8.2f %s\n", "gram_matrix(2,220)", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }

  {
    ModeBasis a = make_mode_basis(1, 180);
    ModeBasis b = make_mode_basis(1, 180);
    Eigen::MatrixXd gs, gp;
    const double ts = time_ms(
        [&] { gs = weighted_cross_gram(a.samples, b.samples, a.rule.weights, Exec::Serial); }, 3);
    const double tp = time_ms(
        [&] { gp = weighted_cross_gram(a.samples, b.samples, a.rule.weights, Exec::Parallel); },
        3);
    const bool same = gs.cwiseEqual(gp).all();
    std::printf("%-28s %12.3f %12.3f %8.2f %s\n", "weighted_cross_gram(1,180)", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }

  return 0;
}
