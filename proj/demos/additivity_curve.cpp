// Prints the entanglement-additivity curve for three qubits: the exact
// piecewise form next to a Monte Carlo cross-section estimate.

#include <cstdio>

#include "qshare/geometry.hpp"
#include "qshare/rng.hpp"

int main() {
  using namespace qshare;
  const RngStream root(7);

  std::printf("%6s %10s %10s %12s\n", "Y_T", "exact", "mc", "std_error");
  for (int i = 0; i <= 30; ++i) {
    const double y_t = 3.0 * i / 30;
    const double exact = additivity_n3(y_t);
    if (i == 0 || i == 30) {
      std::printf("%6.2f %10.6f %10s %12s\n", y_t, exact, "-", "-");
      continue;
    }
    const CrossSection mc = additivity_mc(3, y_t, 50000, root.split(static_cast<std::uint64_t>(i)));
    std::printf("%6.2f %10.6f %10.6f %12.2e\n", y_t, exact, mc.hyperarea, mc.std_error);
  }
  return 0;
}
