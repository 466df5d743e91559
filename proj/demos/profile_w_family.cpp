// Walks the W family from a product state to the symmetric point and prints
// where each state sits in the entanglement cube.

#include <cmath>
#include <cstdio>

#include "qshare/geometry.hpp"
#include "qshare/monotones.hpp"
#include "qshare/pure_state.hpp"

int main() {
  using namespace qshare;

  std::printf("%8s %8s %8s %8s %8s  %s\n", "t", "Y_1", "Y_2", "Y_3", "Y_T", "region");
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    // Interpolate |100>  ->  symmetric W.
    const double alpha = 1.0 - t + t / std::sqrt(3.0);
    const double beta = t / std::sqrt(3.0);
    const double gamma = t / std::sqrt(3.0);
    const PureState w = PureState::w_state(alpha, beta, gamma);
    const EntanglementProfile p = entanglement_profile(w);
    std::printf("%8.2f %8.4f %8.4f %8.4f %8.4f  %s\n", t, p.y_vector[0], p.y_vector[1],
                p.y_vector[2], p.y_total, face_region_name(classify_face(p.y_vector, 1e-7)));
  }
  return 0;
}
