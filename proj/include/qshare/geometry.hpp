#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qshare/error.hpp"
#include "qshare/rng.hpp"
#include "qshare/threading.hpp"
#include "qshare/tolerances.hpp"

// The entanglement hypercube and its inhabitable polytope: sharing-inequality
// margins, exact excluded/inhabitable volumes, the N = 3 additivity closed
// form, hypercube-slice cross sections (exact and Monte Carlo), family loci
// and the OABCE mesh.

namespace qshare {

using YVector = std::vector<double>;

// m_j = sum_{k != j} Y_k - Y_j. Membership in the polytope is all m_j >= 0.
inline std::vector<double> inequality_margins(const YVector& y) {
  require(!y.empty(), Errc::bad_input, "empty Y vector");
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  std::vector<double> m(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) m[j] = total - 2.0 * y[j];
  return m;
}

inline double min_inequality_margin(const YVector& y) {
  const std::vector<double> m = inequality_margins(y);
  return *std::min_element(m.begin(), m.end());
}

inline bool is_inhabitable(const YVector& y, double tolerance = tol::identity) {
  return min_inequality_margin(y) >= -tolerance;
}

// Exact small rational, for the factorial volume formulas.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline constexpr int kMaxFactorialN = 20; // 20! still fits in 64 bits

inline std::uint64_t factorial(int n) {
  require(n >= 0 && n <= kMaxFactorialN, Errc::overflow,
          "factorial beyond N = " + std::to_string(kMaxFactorialN));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  require(n >= 0 && n <= kMaxFactorialN && k >= 0 && k <= n, Errc::overflow,
          "binomial outside supported range");
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<std::uint64_t>(n - k + i) / i;
  return b;
}

// Hypervolume 1/N! of the rectangular simplex each inequality excludes.
inline Rational excluded_simplex_volume(int n) {
  require(n >= 1, Errc::out_of_range, "need n >= 1");
  return Rational{1, factorial(n)};
}

// Total inhabitable fraction V_N = 1 - 1/(N-1)!.
inline Rational inhabitable_volume(int n) {
  require(n >= 2, Errc::out_of_range, "need n >= 2");
  const std::uint64_t f = factorial(n - 1);
  return Rational{f - 1, f};
}

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// Fraction of uniform hypercube samples that land in the polytope.
inline McEstimate polytope_volume_mc(int n, std::uint64_t samples, const RngStream& stream) {
  require(n >= 2, Errc::out_of_range, "need n >= 2");
  require(samples >= 1000, Errc::bad_input, "need at least 1000 samples");

  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::uint64_t> hits(blocks, 0);
  for_each_block(samples, [&](const BlockRange& blk) {
    RngStream rng = stream.split(blk.index);
    YVector y(static_cast<std::size_t>(n));
    std::uint64_t h = 0;
    for (std::uint64_t i = blk.begin; i < blk.end; ++i) {
      for (double& c : y) c = rng.uniform();
      if (is_inhabitable(y)) ++h;
    }
    hits[blk.index] = h;
  });

  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  McEstimate out;
  out.estimate = p;
  out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  out.samples = samples;
  return out;
}

// Piecewise-quadratic additivity for three qubits: the transverse triangle
// area at fixed Y_T, peaking at sqrt(3)/2 when Y_T = 2.
inline double additivity_n3(double y_total) {
  require(y_total >= 0.0 && y_total <= 3.0, Errc::out_of_range, "Y_T must lie in [0, 3]");
  constexpr double root3_half = 0.8660254037844386;
  if (y_total <= 2.0) return root3_half * y_total * y_total / 4.0;
  return root3_half * (3.0 - y_total) * (3.0 - y_total);
}

// Hyperarea of the full cube slice {Y in [0,1]^N : sum Y = t}: the
// Irwin-Hall density scaled by sqrt(N),
//   sqrt(N)/(N-1)! * sum_k (-1)^k binom(N,k) (t-k)^(N-1).
inline double cube_slice_hyperarea(int n, double y_total) {
  require(n >= 2 && n <= kMaxFactorialN, Errc::out_of_range, "supported for 2 <= n <= 20");
  require(y_total >= 0.0 && y_total <= static_cast<double>(n), Errc::out_of_range,
          "Y_T must lie in [0, N]");
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= static_cast<int>(y_total); ++k) {
    sum += sign * static_cast<double>(binomial(n, k)) *
           std::pow(y_total - static_cast<double>(k), n - 1);
    sign = -sign;
  }
  const double area = std::sqrt(static_cast<double>(n)) * sum /
                      static_cast<double>(factorial(n - 1));
  return std::max(0.0, area);
}

enum class SectionMethod { exact, monte_carlo };

struct CrossSection {
  int n_parties = 0;
  double y_total = 0.0;
  double hyperarea = 0.0;
  SectionMethod method = SectionMethod::exact;
  std::uint64_t sample_count = 0; // accepted slice samples (Monte Carlo only)
  double std_error = 0.0;         // Monte Carlo only
};

inline CrossSection additivity_exact_n3(double y_total) {
  CrossSection s;
  s.n_parties = 3;
  s.y_total = y_total;
  s.hyperarea = additivity_n3(y_total);
  s.method = SectionMethod::exact;
  return s;
}

// Monte Carlo cross-section of the polytope at fixed Y_T: draw uniformly on
// the simplex {sum Y = Y_T, Y >= 0} (exponential trick), reject components
// above 1 to land on the cube slice, and scale the inhabitable fraction by
// the exact slice hyperarea. `samples` is the simplex draw budget; the
// standard error is binomial on the accepted draws.
inline CrossSection additivity_mc(int n, double y_total, std::uint64_t samples,
                                  const RngStream& stream) {
  require(n >= 3, Errc::out_of_range, "cross sections need n >= 3");
  require(y_total > 0.0 && y_total < static_cast<double>(n), Errc::out_of_range,
          "Y_T must lie strictly inside (0, N)");
  require(samples >= 1000, Errc::bad_input, "need at least 1000 samples");

  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::uint64_t> accepted(blocks, 0), inhabitable(blocks, 0);
  for_each_block(samples, [&](const BlockRange& blk) {
    RngStream rng = stream.split(blk.index);
    YVector y(static_cast<std::size_t>(n));
    std::uint64_t acc = 0, hit = 0;
    for (std::uint64_t i = blk.begin; i < blk.end; ++i) {
      double sum = 0.0;
      for (double& c : y) {
        c = rng.exponential();
        sum += c;
      }
      bool in_cube = true;
      for (double& c : y) {
        c *= y_total / sum;
        if (c > 1.0) in_cube = false;
      }
      if (!in_cube) continue;
      ++acc;
      if (is_inhabitable(y)) ++hit;
    }
    accepted[blk.index] = acc;
    inhabitable[blk.index] = hit;
  });

  const std::uint64_t acc = std::accumulate(accepted.begin(), accepted.end(), std::uint64_t{0});
  const std::uint64_t hit =
      std::accumulate(inhabitable.begin(), inhabitable.end(), std::uint64_t{0});
  const double acceptance = static_cast<double>(acc) / static_cast<double>(samples);
  require(acceptance >= 1e-4, Errc::degenerate_slice,
          "rejection acceptance " + std::to_string(acceptance) + " below 1e-4 at Y_T = " +
              std::to_string(y_total));

  const double slice = cube_slice_hyperarea(n, y_total);
  const double p = static_cast<double>(hit) / static_cast<double>(acc);

  CrossSection s;
  s.n_parties = n;
  s.y_total = y_total;
  s.method = SectionMethod::monte_carlo;
  s.sample_count = acc;
  s.hyperarea = slice * p;
  s.std_error = slice * std::sqrt(p * (1.0 - p) / static_cast<double>(acc));
  return s;
}

// GHZ family locus: Y_1 = Y_2 = Y_3 = 1 - |cos 2 theta| on the body diagonal.
inline YVector ghz_locus(double theta) {
  const double y = 1.0 - std::abs(std::cos(2.0 * theta));
  return YVector{y, y, y};
}

enum class FaceRegion {
  interior,
  face_oab,
  face_obc,
  face_oca,
  triangle_abc,
  vertex,
  exterior,
};

inline const char* face_region_name(FaceRegion r) {
  switch (r) {
    case FaceRegion::interior: return "interior";
    case FaceRegion::face_oab: return "face_OAB";
    case FaceRegion::face_obc: return "face_OBC";
    case FaceRegion::face_oca: return "face_OCA";
    case FaceRegion::triangle_abc: return "triangle_ABC";
    case FaceRegion::vertex: return "vertex";
    case FaceRegion::exterior: return "exterior";
  }
  return "unknown";
}

// Named vertices of the N = 3 polytope. A, B, C are the intersections of
// the margin-equality planes with the unit cube; this fixes the labels.
inline const std::array<std::pair<const char*, std::array<double, 3>>, 5>& polytope_vertices() {
  static const std::array<std::pair<const char*, std::array<double, 3>>, 5> v = {{
      {"O", {0.0, 0.0, 0.0}},
      {"A", {1.0, 1.0, 0.0}},
      {"B", {1.0, 0.0, 1.0}},
      {"C", {0.0, 1.0, 1.0}},
      {"E", {1.0, 1.0, 1.0}},
  }};
  return v;
}

// Locate a three-qubit Y vector relative to the polyhedron OABCE. Faces of
// the regular tetrahedron correspond to single vanishing margins:
// OAB <-> m_1, OCA <-> m_2, OBC <-> m_3.
inline FaceRegion classify_face(const YVector& y, double tolerance = tol::identity) {
  require(y.size() == 3, Errc::bad_input, "classification is defined for N = 3");

  for (const auto& [name, v] : polytope_vertices()) {
    (void)name;
    if (std::abs(y[0] - v[0]) <= tolerance && std::abs(y[1] - v[1]) <= tolerance &&
        std::abs(y[2] - v[2]) <= tolerance)
      return FaceRegion::vertex;
  }

  const std::vector<double> m = inequality_margins(y);
  if (*std::min_element(m.begin(), m.end()) < -tolerance) return FaceRegion::exterior;

  const double total = y[0] + y[1] + y[2];
  if (std::abs(total - 2.0) <= tolerance) return FaceRegion::triangle_abc;

  // Edge points sit on two faces at once; report the closest one.
  int best = -1;
  for (int j = 0; j < 3; ++j)
    if (std::abs(m[static_cast<std::size_t>(j)]) <= tolerance &&
        (best < 0 ||
         std::abs(m[static_cast<std::size_t>(j)]) < std::abs(m[static_cast<std::size_t>(best)])))
      best = j;
  switch (best) {
    case 0: return FaceRegion::face_oab;
    case 1: return FaceRegion::face_oca;
    case 2: return FaceRegion::face_obc;
    default: return FaceRegion::interior;
  }
}

struct PolytopeMesh {
  std::vector<std::pair<std::string, std::array<double, 3>>> vertices;
  std::vector<std::array<std::string, 3>> faces;
};

// Boundary mesh of OABCE: the three regular-tetrahedron faces through O and
// the three cube-face triangles through E. The shared base ABC is interior.
inline PolytopeMesh polytope_mesh() {
  PolytopeMesh mesh;
  for (const auto& [name, v] : polytope_vertices()) mesh.vertices.emplace_back(name, v);
  mesh.faces = {
      {"O", "A", "B"}, {"O", "B", "C"}, {"O", "C", "A"},
      {"A", "B", "E"}, {"B", "C", "E"}, {"C", "A", "E"},
  };
  return mesh;
}

} // namespace qshare
