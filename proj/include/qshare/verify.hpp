#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qshare/geometry.hpp"
#include "qshare/monotones.hpp"
#include "qshare/pure_state.hpp"
#include "qshare/rng.hpp"
#include "qshare/threading.hpp"
#include "qshare/tolerances.hpp"

// Batch property suites over Haar samples (sharing inequality, bound
// sandwich, algebraic identities, family loci, the qudit speculation) and
// the figure datasets. Violations are data, not exceptions: each produces a
// reproducible record (seed, sample index, amplitudes), because part of the
// job is hunting for counterexamples.

namespace qshare {

struct SuiteConfig {
  std::vector<int> party_counts = {2, 3, 4, 5, 6, 7, 8};
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int local_dim = 2;
  double tolerance = tol::identity;
  std::vector<double> injected_y; // empty = no harness self-test injection
};

struct CheckResult {
  std::string name;
  std::uint64_t sample_count = 0;
  std::uint64_t violation_count = 0;
  double tolerance = tol::identity;
  double worst_margin = 0.0; // most negative observed value
  double p01 = 0.0, p50 = 0.0, p99 = 0.0;
  bool pass = true;
};

struct ViolationRecord {
  std::string check;
  int n_parties = 0;
  std::uint64_t sample_index = 0;
  double margin = 0.0;
  bool injected = false;
  std::vector<cplx> amplitudes; // empty for injected records
};

struct VerificationReport {
  std::string suite;
  std::string label; // "" or "SPECULATIVE"
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<ViolationRecord> violations;
  bool pass = true;
};

namespace detail_verify {

inline constexpr std::size_t kMaxStoredViolations = 32;

inline double nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const std::size_t n = sorted.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

inline CheckResult summarize(std::string name, const std::vector<double>& values,
                             double tolerance) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.sample_count = values.size();
  if (values.empty()) return r;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  r.worst_margin = sorted.front();
  r.p01 = nearest_rank(sorted, 0.01);
  r.p50 = nearest_rank(sorted, 0.50);
  r.p99 = nearest_rank(sorted, 0.99);
  for (double v : values)
    if (v < -tolerance) ++r.violation_count;
  r.pass = r.violation_count == 0;
  return r;
}

// Evaluates per-sample value tuples in fixed-size blocks with per-block
// substreams; results are identical for any worker count. fn must draw from
// the stream identically for every sample (regeneration relies on it).
template <typename Fn>
std::vector<std::vector<double>> collect(std::size_t n_checks, std::uint64_t samples,
                                         const RngStream& stream, Fn&& fn) {
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<double>> block_vals(blocks);
  for_each_block(samples, [&](const BlockRange& blk) {
    RngStream rng = stream.split(blk.index);
    std::vector<double>& v = block_vals[blk.index];
    v.resize((blk.end - blk.begin) * n_checks);
    for (std::uint64_t i = blk.begin; i < blk.end; ++i)
      fn(rng, i, v.data() + (i - blk.begin) * n_checks);
  });

  std::vector<std::vector<double>> out(n_checks);
  for (std::vector<double>& c : out) c.reserve(samples);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t count = block_vals[b].size() / n_checks;
    for (std::uint64_t i = 0; i < count; ++i)
      for (std::size_t c = 0; c < n_checks; ++c)
        out[c].push_back(block_vals[b][i * n_checks + c]);
  }
  return out;
}

// Re-derives the state for one sample index by replaying its block's stream.
// draw(rng) must consume the stream exactly like the collector's fn.
template <typename Draw>
PureState regenerate(const RngStream& stream, std::uint64_t sample_index, Draw&& draw) {
  const std::uint64_t block = sample_index / kBlockSize;
  RngStream rng = stream.split(block);
  PureState state = draw(rng);
  for (std::uint64_t i = block * kBlockSize; i < sample_index; ++i) state = draw(rng);
  return state;
}

template <typename Draw>
void record_violations(VerificationReport& report, const CheckResult& check,
                       const std::vector<double>& values, int n_parties,
                       const RngStream& stream, Draw&& draw) {
  if (check.violation_count == 0) return;
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    if (values[i] >= -check.tolerance) continue;
    if (report.violations.size() >= kMaxStoredViolations) break;
    ViolationRecord rec;
    rec.check = check.name;
    rec.n_parties = n_parties;
    rec.sample_index = i;
    rec.margin = values[i];
    rec.amplitudes = regenerate(stream, i, draw).amplitudes();
    report.violations.push_back(std::move(rec));
  }
}

inline void finish(VerificationReport& report) {
  report.pass = true;
  for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;
}

} // namespace detail_verify

// Sharing-inequality sweep: min_j margin per Haar sample for each party count,
// the half-total corollary, and the N = 2 collapse. An injected Y vector is
// evaluated as its own single-sample check (harness self-test).
inline VerificationReport run_inequality_sweep(const SuiteConfig& config) {
  VerificationReport report;
  report.suite = "inequality";
  report.seed = config.seed;
  const RngStream root(config.seed);

  for (int n : config.party_counts) {
    const RngStream stream = root.split(static_cast<std::uint64_t>(n));
    const auto draw = [n, &config](RngStream& rng) {
      return PureState::haar_random(n, config.local_dim, rng);
    };
    const std::size_t n_checks = (n == 2) ? 3 : 2;
    const auto values = detail_verify::collect(
        n_checks, config.samples, stream, [&](RngStream& rng, std::uint64_t, double* out) {
          const PureState s = draw(rng);
          const EntanglementProfile p = entanglement_profile(s);
          double y_max = 0.0;
          for (double y : p.y_vector) y_max = std::max(y_max, y);
          out[0] = min_inequality_margin(p.y_vector);
          out[1] = p.y_total - 2.0 * y_max; // half-total corollary
          if (n == 2) out[2] = -std::abs(p.y_vector[0] - p.y_vector[1]);
        });

    const std::string tag = "/N=" + std::to_string(n);
    const char* names[3] = {"inequality", "half_total", "collapse"};
    for (std::size_t c = 0; c < n_checks; ++c) {
      CheckResult check =
          detail_verify::summarize(names[c] + tag, values[c], config.tolerance);
      detail_verify::record_violations(report, check, values[c], n, stream, draw);
      report.checks.push_back(std::move(check));
    }
  }

  if (!config.injected_y.empty()) {
    const double margin = min_inequality_margin(config.injected_y);
    CheckResult check = detail_verify::summarize("inequality/injected", {margin},
                                                 config.tolerance);
    if (check.violation_count > 0) {
      ViolationRecord rec;
      rec.check = check.name;
      rec.n_parties = static_cast<int>(config.injected_y.size());
      rec.margin = margin;
      rec.injected = true;
      report.violations.push_back(std::move(rec));
    }
    report.checks.push_back(std::move(check));
  }

  detail_verify::finish(report);
  return report;
}

// Per sample and party: the concurrence-derived lower bound, the clamped
// sharing upper bound, and the monogamy residual.
inline VerificationReport run_bound_sandwich(const SuiteConfig& config) {
  VerificationReport report;
  report.suite = "bounds";
  report.seed = config.seed;
  const RngStream root(config.seed);

  for (int n : config.party_counts) {
    if (n < 2) continue;
    const RngStream stream = root.split(static_cast<std::uint64_t>(n));
    const auto draw = [n, &config](RngStream& rng) {
      return PureState::haar_random(n, config.local_dim, rng);
    };
    const auto values = detail_verify::collect(
        3, config.samples, stream, [&](RngStream& rng, std::uint64_t, double* out) {
          const PureState s = draw(rng);
          const EntanglementProfile p = entanglement_profile(s);
          const PairConcurrenceTable table = pair_concurrence_table(s);
          double lower_margin = 2.0, upper_margin = 2.0, monogamy = 4.0;
          for (int j = 1; j <= n; ++j) {
            double sum_c2 = 0.0;
            for (int k = 1; k <= n; ++k)
              if (k != j) sum_c2 += table(j, k) * table(j, k);
            const double y = p.y_vector[static_cast<std::size_t>(j - 1)];
            const double lower = 1.0 - std::sqrt(std::max(0.0, 1.0 - sum_c2));
            const double upper = std::min(1.0, p.y_total - y);
            const double c_rest = p.marginals[static_cast<std::size_t>(j - 1)].c_rest;
            lower_margin = std::min(lower_margin, y - lower);
            upper_margin = std::min(upper_margin, upper - y);
            monogamy = std::min(monogamy, c_rest * c_rest - sum_c2);
          }
          out[0] = lower_margin;
          out[1] = upper_margin;
          out[2] = monogamy;
        });

    const std::string tag = "/N=" + std::to_string(n);
    const char* names[3] = {"lower_bound", "upper_bound", "monogamy"};
    for (std::size_t c = 0; c < 3; ++c) {
      CheckResult check =
          detail_verify::summarize(names[c] + tag, values[c], config.tolerance);
      detail_verify::record_violations(report, check, values[c], n, stream, draw);
      report.checks.push_back(std::move(check));
    }
  }

  detail_verify::finish(report);
  return report;
}

// (a) the C-Y identity, (b) Y-vector invariance under random local
// unitaries, (c) Schmidt reconstruction residuals.
inline VerificationReport run_identity_checks(const SuiteConfig& config) {
  VerificationReport report;
  report.suite = "identities";
  report.seed = config.seed;
  const RngStream root(config.seed);

  for (int n : config.party_counts) {
    const RngStream stream = root.split(static_cast<std::uint64_t>(n));
    const auto draw = [n, &config](RngStream& rng) {
      // Matches the collector's stream use: state, then party pick, then unitary.
      PureState s = PureState::haar_random(n, config.local_dim, rng);
      rng.next_u64();
      haar_unitary(config.local_dim, rng);
      return s;
    };
    const auto values = detail_verify::collect(
        3, config.samples, stream, [&](RngStream& rng, std::uint64_t, double* out) {
          const PureState s = PureState::haar_random(n, config.local_dim, rng);
          const int party =
              1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
          const ComplexMatrix u = haar_unitary(config.local_dim, rng);

          const EntanglementProfile p = entanglement_profile(s);
          double cy = 0.0;
          for (const QubitMarginal& m : p.marginals)
            cy = std::max(cy, std::abs(m.c_rest * m.c_rest - m.y * (2.0 - m.y)));

          const EntanglementProfile q =
              entanglement_profile(s.apply_local_unitary(party, u));
          double drift = 0.0;
          for (std::size_t j = 0; j < p.y_vector.size(); ++j)
            drift = std::max(drift, std::abs(p.y_vector[j] - q.y_vector[j]));

          double residual = 0.0;
          for (int j = 1; j <= n; ++j)
            residual = std::max(
                residual, schmidt_reconstruction_residual(s, j, schmidt_vectors(s, j)));

          out[0] = -cy;
          out[1] = -drift;
          out[2] = -residual;
        });

    const std::string tag = "/N=" + std::to_string(n);
    CheckResult cy = detail_verify::summarize("c_y_identity" + tag, values[0],
                                              config.tolerance);
    CheckResult lu = detail_verify::summarize("lu_invariance" + tag, values[1],
                                              config.tolerance);
    CheckResult sch = detail_verify::summarize("schmidt_reconstruction" + tag, values[2],
                                               tol::reconstruction);
    detail_verify::record_violations(report, cy, values[0], n, stream, draw);
    detail_verify::record_violations(report, lu, values[1], n, stream, draw);
    detail_verify::record_violations(report, sch, values[2], n, stream, draw);
    report.checks.push_back(std::move(cy));
    report.checks.push_back(std::move(lu));
    report.checks.push_back(std::move(sch));
  }

  detail_verify::finish(report);
  return report;
}

// GHZ diagonal locus on a 181-point theta grid, W states on the tetrahedron
// surfaces, the Max <= 1/2 subclass on triangle ABC, and the symmetric W
// point (including pairwise concurrences and the tight lower bound).
inline VerificationReport run_family_checks(const SuiteConfig& config) {
  VerificationReport report;
  report.suite = "families";
  report.seed = config.seed;

  // (a) GHZ sweep: 181 uniform points on [0, pi], covering both |cos| branches.
  {
    std::vector<double> vals;
    vals.reserve(181);
    for (int i = 0; i <= 180; ++i) {
      const double theta = M_PI * i / 180.0;
      const YVector locus = ghz_locus(theta);
      const EntanglementProfile p = entanglement_profile(PureState::ghz(theta));
      double dev = 0.0;
      for (int j = 0; j < 3; ++j)
        dev = std::max(dev, std::abs(p.y_vector[static_cast<std::size_t>(j)] -
                                     locus[static_cast<std::size_t>(j)]));
      vals.push_back(-dev);
    }
    report.checks.push_back(
        detail_verify::summarize("ghz_locus_grid", vals, config.tolerance));
  }

  // (b)+(c) Random W triples: uniform magnitudes on the sphere, independent
  // phases. Surface distance uses a widened tolerance to absorb eigensolver
  // noise at the boundary; the triangle-ABC subclass stays at 1e-9.
  {
    RngStream rng = RngStream(config.seed).split(1001);
    std::vector<double> surface, triangle, phase_drift;
    surface.reserve(config.samples);
    phase_drift.reserve(config.samples);
    for (std::uint64_t i = 0; i < config.samples; ++i) {
      const double g0 = rng.normal(), g1 = rng.normal(), g2 = rng.normal();
      const double nrm = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
      const double ph0 = rng.uniform(0.0, 2.0 * M_PI);
      const double ph1 = rng.uniform(0.0, 2.0 * M_PI);
      const double ph2 = rng.uniform(0.0, 2.0 * M_PI);
      const cplx alpha = std::abs(g0) / nrm * cplx{std::cos(ph0), std::sin(ph0)};
      const cplx beta = std::abs(g1) / nrm * cplx{std::cos(ph1), std::sin(ph1)};
      const cplx gamma = std::abs(g2) / nrm * cplx{std::cos(ph2), std::sin(ph2)};

      const EntanglementProfile p =
          entanglement_profile(PureState::w_state(alpha, beta, gamma));
      const std::vector<double> m = inequality_margins(p.y_vector);
      const double dist = std::min(
          std::min(std::abs(m[0]), std::min(std::abs(m[1]), std::abs(m[2]))),
          std::abs(p.y_total - 2.0));
      surface.push_back(-dist);

      // Phases must not move the Y vector.
      const EntanglementProfile stripped = entanglement_profile(
          PureState::w_state(std::abs(alpha), std::abs(beta), std::abs(gamma)));
      double drift = 0.0;
      for (int j = 0; j < 3; ++j)
        drift = std::max(drift, std::abs(p.y_vector[static_cast<std::size_t>(j)] -
                                         stripped.y_vector[static_cast<std::size_t>(j)]));
      phase_drift.push_back(-drift);

      if (std::max({std::norm(alpha), std::norm(beta), std::norm(gamma)}) <= 0.5)
        triangle.push_back(-std::abs(p.y_total - 2.0));
    }
    report.checks.push_back(detail_verify::summarize("w_on_surfaces", surface, 1e-7));
    report.checks.push_back(
        detail_verify::summarize("w_triangle_abc", triangle, config.tolerance));
    report.checks.push_back(
        detail_verify::summarize("w_phase_invariance", phase_drift, config.tolerance));
  }

  // (d) The symmetric W point: Y = (2/3, 2/3, 2/3), C_jk = 2/3, lower bound tight.
  {
    const PureState w = PureState::w_state(1.0, 1.0, 1.0);
    const EntanglementProfile p = entanglement_profile(w);
    const BoundsReport b = bounds_report(w);
    double dev = 0.0;
    for (double y : p.y_vector) dev = std::max(dev, std::abs(y - 2.0 / 3.0));
    for (int j = 1; j <= 3; ++j)
      for (int k = j + 1; k <= 3; ++k)
        dev = std::max(dev, std::abs(pairwise_concurrence(w, j, k) - 2.0 / 3.0));
    for (const PartyBounds& pb : b.parties)
      dev = std::max(dev, std::abs(pb.lower - pb.y));
    report.checks.push_back(detail_verify::summarize(
        "symmetric_w_point", std::vector<double>{-dev}, 1e-7));
  }

  detail_verify::finish(report);
  return report;
}

// Exploratory M-level run: evaluates the speculative qudit monotone per
// party and reports the worst inequality margin. A violation here is a
// potential counterexample, reported with full amplitudes, never a crash.
inline VerificationReport run_qudit_speculation(int local_dim, int n_parties,
                                                std::uint64_t samples, std::uint64_t seed) {
  require(local_dim >= 2, Errc::bad_input, "qudit suite needs M >= 2");
  state_dimension(n_parties, local_dim); // enforce the resource cap up front

  VerificationReport report;
  report.suite = "qudit";
  report.label = "SPECULATIVE";
  report.seed = seed;

  const RngStream stream = RngStream(seed).split(static_cast<std::uint64_t>(n_parties));
  const auto draw = [n_parties, local_dim](RngStream& rng) {
    return PureState::haar_random(n_parties, local_dim, rng);
  };
  const std::size_t n_checks = (n_parties == 2) ? 2 : 1;
  const auto values = detail_verify::collect(
      n_checks, samples, stream, [&](RngStream& rng, std::uint64_t, double* out) {
        const PureState s = draw(rng);
        YVector y;
        y.reserve(static_cast<std::size_t>(n_parties));
        for (int j = 1; j <= n_parties; ++j)
          y.push_back(qudit_y_monotone(schmidt_spectrum(s, j), local_dim));
        out[0] = min_inequality_margin(y);
        if (n_parties == 2) out[1] = -std::abs(y[0] - y[1]);
      });

  const std::string tag =
      "/M=" + std::to_string(local_dim) + "/N=" + std::to_string(n_parties);
  for (std::size_t c = 0; c < n_checks; ++c) {
    CheckResult check = detail_verify::summarize(
        (c == 0 ? "qudit_inequality" : "qudit_collapse") + tag, values[c], tol::identity);
    detail_verify::record_violations(report, check, values[c], n_parties, stream, draw);
    report.checks.push_back(std::move(check));
  }

  detail_verify::finish(report);
  return report;
}

struct Fig1Row {
  int state_id = 0;
  double y1 = 0.0;
  double upper_raw = 0.0;
  double upper_clamped = 0.0;
  double lower = 0.0;
};

// Bound sandwich for party 1 over random three-qubit states, in plotting order.
inline std::vector<Fig1Row> figure1_dataset(int samples, std::uint64_t seed) {
  require(samples >= 1, Errc::bad_input, "need at least one sample");
  RngStream rng = RngStream(seed).split(3);
  std::vector<Fig1Row> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const PureState s = PureState::haar_random(3, 2, rng);
    const BoundsReport b = bounds_report(s);
    Fig1Row row;
    row.state_id = i;
    row.y1 = b.parties[0].y;
    row.upper_raw = b.parties[0].upper_raw;
    row.upper_clamped = b.parties[0].upper;
    row.lower = b.parties[0].lower;
    rows.push_back(row);
  }
  return rows;
}

struct Fig4Row {
  double y_total = 0.0;
  double exact = 0.0;
  double mc = 0.0;
  double mc_std_error = 0.0;
};

// Additivity curve at N = 3: exact piecewise form next to the Monte Carlo
// cross-section on a uniform Y_T grid. Endpoints are exact zeros.
inline std::vector<Fig4Row> figure4_dataset(int grid_points, std::uint64_t mc_samples,
                                            std::uint64_t seed) {
  require(grid_points >= 2, Errc::bad_input, "need at least two grid points");
  const RngStream root(seed);
  std::vector<Fig4Row> rows;
  rows.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double y_t = 3.0 * i / (grid_points - 1);
    Fig4Row row;
    row.y_total = y_t;
    row.exact = additivity_n3(y_t);
    if (i > 0 && i + 1 < grid_points) {
      const CrossSection mc =
          additivity_mc(3, y_t, mc_samples, root.split(static_cast<std::uint64_t>(i)));
      row.mc = mc.hyperarea;
      row.mc_std_error = mc.std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

// The OABCE boundary mesh, with its contract re-checked on the way out.
inline PolytopeMesh polytope_mesh_export() {
  const PolytopeMesh mesh = polytope_mesh();
  for (const auto& [name, v] : mesh.vertices) {
    (void)name;
    require(is_inhabitable({v[0], v[1], v[2]}, 1e-12), Errc::internal,
            "mesh vertex escaped the polytope");
  }
  return mesh;
}

} // namespace qshare
