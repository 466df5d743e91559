#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "qshare/report_io.hpp"
#include "qshare/verify.hpp"

using namespace qshare;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.party_counts = {2, 3};
  c.samples = 300;
  c.seed = 99;
  return c;
}

} // namespace

TEST_CASE("inequality sweep passes and reports the N = 2 collapse") {
  const VerificationReport r = run_inequality_sweep(small_config());
  CHECK(r.pass);
  CHECK(r.seed == 99);
  REQUIRE(r.checks.size() == 5); // inequality+half_total+collapse for N=2, 2 for N=3
  bool saw_collapse = false;
  for (const CheckResult& c : r.checks) {
    CHECK(c.violation_count == 0);
    CHECK(c.sample_count > 0);
    if (c.name == "collapse/N=2") {
      saw_collapse = true;
      CHECK(c.worst_margin >= -1e-9);
    }
  }
  CHECK(saw_collapse);
}

TEST_CASE("injected Y vector is flagged as a violation") {
  SuiteConfig c = small_config();
  c.injected_y = {1.0, 0.1, 0.1};
  const VerificationReport r = run_inequality_sweep(c);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].injected);
  CHECK(r.violations[0].margin == Catch::Approx(-0.8).margin(1e-12));
  // The real sampled checks still pass; only the injected one fails.
  for (const CheckResult& chk : r.checks)
    if (chk.name != "inequality/injected") CHECK(chk.pass);
}

TEST_CASE("bound sandwich and identities pass on samples") {
  SuiteConfig c = small_config();
  c.samples = 150;
  const VerificationReport b = run_bound_sandwich(c);
  CHECK(b.pass);
  for (const CheckResult& chk : b.checks) {
    // Worst margins are persisted even when passing.
    CHECK(chk.worst_margin > -1e-9);
    CHECK(chk.worst_margin < 1.0);
  }

  const VerificationReport i = run_identity_checks(c);
  CHECK(i.pass);
  REQUIRE(i.checks.size() == 6);
}

TEST_CASE("family checks cover all four loci") {
  SuiteConfig c = small_config();
  c.samples = 500;
  const VerificationReport r = run_family_checks(c);
  CHECK(r.pass);
  REQUIRE(r.checks.size() == 5);
  CHECK(r.checks[0].name == "ghz_locus_grid");
  CHECK(r.checks[0].sample_count == 181);
  CHECK(r.checks[1].name == "w_on_surfaces");
  CHECK(r.checks[1].sample_count == 500);
  CHECK(r.checks[2].name == "w_triangle_abc");
  CHECK(r.checks[2].sample_count > 0); // Max <= 1/2 subclass is non-empty
  CHECK(r.checks[3].name == "w_phase_invariance");
  CHECK(r.checks[4].name == "symmetric_w_point");
}

TEST_CASE("qudit speculation suite is labeled and passes") {
  const VerificationReport r = run_qudit_speculation(3, 3, 300, 11);
  CHECK(r.label == "SPECULATIVE");
  CHECK(r.pass);

  // Two-party symmetry holds for any M: both marginals share a spectrum.
  const VerificationReport two = run_qudit_speculation(3, 2, 200, 12);
  bool saw_collapse = false;
  for (const CheckResult& c : two.checks)
    if (c.name.rfind("qudit_collapse", 0) == 0) {
      saw_collapse = true;
      CHECK(c.worst_margin >= -1e-9);
    }
  CHECK(saw_collapse);

  // Product qudit state: every Y vanishes.
  const PureState product = PureState::product({0, 1, 2}, 3);
  for (int j = 1; j <= 3; ++j)
    CHECK(qudit_y_monotone(schmidt_spectrum(product, j), 3) ==
          Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("reports are byte-identical across reruns and worker counts") {
  const std::string first = report_to_json(run_inequality_sweep(small_config())).dump();
  const std::string second = report_to_json(run_inequality_sweep(small_config())).dump();
  CHECK(first == second);

  setenv("QSHARE_THREADS", "3", 1);
  const std::string threaded = report_to_json(run_inequality_sweep(small_config())).dump();
  setenv("QSHARE_THREADS", "1", 1);
  const std::string serial = report_to_json(run_inequality_sweep(small_config())).dump();
  unsetenv("QSHARE_THREADS");
  CHECK(threaded == serial);
  CHECK(threaded == first);
}

TEST_CASE("violation regeneration replays the exact sample") {
  const RngStream stream(424242);
  const auto draw = [](RngStream& rng) { return PureState::haar_random(3, 2, rng); };

  // Draw the first few states directly from block 0's stream.
  RngStream direct = stream.split(0);
  PureState expected = draw(direct);
  for (int i = 0; i < 5; ++i) expected = draw(direct);

  const PureState replayed = detail_verify::regenerate(stream, 5, draw);
  for (std::uint64_t i = 0; i < expected.dim(); ++i)
    CHECK(replayed.amplitude(i) == expected.amplitude(i));
}

TEST_CASE("figure 1 dataset satisfies the sandwich row-wise") {
  const std::vector<Fig1Row> rows = figure1_dataset(100, 3);
  REQUIRE(rows.size() == 100);
  for (const Fig1Row& r : rows) {
    CHECK(r.lower - 1e-9 <= r.y1);
    CHECK(r.y1 <= r.upper_clamped + 1e-9);
    CHECK(r.upper_clamped == Catch::Approx(std::min(1.0, r.upper_raw)).margin(1e-15));
  }

  // Deterministic, and re-checking through monotones reproduces the values.
  const std::vector<Fig1Row> again = figure1_dataset(100, 3);
  RngStream rng = RngStream(3).split(3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].y1 == again[i].y1);
    const PureState s = PureState::haar_random(3, 2, rng);
    const BoundsReport b = bounds_report(s);
    CHECK(std::abs(rows[i].y1 - b.parties[0].y) < 1e-12);
    CHECK(std::abs(rows[i].lower - b.parties[0].lower) < 1e-12);
  }
}

TEST_CASE("figure 4 dataset peaks at Y_T = 2 and tracks the closed form") {
  const std::vector<Fig4Row> rows = figure4_dataset(13, 20000, 17);
  REQUIRE(rows.size() == 13);
  CHECK(rows.front().y_total == 0.0);
  CHECK(rows.front().exact == 0.0);
  CHECK(rows.front().mc == 0.0);
  CHECK(rows.back().y_total == 3.0);
  CHECK(rows.back().exact == 0.0);

  double peak_y = -1.0, peak_val = -1.0;
  for (const Fig4Row& r : rows) {
    CHECK(std::abs(r.mc - r.exact) <= 3.0 * r.mc_std_error + 1e-12);
    if (r.exact > peak_val) {
      peak_val = r.exact;
      peak_y = r.y_total;
    }
  }
  CHECK(peak_y == Catch::Approx(2.0).margin(1e-12));
  CHECK(peak_val == Catch::Approx(0.8660254037844386).margin(1e-12));
}

TEST_CASE("mesh export re-checks its contract") {
  const PolytopeMesh mesh = polytope_mesh_export();
  CHECK(mesh.vertices.size() == 5);
  CHECK(mesh.faces.size() == 6);
  const json doc = mesh_to_json(mesh);
  CHECK(doc["vertices"].size() == 5);
  CHECK(doc["faces"].size() == 6);
  CHECK(doc["vertices"]["E"] == json::array({1.0, 1.0, 1.0}));
}

TEST_CASE("csv writers use full round-trip precision") {
  std::vector<SampleRow> rows(1);
  rows[0].state_id = 0;
  rows[0].y = {0.1234567890123456789, 1.0 / 3.0};
  rows[0].y_total = rows[0].y[0] + rows[0].y[1];
  rows[0].min_margin = -1e-17;
  const std::string csv = samples_csv(rows, 2, 5);

  CHECK(csv.find("# qshare") == 0);
  CHECK(csv.find("state_id,Y_1,Y_2,Y_T,min_margin\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos); // LF endings only

  // Round-trip the Y_1 field.
  const std::size_t header_end = csv.find('\n', csv.find('\n') + 1);
  const std::size_t comma = csv.find(',', header_end);
  const std::size_t comma2 = csv.find(',', comma + 1);
  const double parsed = std::stod(csv.substr(comma + 1, comma2 - comma - 1));
  CHECK(parsed == rows[0].y[0]);
}

TEST_CASE("report JSON embeds violation records with amplitudes") {
  SuiteConfig c = small_config();
  c.injected_y = {1.0, 0.0, 0.0};
  const json j = report_to_json(run_inequality_sweep(c));
  CHECK(j["pass"] == false);
  REQUIRE(j["violation_records"].size() == 1);
  CHECK(j["violation_records"][0]["injected"] == true);
  CHECK(j["violation_records"][0]["seed"] == 99);
}

TEST_CASE("percentile summaries use nearest rank") {
  std::vector<double> vals;
  for (int i = 1; i <= 100; ++i) vals.push_back(static_cast<double>(i));
  const CheckResult r = detail_verify::summarize("t", vals, 1e-9);
  CHECK(r.p01 == 1.0);
  CHECK(r.p50 == 50.0);
  CHECK(r.p99 == 99.0);
  CHECK(r.worst_margin == 1.0);
}
