// qshare command-line front end: state analysis, Y-vector sampling,
// verification suites, polytope geometry, and figure datasets, all with
// reproducible seeds and stable file formats.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qshare/geometry.hpp"
#include "qshare/monotones.hpp"
#include "qshare/pure_state.hpp"
#include "qshare/report_io.hpp"
#include "qshare/rng.hpp"
#include "qshare/verify.hpp"
#include "qshare/version.hpp"

namespace {

using namespace qshare;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string format = "table";
  double tolerance = tol::identity;
};

std::uint64_t resolve_seed(const GlobalFlags& g) {
  if (g.seed) return *g.seed;
  const std::uint64_t s = entropy_seed();
  std::cout << "# seed (entropy-derived): " << s << "\n";
  return s;
}

void emit(const GlobalFlags& g, const std::string& content) {
  if (g.output.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
  } else {
    write_file_atomic(g.output, content);
    std::cout << "wrote " << g.output << "\n";
  }
}

std::vector<double> parse_y_csv(const std::string& text) {
  std::vector<double> y;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    try {
      v = std::stod(item);
    } catch (const std::exception&) {
      fail(Errc::bad_input, "--inject expects comma-separated reals, got '" + item + "'");
    }
    require(std::isfinite(v), Errc::bad_input, "--inject values must be finite");
    y.push_back(v);
  }
  require(!y.empty(), Errc::bad_input, "--inject list is empty");
  return y;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string state_file;
  std::string family;
  double theta = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::string bits;
  int n = 3;
  int m = 2;
  bool normalize = false;
};

PureState build_state(const AnalyzeArgs& a, const GlobalFlags& g) {
  if (!a.state_file.empty()) return load_state_file(a.state_file, a.normalize);
  require(!a.family.empty(), Errc::bad_input, "provide --state-file or --family");
  if (a.family == "ghz") return PureState::ghz(a.theta);
  if (a.family == "bell") return PureState::bell();
  if (a.family == "w") return PureState::w_state(a.alpha, a.beta, a.gamma);
  if (a.family == "product") {
    require(!a.bits.empty(), Errc::bad_input, "--family product needs --bits");
    std::vector<int> digits;
    for (char c : a.bits) {
      require(c >= '0' && c <= '9', Errc::bad_input, "--bits must be digits");
      digits.push_back(c - '0');
    }
    return PureState::product(digits, a.m);
  }
  if (a.family == "haar") {
    RngStream rng(g.seed ? *g.seed : entropy_seed());
    return PureState::haar_random(a.n, a.m, rng);
  }
  fail(Errc::bad_input, "unknown family '" + a.family +
                            "' (expected ghz|w|bell|product|haar)");
}

int cmd_analyze(const AnalyzeArgs& a, const GlobalFlags& g) {
  const PureState state = build_state(a, g);

  if (state.local_dim() != 2) {
    // Qudit input: speculative Y-only output.
    YVector y;
    for (int j = 1; j <= state.n_parties(); ++j)
      y.push_back(qudit_y_monotone(schmidt_spectrum(state, j), state.local_dim()));
    const double total = std::accumulate(y.begin(), y.end(), 0.0);

    if (g.format == "structured") {
      json j;
      j["label"] = "SPECULATIVE";
      j["n_parties"] = state.n_parties();
      j["local_dim"] = state.local_dim();
      j["Y_vector"] = y;
      j["Y_total"] = total;
      j["min_margin"] = min_inequality_margin(y);
      emit(g, j.dump(2) + "\n");
      return kExitOk;
    }
    std::ostringstream out;
    out << "qudit state: N=" << state.n_parties() << " M=" << state.local_dim()
        << "  [SPECULATIVE Y monotone]\n";
    for (std::size_t j = 0; j < y.size(); ++j)
      out << "  party " << (j + 1) << "  Y = " << format_human(y[j]) << "\n";
    out << "  Y_T = " << format_human(total)
        << "  min margin = " << format_human(min_inequality_margin(y)) << "\n";
    emit(g, out.str());
    return kExitOk;
  }

  const EntanglementProfile profile = entanglement_profile(state);
  const bool has_bounds = state.n_parties() >= 2;
  BoundsReport bounds;
  if (has_bounds) bounds = bounds_report(state);

  if (g.format == "structured") {
    json j;
    j["version"] = kVersion;
    j["profile"] = profile_to_json(profile);
    if (has_bounds) j["bounds"] = bounds_to_json(bounds);
    if (state.n_parties() == 3)
      j["face"] = face_region_name(classify_face(profile.y_vector, 1e-7));
    emit(g, j.dump(2) + "\n");
    return kExitOk;
  }

  std::ostringstream out;
  if (g.format == "csv") {
    out << "party,lambda_min,lambda_max,K,Y,C_rest\n";
    for (const QubitMarginal& m : profile.marginals)
      out << m.party << ',' << format_full(m.lambda_min) << ',' << format_full(m.lambda_max)
          << ',' << format_full(m.schmidt_weight) << ',' << format_full(m.y) << ','
          << format_full(m.c_rest) << "\n";
    emit(g, out.str());
    return kExitOk;
  }

  out << "state: N=" << state.n_parties() << " qubits\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-6s %-12s %-12s %-10s %-10s %-10s\n", "party",
                "lambda_min", "lambda_max", "K", "Y", "C_rest");
  out << line;
  for (const QubitMarginal& m : profile.marginals) {
    std::snprintf(line, sizeof line, "  %-6d %-12s %-12s %-10s %-10s %-10s\n", m.party,
                  format_human(m.lambda_min).c_str(), format_human(m.lambda_max).c_str(),
                  format_human(m.schmidt_weight).c_str(), format_human(m.y).c_str(),
                  format_human(m.c_rest).c_str());
    out << line;
  }
  out << "  Y_T = " << format_human(profile.y_total) << "\n";

  if (has_bounds) {
    out << "bounds (lower <= Y <= min(1, upper_raw)):\n";
    std::snprintf(line, sizeof line, "  %-6s %-10s %-10s %-10s %-10s %-12s %-12s\n", "party",
                  "lower", "Y", "upper_raw", "upper", "lower_mgn", "upper_mgn");
    out << line;
    for (const PartyBounds& pb : bounds.parties) {
      std::snprintf(line, sizeof line, "  %-6d %-10s %-10s %-10s %-10s %-12s %-12s\n",
                    pb.party, format_human(pb.lower).c_str(), format_human(pb.y).c_str(),
                    format_human(pb.upper_raw).c_str(), format_human(pb.upper).c_str(),
                    format_human(pb.lower_margin).c_str(),
                    format_human(pb.upper_margin).c_str());
      out << line;
    }
  }
  if (state.n_parties() == 3)
    out << "face classification: " << face_region_name(classify_face(profile.y_vector, 1e-7))
        << "\n";
  emit(g, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(int n, int count, const GlobalFlags& g) {
  require(n >= 2, Errc::bad_input, "--n must be at least 2");
  require(count >= 1, Errc::bad_input, "--count must be positive");
  const std::uint64_t seed = resolve_seed(g);
  const RngStream stream = RngStream(seed).split(static_cast<std::uint64_t>(n));

  const std::size_t n_vals = static_cast<std::size_t>(n) + 2;
  const auto values = detail_verify::collect(
      n_vals, static_cast<std::uint64_t>(count), stream,
      [&](RngStream& rng, std::uint64_t, double* out) {
        const PureState s = PureState::haar_random(n, 2, rng);
        const EntanglementProfile p = entanglement_profile(s);
        for (int j = 0; j < n; ++j) out[j] = p.y_vector[static_cast<std::size_t>(j)];
        out[n] = p.y_total;
        out[n + 1] = min_inequality_margin(p.y_vector);
      });

  std::vector<SampleRow> rows(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SampleRow& r = rows[static_cast<std::size_t>(i)];
    r.state_id = i;
    for (int j = 0; j < n; ++j)
      r.y.push_back(values[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    r.y_total = values[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    r.min_margin = values[n_vals - 1][static_cast<std::size_t>(i)];
  }
  emit(g, samples_csv(rows, n, seed));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::vector<int> party_counts;
  std::uint64_t samples = 10000;
  int qudit_m = 3;
  int qudit_n = 3;
  std::string inject;
};

std::string suite_output_path(const std::string& base, const std::string& suite,
                              bool multiple) {
  if (!multiple) return base;
  const std::size_t dot = base.find_last_of('.');
  if (dot == std::string::npos) return base + "." + suite;
  return base.substr(0, dot) + "." + suite + base.substr(dot);
}

int cmd_verify(const VerifyArgs& v, const GlobalFlags& g) {
  static const std::vector<std::string> known = {"inequality", "bounds", "identities",
                                                 "families",   "qudit",  "all"};
  require(std::find(known.begin(), known.end(), v.suite) != known.end(), Errc::bad_input,
          "unknown suite '" + v.suite + "'");

  SuiteConfig config;
  config.seed = resolve_seed(g);
  config.samples = v.samples;
  config.tolerance = g.tolerance;
  if (!v.party_counts.empty()) config.party_counts = v.party_counts;
  if (!v.inject.empty()) config.injected_y = parse_y_csv(v.inject);

  std::vector<VerificationReport> reports;
  const bool all = v.suite == "all";
  if (all || v.suite == "inequality") reports.push_back(run_inequality_sweep(config));
  if (all || v.suite == "bounds") reports.push_back(run_bound_sandwich(config));
  if (all || v.suite == "identities") reports.push_back(run_identity_checks(config));
  if (all || v.suite == "families") reports.push_back(run_family_checks(config));
  if (all || v.suite == "qudit")
    reports.push_back(
        run_qudit_speculation(v.qudit_m, v.qudit_n, config.samples, config.seed));

  bool pass = true;
  for (const VerificationReport& r : reports) {
    pass = pass && r.pass;
    if (g.format == "structured" && g.output.empty())
      std::cout << report_to_json(r).dump(2) << "\n";
    else
      std::cout << report_human_table(r);
    if (!g.output.empty())
      write_file_atomic(suite_output_path(g.output, r.suite, reports.size() > 1),
                        report_to_json(r).dump(2) + "\n");
  }
  return pass ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// geometry

struct GeometryArgs {
  std::string action;
  int n = 3;
  double y_t = 2.0;
  std::uint64_t samples = 0; // 0 = per-action default
};

int cmd_geometry(const GeometryArgs& a, const GlobalFlags& g) {
  if (a.action == "volume") {
    const Rational v = inhabitable_volume(a.n);
    const Rational excluded = excluded_simplex_volume(a.n);
    const std::uint64_t samples = a.samples ? a.samples : 1000000;
    const std::uint64_t seed = resolve_seed(g);
    const McEstimate mc = polytope_volume_mc(a.n, samples, RngStream(seed));

    if (g.format == "structured") {
      json j;
      j["n"] = a.n;
      j["excluded_simplex"] = excluded.str();
      j["V_exact"] = v.str();
      j["V_exact_value"] = v.value();
      j["V_mc"] = mc.estimate;
      j["V_mc_std_error"] = mc.std_error;
      j["samples"] = mc.samples;
      j["seed"] = seed;
      emit(g, j.dump(2) + "\n");
      return kExitOk;
    }
    std::ostringstream out;
    out << "V_" << a.n << " = " << v.str() << " = " << format_human(v.value())
        << "   (each inequality excludes " << excluded.str() << ")\n";
    out << "monte carlo: " << format_human(mc.estimate) << " +/- "
        << format_human(mc.std_error) << "  (" << mc.samples << " samples, seed " << seed
        << ")\n";
    emit(g, out.str());
    return kExitOk;
  }

  if (a.action == "slice") {
    const std::uint64_t samples = a.samples ? a.samples : 100000;
    const std::uint64_t seed = resolve_seed(g);
    const CrossSection mc = additivity_mc(a.n, a.y_t, samples, RngStream(seed));
    const double slice = cube_slice_hyperarea(a.n, a.y_t);

    json j;
    j["n"] = a.n;
    j["Y_T"] = a.y_t;
    j["cube_slice_hyperarea"] = slice;
    if (a.n == 3) j["exact"] = additivity_n3(a.y_t);
    j["mc"] = mc.hyperarea;
    j["mc_std_error"] = mc.std_error;
    j["accepted_samples"] = mc.sample_count;
    j["seed"] = seed;
    if (g.format == "structured") {
      emit(g, j.dump(2) + "\n");
      return kExitOk;
    }
    std::ostringstream out;
    out << "cross-section at Y_T = " << format_human(a.y_t) << " (N = " << a.n << ")\n";
    if (a.n == 3) out << "  exact: " << format_human(additivity_n3(a.y_t)) << "\n";
    out << "  monte carlo: " << format_human(mc.hyperarea) << " +/- "
        << format_human(mc.std_error) << "  (" << mc.sample_count
        << " accepted samples, seed " << seed << ")\n";
    out << "  full cube slice: " << format_human(slice) << "\n";
    emit(g, out.str());
    return kExitOk;
  }

  if (a.action == "mesh") {
    emit(g, mesh_to_json(polytope_mesh_export()).dump(2) + "\n");
    return kExitOk;
  }

  fail(Errc::bad_input, "unknown geometry action '" + a.action +
                            "' (expected volume|slice|mesh)");
}

// ---------------------------------------------------------------------------
// figures

struct FiguresArgs {
  std::string which;
  int count = 100;
  int grid = 61;
  std::uint64_t samples = 100000;
};

int cmd_figures(const FiguresArgs& f, const GlobalFlags& g) {
  const std::uint64_t seed = resolve_seed(g);
  if (f.which == "fig1") {
    emit(g, fig1_csv(figure1_dataset(f.count, seed), seed));
    return kExitOk;
  }
  if (f.which == "fig4") {
    emit(g, fig4_csv(figure4_dataset(f.grid, f.samples, seed), seed));
    return kExitOk;
  }
  fail(Errc::bad_input, "unknown figure '" + f.which + "' (expected fig1|fig4)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement sharing monotones, polytopes and verification"};
  app.set_version_flag("--version", std::string("qshare ") + qshare::kVersion);
  app.require_subcommand(1);

  GlobalFlags global;
  app.add_option("--seed", global.seed, "RNG seed (default: fresh entropy, echoed)");
  app.add_option("--output,-o", global.output, "write output to this file (atomic)");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "structured"}));
  app.add_option("--tolerance", global.tolerance, "margin tolerance for checks");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "per-party entanglement profile");
  analyze->fallthrough();
  CLI::Option* opt_file =
      analyze->add_option("--state-file", analyze_args.state_file, "state JSON file");
  CLI::Option* opt_family = analyze->add_option(
      "--family", analyze_args.family, "named family: ghz|w|bell|product|haar");
  opt_file->excludes(opt_family);
  opt_family->excludes(opt_file);
  analyze->add_option("--theta", analyze_args.theta, "GHZ angle (radians)");
  analyze->add_option("--alpha", analyze_args.alpha, "W coefficient alpha");
  analyze->add_option("--beta", analyze_args.beta, "W coefficient beta");
  analyze->add_option("--gamma", analyze_args.gamma, "W coefficient gamma");
  analyze->add_option("--bits", analyze_args.bits, "product-state digits, e.g. 010");
  analyze->add_option("--n", analyze_args.n, "party count (haar family)");
  analyze->add_option("--m", analyze_args.m, "local dimension (haar/product)");
  analyze->add_flag("--normalize", analyze_args.normalize, "normalize input amplitudes");

  int sample_n = 3;
  int sample_count = 100;
  CLI::App* sample = app.add_subcommand("sample", "Y vectors of Haar-random states (CSV)");
  sample->fallthrough();
  sample->add_option("--n", sample_n, "party count")->required();
  sample->add_option("--count", sample_count, "number of states");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "property suites over Haar samples");
  verify->fallthrough();
  verify->add_option("suite", verify_args.suite,
                     "inequality|bounds|identities|families|qudit|all")
      ->required();
  verify->add_option("--samples", verify_args.samples, "samples per party count");
  verify->add_option("--n", verify_args.party_counts, "party counts to sweep");
  verify->add_option("--m", verify_args.qudit_m, "qudit local dimension");
  verify->add_option("--qudit-n", verify_args.qudit_n, "qudit party count");
  verify->add_option("--inject", verify_args.inject,
                     "inject a Y vector (comma separated) as a harness self-test");

  GeometryArgs geometry_args;
  CLI::App* geometry = app.add_subcommand("geometry", "volumes, slices and the mesh");
  geometry->fallthrough();
  geometry->add_option("action", geometry_args.action, "volume|slice|mesh")->required();
  geometry->add_option("--n", geometry_args.n, "party count");
  geometry->add_option("--yt", geometry_args.y_t, "total entanglement Y_T");
  geometry->add_option("--samples", geometry_args.samples, "Monte Carlo samples");

  FiguresArgs figures_args;
  CLI::App* figures = app.add_subcommand("figures", "figure reproduction datasets (CSV)");
  figures->fallthrough();
  figures->add_option("which", figures_args.which, "fig1|fig4")->required();
  figures->add_option("--count", figures_args.count, "fig1: number of states");
  figures->add_option("--grid", figures_args.grid, "fig4: Y_T grid points");
  figures->add_option("--samples", figures_args.samples, "fig4: MC samples per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_args, global);
    if (app.got_subcommand(sample)) return cmd_sample(sample_n, sample_count, global);
    if (app.got_subcommand(verify)) return cmd_verify(verify_args, global);
    if (app.got_subcommand(geometry)) return cmd_geometry(geometry_args, global);
    if (app.got_subcommand(figures)) return cmd_figures(figures_args, global);
  } catch (const qshare::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
