#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qshare/error.hpp"
#include "qshare/geometry.hpp"
#include "qshare/monotones.hpp"
#include "qshare/pure_state.hpp"
#include "qshare/verify.hpp"
#include "qshare/version.hpp"

// Serialization: machine-readable JSON reports, CSV tables (comma separator,
// '.' decimal point, LF endings, mandatory header row), aligned human
// summaries, and the state-file schema. CSV and JSON carry full round-trip
// precision; human tables round to 6 significant digits.

namespace qshare {

using json = nlohmann::ordered_json;

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Verification reports

inline json report_to_json(const VerificationReport& report) {
  json j;
  j["suite"] = report.suite;
  if (!report.label.empty()) j["label"] = report.label;
  j["seed"] = report.seed;
  j["version"] = kVersion;
  j["pass"] = report.pass;
  j["checks"] = json::array();
  for (const CheckResult& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["samples"] = c.sample_count;
    jc["violations"] = c.violation_count;
    jc["tolerance"] = c.tolerance;
    jc["worst_margin"] = c.worst_margin;
    jc["p01"] = c.p01;
    jc["p50"] = c.p50;
    jc["p99"] = c.p99;
    jc["pass"] = c.pass;
    j["checks"].push_back(jc);
  }
  j["violation_records"] = json::array();
  for (const ViolationRecord& v : report.violations) {
    json jv;
    jv["check"] = v.check;
    jv["n_parties"] = v.n_parties;
    jv["sample_index"] = v.sample_index;
    jv["margin"] = v.margin;
    jv["injected"] = v.injected;
    jv["seed"] = report.seed;
    json amps = json::array();
    for (const cplx& a : v.amplitudes) amps.push_back({a.real(), a.imag()});
    jv["amplitudes"] = amps;
    j["violation_records"].push_back(jv);
  }
  return j;
}

inline std::string report_human_table(const VerificationReport& report) {
  std::ostringstream out;
  out << "suite: " << report.suite;
  if (!report.label.empty()) out << " [" << report.label << "]";
  out << "  seed: " << report.seed << "  result: " << (report.pass ? "PASS" : "FAIL")
      << "\n";
  out << "  " << std::left;
  char line[200];
  std::snprintf(line, sizeof line, "%-34s %10s %6s %12s %12s %12s %6s", "check", "samples",
                "viol", "worst", "p50", "p99", "ok");
  out << line << "\n";
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof line, "  %-34s %10llu %6llu %12s %12s %12s %6s",
                  c.name.c_str(), static_cast<unsigned long long>(c.sample_count),
                  static_cast<unsigned long long>(c.violation_count),
                  format_human(c.worst_margin).c_str(), format_human(c.p50).c_str(),
                  format_human(c.p99).c_str(), c.pass ? "yes" : "NO");
    out << line << "\n";
  }
  for (const ViolationRecord& v : report.violations) {
    out << "  violation: " << v.check << " sample " << v.sample_index
        << " margin " << format_human(v.margin) << (v.injected ? " (injected)" : "") << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CSV tables

inline std::string manifest_line(std::uint64_t seed) {
  return std::string("# qshare ") + kVersion + " seed=" + std::to_string(seed) + "\n";
}

inline std::string fig1_csv(const std::vector<Fig1Row>& rows, std::uint64_t seed) {
  std::ostringstream out;
  out << manifest_line(seed);
  out << "state_id,Y_1,upper_raw,upper_clamped,lower\n";
  for (const Fig1Row& r : rows)
    out << r.state_id << ',' << format_full(r.y1) << ',' << format_full(r.upper_raw) << ','
        << format_full(r.upper_clamped) << ',' << format_full(r.lower) << "\n";
  return out.str();
}

inline std::string fig4_csv(const std::vector<Fig4Row>& rows, std::uint64_t seed) {
  std::ostringstream out;
  out << manifest_line(seed);
  out << "Y_T,additivity_exact,additivity_mc,mc_std_error\n";
  for (const Fig4Row& r : rows)
    out << format_full(r.y_total) << ',' << format_full(r.exact) << ',' << format_full(r.mc)
        << ',' << format_full(r.mc_std_error) << "\n";
  return out.str();
}

struct SampleRow {
  int state_id = 0;
  std::vector<double> y;
  double y_total = 0.0;
  double min_margin = 0.0;
};

inline std::string samples_csv(const std::vector<SampleRow>& rows, int n_parties,
                               std::uint64_t seed) {
  std::ostringstream out;
  out << manifest_line(seed);
  out << "state_id";
  for (int j = 1; j <= n_parties; ++j) out << ",Y_" << j;
  out << ",Y_T,min_margin\n";
  for (const SampleRow& r : rows) {
    out << r.state_id;
    for (double y : r.y) out << ',' << format_full(y);
    out << ',' << format_full(r.y_total) << ',' << format_full(r.min_margin) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Mesh document

inline json mesh_to_json(const PolytopeMesh& mesh) {
  json j;
  j["name"] = "polyhedron_OABCE";
  j["vertices"] = json::object();
  for (const auto& [name, v] : mesh.vertices) j["vertices"][name] = {v[0], v[1], v[2]};
  j["faces"] = json::array();
  for (const auto& f : mesh.faces) j["faces"].push_back({f[0], f[1], f[2]});
  return j;
}

// ---------------------------------------------------------------------------
// Analysis documents

inline json profile_to_json(const EntanglementProfile& p) {
  json j;
  j["n_parties"] = p.marginals.size();
  j["marginals"] = json::array();
  for (const QubitMarginal& m : p.marginals) {
    json jm;
    jm["party"] = m.party;
    jm["lambda_min"] = m.lambda_min;
    jm["lambda_max"] = m.lambda_max;
    jm["schmidt_weight"] = m.schmidt_weight;
    jm["Y"] = m.y;
    jm["C_rest"] = m.c_rest;
    j["marginals"].push_back(jm);
  }
  j["Y_vector"] = p.y_vector;
  j["Y_total"] = p.y_total;
  return j;
}

inline json bounds_to_json(const BoundsReport& b) {
  json arr = json::array();
  for (const PartyBounds& pb : b.parties) {
    json j;
    j["party"] = pb.party;
    j["lower"] = pb.lower;
    j["Y"] = pb.y;
    j["upper_raw"] = pb.upper_raw;
    j["upper"] = pb.upper;
    j["lower_margin"] = pb.lower_margin;
    j["upper_margin"] = pb.upper_margin;
    arr.push_back(j);
  }
  return arr;
}

// ---------------------------------------------------------------------------
// State files: either amplitudes {n_parties, local_dim, amplitudes: [[re,im],...]}
// or a family spec {family, params}.

inline PureState state_from_json(const json& j, bool normalize = false) {
  if (j.contains("family")) {
    const std::string family = j.at("family").get<std::string>();
    const json params = j.value("params", json::object());
    if (family == "ghz") return PureState::ghz(params.at("theta").get<double>());
    if (family == "bell") return PureState::bell();
    if (family == "w") {
      const auto get = [&](const char* name) {
        const json& v = params.at(name);
        if (v.is_array()) return cplx{v.at(0).get<double>(), v.at(1).get<double>()};
        return cplx{v.get<double>(), 0.0};
      };
      return PureState::w_state(get("alpha"), get("beta"), get("gamma"));
    }
    if (family == "product") {
      std::vector<int> digits = params.at("digits").get<std::vector<int>>();
      return PureState::product(digits, params.value("local_dim", 2));
    }
    if (family == "haar") {
      RngStream rng(params.at("seed").get<std::uint64_t>());
      return PureState::haar_random(params.at("n_parties").get<int>(),
                                    params.value("local_dim", 2), rng);
    }
    fail(Errc::bad_input, "unknown family '" + family + "'");
  }

  const int n_parties = j.at("n_parties").get<int>();
  const int local_dim = j.value("local_dim", 2);
  std::vector<cplx> amps;
  for (const json& pair : j.at("amplitudes")) {
    require(pair.is_array() && pair.size() == 2, Errc::bad_input,
            "amplitudes must be [re, im] pairs");
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return PureState::from_amplitudes(std::move(amps), n_parties, local_dim, normalize);
}

inline PureState load_state_file(const std::string& path, bool normalize = false) {
  std::ifstream in(path);
  require(in.good(), Errc::bad_input, "cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_input, "state file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return state_from_json(j, normalize);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_input, std::string("state file schema error: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Atomic file write (temp + rename).

inline void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), Errc::bad_input, "cannot write to '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, target);
}

} // namespace qshare
