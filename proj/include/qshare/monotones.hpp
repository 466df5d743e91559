#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qshare/complex_matrix.hpp"
#include "qshare/error.hpp"
#include "qshare/pure_state.hpp"
#include "qshare/tolerances.hpp"

// The entanglement quantities: Schmidt coefficients/vectors across each
// one-vs-rest bipartition, the Schmidt weight K, the Y monotone, one-vs-rest
// and pairwise (Wootters) concurrences, the monogamy residual, and the
// lower/upper bound sandwich around each Y_j.

namespace qshare {

inline double clamp_tiny_negative(double x) {
  if (x < 0.0 && x >= tol::clamp_floor) return 0.0;
  return x;
}

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Eigenvalues of the party's reduced density matrix, descending, clamped to
// [0,1] and renormalized to unit sum.
inline std::vector<double> schmidt_spectrum(const PureState& state, int party) {
  const ComplexMatrix rho = state.reduced_density_single(party);
  EigenDecomposition eig = hermitian_eigen(rho);
  std::vector<double> lam(eig.values.rbegin(), eig.values.rend());
  double sum = 0.0;
  for (double& l : lam) {
    l = clamp01(clamp_tiny_negative(l));
    sum += l;
  }
  require(std::abs(sum - 1.0) <= tol::identity, Errc::internal,
          "reduced-state eigenvalues drifted from unit sum");
  for (double& l : lam) l /= sum;
  return lam;
}

// (lambda_max, lambda_min) for a qubit party.
inline std::pair<double, double> schmidt_coefficients(const PureState& state, int party) {
  require(state.local_dim() == 2, Errc::bad_input, "schmidt_coefficients expects qubits");
  const std::vector<double> lam = schmidt_spectrum(state, party);
  return {lam[0], lam[1]};
}

struct SchmidtVectors {
  std::vector<double> lambdas;            // descending, size 2
  std::vector<std::vector<cplx>> f;       // local vectors, each of length M
  std::vector<std::vector<cplx>> g;       // complement vectors, each of length dim/M
};

// Full Schmidt form across the party-vs-rest cut: lambdas, local eigenvectors
// f_n and complement vectors g_n with  state = sum_n sqrt(lambda_n) f_n (x) g_n.
// For a degenerate or vanishing lambda any orthonormal completion is valid;
// only the reconstruction is contractual.
inline SchmidtVectors schmidt_vectors(const PureState& state, int party) {
  require(state.local_dim() == 2, Errc::bad_input, "schmidt_vectors expects qubits");
  const ComplexMatrix rho = state.reduced_density_single(party);
  EigenDecomposition eig = hermitian_eigen(rho, true);

  SchmidtVectors out;
  out.lambdas = {clamp01(clamp_tiny_negative(eig.values[1])),
                 clamp01(clamp_tiny_negative(eig.values[0]))};
  out.f.resize(2);
  out.g.resize(2);

  const std::uint64_t rest_dim = state.dim() / 2;
  const std::uint64_t stride = state.party_stride(party);
  const std::uint64_t block = stride * 2;

  for (int n = 0; n < 2; ++n) {
    const int col = 1 - n; // eigenvalues were ascending
    out.f[n] = {eig.vectors(0, col), eig.vectors(1, col)};

    // g_n = <f_n | state> / sqrt(lambda_n), indexed by the rest configuration.
    std::vector<cplx> g(rest_dim);
    for (std::uint64_t base = 0, r = 0; base < state.dim(); base += block)
      for (std::uint64_t inner = 0; inner < stride; ++inner, ++r)
        g[r] = std::conj(out.f[n][0]) * state.amplitude(base + inner) +
               std::conj(out.f[n][1]) * state.amplitude(base + stride + inner);

    const double lam = out.lambdas[n];
    if (lam > 1e-14) {
      const double inv = 1.0 / std::sqrt(lam);
      for (cplx& c : g) c *= inv;
    } else if (n == 1) {
      // Vanishing weight: complete the basis orthogonally to g_0.
      std::uint64_t t = 0;
      for (std::uint64_t i = 1; i < rest_dim; ++i)
        if (std::abs(out.g[0][i]) < std::abs(out.g[0][t])) t = i;
      std::fill(g.begin(), g.end(), cplx{});
      g[t] = 1.0;
      cplx overlap{};
      for (std::uint64_t i = 0; i < rest_dim; ++i) overlap += std::conj(out.g[0][i]) * g[i];
      double nrm2 = 0.0;
      for (std::uint64_t i = 0; i < rest_dim; ++i) {
        g[i] -= overlap * out.g[0][i];
        nrm2 += std::norm(g[i]);
      }
      const double inv = 1.0 / std::sqrt(nrm2);
      for (cplx& c : g) c *= inv;
    }
    out.g[n] = std::move(g);
  }
  return out;
}

// Residual of rebuilding the state from its Schmidt form, in max norm.
inline double schmidt_reconstruction_residual(const PureState& state, int party,
                                              const SchmidtVectors& sv) {
  const std::uint64_t stride = state.party_stride(party);
  const std::uint64_t block = stride * 2;
  double worst = 0.0;
  for (std::uint64_t base = 0, r = 0; base < state.dim(); base += block)
    for (std::uint64_t inner = 0; inner < stride; ++inner, ++r)
      for (int a = 0; a < 2; ++a) {
        cplx rebuilt{};
        for (int n = 0; n < 2; ++n)
          rebuilt += std::sqrt(sv.lambdas[static_cast<std::size_t>(n)]) *
                     sv.f[static_cast<std::size_t>(n)][static_cast<std::size_t>(a)] *
                     sv.g[static_cast<std::size_t>(n)][r];
        const std::uint64_t at = base + static_cast<std::uint64_t>(a) * stride + inner;
        worst = std::max(worst, std::abs(rebuilt - state.amplitude(at)));
      }
  return worst;
}

inline void check_distribution(const std::vector<double>& lambdas) {
  require(!lambdas.empty(), Errc::bad_distribution, "empty eigenvalue list");
  double sum = 0.0;
  for (double l : lambdas) {
    require(std::isfinite(l) && l >= tol::clamp_floor, Errc::bad_distribution,
            "negative eigenvalue in distribution");
    sum += l;
  }
  require(std::abs(sum - 1.0) <= tol::identity, Errc::bad_distribution,
          "eigenvalues do not sum to one");
}

// Schmidt weight K = 1 / sum(lambda^2), in [1, count].
inline double schmidt_weight(const std::vector<double>& lambdas) {
  check_distribution(lambdas);
  double purity = 0.0;
  for (double l : lambdas) purity += l * l;
  return 1.0 / purity;
}

// Y = 1 - sqrt(2/K - 1), equivalently two times the smaller eigenvalue.
// Both routes are evaluated and must agree.
inline double y_monotone(const std::vector<double>& lambdas) {
  require(lambdas.size() == 2, Errc::bad_distribution, "qubit monotone needs two eigenvalues");
  check_distribution(lambdas);
  const double k = schmidt_weight(lambdas);
  const double via_weight = 1.0 - std::sqrt(std::max(0.0, 2.0 / k - 1.0));
  const double via_min = 2.0 * std::min(lambdas[0], lambdas[1]);
  require(std::abs(via_weight - via_min) <= 1e-10, Errc::internal,
          "monotone evaluation routes disagree");
  return clamp01(via_min);
}

// M-level generalization Y = 1 - sqrt((M/K - 1)/(M - 1)); reduces to the
// qubit form at M = 2. Supported speculatively.
inline double qudit_y_monotone(const std::vector<double>& lambdas, int local_dim) {
  require(local_dim >= 2, Errc::bad_distribution, "local dimension must be >= 2");
  require(lambdas.size() == static_cast<std::size_t>(local_dim), Errc::bad_distribution,
          "expected one eigenvalue per level");
  check_distribution(lambdas);
  const double k = schmidt_weight(lambdas);
  const double arg = (static_cast<double>(local_dim) / k - 1.0) / (local_dim - 1.0);
  return clamp01(1.0 - std::sqrt(std::max(0.0, arg)));
}

struct QubitMarginal {
  int party = 0;
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  double schmidt_weight = 1.0; // K
  double y = 0.0;              // Y = 2 lambda_min
  double c_rest = 0.0;         // one-vs-rest concurrence
};

struct EntanglementProfile {
  std::vector<QubitMarginal> marginals;
  std::vector<double> y_vector;
  double y_total = 0.0;
};

inline double concurrence_one_vs_rest(const PureState& state, int party) {
  const auto [lmax, lmin] = schmidt_coefficients(state, party);
  const double c = 2.0 * std::sqrt(std::max(0.0, lmax * lmin));
  const double y = 2.0 * lmin;
  require(std::abs(c * c - y * (2.0 - y)) <= tol::identity, Errc::internal,
          "concurrence routes disagree");
  return clamp01(c);
}

// Per-party Schmidt data for a qubit state. N = 1 has no bipartition and
// yields the single point Y = 0.
inline EntanglementProfile entanglement_profile(const PureState& state) {
  require(state.local_dim() == 2, Errc::bad_input, "entanglement_profile expects qubits");
  EntanglementProfile p;
  const int n = state.n_parties();
  p.marginals.reserve(static_cast<std::size_t>(n));
  p.y_vector.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const auto [lmax, lmin] = schmidt_coefficients(state, j);
    QubitMarginal m;
    m.party = j;
    m.lambda_max = lmax;
    m.lambda_min = lmin;
    m.schmidt_weight = schmidt_weight({lmax, lmin});
    m.y = y_monotone({lmax, lmin});
    m.c_rest = 2.0 * std::sqrt(std::max(0.0, lmax * lmin));
    p.marginals.push_back(m);
    p.y_vector.push_back(m.y);
    p.y_total += m.y;
  }
  return p;
}

struct PairConcurrenceTable {
  int n_parties = 0;
  std::vector<double> values; // row-major n x n, symmetric, zero diagonal

  double operator()(int j, int k) const {
    return values[static_cast<std::size_t>(j - 1) * n_parties + (k - 1)];
  }
};

// Wootters concurrence of the (j,k) pair reduction:
// C = max(0, mu1 - mu2 - mu3 - mu4), mu_i the descending square roots of the
// eigenvalues of sqrt(rho) rho~ sqrt(rho) (same spectrum as rho rho~, but
// Hermitian, so the Jacobi solver applies).
inline double pairwise_concurrence(const PureState& state, int party_j, int party_k) {
  require(state.local_dim() == 2, Errc::bad_input, "pairwise concurrence is a qubit quantity");
  const ComplexMatrix rho = state.reduced_density_pair(party_j, party_k);
  const ComplexMatrix flipped = spin_flip_conjugate(rho);
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix r = root * flipped * root;
  EigenDecomposition eig = hermitian_eigen(r);
  double c = 0.0;
  for (int i = 3; i >= 0; --i) {
    const double mu = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(i)]));
    c += (i == 3) ? mu : -mu;
  }
  return clamp01(std::max(0.0, c));
}

inline PairConcurrenceTable pair_concurrence_table(const PureState& state) {
  const int n = state.n_parties();
  PairConcurrenceTable t;
  t.n_parties = n;
  t.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      const double c = pairwise_concurrence(state, j, k);
      t.values[static_cast<std::size_t>(j - 1) * n + (k - 1)] = c;
      t.values[static_cast<std::size_t>(k - 1) * n + (j - 1)] = c;
    }
  return t;
}

// tau_j = C_rest^2 - sum_{k != j} C_jk^2 (nonnegative for pure states).
inline double monogamy_residual(const PureState& state, int party) {
  const double c_rest = concurrence_one_vs_rest(state, party);
  double sum = 0.0;
  for (int k = 1; k <= state.n_parties(); ++k) {
    if (k == party) continue;
    const double c = pairwise_concurrence(state, party, k);
    sum += c * c;
  }
  return c_rest * c_rest - sum;
}

struct PartyBounds {
  int party = 0;
  double lower = 0.0;     // 1 - sqrt(1 - sum_k C_jk^2)
  double y = 0.0;
  double upper_raw = 0.0; // sum_{k != j} Y_k
  double upper = 0.0;     // min(1, upper_raw)
  double lower_margin = 0.0;
  double upper_margin = 0.0;
};

struct BoundsReport {
  std::vector<PartyBounds> parties;
};

inline BoundsReport bounds_report(const PureState& state) {
  require(state.local_dim() == 2, Errc::bad_input, "bounds_report expects qubits");
  require(state.n_parties() >= 2, Errc::bad_input, "bounds need at least two parties");
  const EntanglementProfile profile = entanglement_profile(state);
  const PairConcurrenceTable table = pair_concurrence_table(state);

  BoundsReport report;
  const int n = state.n_parties();
  report.parties.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    double sum_c2 = 0.0;
    for (int k = 1; k <= n; ++k)
      if (k != j) sum_c2 += table(j, k) * table(j, k);
    require(sum_c2 <= 1.0 + 1e-8, Errc::monogamy_violation,
            "pairwise concurrences exceed the monogamy budget; numerical or logic fault");

    PartyBounds b;
    b.party = j;
    b.y = profile.y_vector[static_cast<std::size_t>(j - 1)];
    b.lower = 1.0 - std::sqrt(std::max(0.0, 1.0 - sum_c2));
    b.upper_raw = profile.y_total - b.y;
    b.upper = std::min(1.0, b.upper_raw);
    b.lower_margin = b.y - b.lower;
    b.upper_margin = b.upper_raw - b.y;
    report.parties.push_back(b);
  }
  return report;
}

} // namespace qshare
