#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qshare/complex_matrix.hpp"
#include "qshare/error.hpp"
#include "qshare/rng.hpp"
#include "qshare/tolerances.hpp"

// N-party pure states over local dimension M (qubits by default), with the
// named three-qubit families, Haar-random sampling, local unitaries and
// partial traces down to one- and two-party density matrices.
//
// Basis-index convention: flat index b encodes (s_1,...,s_N) with party 1
// most significant, b = sum_j s_j * M^(N-j).

namespace qshare {

inline constexpr std::uint64_t kMaxStateDim = 1ULL << 22;

// M^N with the resource cap enforced.
inline std::uint64_t state_dimension(int n_parties, int local_dim) {
  require(n_parties >= 1, Errc::bad_input, "n_parties must be >= 1");
  require(local_dim >= 2, Errc::bad_input, "local_dim must be >= 2");
  std::uint64_t dim = 1;
  for (int j = 0; j < n_parties; ++j) {
    require(dim <= kMaxStateDim / static_cast<std::uint64_t>(local_dim), Errc::too_large,
            "state dimension exceeds the 2^22 resource cap");
    dim *= static_cast<std::uint64_t>(local_dim);
  }
  return dim;
}

class PureState {
public:
  static PureState from_amplitudes(std::vector<cplx> raw, int n_parties, int local_dim = 2,
                                   bool normalize = false) {
    const std::uint64_t dim = state_dimension(n_parties, local_dim);
    require(raw.size() == dim, Errc::length_mismatch,
            "expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(raw.size()));
    double nrm2 = 0.0;
    for (const cplx& c : raw) {
      require(std::isfinite(c.real()) && std::isfinite(c.imag()), Errc::bad_input,
              "non-finite amplitude");
      nrm2 += std::norm(c);
    }
    require(nrm2 > 1e-300, Errc::zero_vector, "amplitude vector has zero norm");
    if (normalize) {
      const double inv = 1.0 / std::sqrt(nrm2);
      for (cplx& c : raw) c *= inv;
    } else {
      require(std::abs(std::sqrt(nrm2) - 1.0) <= tol::construction, Errc::not_normalized,
              "amplitudes are not normalized and normalize is off");
    }
    return PureState(n_parties, local_dim, std::move(raw));
  }

  // cos(theta)|000> + sin(theta)|111>, the generalized three-qubit GHZ family.
  static PureState ghz(double theta) {
    std::vector<cplx> a(8);
    a[0] = std::cos(theta);
    a[7] = std::sin(theta);
    return PureState(3, 2, normalized(std::move(a)));
  }

  // alpha|100> + beta|010> + gamma|001>; normalized internally.
  static PureState w_state(cplx alpha, cplx beta, cplx gamma) {
    const double nrm2 = std::norm(alpha) + std::norm(beta) + std::norm(gamma);
    require(nrm2 > 1e-300, Errc::zero_vector, "w_state coefficients are all zero");
    const double inv = 1.0 / std::sqrt(nrm2);
    std::vector<cplx> a(8);
    a[4] = alpha * inv; // |100>
    a[2] = beta * inv;  // |010>
    a[1] = gamma * inv; // |001>
    return PureState(3, 2, std::move(a));
  }

  // (|00> + |11>)/sqrt(2)
  static PureState bell() {
    std::vector<cplx> a(4);
    a[0] = a[3] = 1.0 / std::sqrt(2.0);
    return PureState(2, 2, std::move(a));
  }

  // Product basis state |s_1 s_2 ... s_N>.
  static PureState product(const std::vector<int>& digits, int local_dim = 2) {
    const int n = static_cast<int>(digits.size());
    const std::uint64_t dim = state_dimension(n, local_dim);
    std::uint64_t idx = 0;
    for (int s : digits) {
      require(s >= 0 && s < local_dim, Errc::bad_input, "basis digit out of range");
      idx = idx * static_cast<std::uint64_t>(local_dim) + static_cast<std::uint64_t>(s);
    }
    std::vector<cplx> a(dim);
    a[idx] = 1.0;
    return PureState(n, local_dim, std::move(a));
  }

  // Unitarily invariant (Haar) sample: 2 M^N independent standard normals
  // as real/imaginary parts, then normalize.
  static PureState haar_random(int n_parties, int local_dim, RngStream& rng) {
    const std::uint64_t dim = state_dimension(n_parties, local_dim);
    std::vector<cplx> a(dim);
    for (cplx& c : a) {
      const double re = rng.normal();
      const double im = rng.normal();
      c = cplx{re, im};
    }
    return PureState(n_parties, local_dim, normalized(std::move(a)));
  }

  int n_parties() const { return n_parties_; }
  int local_dim() const { return local_dim_; }
  std::uint64_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::uint64_t flat_index) const { return amps_[flat_index]; }

  double norm() const {
    double n2 = 0.0;
    for (const cplx& c : amps_) n2 += std::norm(c);
    return std::sqrt(n2);
  }

  // Stride of party j in the flat index: M^(N-j).
  std::uint64_t party_stride(int party) const {
    check_party(party);
    std::uint64_t s = 1;
    for (int k = 0; k < n_parties_ - party; ++k) s *= static_cast<std::uint64_t>(local_dim_);
    return s;
  }

  PureState apply_local_unitary(int party, const ComplexMatrix& u) const {
    check_party(party);
    require(u.dim() == local_dim_, Errc::wrong_dimension, "unitary must be M x M");
    require(u.is_unitary(tol::construction), Errc::not_unitary,
            "matrix is not unitary within tolerance");
    const std::uint64_t m = static_cast<std::uint64_t>(local_dim_);
    const std::uint64_t stride = party_stride(party);
    const std::uint64_t block = stride * m;

    std::vector<cplx> out(amps_.size());
    std::vector<cplx> scratch(m);
    for (std::uint64_t base = 0; base < amps_.size(); base += block) {
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        const std::uint64_t at = base + inner;
        for (std::uint64_t b = 0; b < m; ++b) scratch[b] = amps_[at + b * stride];
        for (std::uint64_t a = 0; a < m; ++a) {
          cplx acc{};
          for (std::uint64_t b = 0; b < m; ++b)
            acc += u(static_cast<int>(a), static_cast<int>(b)) * scratch[b];
          out[at + a * stride] = acc;
        }
      }
    }
    return PureState(n_parties_, local_dim_, std::move(out));
  }

  // Reduced density matrix of one party (M x M).
  ComplexMatrix reduced_density_single(int party) const {
    check_party(party);
    const std::uint64_t m = static_cast<std::uint64_t>(local_dim_);
    const std::uint64_t stride = party_stride(party);
    const std::uint64_t block = stride * m;

    ComplexMatrix rho(local_dim_);
    for (std::uint64_t base = 0; base < amps_.size(); base += block)
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        const std::uint64_t at = base + inner;
        for (std::uint64_t a = 0; a < m; ++a) {
          const cplx ca = amps_[at + a * stride];
          if (ca == cplx{}) continue;
          for (std::uint64_t b = 0; b < m; ++b)
            rho(static_cast<int>(a), static_cast<int>(b)) +=
                ca * std::conj(amps_[at + b * stride]);
        }
      }
    return rho;
  }

  // Reduced density matrix of an ordered pair (M^2 x M^2); the pair index is
  // s_j * M + s_k for parties (j, k) as given.
  ComplexMatrix reduced_density_pair(int party_j, int party_k) const {
    check_party(party_j);
    check_party(party_k);
    require(party_j != party_k, Errc::same_party, "pair reduction needs two distinct parties");
    const std::uint64_t m = static_cast<std::uint64_t>(local_dim_);
    const std::uint64_t sj = party_stride(party_j);
    const std::uint64_t sk = party_stride(party_k);

    ComplexMatrix rho(local_dim_ * local_dim_);
    std::vector<cplx> gathered(m * m);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      // Visit each "rest" configuration once, at its (0,0) slot.
      if ((i / sj) % m != 0 || (i / sk) % m != 0) continue;
      for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b) gathered[a * m + b] = amps_[i + a * sj + b * sk];
      for (std::uint64_t r = 0; r < m * m; ++r) {
        const cplx cr = gathered[r];
        if (cr == cplx{}) continue;
        for (std::uint64_t c = 0; c < m * m; ++c)
          rho(static_cast<int>(r), static_cast<int>(c)) += cr * std::conj(gathered[c]);
      }
    }
    return rho;
  }

private:
  PureState(int n_parties, int local_dim, std::vector<cplx> amps)
      : n_parties_(n_parties), local_dim_(local_dim), amps_(std::move(amps)) {}

  static std::vector<cplx> normalized(std::vector<cplx> a) {
    double n2 = 0.0;
    for (const cplx& c : a) n2 += std::norm(c);
    require(n2 > 1e-300, Errc::zero_vector, "zero amplitude vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& c : a) c *= inv;
    return a;
  }

  void check_party(int party) const {
    require(party >= 1 && party <= n_parties_, Errc::bad_party_index,
            "party index " + std::to_string(party) + " outside 1.." + std::to_string(n_parties_));
  }

  int n_parties_;
  int local_dim_;
  std::vector<cplx> amps_;
};

// Haar-distributed M x M unitary: Gaussian matrix, then Gram-Schmidt with
// the R-diagonal phase fixed. Used for local-unitary invariance checks.
inline ComplexMatrix haar_unitary(int dim, RngStream& rng) {
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = cplx{re, im};
    }
  // Modified Gram-Schmidt over columns.
  for (int c = 0; c < dim; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx overlap{};
      for (int r = 0; r < dim; ++r) overlap += std::conj(g(r, prev)) * g(r, c);
      for (int r = 0; r < dim; ++r) g(r, c) -= overlap * g(r, prev);
    }
    double nrm2 = 0.0;
    for (int r = 0; r < dim; ++r) nrm2 += std::norm(g(r, c));
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int r = 0; r < dim; ++r) g(r, c) *= inv;
  }
  return g;
}

} // namespace qshare
