#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qshare/error.hpp"
#include "qshare/tolerances.hpp"

// Minimal dense complex-matrix kernels: Hermitian eigen-decomposition
// (cyclic Jacobi), positive-semidefinite square root, and the two-qubit
// spin-flip conjugation. Matrices here are tiny (local dimension, or 4 for
// qubit pairs), so simplicity and accuracy win over asymptotics.

namespace qshare {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    require(dim > 0, Errc::wrong_dimension, "matrix dimension must be positive");
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  int dim() const { return dim_; }

  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

  const std::vector<cplx>& entries() const { return a_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const {
    require(dim_ == rhs.dim_, Errc::wrong_dimension, "dimension mismatch in matrix product");
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int k = 0; k < dim_; ++k) {
        const cplx ark = (*this)(r, k);
        if (ark == cplx{}) continue;
        for (int c = 0; c < dim_; ++c) m(r, c) += ark * rhs(k, c);
      }
    return m;
  }

  ComplexMatrix operator-(const ComplexMatrix& rhs) const {
    require(dim_ == rhs.dim_, Errc::wrong_dimension, "dimension mismatch in matrix difference");
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - rhs.a_[i];
    return m;
  }

  cplx trace() const {
    cplx t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  // Largest entry magnitude (max norm).
  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_finite() const {
    for (const cplx& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  // Max deviation from H = H^dagger.
  double hermiticity_defect() const {
    double d = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = r; c < dim_; ++c)
        d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
  }

  bool is_hermitian(double tol = tol::construction) const { return hermiticity_defect() <= tol; }

  bool is_unitary(double tol = tol::construction) const {
    const ComplexMatrix p = adjoint() * (*this);
    double d = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        d = std::max(d, std::abs(p(r, c) - (r == c ? cplx{1.0} : cplx{})));
    return d <= tol;
  }

  bool is_psd(double tol = tol::construction) const;

private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns; empty when not requested
  bool has_vectors = false;
};

namespace detail {

// One complex Jacobi rotation zeroing A(p,q). A stays exactly Hermitian;
// V accumulates the rotations (columns become eigenvectors).
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix* v, int p, int q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx u_conj = std::conj(apq) / r; // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    const cplx aip = a(i, p);
    const cplx aiq = a(i, q);
    a(i, p) = c * aip - s * u_conj * aiq;
    a(i, q) = s * aip + c * u_conj * aiq;
    a(p, i) = std::conj(a(i, p));
    a(q, i) = std::conj(a(i, q));
  }
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  if (v != nullptr) {
    for (int i = 0; i < n; ++i) {
      const cplx vip = (*v)(i, p);
      const cplx viq = (*v)(i, q);
      (*v)(i, p) = c * vip - s * u_conj * viq;
      (*v)(i, q) = s * vip + c * u_conj * viq;
    }
  }
}

inline double max_offdiagonal(const ComplexMatrix& a) {
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = r + 1; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// Closed-form 2x2 Hermitian eigenpairs via trace/determinant.
inline EigenDecomposition eigen_2x2(const ComplexMatrix& h, bool want_vectors) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));

  EigenDecomposition out;
  out.values = {mean - disc, mean + disc};
  if (!want_vectors) return out;

  out.vectors = ComplexMatrix(2);
  out.has_vectors = true;
  for (int k = 0; k < 2; ++k) {
    const double e = out.values[static_cast<std::size_t>(k)];
    cplx v0 = b;
    cplx v1 = cplx{e - a};
    double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    if (nrm < 1e-150) {
      // b ~ 0 and e ~ a: diagonal (possibly degenerate) matrix; pick distinct
      // basis vectors matching the eigenvalue order.
      const int low_index = (a <= d) ? 0 : 1;
      const int pick = (k == 0) ? low_index : 1 - low_index;
      v0 = (pick == 0) ? 1.0 : 0.0;
      v1 = (pick == 0) ? 0.0 : 1.0;
      nrm = 1.0;
    }
    out.vectors(0, k) = v0 / nrm;
    out.vectors(1, k) = v1 / nrm;
  }
  return out;
}

} // namespace detail

// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
// Eigenvalues come back ascending. The input is symmetrized as
// (H + H^dagger)/2 before iterating; asymmetry beyond tol_hermitian is an
// error.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& h, bool want_vectors = false,
                                          double tol_hermitian = tol::construction) {
  require(h.is_finite(), Errc::bad_input, "matrix has non-finite entries");
  require(h.hermiticity_defect() <= tol_hermitian, Errc::not_hermitian,
          "asymmetry exceeds tolerance");

  const int n = h.dim();
  ComplexMatrix a(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

  if (n == 2) {
    EigenDecomposition out = detail::eigen_2x2(a, want_vectors);
    return out;
  }

  EigenDecomposition out;
  out.has_vectors = want_vectors;
  ComplexMatrix v;
  if (want_vectors) v = ComplexMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-14 * scale;
  constexpr int max_sweeps = 50;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (detail::max_offdiagonal(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        detail::jacobi_rotate(a, want_vectors ? &v : nullptr, p, q);
  }
  require(sweep < max_sweeps, Errc::no_convergence, "Jacobi sweep cap exceeded");

  // Sort ascending, permuting eigenvector columns along.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&a](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  out.values.resize(static_cast<std::size_t>(n));
  if (want_vectors) out.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a(src, src).real();
    if (want_vectors)
      for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src);
  }
  return out;
}

inline bool ComplexMatrix::is_psd(double tol) const {
  if (!is_hermitian(tol)) return false;
  const EigenDecomposition eig = hermitian_eigen(*this, false, tol);
  return eig.values.front() >= -tol;
}

// Hermitian PSD square root: S with S*S = H. Eigenvalues in
// [psd_hard_floor, 0) are treated as rounding and clamped to zero;
// anything lower is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const EigenDecomposition eig = hermitian_eigen(h, true);
  const int n = h.dim();
  ComplexMatrix s(n);
  for (int k = 0; k < n; ++k) {
    double e = eig.values[static_cast<std::size_t>(k)];
    require(e >= tol::psd_hard_floor, Errc::not_psd, "eigenvalue below PSD floor");
    if (e < 0.0) e = 0.0;
    const double root = std::sqrt(e);
    if (root == 0.0) continue;
    for (int r = 0; r < n; ++r) {
      const cplx vr = eig.vectors(r, k) * root;
      for (int c = 0; c < n; ++c) s(r, c) += vr * std::conj(eig.vectors(c, k));
    }
  }
  return s;
}

// Two-qubit spin flip: rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
// In the computational basis this is a signed index reversal.
inline ComplexMatrix spin_flip_conjugate(const ComplexMatrix& rho) {
  require(rho.dim() == 4, Errc::wrong_dimension, "spin flip needs a 4x4 matrix");
  static constexpr double sign[4] = {-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix out(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = sign[r] * sign[c] * std::conj(rho(3 - r, 3 - c));
  return out;
}

} // namespace qshare
