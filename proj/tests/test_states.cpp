#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qshare/pure_state.hpp"
#include "qshare/rng.hpp"

using namespace qshare;

TEST_CASE("from_amplitudes basics and index convention") {
  // Party 1 is most significant: |100> sits at flat index 4 for N = 3.
  const PureState p = PureState::product({1, 0, 0});
  CHECK(std::abs(p.amplitude(4) - cplx{1.0}) < 1e-15);

  const PureState s = PureState::from_amplitudes({1, 0, 0, 0, 0, 0, 0, 0}, 3);
  CHECK(std::abs(s.amplitude(0) - cplx{1.0}) < 1e-15);

  const PureState scaled = PureState::from_amplitudes({2, 0, 0, 2}, 2, 2, true);
  CHECK(std::abs(scaled.amplitude(0) - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
  CHECK(std::abs(scaled.amplitude(3) - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
  CHECK(scaled.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("from_amplitudes rejects bad input") {
  REQUIRE_THROWS_AS(PureState::from_amplitudes({1, 0, 0}, 2), Error);
  try {
    PureState::from_amplitudes({1, 0, 0}, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::length_mismatch);
  }

  try {
    PureState::from_amplitudes({2, 0, 0, 2}, 2); // normalize off
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_normalized);
  }

  try {
    PureState::from_amplitudes({0, 0, 0, 0}, 2, 2, true);
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_vector);
  }

  REQUIRE_THROWS_AS(state_dimension(30, 2), Error); // over the 2^22 cap
}

TEST_CASE("ghz family amplitudes") {
  const PureState g = PureState::ghz(M_PI / 4.0);
  CHECK(std::abs(g.amplitude(0) - cplx{1.0 / std::sqrt(2.0)}) < 1e-12);
  CHECK(std::abs(g.amplitude(7) - cplx{1.0 / std::sqrt(2.0)}) < 1e-12);

  const PureState zero = PureState::ghz(0.0);
  CHECK(std::abs(zero.amplitude(0) - cplx{1.0}) < 1e-15);
  for (std::uint64_t i = 1; i < 8; ++i) CHECK(std::abs(zero.amplitude(i)) < 1e-15);
}

TEST_CASE("w_state amplitudes and normalization") {
  const double r = 1.0 / std::sqrt(3.0);
  const PureState w = PureState::w_state(1.0, 1.0, 1.0);
  CHECK(std::abs(w.amplitude(4) - cplx{r}) < 1e-12); // |100>
  CHECK(std::abs(w.amplitude(2) - cplx{r}) < 1e-12); // |010>
  CHECK(std::abs(w.amplitude(1) - cplx{r}) < 1e-12); // |001>

  const PureState product_like = PureState::w_state(1.0, 0.0, 0.0);
  CHECK(std::abs(product_like.amplitude(4) - cplx{1.0}) < 1e-15);

  REQUIRE_THROWS_AS(PureState::w_state(0.0, 0.0, 0.0), Error);
}

TEST_CASE("haar_random determinism and norm") {
  RngStream a(1234);
  RngStream b(1234);
  const PureState s1 = PureState::haar_random(3, 2, a);
  const PureState s2 = PureState::haar_random(3, 2, b);
  for (std::uint64_t i = 0; i < s1.dim(); ++i) CHECK(s1.amplitude(i) == s2.amplitude(i));
  CHECK(std::abs(s1.norm() - 1.0) < 1e-12);
}

TEST_CASE("haar_random single-qubit marginal is uniform") {
  RngStream rng(99);
  const int samples = 10000;
  double mean = 0.0;
  for (int i = 0; i < samples; ++i) {
    const PureState s = PureState::haar_random(1, 2, rng);
    mean += std::norm(s.amplitude(0));
  }
  mean /= samples;
  // |c_0|^2 is uniform on [0,1]: std error sqrt(1/12/n).
  const double se = std::sqrt(1.0 / 12.0 / samples);
  CHECK(std::abs(mean - 0.5) < 5.0 * se);
}

TEST_CASE("apply_local_unitary acts on one party only") {
  const PureState zero3 = PureState::product({0, 0, 0});
  CHECK(std::abs(zero3.apply_local_unitary(1, ComplexMatrix::identity(2)).amplitude(0) -
                 cplx{1.0}) < 1e-15);

  ComplexMatrix flip(2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const PureState flipped = zero3.apply_local_unitary(3, flip);
  CHECK(std::abs(flipped.amplitude(1) - cplx{1.0}) < 1e-15); // |001>

  RngStream rng(5);
  const PureState s = PureState::haar_random(3, 2, rng);
  const ComplexMatrix u = haar_unitary(2, rng);
  CHECK(std::abs(s.apply_local_unitary(2, u).norm() - 1.0) < 1e-12);

  ComplexMatrix not_unitary(2);
  not_unitary(0, 0) = 2.0;
  REQUIRE_THROWS_AS(s.apply_local_unitary(1, not_unitary), Error);
  REQUIRE_THROWS_AS(s.apply_local_unitary(4, flip), Error);
}

TEST_CASE("reduced_density_single known values") {
  const ComplexMatrix rho0 = PureState::product({0, 0, 0}).reduced_density_single(1);
  CHECK(std::abs(rho0(0, 0) - cplx{1.0}) < 1e-15);
  CHECK(std::abs(rho0(1, 1)) < 1e-15);

  const ComplexMatrix rho_bell = PureState::bell().reduced_density_single(1);
  CHECK(std::abs(rho_bell(0, 0) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(rho_bell(1, 1) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(rho_bell(0, 1)) < 1e-12);

  const ComplexMatrix rho_w = PureState::w_state(1, 1, 1).reduced_density_single(1);
  const EigenDecomposition eig = hermitian_eigen(rho_w);
  CHECK(eig.values[0] == Catch::Approx(1.0 / 3.0).margin(1e-10));
  CHECK(eig.values[1] == Catch::Approx(2.0 / 3.0).margin(1e-10));
}

TEST_CASE("reduced_density_pair known values") {
  const ComplexMatrix rho = PureState::product({0, 0, 0}).reduced_density_pair(1, 2);
  CHECK(std::abs(rho(0, 0) - cplx{1.0}) < 1e-15);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(rho(i, i)) < 1e-15);

  const ComplexMatrix ghz = PureState::ghz(M_PI / 4.0).reduced_density_pair(1, 2);
  CHECK(std::abs(ghz(0, 0) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(ghz(3, 3) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(ghz(0, 3)) < 1e-12);

  // Bell pair on (1,2) with a spectator third party: a pure projector.
  const double r = 1.0 / std::sqrt(2.0);
  const PureState bell3 = PureState::from_amplitudes({r, 0, 0, 0, 0, 0, r, 0}, 3);
  const ComplexMatrix pair = bell3.reduced_density_pair(1, 2);
  CHECK(std::abs(pair(0, 0) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(pair(0, 3) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(pair(3, 3) - cplx{0.5}) < 1e-12);

  REQUIRE_THROWS_AS(bell3.reduced_density_pair(2, 2), Error);
}

TEST_CASE("partial traces agree with the digit-tuple oracle") {
  RngStream rng(314);
  for (int n : {2, 3, 4}) {
    const PureState s = PureState::haar_random(n, 2, rng);
    for (int j = 1; j <= n; ++j) {
      const ComplexMatrix direct = s.reduced_density_single(j);
      const ComplexMatrix naive = oracles::naive_reduced_density(s, {j});
      CHECK((direct - naive).max_abs() < 1e-12);
      CHECK(std::abs(direct.trace() - cplx{1.0}) < 1e-10);
      CHECK(direct.is_hermitian(1e-10));
      CHECK(direct.is_psd(1e-10));
    }
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (j == k) continue;
        const ComplexMatrix direct = s.reduced_density_pair(j, k);
        const ComplexMatrix naive = oracles::naive_reduced_density(s, {j, k});
        CHECK((direct - naive).max_abs() < 1e-12);
        CHECK(std::abs(direct.trace() - cplx{1.0}) < 1e-10);
      }
  }
}

TEST_CASE("pair reduction is consistent with single reduction") {
  RngStream rng(2718);
  for (int n : {3, 4}) {
    const PureState s = PureState::haar_random(n, 2, rng);
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (j == k) continue;
        const ComplexMatrix pair = s.reduced_density_pair(j, k);
        // Trace out the second party of the pair index.
        ComplexMatrix traced(2);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int t = 0; t < 2; ++t) traced(a, b) += pair(a * 2 + t, b * 2 + t);
        CHECK((traced - s.reduced_density_single(j)).max_abs() < 1e-10);
      }
  }
}

TEST_CASE("single-party eigenvalues form a distribution") {
  RngStream rng(161803);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState s = PureState::haar_random(4, 2, rng);
    for (int j = 1; j <= 4; ++j) {
      const EigenDecomposition eig = hermitian_eigen(s.reduced_density_single(j));
      double sum = 0.0;
      for (double e : eig.values) {
        CHECK(e > -1e-10);
        CHECK(e < 1.0 + 1e-10);
        sum += e;
      }
      CHECK(sum == Catch::Approx(1.0).margin(1e-10));
    }
  }
}

TEST_CASE("qudit states work through the same interfaces") {
  RngStream rng(55);
  const PureState s = PureState::haar_random(2, 3, rng);
  CHECK(s.dim() == 9);
  const ComplexMatrix rho = s.reduced_density_single(2);
  CHECK(rho.dim() == 3);
  CHECK((rho - oracles::naive_reduced_density(s, {2})).max_abs() < 1e-12);
}
