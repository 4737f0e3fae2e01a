#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qsplit/density.hpp"
#include "qsplit/ensembles.hpp"
#include "test_util.hpp"

using namespace qsplit;
using namespace qsplit::test;

namespace {

// Trace out the low (second) qubit of a two-qubit density matrix. Used to
// check that composing discards is order-independent.
Matrix trace_low_qubit(const DensityMatrix& rho) {
  Matrix out = Matrix::zero(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.at(i, j) = rho.at(2 * i, 2 * j) + rho.at(2 * i + 1, 2 * j + 1);
  return out;
}

}  // namespace

TEST_CASE("either half of an entangled pair is maximally mixed, whatever the phase") {
  for (const double phi : {0.0, 0.7, kPi / 2.0, 2.9}) {
    const Amp phase(std::cos(phi), -std::sin(phi));
    const StateVector pair =
        make_state({'b', 'c'}, {kInvSqrt2, 0.0, 0.0, phase * kInvSqrt2});
    const DensityMatrix rho_c = partial_trace(pair, {'c'});
    CHECK(Matrix::max_abs_diff(rho_c.mat(), DensityMatrix::maximally_mixed(2).mat()) <= 1e-12);
    const DensityMatrix rho_b = partial_trace(pair, {'b'});
    CHECK(Matrix::max_abs_diff(rho_b.mat(), DensityMatrix::maximally_mixed(2).mat()) <= 1e-12);
  }
}

TEST_CASE("tracing a product state leaves the pure projector of the kept factor") {
  const SecretQubit secret = make_secret(Ensemble::Arbitrary, 1.3, 0.4);
  const StateVector prod = tensor(secret_state(secret, 'c'), make_state({'d'}, {0.6, 0.8}));
  const DensityMatrix rho = partial_trace(prod, {'c'});
  const DensityMatrix expect = DensityMatrix::from_pure(secret_state(secret, 'c'));
  CHECK(Matrix::max_abs_diff(rho.mat(), expect.mat()) <= 1e-12);
}

TEST_CASE("a real theta = pi/3 secret has the diagonal (3/4, 1/4)") {
  const StateVector prod =
      tensor(secret_state(real_secret(kPi / 3.0), 'c'), make_state({'d'}, {1.0, 0.0}));
  const DensityMatrix rho = partial_trace(prod, {'c'});
  CHECK(std::abs(rho.at(0, 0) - Amp(0.75)) <= 1e-12);
  CHECK(std::abs(rho.at(1, 1) - Amp(0.25)) <= 1e-12);
  CHECK(std::abs(rho.at(0, 1) - Amp(std::sqrt(3.0) / 4.0)) <= 1e-12);
}

TEST_CASE("keep order permutes the reduced matrix consistently") {
  std::vector<Amp> amps(8, 0.0);
  amps[0b001] = 0.5;
  amps[0b010] = 0.5;
  amps[0b100] = kInvSqrt2;
  const StateVector w = make_state({'a', 'b', 'c'}, amps);
  const DensityMatrix bc = partial_trace(w, {'b', 'c'});
  const DensityMatrix cb = partial_trace(w, {'c', 'b'});
  for (int b1 = 0; b1 < 2; ++b1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int b2 = 0; b2 < 2; ++b2)
        for (int c2 = 0; c2 < 2; ++c2)
          CHECK(std::abs(bc.at(2 * b1 + c1, 2 * b2 + c2) - cb.at(2 * c1 + b1, 2 * c2 + b2)) <=
                1e-12);
}

TEST_CASE("composing discards is order-independent") {
  // Keep b from a 3-qubit state directly and via both two-step routes.
  std::vector<Amp> amps(8, 0.0);
  amps[0b000] = 0.5;
  amps[0b011] = 0.5;
  amps[0b101] = 0.5;
  amps[0b110] = Amp(0.0, 0.5);
  const StateVector s = make_state({'a', 'b', 'c'}, amps);
  const DensityMatrix direct = partial_trace(s, {'b'});
  const Matrix via_bc = trace_low_qubit(partial_trace(s, {'b', 'c'}));
  const Matrix via_ba = trace_low_qubit(partial_trace(s, {'b', 'a'}));
  CHECK(Matrix::max_abs_diff(direct.mat(), via_bc) <= 1e-12);
  CHECK(Matrix::max_abs_diff(direct.mat(), via_ba) <= 1e-12);
}

TEST_CASE("fidelity: pure projector, maximally mixed, and orthogonal-leaning cases") {
  const SecretQubit secret = make_secret(Ensemble::Arbitrary, 2.1, 5.5);
  const StateVector xi = secret_state(secret, 'c');
  CHECK(fidelity(DensityMatrix::from_pure(xi), xi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(DensityMatrix::maximally_mixed(2), xi) == doctest::Approx(0.5).epsilon(1e-12));

  const StateVector zero = make_state({'c'}, {1.0, 0.0});
  const StateVector plus = secret_state(equatorial_secret(0.0), 'c');
  CHECK(fidelity(DensityMatrix::from_pure(zero), plus) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity ignores the global phase of the pure state") {
  const DensityMatrix rho = DensityMatrix::from_pure(make_state({'c'}, {0.6, 0.8}));
  const Amp phase(std::cos(1.2), std::sin(1.2));
  const StateVector rotated = make_state({'c'}, {phase * 0.6, phase * 0.8});
  CHECK(fidelity(rho, rotated) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace distance: coincident, diagonal-offset, and orthogonal pairs") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(trace_distance(mixed, mixed) <= 1e-12);

  const DensityMatrix tilted(Matrix(2, {0.75, 0.0, 0.0, 0.25}));
  CHECK(trace_distance(tilted, mixed) == doctest::Approx(0.25).epsilon(1e-12));

  const DensityMatrix zero = DensityMatrix::from_pure(make_state({'c'}, {1.0, 0.0}));
  const DensityMatrix one = DensityMatrix::from_pure(make_state({'c'}, {0.0, 1.0}));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("DensityMatrix construction rejects non-states") {
  CHECK_THROWS_AS(DensityMatrix(Matrix(2, {1.0, 0.5, 0.0, 0.0})), std::invalid_argument);  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(Matrix(2, {0.9, 0.0, 0.0, 0.0})), std::invalid_argument);  // trace != 1
  CHECK_THROWS_AS(DensityMatrix(Matrix(2, {1.5, 0.0, 0.0, -0.5})), std::invalid_argument);  // negative eig
  CHECK_THROWS_AS(DensityMatrix(Matrix(3, std::vector<Amp>(9, 0.0))), std::invalid_argument);  // bad dim
}

TEST_CASE("partial_trace validates the keep set") {
  std::vector<Amp> amps(8, 0.0);
  amps[0] = 1.0;
  const StateVector s = make_state({'a', 'b', 'c'}, amps);
  CHECK_THROWS_AS(partial_trace(s, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {'a', 'a'}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {'a', 'b', 'c'}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {'z'}), std::out_of_range);
}
