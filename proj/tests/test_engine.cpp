#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dense_ref.hpp"
#include "pps/engine.hpp"
#include "pps/oracle.hpp"
#include "test_util.hpp"

using namespace pps;

namespace {

std::vector<PauliString> all_words2() {
  std::vector<PauliString> out;
  const std::string letters = "IXYZ";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      PauliString p(2);
      p.set_letter(0, letters[static_cast<std::size_t>(a)]);
      p.set_letter(1, letters[static_cast<std::size_t>(b)]);
      out.push_back(p);
    }
  return out;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("clifford_conjugate matches dense conjugation exhaustively") {
  const std::vector<Gate> gates = {
      Gate::clifford1(CliffordKind::H, 0),   Gate::clifford1(CliffordKind::H, 1),
      Gate::clifford1(CliffordKind::S, 0),   Gate::clifford1(CliffordKind::S, 1),
      Gate::clifford1(CliffordKind::Sdg, 0), Gate::clifford1(CliffordKind::Sdg, 1),
      Gate::cnot(0, 1),                      Gate::cnot(1, 0)};
  for (const Gate& g : gates) {
    const Eigen::MatrixXcd u = testref::dense_gate(g, 2);
    for (const PauliString& p : all_words2()) {
      PauliString q = p;
      const bool flip = clifford_conjugate(q, g.clifford, g.q0, g.q1);
      const Eigen::MatrixXcd got = u * testref::dense_word(p) * u.adjoint();
      const Eigen::MatrixXcd expect = (flip ? -1.0 : 1.0) * testref::dense_word(q);
      CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("single rotation splits with the textbook cos/sin weights") {
  // Conjugating Z by Rx(theta) = exp(-i theta X / 2):
  //   Rx^dag Z Rx = cos(theta) Z + sin(theta) Y.
  const double theta = 0.7;
  Circuit c(1);
  c.append_rotation(PauliString::single(1, 0, 'X'), ParamRef::bound(theta));
  SparseOperator z(1);
  z.add_term(PauliString::single(1, 0, 'Z'), 1.0);

  const Engine eng;
  const SparseOperator out = eng.evolve(z, c);
  REQUIRE(out.size() == 2);
  CHECK(out.coeff(PauliString::single(1, 0, 'Z')) == doctest::Approx(std::cos(theta)).epsilon(1e-15));
  CHECK(out.coeff(PauliString::single(1, 0, 'Y')) == doctest::Approx(std::sin(theta)).epsilon(1e-15));

  // The sign convention flips with the gate's sign field.
  Circuit cm(1);
  cm.append_rotation(PauliString::single(1, 0, 'X'), ParamRef::bound(theta), -1);
  const SparseOperator outm = eng.evolve(z, cm);
  CHECK(outm.coeff(PauliString::single(1, 0, 'Y')) == doctest::Approx(-std::sin(theta)).epsilon(1e-15));
}

TEST_CASE("expectation matches the dense oracle on random circuits") {
  std::mt19937_64 rng(20240917);
  const Engine serial(EngineOptions{0.0, 1, false});
  const Engine sharded(EngineOptions{0.0, 5, false});
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // 2..6
    const auto init = (trial % 2) ? InitialState::AllPlus : InitialState::AllZero;
    const Circuit c = testutil::random_circuit(rng, n, 24, init);
    const SparseOperator obs = testutil::random_observable(rng, n, 6, 3);

    const double exact = oracle::circuit_expectation(c, obs, {});
    CHECK(std::abs(serial.expectation(obs, c) - exact) < 1e-10);
    CHECK(std::abs(sharded.expectation(obs, c) - exact) < 1e-10);
  }
}

TEST_CASE("free parameters resolve through the theta overloads") {
  std::mt19937_64 rng(5150);
  Circuit c(3, InitialState::AllPlus);
  c.append_rotation(PauliString::from_text("ZZI"), ParamRef::free(0));
  c.append_clifford(CliffordKind::H, 2);
  c.append_rotation(PauliString::from_text("IXY"), ParamRef::free(1), -1);
  c.append_rotation(PauliString::from_text("XII"), ParamRef::free(0));  // shared parameter
  const std::vector<double> theta = {0.31, -0.97};
  const SparseOperator obs = testutil::random_observable(rng, 3, 5, 2);

  const Engine eng;
  CHECK(eng.expectation(obs, c, theta) ==
        doctest::Approx(eng.expectation(obs, c.bind(theta))).epsilon(1e-15));
  CHECK(std::abs(eng.expectation(obs, c, theta) -
                 oracle::circuit_expectation(c, obs, theta)) < 1e-12);
}

TEST_CASE("multiples of pi/2 stay Clifford under trig snapping") {
  SparseOperator x(1);
  x.add_term(PauliString::single(1, 0, 'X'), 1.0);
  const Engine eng;

  // Rz(pi/2): X -> -Y exactly, a single term (cos branch snapped away).
  Circuit quarter(1);
  quarter.append_rotation(PauliString::single(1, 0, 'Z'), ParamRef::bound(M_PI / 2));
  SparseOperator out = eng.evolve(x, quarter);
  REQUIRE(out.size() == 1);
  CHECK(out.coeff(PauliString::single(1, 0, 'Y')) == -1.0);

  // Rz(pi): X -> -X exactly.
  Circuit half(1);
  half.append_rotation(PauliString::single(1, 0, 'Z'), ParamRef::bound(M_PI));
  out = eng.evolve(x, half);
  REQUIRE(out.size() == 1);
  CHECK(out.coeff(PauliString::single(1, 0, 'X')) == -1.0);

  // Rz(2 pi) and Rz(0): identity, bit-for-bit.
  for (const double angle : {0.0, 2 * M_PI, -6 * M_PI}) {
    Circuit full(1);
    full.append_rotation(PauliString::single(1, 0, 'Z'), ParamRef::bound(angle));
    out = eng.evolve(x, full);
    REQUIRE(out.size() == 1);
    CHECK(out.coeff(PauliString::single(1, 0, 'X')) == 1.0);
  }
}

TEST_CASE("truncation is strict and applies before and during the walk") {
  SparseOperator obs(2);
  obs.add_term(PauliString::from_text("ZI"), 0.25);
  obs.add_term(PauliString::from_text("XX"), 1.0);

  Engine eng(EngineOptions{0.25, 1, false});
  const Circuit empty(2);
  // |0.25| <= delta_c goes away even with no gates (pre-walk truncation).
  SparseOperator out = eng.evolve(obs, empty);
  CHECK(out.size() == 1);
  CHECK(out.coeff(PauliString::from_text("XX")) == 1.0);

  // A rotation whose cos branch lands exactly at the threshold: theta with
  // cos(theta) * 1.0 <= delta_c gets dropped, the sin branch survives.
  const double theta = std::acos(0.2499);  // cos branch below 0.25
  Circuit c(2);
  c.append_rotation(PauliString::from_text("YI"), ParamRef::bound(theta));
  SparseOperator z(2);
  z.add_term(PauliString::from_text("ZI"), 1.0);
  out = eng.evolve(z, c);
  REQUIRE(out.size() == 1);  // only the sin branch (X) survives
  CHECK(out.coeff(PauliString::from_text("XI")) ==
        doctest::Approx(-std::sin(theta)).epsilon(1e-12));
}

TEST_CASE("serial and sharded walks agree bit for bit") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Circuit c = testutil::random_circuit(rng, n, 30, InitialState::AllZero);
    const SparseOperator obs = testutil::random_observable(rng, n, 8, 3);
    const double delta_c = (trial % 2) ? 1e-3 : 0.0;

    Engine serial(EngineOptions{delta_c, 1, false});
    Engine sharded(EngineOptions{delta_c, 7, false});
    const auto a = serial.evolve(obs, c).sorted_terms();
    const auto b = sharded.evolve(obs, c).sorted_terms();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].word == b[i].word);
      CHECK(a[i].coeff == b[i].coeff);  // exact: identical arithmetic per key
    }
  }
}

TEST_CASE("stats and trace") {
  Circuit c(2);
  c.append_clifford(CliffordKind::H, 0);
  c.append_rotation(PauliString::from_text("XI"), ParamRef::bound(0.4));
  c.append_rotation(PauliString::from_text("IX"), ParamRef::bound(0.4));  // commutes with obs
  SparseOperator z(2);
  z.add_term(PauliString::from_text("ZI"), 1.0);

  Engine eng(EngineOptions{0.0, 1, true});
  (void)eng.evolve(z, c);
  const EngineStats& st = eng.stats();
  CHECK(st.max_terms == 2);
  CHECK(st.split_rotations == 1);
  REQUIRE(st.trace.size() == 3);
  // Walk is back to front: gate 2 first (no split), then 1 (split), then 0.
  CHECK(st.trace[0].gate_index == 2);
  CHECK(st.trace[0].terms_before == 1);
  CHECK(st.trace[0].terms_after == 1);
  CHECK(st.trace[1].gate_index == 1);
  CHECK(st.trace[1].terms_after == 2);
  CHECK(st.trace[2].gate_index == 0);
  CHECK(st.trace[2].terms_after == 2);

  // Stats reset between calls.
  (void)eng.evolve(z, Circuit(2));
  CHECK(eng.stats().trace.empty());
  CHECK(eng.stats().split_rotations == 0);
}

TEST_CASE("sharding helpers partition and rejoin") {
  std::mt19937_64 rng(41);
  const SparseOperator op = testutil::random_observable(rng, 5, 30, 4);
  const auto shards = kernel::shard_split(op, 4);
  CHECK(shards.size() == 4);
  CHECK(kernel::shard_term_count(shards) == op.size());
  const SparseOperator back = kernel::shard_join(shards, 5);
  CHECK(back == op);
  CHECK_THROWS_AS(kernel::shard_split(op, 0), std::invalid_argument);
}

TEST_CASE("errors") {
  const Engine eng;
  SparseOperator obs(3);
  obs.add_term(PauliString::single(3, 0, 'Z'), 1.0);
  CHECK_THROWS_AS(eng.evolve(obs, Circuit(2)), std::invalid_argument);

  Circuit unbound(3);
  unbound.append_rotation(PauliString::single(3, 0, 'X'), ParamRef::free(0));
  CHECK_THROWS_AS(eng.expectation(obs, unbound), std::invalid_argument);
}

}  // TEST_SUITE
