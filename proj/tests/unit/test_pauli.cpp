#include <complex>
#include <random>

#include "doctest.h"
#include "qgf/pauli.hpp"

using namespace qgf;

namespace {

PauliWord random_word(std::mt19937_64& rng, int n_qubits) {
  std::uniform_int_distribution<int> pick(0, 3);
  PauliWord w(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    w.set(q, static_cast<PauliOp>(pick(rng)));
  }
  return w;
}

}  // namespace

TEST_SUITE_BEGIN("pauli");

TEST_CASE("single qubit products carry the right phases") {
  const PauliWord x("X"), y("Y"), z("Z"), id("I");

  auto xy = multiply(x, y);
  CHECK(xy.phase == cplx{0, 1});
  CHECK(xy.word == z);

  auto yx = multiply(y, x);
  CHECK(yx.phase == cplx{0, -1});

  auto xz = multiply(x, z);
  CHECK(xz.phase == cplx{0, -1});
  CHECK(xz.word == y);

  for (const auto& p : {x, y, z}) {
    auto with_id = multiply(p, id);
    CHECK(with_id.phase == cplx{1, 0});
    CHECK(with_id.word == p);
  }
}

TEST_CASE("two qubit product multiplies per-position phases") {
  const PauliWord a("XZ"), b("ZX");
  auto prod = multiply(a, b);
  // Position 0: XZ = -iY, position 1: ZX = +iY; the phases cancel.
  CHECK(prod.phase == cplx{1, 0});
  CHECK(prod.word == PauliWord("YY"));
}

TEST_CASE("mismatched qubit counts are rejected") {
  CHECK_THROWS_AS(multiply(PauliWord("X"), PauliWord("XX")), std::invalid_argument);
  CHECK_THROWS_AS(commutes(PauliWord("X"), PauliWord("XX")), std::invalid_argument);
}

TEST_CASE("commutation parity") {
  CHECK(commutes(PauliWord("X"), PauliWord("X")));
  CHECK_FALSE(commutes(PauliWord("X"), PauliWord("Z")));
  CHECK(commutes(PauliWord("XX"), PauliWord("ZZ")));  // two anticommuting slots
  CHECK(commutes(PauliWord("XI"), PauliWord("IZ")));
}

TEST_CASE("every word squares to the identity with unit phase") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliWord w = random_word(rng, 1 + trial % 8);
    const auto sq = multiply(w, w);
    CHECK(sq.phase == cplx{1, 0});
    CHECK(sq.word.is_identity());
  }
}

TEST_CASE("closure: products stay in the group") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const auto prod = multiply(random_word(rng, n), random_word(rng, n));
    const cplx p4 = std::pow(prod.phase, 4);
    CHECK(std::abs(p4 - cplx{1, 0}) < 1e-12);
    CHECK(prod.word.n_qubits() == n);
  }
}

TEST_CASE("associativity including phases") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const PauliWord a = random_word(rng, n);
    const PauliWord b = random_word(rng, n);
    const PauliWord c = random_word(rng, n);
    const auto ab = multiply(a, b);
    const auto ab_c = multiply(ab.word, c);
    const auto bc = multiply(b, c);
    const auto a_bc = multiply(a, bc.word);
    CHECK(ab_c.word == a_bc.word);
    CHECK(std::abs(ab.phase * ab_c.phase - bc.phase * a_bc.phase) < 1e-12);
  }
}

TEST_CASE("commutes agrees with the phase of the reversed product") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    const PauliWord a = random_word(rng, n);
    const PauliWord b = random_word(rng, n);
    const auto ab = multiply(a, b);
    const auto ba = multiply(b, a);
    const bool same_phase = std::abs(ab.phase - ba.phase) < 1e-12;
    CHECK(commutes(a, b) == same_phase);
  }
}

TEST_CASE("simplify merges, cancels and drops noise") {
  const PauliWord x("X"), z("Z"), y("Y");

  PauliSum doubled(1);
  doubled.add(1.0, x).add(1.0, x);
  const PauliSum merged = doubled.simplified();
  REQUIRE(merged.size() == 1);
  CHECK(merged.terms()[0].coeff == cplx{2, 0});

  PauliSum cancel(1);
  cancel.add(1.0, x).add(-1.0, x);
  CHECK(cancel.simplified().empty());

  PauliSum noisy(1);
  noisy.add(0.5, z).add(1e-16, y);
  const PauliSum cleaned = noisy.simplified();
  REQUIRE(cleaned.size() == 1);
  CHECK(cleaned.terms()[0].word == z);
}

TEST_CASE("simplify is idempotent and deterministically ordered") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> coeff(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    PauliSum s(4);
    for (int k = 0; k < 12; ++k) {
      s.add(cplx{coeff(rng), coeff(rng)}, random_word(rng, 4));
    }
    const PauliSum once = s.simplified();
    const PauliSum twice = once.simplified();
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(once.terms()[i].word == twice.terms()[i].word);
      CHECK(std::abs(once.terms()[i].coeff - twice.terms()[i].coeff) < 1e-15);
    }
    for (std::size_t i = 1; i < once.size(); ++i) {
      CHECK(once.terms()[i - 1].word < once.terms()[i].word);
    }
  }
}

TEST_CASE("text form round-trips") {
  PauliSum s(4);
  s.add(cplx{-1.5, 0}, PauliWord("XIZY"));
  s.add(cplx{0.25, -0.75}, PauliWord("IIII"));
  s.add(cplx{0, 1.0 / 3.0}, PauliWord("IYXI"));
  const PauliSum canon = s.simplified();
  const PauliSum parsed = PauliSum::parse(canon.str(), 4).simplified();
  REQUIRE(parsed.size() == canon.size());
  for (std::size_t i = 0; i < canon.size(); ++i) {
    CHECK(parsed.terms()[i].word == canon.terms()[i].word);
    CHECK(std::abs(parsed.terms()[i].coeff - canon.terms()[i].coeff) < 1e-16);
  }
  CHECK(PauliWord::from_tokens("X0 Z1 Y3", 4) == PauliWord("XZIY"));
  CHECK(PauliWord::from_tokens("I", 4) == PauliWord(4));
}

TEST_SUITE_END();
