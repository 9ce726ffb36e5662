#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <bit>
#include <map>
#include <set>

#include "doctest.h"
#include "qsl/oracles.hpp"

using namespace qsl;

namespace {

uint64_t range_value(const Register& r, WireRange wr) {
  uint64_t v = 0;
  for (int w = wr.lo; w < wr.hi; ++w)
    if (r.at(w).x) v |= uint64_t{1} << (w - wr.lo);
  return v;
}

// Runs the oracle circuit on query value x and answer value y with ancillas
// clean and pseudorandom phase bits everywhere, checking that the query comp
// bits survive and the ancillas come back clean. Returns the answer value.
uint64_t oracle_out(const OracleSpec& o, uint64_t x, uint64_t y, RandomSource& rng) {
  Register r;
  r.sys.resize(static_cast<size_t>(o.circuit.width));
  for (auto& s : r.sys) s.p = rng.bit();
  for (int w = o.query.lo; w < o.query.hi; ++w) r.at(w).x = (x >> (w - o.query.lo)) & 1;
  for (int w = o.answer.lo; w < o.answer.hi; ++w) r.at(w).x = (y >> (w - o.answer.lo)) & 1;
  apply_in_place(o.circuit, r);
  CHECK(range_value(r, o.query) == x);
  for (int w = o.ancilla.lo; w < o.ancilla.hi; ++w) CHECK_FALSE(r.at(w).x);
  return range_value(r, o.answer);
}

// Exhaustive check that the circuit XORs truth(x) into a one-bit answer.
void check_xor_contract(const OracleSpec& o, RandomSource& rng) {
  REQUIRE(o.answer.size() == 1);
  const uint64_t nx = uint64_t{1} << o.query.size();
  for (uint64_t x = 0; x < nx; ++x)
    for (uint64_t y = 0; y < 2; ++y)
      CHECK(oracle_out(o, x, y, rng) == (y ^ o.truth(x)));
}

std::vector<uint64_t> shuffled_values(int n, RandomSource& rng) {
  std::vector<uint64_t> p(uint64_t{1} << n);
  for (uint64_t i = 0; i < p.size(); ++i) p[i] = i;
  for (uint64_t i = p.size() - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
  return p;
}

std::vector<uint64_t> identity_perm(int n) {
  std::vector<uint64_t> p(uint64_t{1} << n);
  for (uint64_t i = 0; i < p.size(); ++i) p[i] = i;
  return p;
}

int count_kind(const Circuit& c, GateKind k) {
  int count = 0;
  for (const Gate& g : c.gates)
    if (g.kind == k) ++count;
  return count;
}

}  // namespace

TEST_CASE("inner product oracle: truth table, gate count, name") {
  RandomSource rng(401, 0);
  for (int n = 1; n <= 6; ++n) {
    for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
      OracleSpec o = bv_oracle(n, s);
      CHECK(o.circuit.width == n + 1);
      CHECK(o.circuit.gates.size() == static_cast<size_t>(std::popcount(s)));
      check_xor_contract(o, rng);
    }
  }
  CHECK(bv_oracle(4, 0b1011).name == "bv[n=4,s=1011]");
  CHECK_THROWS_AS(bv_oracle(3, 8), Error);
  CHECK_THROWS_AS(bv_oracle(0, 0), Error);
}

TEST_CASE("promise oracle: constant and balanced function counts") {
  RandomSource rng(402, 0);
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<uint64_t>> perms{identity_perm(n), shuffled_values(n, rng),
                                             shuffled_values(n, rng)};
    for (const auto& perm : perms) {
      for (int b0 = 0; b0 < 2; ++b0) {
        for (int b1 = 0; b1 < 2; ++b1) {
          OracleSpec o = dj_promise_oracle(n, b0 != 0, b1 != 0, perm);
          CHECK(o.circuit.width == n + 2);
          check_xor_contract(o, rng);
          uint64_t ones = 0;
          for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) ones += o.truth(x);
          if (b0 == 0)
            CHECK(ones == (b1 ? (uint64_t{1} << n) : 0));  // constant
          else
            CHECK(ones == (uint64_t{1} << (n - 1)));  // balanced
        }
      }
    }
  }
  CHECK_THROWS_AS(dj_promise_oracle(2, false, false, {0, 1}), Error);
}

TEST_CASE("comparator computes the carry-out and restores its registers") {
  for (int n = 1; n <= 3; ++n) {
    Circuit c = comparator_circuit(n);
    CHECK(c.width == 2 * n + 2);
    const uint64_t size = uint64_t{1} << n;
    for (uint64_t x = 0; x < size; ++x) {
      for (uint64_t a = 0; a < size; ++a) {
        for (uint64_t z = 0; z < 2; ++z) {
          Register r;
          r.sys.resize(static_cast<size_t>(c.width));
          for (int i = 0; i < n; ++i) {
            r.at(1 + i).x = (x >> i) & 1;
            r.at(n + 1 + i).x = (a >> i) & 1;
          }
          r.at(2 * n + 1).x = z != 0;
          apply_in_place(c, r);
          CHECK_FALSE(r.at(0).x);  // carry wire restored
          for (int i = 0; i < n; ++i) {
            CHECK(r.at(1 + i).x == (((x >> i) & 1) != 0));
            CHECK(r.at(n + 1 + i).x == (((a >> i) & 1) != 0));
          }
          CHECK(r.at(2 * n + 1).x == ((z ^ (x + a >= size ? 1 : 0)) != 0));
        }
      }
    }
  }
}

TEST_CASE("decision oracle: exactly a inputs map to one") {
  RandomSource rng(403, 0);
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::vector<uint64_t>> perms{identity_perm(n), shuffled_values(n, rng)};
    for (const auto& perm : perms) {
      for (uint64_t a = 0; a <= (uint64_t{1} << n); ++a) {
        OracleSpec o = dj_decision_oracle(n, a, perm);
        CHECK(o.circuit.width == 2 * n + 4);
        check_xor_contract(o, rng);
        uint64_t ones = 0;
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) ones += o.truth(x);
        CHECK(ones == a);
      }
    }
  }
  CHECK_THROWS_AS(dj_decision_oracle(2, 5, identity_perm(2)), Error);
}

TEST_CASE("three-bit catalog: all 72 functions in their class shapes") {
  const std::vector<CatalogEntry> cat = dj3_catalog();
  REQUIRE(cat.size() == 72);

  // Frozen listing: (Toffoli count, CNOT count, ascending function strings).
  const std::array<const char*, 72> expected = {
      // 0 Toffoli, 0 CNOT
      "00000000", "11111111",
      // 0 Toffoli, 1 CNOT
      "00001111", "00110011", "01010101", "10101010", "11001100", "11110000",
      // 0 Toffoli, 2 CNOT
      "00111100", "01011010", "01100110", "10011001", "10100101", "11000011",
      // 0 Toffoli, 3 CNOT
      "01101001", "10010110",
      // 1 Toffoli, 1 CNOT
      "00011110", "00101101", "00110110", "00111001", "01001011", "01010110",
      "01011001", "01100011", "01100101", "01101010", "01101100", "01111000",
      "10000111", "10010011", "10010101", "10011010", "10011100", "10100110",
      "10101001", "10110100", "11000110", "11001001", "11010010", "11100001",
      // 1 Toffoli, 3 CNOT
      "00011011", "00011101", "00100111", "00101110", "00110101", "00111010",
      "01000111", "01001110", "01010011", "01011100", "01110010", "01110100",
      "10001011", "10001101", "10100011", "10101100", "10110001", "10111000",
      "11000101", "11001010", "11010001", "11011000", "11100010", "11100100",
      // 1 Toffoli, 5 CNOT
      "00010111", "00101011", "01001101", "01110001", "10001110", "10110010",
      "11010100", "11101000"};
  for (size_t i = 0; i < 72; ++i) CHECK(cat[i].label == expected[i]);

  // Class sizes by gate budget.
  std::map<std::pair<int, int>, int> sizes;
  for (const auto& e : cat) ++sizes[{e.toffolis, e.cnots}];
  CHECK(sizes == std::map<std::pair<int, int>, int>{{{0, 0}, 2},
                                                    {{0, 1}, 6},
                                                    {{0, 2}, 6},
                                                    {{0, 3}, 2},
                                                    {{1, 1}, 24},
                                                    {{1, 3}, 24},
                                                    {{1, 5}, 8}});

  RandomSource rng(404, 0);
  int balanced = 0;
  for (const auto& e : cat) {
    CHECK(e.spec.circuit.width == 4);
    // The stated budget matches the actual gate array (plus at most one
    // polarity flip on the answer wire).
    CHECK(count_kind(e.spec.circuit, GateKind::NToffoli) == e.toffolis);
    CHECK(count_kind(e.spec.circuit, GateKind::Cnot) == e.cnots);
    CHECK(count_kind(e.spec.circuit, GateKind::X) <= 1);
    CHECK(e.spec.circuit.gates.size() <= static_cast<size_t>(e.toffolis + e.cnots + 1));

    uint64_t ones = 0;
    for (uint64_t x = 0; x < 8; ++x) {
      ones += e.spec.truth(x);
      CHECK(e.spec.truth(x) == ((e.label[7 - x] == '1') ? 1 : 0));
    }
    CHECK((ones == 0 || ones == 4 || ones == 8));
    CHECK(e.balanced == (ones == 4));
    balanced += e.balanced ? 1 : 0;
    check_xor_contract(e.spec, rng);
  }
  CHECK(balanced == 70);
}

TEST_CASE("majority realizations agree with the majority function") {
  RandomSource rng(405, 0);
  for (MajorityVariant v :
       {MajorityVariant::A, MajorityVariant::B, MajorityVariant::C, MajorityVariant::D}) {
    OracleSpec o = majority_oracle(v);
    CHECK(o.circuit.width == 4);
    for (uint64_t x = 0; x < 8; ++x)
      CHECK(o.truth(x) == (std::popcount(x) >= 2 ? 1 : 0));
    check_xor_contract(o, rng);
  }
  CHECK(majority_oracle(MajorityVariant::A).circuit.gates.size() == 4);
  CHECK(majority_oracle(MajorityVariant::B).circuit.gates.size() == 7);
  CHECK(majority_oracle(MajorityVariant::C).circuit.gates.size() == 3);
  CHECK(majority_oracle(MajorityVariant::D).circuit.gates.size() == 5);
}

TEST_CASE("marked-item oracle is a single polarity-encoded flip") {
  RandomSource rng(406, 0);
  for (int n = 2; n <= 5; ++n) {
    for (uint64_t xstar : {uint64_t{0}, (uint64_t{1} << n) - 1, uint64_t{1} << (n - 1)}) {
      OracleSpec o = grover_oracle(n, xstar);
      CHECK(o.circuit.gates.size() == 1);
      CHECK(o.circuit.gates[0].kind == GateKind::NToffoli);
      check_xor_contract(o, rng);
      uint64_t ones = 0;
      for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) ones += o.truth(x);
      CHECK(ones == 1);
    }
  }
  CHECK_THROWS_AS(grover_oracle(1, 0), Error);
  CHECK_THROWS_AS(grover_oracle(3, 8), Error);
}

TEST_CASE("hidden-shift row basis") {
  // Worked 3-bit example: s = 101 gives rows 101, 010, 001.
  CHECK(simon_basis(3, 0b101) == std::vector<uint64_t>{0b101, 0b010, 0b001});
  for (int n = 1; n <= 5; ++n) {
    for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
      const std::vector<uint64_t> rows = simon_basis(n, s);
      REQUIRE(static_cast<int>(rows.size()) == n);
      // Invertible: eliminate to full rank.
      std::vector<uint64_t> m = rows;
      int rank = 0;
      for (int col = n - 1; col >= 0; --col) {
        int pivot = -1;
        for (int i = rank; i < n; ++i)
          if ((m[static_cast<size_t>(i)] >> col) & 1) {
            pivot = i;
            break;
          }
        if (pivot < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(pivot)]);
        for (int i = 0; i < n; ++i)
          if (i != rank && ((m[static_cast<size_t>(i)] >> col) & 1))
            m[static_cast<size_t>(i)] ^= m[static_cast<size_t>(rank)];
        ++rank;
      }
      CHECK(rank == n);
      if (s != 0) {
        for (int k = 0; k + 1 < n; ++k)
          CHECK((std::popcount(rows[static_cast<size_t>(k)] & s) & 1) == 0);
        CHECK((std::popcount(rows[static_cast<size_t>(n - 1)] & s) & 1) == 1);
      }
    }
  }
}

TEST_CASE("hidden-shift oracles: collision structure and register contracts") {
  RandomSource rng(407, 0);
  for (int n = 1; n <= 4; ++n) {
    const uint64_t size = uint64_t{1} << n;
    std::vector<std::vector<uint64_t>> perms{identity_perm(n), shuffled_values(n, rng)};
    for (const auto& perm : perms) {
      for (uint64_t s = 0; s < size; ++s) {
        for (int b = 0; b < 2; ++b) {
          if (b == 1 && s == 0) continue;
          OracleSpec zero = simon_oracle(n, s, b != 0, perm, SimonVariant::ZeroTarget);
          OracleSpec det = simon_oracle(n, s, b != 0, perm, SimonVariant::Deterministic);
          OracleSpec xort = simon_oracle(n, s, b != 0, perm, SimonVariant::XorTarget);
          CHECK(zero.circuit == det.circuit);
          CHECK(zero.circuit.width == 2 * n + 1);
          CHECK(xort.circuit.width == 3 * n + 1);

          // Image structure: one-to-one at b = 0, two-to-one with period s else.
          std::set<uint64_t> image;
          for (uint64_t x = 0; x < size; ++x) {
            image.insert(zero.truth(x));
            if (b) CHECK(zero.truth(x) == zero.truth(x ^ s));
            CHECK(zero.truth(x) == xort.truth(x));
          }
          CHECK(image.size() == (b ? size / 2 : size));

          // Zero-target circuit: f(x) lands in the cleared answer register.
          for (uint64_t x = 0; x < size; ++x)
            CHECK(oracle_out(zero, x, 0, rng) == zero.truth(x));
          // Xor-target circuit: any answer value y picks up f(x).
          for (uint64_t x = 0; x < size; ++x)
            for (uint64_t y = 0; y < size; ++y)
              CHECK(oracle_out(xort, x, y, rng) == (y ^ xort.truth(x)));
        }
      }
    }
  }
  CHECK_THROWS_AS(simon_oracle(2, 0, true, identity_perm(2), SimonVariant::ZeroTarget), Error);
  CHECK_THROWS_AS(simon_oracle(2, 4, false, identity_perm(2), SimonVariant::ZeroTarget), Error);
}

TEST_CASE("mod-15 multipliers: controlled products on the number states") {
  RandomSource rng(408, 0);
  for (int a : {2, 4, 7, 8, 11, 13}) {
    for (int power : {1, 2}) {
      OracleSpec o = shor15_multiplier(a, power);
      CHECK(o.circuit.width == 5);
      int m = power == 1 ? a : (a * a) % 15;
      for (uint64_t y = 1; y < 15; ++y) {
        CHECK(o.truth(y) == (y * static_cast<uint64_t>(m)) % 15);
        CHECK(oracle_out(o, 0, y, rng) == y);            // control off
        CHECK(oracle_out(o, 1, y, rng) == o.truth(y));  // control on
      }
    }
  }
  // Squares: a^2 = 1 mod 15 gives an empty circuit, others reduce to x4.
  CHECK(shor15_multiplier(4, 2).circuit.gates.empty());
  CHECK(shor15_multiplier(11, 2).circuit.gates.empty());
  for (int a : {2, 7, 8, 13})
    CHECK(shor15_multiplier(a, 2).circuit.gates == shor15_multiplier(4, 1).circuit.gates);
  // Shift cascades: x2 and x8 are three controlled swaps, x4 is two.
  CHECK(shor15_multiplier(2, 1).circuit.gates.size() == 3);
  CHECK(shor15_multiplier(4, 1).circuit.gates.size() == 2);
  CHECK(shor15_multiplier(8, 1).circuit.gates.size() == 3);
  CHECK(shor15_multiplier(7, 1).circuit.gates.size() == 7);
  CHECK_THROWS_AS(shor15_multiplier(3, 1), Error);
  CHECK_THROWS_AS(shor15_multiplier(2, 3), Error);
}
