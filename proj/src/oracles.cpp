#include "qsl/oracles.hpp"

#include <algorithm>
#include <bit>
#include <bitset>

namespace qsl {
namespace {

std::string bits_msb(uint64_t v, int n) {
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((v >> i) & 1) s[static_cast<size_t>(n - 1 - i)] = '1';
  return s;
}

void check_perm_size(int n, const std::vector<uint64_t>& perm) {
  if (perm.size() != (uint64_t{1} << n))
    throw Error(Errc::BadOracleParameter, "permutation table has wrong size");
}

// Permutation of n wire values synthesized with its ancilla moved to
// `anc_wire` and data wires starting at `base`, inside a `width`-wide circuit.
Circuit placed_permutation(const std::vector<uint64_t>& perm, int n, int base,
                           int anc_wire, int width) {
  Circuit synth = synthesize_permutation(perm);
  std::vector<int> map(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) map[static_cast<size_t>(i)] = base + i;
  map[static_cast<size_t>(n)] = anc_wire;
  return remap(synth, map, width);
}

}  // namespace

OracleSpec bv_oracle(int n, uint64_t s) {
  if (n < 1 || n > 62) throw Error(Errc::BadOracleParameter, "bad width");
  if (s >> n) throw Error(Errc::BadOracleParameter, "secret string out of range");
  OracleSpec o;
  o.family = OracleFamily::BV;
  o.name = "bv[n=" + std::to_string(n) + ",s=" + bits_msb(s, n) + "]";
  o.circuit = Circuit(n + 1);
  for (int i = 0; i < n; ++i)
    if ((s >> i) & 1) o.circuit.append(Gate::cnot(i, n));
  o.query = {0, n};
  o.answer = {n, n + 1};
  o.ancilla = {n + 1, n + 1};
  o.truth = [s](uint64_t x) -> uint64_t { return std::popcount(x & s) & 1u; };
  return o;
}

OracleSpec dj_promise_oracle(int n, bool b0, bool b1, const std::vector<uint64_t>& perm) {
  if (n < 1 || n > 20) throw Error(Errc::BadOracleParameter, "bad width");
  check_perm_size(n, perm);
  OracleSpec o;
  o.family = OracleFamily::DJPromise;
  o.name = "dj-promise[n=" + std::to_string(n) + ",b0=" + (b0 ? "1" : "0") +
           ",b1=" + (b1 ? "1" : "0") + "]";
  const int width = n + 2;
  Circuit fwd = placed_permutation(perm, n, 0, n + 1, width);
  o.circuit = Circuit(width);
  o.circuit.append(fwd);
  if (b0) o.circuit.append(Gate::cnot(n - 1, n));
  if (b1) o.circuit.append(Gate::x(n));
  o.circuit.append(invert(fwd));
  o.query = {0, n};
  o.answer = {n, n + 1};
  o.ancilla = {n + 1, n + 2};
  o.truth = [n, b0, b1, perm](uint64_t x) -> uint64_t {
    return (b1 ? 1u : 0u) ^ (b0 ? ((perm[x] >> (n - 1)) & 1u) : 0u);
  };
  return o;
}

Circuit comparator_circuit(int n) {
  if (n < 1) throw Error(Errc::BadOracleParameter, "bad width");
  const int carry = 0;
  auto xw = [](int i) { return 1 + i; };
  auto aw = [n](int i) { return n + 1 + i; };
  const int out = 2 * n + 1;
  Circuit c(2 * n + 2);
  Circuit chain(2 * n + 2);
  for (int i = 0; i < n; ++i) {
    const int carrier = i == 0 ? carry : aw(i - 1);
    chain.append(Gate::cnot(aw(i), xw(i)));
    chain.append(Gate::cnot(aw(i), carrier));
    chain.append(Gate::toffoli(carrier, xw(i), aw(i)));
  }
  c.append(chain);
  c.append(Gate::cnot(aw(n - 1), out));
  c.append(invert(chain));
  return c;
}

OracleSpec dj_decision_oracle(int n, uint64_t a, const std::vector<uint64_t>& perm) {
  if (n < 1 || n > 20) throw Error(Errc::BadOracleParameter, "bad width");
  if (a > (uint64_t{1} << n)) throw Error(Errc::BadOracleParameter, "threshold out of range");
  check_perm_size(n, perm);
  OracleSpec o;
  o.family = OracleFamily::DJDecision;
  o.name = "dj-decision[n=" + std::to_string(n) + ",a=" + std::to_string(a) + "]";
  const int width = 2 * n + 4;
  const int answer = n;
  const int carry = n + 1;
  auto tw = [n](int i) { return n + 2 + i; };  // threshold register, n + 1 bits
  const int anc = 2 * n + 3;

  o.circuit = Circuit(width);
  for (int i = 0; i <= n; ++i)
    if ((a >> i) & 1) o.circuit.append(Gate::x(tw(i)));

  Circuit fwd = placed_permutation(perm, n, 0, anc, width);
  o.circuit.append(fwd);

  std::vector<int> cmp_map(static_cast<size_t>(2 * n + 2));
  cmp_map[0] = carry;
  for (int i = 0; i < n; ++i) {
    cmp_map[static_cast<size_t>(1 + i)] = i;
    cmp_map[static_cast<size_t>(n + 1 + i)] = tw(i);
  }
  cmp_map[static_cast<size_t>(2 * n + 1)] = answer;
  o.circuit.append(remap(comparator_circuit(n), cmp_map, width));

  o.circuit.append(Gate::cnot(tw(n), answer));
  o.circuit.append(invert(fwd));
  for (int i = 0; i <= n; ++i)
    if ((a >> i) & 1) o.circuit.append(Gate::x(tw(i)));

  o.query = {0, n};
  o.answer = {n, n + 1};
  o.ancilla = {n + 1, width};
  const uint64_t low = a & ((uint64_t{1} << n) - 1);
  const uint64_t hi_bit = (a >> n) & 1;
  o.truth = [n, low, hi_bit, perm](uint64_t x) -> uint64_t {
    return ((perm[x] + low) >> n) ^ hi_bit;
  };
  return o;
}

std::vector<CatalogEntry> dj3_catalog() {
  std::vector<CatalogEntry> out;
  for (int t = 0; t < 256; ++t) {
    const int w = std::popcount(static_cast<unsigned>(t));
    if (w != 0 && w != 4 && w != 8) continue;

    // Algebraic normal form: anf[m] is the coefficient of the monomial with
    // variable set m, from the subset-sum (Moebius) transform of the table.
    bool anf[8] = {};
    for (int m = 0; m < 8; ++m) {
      int acc = 0;
      for (int x = 0; x < 8; ++x)
        if ((x & m) == x) acc ^= (t >> x) & 1;
      anf[m] = acc != 0;
    }
    const bool l[3] = {anf[1], anf[2], anf[4]};
    const bool q01 = anf[3], q02 = anf[5], q12 = anf[6];
    const bool c0 = anf[0];
    const int nquad = (q01 ? 1 : 0) + (q02 ? 1 : 0) + (q12 ? 1 : 0);

    CatalogEntry e;
    e.label = std::bitset<8>(static_cast<unsigned>(t)).to_string();
    e.balanced = w == 4;
    Circuit c(4);
    if (nquad == 0) {
      for (int i = 0; i < 3; ++i)
        if (l[i]) c.append(Gate::cnot(i, 3));
      if (c0) c.append(Gate::x(3));
      e.cnots = (l[0] ? 1 : 0) + (l[1] ? 1 : 0) + (l[2] ? 1 : 0);
    } else if (nquad == 1) {
      const int i = q01 ? 0 : (q02 ? 0 : 1);
      const int j = q01 ? 1 : 2;
      const int k = 3 - i - j;
      const bool li = l[i], lj = l[j];
      c.append(Gate::n_toffoli({i, j}, (lj ? 1u : 0u) | (li ? 2u : 0u), 3));
      c.append(Gate::cnot(k, 3));
      if (c0 ^ (li && lj)) c.append(Gate::x(3));
      e.toffolis = 1;
      e.cnots = 1;
    } else if (nquad == 2) {
      // Two monomials share one variable i; the pair factors through
      // x_j XOR x_k held temporarily on wire j.
      const int i = q01 && q02 ? 0 : (q01 && q12 ? 1 : 2);
      const int j = i == 0 ? 1 : 0;
      const int k = i == 2 ? 1 : 2;
      const bool li = l[i], lk = l[k];
      c.append(Gate::cnot(k, j));
      c.append(Gate::n_toffoli({i, j}, (lk ? 1u : 0u) | (li ? 2u : 0u), 3));
      c.append(Gate::cnot(k, j));
      c.append(Gate::cnot(j, 3));
      if (c0 ^ (li && lk)) c.append(Gate::x(3));
      e.toffolis = 1;
      e.cnots = 3;
    } else {
      // Majority-type quadratic: factors through the two differences
      // x_1 XOR x_0 and x_2 XOR x_0 plus a residual x_0.
      const bool l1 = l[1], l2 = l[2];
      c.append(Gate::cnot(0, 2));
      c.append(Gate::cnot(0, 1));
      c.append(Gate::n_toffoli({1, 2}, (l2 ? 1u : 0u) | (l1 ? 2u : 0u), 3));
      c.append(Gate::cnot(0, 1));
      c.append(Gate::cnot(0, 2));
      c.append(Gate::cnot(0, 3));
      if (c0 ^ (l1 && l2)) c.append(Gate::x(3));
      e.toffolis = 1;
      e.cnots = 5;
    }
    e.spec.family = OracleFamily::DJ3Catalog;
    e.spec.name = "dj3[" + e.label + "]";
    e.spec.circuit = std::move(c);
    e.spec.query = {0, 3};
    e.spec.answer = {3, 4};
    e.spec.ancilla = {4, 4};
    e.spec.truth = [t](uint64_t x) -> uint64_t { return (t >> x) & 1; };
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.toffolis, a.cnots, a.label) < std::tie(b.toffolis, b.cnots, b.label);
  });
  return out;
}

OracleSpec majority_oracle(MajorityVariant v) {
  OracleSpec o;
  o.family = OracleFamily::Majority;
  Circuit c(4);
  switch (v) {
    case MajorityVariant::A:
      // One flip per satisfying assignment: 111, 011, 101, 110.
      c.append(Gate::n_toffoli({0, 1, 2}, 0b000, 3));
      c.append(Gate::n_toffoli({0, 1, 2}, 0b100, 3));
      c.append(Gate::n_toffoli({0, 1, 2}, 0b010, 3));
      c.append(Gate::n_toffoli({0, 1, 2}, 0b001, 3));
      o.name = "majority-A";
      break;
    case MajorityVariant::B:
      c.append(Gate::cnot(0, 1));
      c.append(Gate::cnot(0, 2));
      c.append(Gate::toffoli(2, 1, 0));
      c.append(Gate::cnot(0, 3));
      c.append(Gate::toffoli(2, 1, 0));
      c.append(Gate::cnot(0, 2));
      c.append(Gate::cnot(0, 1));
      o.name = "majority-B";
      break;
    case MajorityVariant::C:
      c.append(Gate::toffoli(2, 1, 3));
      c.append(Gate::toffoli(1, 0, 3));
      c.append(Gate::toffoli(2, 0, 3));
      o.name = "majority-C";
      break;
    case MajorityVariant::D:
      c.append(Gate::cnot(0, 2));
      c.append(Gate::cnot(0, 3));
      c.append(Gate::toffoli(2, 0, 3));
      c.append(Gate::toffoli(2, 1, 3));
      c.append(Gate::cnot(0, 2));
      o.name = "majority-D";
      break;
  }
  o.circuit = std::move(c);
  o.query = {0, 3};
  o.answer = {3, 4};
  o.ancilla = {4, 4};
  o.truth = [](uint64_t x) -> uint64_t {
    const uint64_t b0 = x & 1, b1 = (x >> 1) & 1, b2 = (x >> 2) & 1;
    return (b0 & b1) ^ (b0 & b2) ^ (b1 & b2);
  };
  return o;
}

OracleSpec grover_oracle(int n, uint64_t xstar) {
  if (n < 2 || n > 32) throw Error(Errc::BadOracleParameter, "bad width");
  if (xstar >> n) throw Error(Errc::BadOracleParameter, "marked item out of range");
  OracleSpec o;
  o.family = OracleFamily::Grover;
  o.name = "grover[n=" + std::to_string(n) + ",xstar=" + bits_msb(xstar, n) + "]";
  o.circuit = Circuit(n + 1);
  std::vector<int> controls(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) controls[static_cast<size_t>(i)] = i;
  const uint32_t neg = static_cast<uint32_t>(~xstar) & ((1u << n) - 1);
  o.circuit.append(Gate::n_toffoli(controls, neg, n));
  o.query = {0, n};
  o.answer = {n, n + 1};
  o.ancilla = {n + 1, n + 1};
  o.truth = [xstar](uint64_t x) -> uint64_t { return x == xstar ? 1 : 0; };
  return o;
}

std::vector<uint64_t> simon_basis(int n, uint64_t s) {
  const int j = s == 0 ? 0 : std::countr_zero(s);
  std::vector<uint64_t> rows;
  for (int i = n - 1; i >= 0; --i) {
    if (i == j) continue;
    uint64_t row = uint64_t{1} << i;
    if ((s >> i) & 1) row |= uint64_t{1} << j;
    rows.push_back(row);
  }
  rows.push_back(uint64_t{1} << j);
  return rows;
}

OracleSpec simon_oracle(int n, uint64_t s, bool b, const std::vector<uint64_t>& perm,
                        SimonVariant variant) {
  if (n < 1 || n > 20) throw Error(Errc::BadOracleParameter, "bad width");
  if (s >> n) throw Error(Errc::BadOracleParameter, "shift out of range");
  if (b && s == 0) throw Error(Errc::BadOracleParameter, "two-to-one needs a nonzero shift");
  check_perm_size(n, perm);
  const std::vector<uint64_t> basis = simon_basis(n, s);

  OracleSpec o;
  o.family = OracleFamily::Simon;
  const char* tag = variant == SimonVariant::ZeroTarget      ? "zero"
                    : variant == SimonVariant::XorTarget     ? "xor"
                                                             : "det";
  o.name = std::string("simon-") + tag + "[n=" + std::to_string(n) +
           ",s=" + bits_msb(s, n) + ",b=" + (b ? "1" : "0") + "]";

  // Rows of the linear map feeding the answer register: the final row is the
  // one-to-one completion and is wired only when b = 0.
  const int rows_used = b ? n - 1 : n;
  auto linear_part = [&](int q0, int a0, int width) {
    Circuit c(width);
    for (int k = 0; k < rows_used; ++k)
      for (int i = 0; i < n; ++i)
        if ((basis[static_cast<size_t>(k)] >> i) & 1) c.append(Gate::cnot(q0 + i, a0 + k));
    return c;
  };

  if (variant == SimonVariant::XorTarget) {
    const int width = 3 * n + 1;
    Circuit compute(width);
    compute.append(linear_part(0, 2 * n, width));
    compute.append(placed_permutation(perm, n, 2 * n, 3 * n, width));
    o.circuit = Circuit(width);
    o.circuit.append(compute);
    for (int i = 0; i < n; ++i) o.circuit.append(Gate::cnot(2 * n + i, n + i));
    o.circuit.append(invert(compute));
    o.query = {0, n};
    o.answer = {n, 2 * n};
    o.ancilla = {2 * n, width};
  } else {
    const int width = 2 * n + 1;
    o.circuit = Circuit(width);
    o.circuit.append(linear_part(0, n, width));
    o.circuit.append(placed_permutation(perm, n, n, 2 * n, width));
    o.query = {0, n};
    o.answer = {n, 2 * n};
    o.ancilla = {2 * n, width};
  }

  o.truth = [n, rows_used, basis, perm](uint64_t x) -> uint64_t {
    uint64_t y = 0;
    for (int k = 0; k < rows_used; ++k)
      y |= static_cast<uint64_t>(std::popcount(x & basis[static_cast<size_t>(k)]) & 1) << k;
    return perm[y];
  };
  return o;
}

OracleSpec shor15_multiplier(int a, int power) {
  const bool ok = a == 2 || a == 4 || a == 7 || a == 8 || a == 11 || a == 13;
  if (!ok) throw Error(Errc::BadOracleParameter, "not a unit with order > 1 mod 15");
  if (power != 1 && power != 2) throw Error(Errc::BadOracleParameter, "bad power");
  int m = a;
  if (power == 2) m = (a * a) % 15;

  OracleSpec o;
  o.family = OracleFamily::Shor15Mult;
  o.name = "shor15-mult[a=" + std::to_string(a) + ",power=" + std::to_string(power) +
           ",x" + std::to_string(m) + "]";
  Circuit c(5);
  // Bit k of the register value sits on wire 1 + k; multiplication by 2, 4, 8
  // is a cyclic bit shift (controlled swap cascade), and 7, 11, 13 are their
  // products with 14 = -1, a controlled complement.
  auto shift2 = [&] {
    c.append(Gate::fredkin(0, 4, 3));
    c.append(Gate::fredkin(0, 3, 2));
    c.append(Gate::fredkin(0, 2, 1));
  };
  auto shift4 = [&] {
    c.append(Gate::fredkin(0, 4, 2));
    c.append(Gate::fredkin(0, 3, 1));
  };
  auto shift8 = [&] {
    c.append(Gate::fredkin(0, 2, 1));
    c.append(Gate::fredkin(0, 3, 2));
    c.append(Gate::fredkin(0, 4, 3));
  };
  auto complement = [&] {
    for (int i = 1; i <= 4; ++i) c.append(Gate::cnot(0, i));
  };
  switch (m) {
    case 1: break;
    case 2: shift2(); break;
    case 4: shift4(); break;
    case 8: shift8(); break;
    case 7: complement(); shift8(); break;
    case 11: complement(); shift4(); break;
    case 13: complement(); shift2(); break;
  }
  o.circuit = std::move(c);
  o.query = {0, 1};
  o.answer = {1, 5};
  o.ancilla = {5, 5};
  o.truth = [m](uint64_t y) -> uint64_t { return y == 0 ? 0 : (y * static_cast<uint64_t>(m)) % 15; };
  return o;
}

}  // namespace qsl
