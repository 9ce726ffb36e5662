// Oracle constructors: reversible circuits computing a Boolean (or modular
// arithmetic) function into an answer register, with the phase side effects
// the query algorithms rely on. Every constructor bakes its secret parameters
// (secret strings, permutations, thresholds, marked items) into the gate
// array; the returned spec carries the circuit, the wire layout and the
// classical reference function.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsl/kernel.hpp"

namespace qsl {

enum class OracleFamily {
  BV,
  DJPromise,
  DJDecision,
  DJ3Catalog,
  Majority,
  Grover,
  Simon,
  Shor15Mult,
};

enum class MajorityVariant { A, B, C, D };
enum class SimonVariant { ZeroTarget, XorTarget, Deterministic };

struct WireRange {
  int lo = 0;
  int hi = 0;  // exclusive
  int size() const { return hi - lo; }
};

// A constructed oracle. Ancilla wires are expected to enter with
// computational bit 0 (phase free); the circuit restores them to 0.
// `truth` is the classical function over query-register values; the circuit's
// computational action XORs truth(x) into the answer register. For the
// Shor15Mult family the query range is the single control wire and `truth`
// maps an answer-register value y in [1, 15) to its modular product.
struct OracleSpec {
  OracleFamily family = OracleFamily::BV;
  std::string name;
  Circuit circuit;
  WireRange query;
  WireRange answer;
  WireRange ancilla;
  std::function<uint64_t(uint64_t)> truth;
};

// f(x) = s.x mod 2 over n = bit length wires; one CNOT per set bit of s.
OracleSpec bv_oracle(int n, uint64_t s);

// f(x) = b1 XOR b0 * bit n-1 of perm(x): constant when b0 = 0, balanced when
// b0 = 1. The value permutation runs forward, taps its top bit (and applies
// the fixed flip), then runs backward. Width n + 2 (answer n, ancilla n + 1).
OracleSpec dj_promise_oracle(int n, bool b0, bool b1, const std::vector<uint64_t>& perm);

// Ripple-carry comparator: maps (0, x, a, 0) to (0, x, a, [x + a >= 2^n]) on
// wires (carry = 0, x = [1, n], a = [n+1, 2n], out = 2n+1) with every carry
// uncomputed. Majority cells are CNOT(a,x), CNOT(a,carry), Toffoli(carry,x,a).
Circuit comparator_circuit(int n);

// f(x) = [perm(x) + (a mod 2^n) >= 2^n] XOR bit n of a: outputs 1 on exactly
// `a` of the 2^n inputs (constant 0 at a = 0, balanced at a = 2^(n-1),
// constant 1 at a = 2^n). The n + 1 bits of `a` are loaded into an internal
// register around the comparator. Width 2n + 4: query [0, n), answer n,
// carry n + 1, threshold register [n+2, 2n+3), permutation ancilla 2n + 3.
OracleSpec dj_decision_oracle(int n, uint64_t a, const std::vector<uint64_t>& perm);

// One catalog entry: a 3-bit constant-or-balanced function, its function
// string (f(7)...f(0)), and the gate budget of its class.
struct CatalogEntry {
  OracleSpec spec;
  std::string label;
  int toffolis = 0;
  int cnots = 0;
  bool balanced = false;
};

// All 72 constant-or-balanced functions on 3 bits, each as a width-4 circuit
// (query 0..2, answer 3) in its minimal class shape, grouped and ordered by
// (Toffoli count, CNOT count, function value).
std::vector<CatalogEntry> dj3_catalog();

// Four fixed realizations of the 3-bit majority function (string 11101000)
// that agree on computational bits but differ in phase side effects:
//   A: one triple-controlled flip per satisfying assignment;
//   B: in-place majority, copy-out, uncompute;
//   C: three Toffolis onto the answer;
//   D: Toffoli-then-CNOT form.
OracleSpec majority_oracle(MajorityVariant v);

// f(x) = [x == xstar] via a single multi-controlled flip whose control
// polarities encode xstar. Width n + 1.
OracleSpec grover_oracle(int n, uint64_t xstar);

// Hidden-shift oracle family. The answer bit k receives x . v(k) for the
// deterministic row basis {v(k)}: v(k) orthogonal to s for k <= n - 2, and
// v(n-1) a single set bit of s, wired only when b = 0. A value permutation
// scrambles the answer register. b = 1 gives a two-to-one f with
// f(x) = f(x XOR s); b = 0 gives a one-to-one f.
//   ZeroTarget / Deterministic: width 2n + 1 (query n, answer n, ancilla);
//     the answer register must enter at computational 0.
//   XorTarget: width 3n + 1, compute-copy-uncompute so that any input y maps
//     to y XOR f(x).
OracleSpec simon_oracle(int n, uint64_t s, bool b, const std::vector<uint64_t>& perm,
                        SimonVariant variant);

// The deterministic row basis used by simon_oracle for a given s.
std::vector<uint64_t> simon_basis(int n, uint64_t s);

// Controlled modular multiplier y -> y * a^(2^(power-1)) mod 15 on the number
// states of a 4-bit register (control wire 0, register wires 1..4, bit k of y
// on wire 1 + k), as controlled swap/complement cascades. Powers that reduce
// to the identity give an empty circuit.
OracleSpec shor15_multiplier(int a, int power);

}  // namespace qsl
