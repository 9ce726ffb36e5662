// Core state and gate layer: elementary systems made of one computational and
// one phase bit, the reversible gate set acting on them, circuits, and the
// deterministic counter-based random source everything else draws from.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsl {

enum class Errc {
  WidthMismatch,
  NotABijection,
  AncillaNotClean,
  ExactIntractable,
  UnknownAlgorithm,
  BadOracleParameter,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// One elementary system: computational bit x, phase bit p. The pair (x, p) is a
// point in a four-point phase space; point labels are 2x + p.
struct ElementarySystem {
  bool x = false;
  bool p = false;
  int point() const { return (x ? 2 : 0) | (p ? 1 : 0); }
  bool operator==(const ElementarySystem&) const = default;
};

struct Register {
  std::vector<ElementarySystem> sys;

  int width() const { return static_cast<int>(sys.size()); }
  ElementarySystem& at(int w) { return sys.at(static_cast<size_t>(w)); }
  const ElementarySystem& at(int w) const { return sys.at(static_cast<size_t>(w)); }

  // Packed values, wire 0 in the least significant bit.
  uint64_t comp() const;
  uint64_t phase() const;

  bool operator==(const Register&) const = default;
};

// Deterministic splittable random source. A draw is hash(seed, stream,
// counter); equal (seed, stream) pairs give identical sequences and distinct
// streams are uncorrelated, so per-trial generators can be made by keying the
// stream with the trial index.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed, uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  bool bit() { return (word() & 1) != 0; }
  uint64_t word();
  // Uniform value in [0, n), n >= 1. Rejection-free for powers of two.
  uint64_t below(uint64_t n);
  RandomSource substream(uint64_t s) const;

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

// Preparation bases. Z fixes the computational bit and randomizes the phase
// bit, X the other way round, Y fixes only their sum; Mixed randomizes both
// (the value is ignored).
enum class Basis { Z, X, Y, Mixed };

struct Preparation {
  Basis basis = Basis::Z;
  bool value = false;
  // Free bits consumed when preparing in this basis.
  int draws() const { return basis == Basis::Mixed ? 2 : 1; }
  bool operator==(const Preparation&) const = default;
};

ElementarySystem prepare(Basis basis, bool value, RandomSource& rng);
Register prepare_register(std::span<const Preparation> prep, RandomSource& rng);

enum class GateKind : uint8_t {
  X, Z, Y, H, S, Sinv, Cnot, Cz, Swap, Toffoli, Fredkin, NToffoli,
};

// A gate instance. Wires hold controls first and targets last (Fredkin: the
// control then its two swap targets). For NToffoli, bit k of neg set means
// control wires[k] fires on computational value 0 instead of 1. A gate with
// condition >= 0 is applied only when that recorded outcome bit is 1.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> wires;
  uint32_t neg = 0;
  int condition = -1;

  static Gate x(int w) { return {GateKind::X, {w}}; }
  static Gate z(int w) { return {GateKind::Z, {w}}; }
  static Gate y(int w) { return {GateKind::Y, {w}}; }
  static Gate h(int w) { return {GateKind::H, {w}}; }
  static Gate s(int w) { return {GateKind::S, {w}}; }
  static Gate sinv(int w) { return {GateKind::Sinv, {w}}; }
  static Gate cnot(int control, int target) { return {GateKind::Cnot, {control, target}}; }
  static Gate cz(int a, int b) { return {GateKind::Cz, {a, b}}; }
  static Gate swap(int a, int b) { return {GateKind::Swap, {a, b}}; }
  static Gate toffoli(int c1, int c2, int target) { return {GateKind::Toffoli, {c1, c2, target}}; }
  static Gate fredkin(int control, int a, int b) { return {GateKind::Fredkin, {control, a, b}}; }
  static Gate n_toffoli(std::vector<int> controls, uint32_t neg, int target);

  Gate conditioned_on(int outcome_bit) const {
    Gate g = *this;
    g.condition = outcome_bit;
    return g;
  }

  int target() const { return wires.back(); }
  int control_count() const;

  bool operator==(const Gate&) const = default;
};

struct Circuit {
  int width = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int w) : width(w) {}

  Circuit& append(Gate g);
  Circuit& append(const Circuit& other);

  bool operator==(const Circuit&) const = default;
};

// Recorded measurement outcomes, indexed by the order they were taken.
using BitString = std::vector<bool>;

// Applies a gate to a register in place. `outcomes` backs classical conditions;
// unconditioned gates never read it.
void apply_in_place(const Gate& g, Register& state, const BitString& outcomes = {});
void apply_in_place(const Circuit& c, Register& state, const BitString& outcomes = {});

Register apply(const Gate& g, Register state, const BitString& outcomes = {});
Register apply(const Circuit& c, Register state, const BitString& outcomes = {});

// Multi-controlled flip as a ladder of Toffoli gates over ancilla wires.
// Needs max(0, controls - 2) ancillas whose computational bits are 0; those
// bits are restored (phase bits pick up deterministic dirt). The composite
// map on the controls and target equals the direct NToffoli gate map.
void append_n_toffoli(Circuit& c, std::span<const int> controls, uint32_t neg,
                      int target, std::span<const int> ancillas);
void n_toffoli(std::span<const int> controls, uint32_t neg, int target,
               Register& state, std::span<const int> ancillas);

// Builds a circuit realizing the given bijection on computational values of n
// wires (perm.size() == 2^n), using one ancilla at wire n; total width n + 1.
// Cycles are split into transpositions; each transposition is a CNOT
// conjugation (pivot = lowest differing bit) around an ancilla-assisted
// multi-controlled flip. The phase side effect at each computational input is
// an invertible affine map, so phase patterns stay bijective per input.
Circuit synthesize_permutation(const std::vector<uint64_t>& perm);

// Reverses gate order and swaps S with Sinv; every other gate is self-inverse.
Circuit invert(const Circuit& c);

// Rewires a circuit: wire w becomes wire_map[w]. new_width must cover the map.
Circuit remap(const Circuit& c, std::span<const int> wire_map, int new_width);

}  // namespace qsl
