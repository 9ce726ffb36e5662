// Entanglement protocols on bit pairs: pair construction, state transfer
// through a shared pair plus two classical bits, two classical bits through
// one transmitted system, key distribution with intercept-resend disturbance,
// three-party parity states, and the correlation table of the paired systems.
#pragma once

#include <utility>

#include "qsl/engine.hpp"

namespace qsl {

// The four pair classes, labeled by their joint parities. Measuring both
// computational bits (or both phase bits) of a pair gives perfectly
// (anti-)correlated outcomes; the parity pair (comp, phase) is
// PsiPlus (0,0), PhiPlus (1,0), PsiMinus (0,1), PhiMinus (1,1).
enum class BellKind { PsiPlus, PhiPlus, PsiMinus, PhiMinus };

// Z-preparation values (wire 1, wire 0) that the pair circuit turns into the
// given class.
std::pair<bool, bool> bell_prep_values(BellKind kind);

// Pair on wires {0, 1} (H on wire 1, then CNOT onto wire 0) followed by the
// given measurement plan.
Experiment bell_pair_experiment(BellKind kind, std::vector<PlanStep> plan);

// Signs of the three perfect correlations of a pair: +1 when the two
// outcomes always agree, -1 when they always disagree (0 if neither). In this
// model the y parity always equals the product of the other two.
struct PauliCorrelations {
  int zz = 0;
  int xx = 0;
  int yy = 0;
};
PauliCorrelations pair_correlations(BellKind kind);
// The PhiMinus pair plays the role of the spin-zero pair: (-1, -1, +1).
PauliCorrelations singlet_pauli_correlations();

// State transfer: wire 0 carries the input, wires 1 and 2 a shared pair; the
// two measured bits steer classically conditioned corrections on wire 2,
// which ends in exactly the input pair on every random branch.
Experiment teleport_experiment(Preparation input);

// Two classical bits through one transmitted half: encode (m1, m0) by
// I / X / Z / Y on wire 1 of a PsiPlus pair, decode from the pair parity
// measurement. The outcome key reads as "m1 m0".
Experiment superdense_experiment(bool m1, bool m0);
// (m1, m0) from the parity outcome bits (comp parity first).
std::pair<bool, bool> superdense_decode(const BitString& outcome);

// One key-distribution round. Basis false = computational, true = conjugate.
struct BB84Round {
  bool alice_basis = false;
  bool alice_bit = false;
  bool eve_present = false;
  bool eve_basis = false;
  bool eve_bit = false;
  bool bob_basis = false;
  bool bob_bit = false;

  bool sifted() const { return alice_basis == bob_basis; }
  bool error() const { return sifted() && alice_bit != bob_bit; }
};

// Free bits one round consumes: basis and key coins, the preparation draw,
// and one measurement draw per listener (7 with the eavesdropper, 5 without).
int bb84_round_bits(bool eavesdrop);
BB84Round bb84_round(bool eavesdrop, RandomSource& rng);
// Deterministic replay; bits.size() must equal bb84_round_bits(eavesdrop).
// Enumerating all schedules gives the exact sifted error rate.
BB84Round bb84_round_replay(bool eavesdrop, const BitString& bits);

struct BB84Stats {
  uint64_t rounds = 0;
  uint64_t sifted = 0;
  uint64_t errors = 0;
  double error_rate() const {
    return sifted ? static_cast<double>(errors) / static_cast<double>(sifted) : 0.0;
  }
};
// Runs rounds on independent per-round streams of the given seed.
BB84Stats bb84_run(uint64_t rounds, bool eavesdrop, uint64_t seed);

// Two circuits preparing the three-party even-parity state on wires
// {0, 1, 2}: a CNOT chain, or a CNOT followed by a Toffoli. Their outcome
// statistics agree, but the leftover correlations differ.
enum class GHZForm { Cnots, Toffoli };
Circuit ghz_circuit(GHZForm form);

// All-Z preparation, the chosen circuit, then Z on wire 0 and X on wire 1.
Experiment ghz_experiment(GHZForm form);

// Entropy (bits) of the wire-2 pair given both outcomes, by exact
// enumeration: 0 for the Toffoli form (the distant pair is determined), 1
// for the CNOT form.
double ghz_conditional_entropy(GHZForm form);

}  // namespace qsl
