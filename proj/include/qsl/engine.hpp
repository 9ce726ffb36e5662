// Execution layer: measurements with their disturbance rules, experiments
// (preparation + circuit + measurement plan), Monte-Carlo sampling, and the
// exact output distribution obtained by accounting for every free bit.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsl/kernel.hpp"

namespace qsl {

enum class MeasureKind { Z, X, Y, JointZZ, JointXX, JointZX, Bell, AllZeroTest };

// A single measurement. Z(i) returns the computational bit and re-randomizes
// the phase bit; X(i) the reverse; Y(i) returns their sum and re-randomizes
// the pair subject to that sum. Joint parities return the sum of the two
// addressed bits and redistribute only those bits consistently with the
// outcome. Bell(i, j) returns both the computational and the phase parity.
// AllZeroTest([lo, hi)) returns whether every computational bit in the range
// is 0 and re-randomizes the phase bits of the range either way.
struct MeasurementSpec {
  MeasureKind kind = MeasureKind::Z;
  int i = -1;
  int j = -1;
  int lo = 0;
  int hi = 0;

  static MeasurementSpec z(int i) { return {MeasureKind::Z, i, -1, 0, 0}; }
  static MeasurementSpec x(int i) { return {MeasureKind::X, i, -1, 0, 0}; }
  static MeasurementSpec y(int i) { return {MeasureKind::Y, i, -1, 0, 0}; }
  static MeasurementSpec joint_zz(int i, int j) { return {MeasureKind::JointZZ, i, j, 0, 0}; }
  static MeasurementSpec joint_xx(int i, int j) { return {MeasureKind::JointXX, i, j, 0, 0}; }
  // Z on wire i, X on wire j.
  static MeasurementSpec joint_zx(int i, int j) { return {MeasureKind::JointZX, i, j, 0, 0}; }
  static MeasurementSpec bell(int i, int j) { return {MeasureKind::Bell, i, j, 0, 0}; }
  static MeasurementSpec all_zero_test(int lo, int hi) {
    return {MeasureKind::AllZeroTest, -1, -1, lo, hi};
  }

  int outcome_bits() const { return kind == MeasureKind::Bell ? 2 : 1; }
  // Free bits consumed, whatever the outcome.
  int draws() const;

  bool operator==(const MeasurementSpec&) const = default;
};

// A measurement scheduled inside a circuit: it fires once `after_gate` gates
// have been applied. Plans must be ordered by position; the default places the
// measurement after the whole circuit.
struct PlanStep {
  MeasurementSpec m;
  size_t after_gate = SIZE_MAX;
  bool operator==(const PlanStep&) const = default;
};

// A fully specified repeatable experiment. Free bits are consumed in a fixed
// order independent of any outcome: preparation draws in wire order, then
// measurement draws in plan order. The budget is their total; every run uses
// exactly that many bits.
struct Experiment {
  Circuit circuit;
  std::vector<Preparation> prep;
  std::vector<PlanStep> plan;

  int width() const { return circuit.width; }
  int budget() const;
  int outcome_bit_count() const;
  void validate() const;
};

struct RunResult {
  BitString bits;          // outcome bits in plan order
  Register state;          // post-measurement register
};

// Standalone measurement on a live register.
BitString measure(const MeasurementSpec& m, Register& state, RandomSource& rng);

RunResult run(const Experiment& e, RandomSource& rng);
// Deterministic replay with the whole free-bit schedule supplied up front;
// bits.size() must equal the budget. Enumerating all assignments reproduces
// the exact distribution by brute force.
RunResult run_with_bits(const Experiment& e, const BitString& bits);

// Outcome histogram. Keys list the plan's outcome bits last-recorded first, so
// a plan that measures wires in ascending order reads as the usual
// most-significant-bit-first value. Exact distributions carry integer weights
// over a power-of-two total and are bit-exact.
struct Distribution {
  int bits = 0;
  std::map<std::string, uint64_t> weight;
  uint64_t total = 0;
  bool exact = false;

  static std::string key(const BitString& plan_bits);
  double p(const std::string& outcome) const;
  std::map<std::string, double> probs() const;
};

Distribution sample(const Experiment& e, uint64_t trials, uint64_t seed);

struct ExactOptions {
  int budget_cap = 24;  // refuse larger budgets (hard ceiling 62)
};

// Exact output distribution over all free-bit assignments. Implemented by
// symbolic forward execution: every stored bit is an affine form over the
// budgeted free bits, and execution branches only where a product or an
// observed value is genuinely undetermined, adding one independent linear
// constraint per branch. Weights are exact dyadic rationals; the result is
// identical to enumerating all 2^budget assignments.
Distribution exact_distribution(const Experiment& e, const ExactOptions& opt = {});

}  // namespace qsl
