// Query algorithms built on the oracle constructors: each algorithm is an
// experiment builder (preparation + interference circuit + measurement plan)
// plus a driver that interprets outcomes. Builders are pure so the same
// experiment can be sampled, enumerated exactly, or replayed.
#pragma once

#include <optional>
#include <utility>

#include "qsl/engine.hpp"
#include "qsl/oracles.hpp"

namespace qsl {

// One-query constant-vs-balanced test. The verdict is one-sided: outcome 1
// rules out balanced, outcome 0 rules out constant.
enum class DJVerdict { NotBalanced, NotConstant };

// Query register to |0..0>, answer seeded for kickback, mix, oracle, unmix,
// then a single all-zero test over the query range.
Experiment dj_experiment(const OracleSpec& o);
DJVerdict deutsch_jozsa(const OracleSpec& o, RandomSource& rng);

// Secret-string recovery in one query: same layout as dj_experiment but the
// query wires are read out individually.
Experiment bv_experiment(const OracleSpec& o);
uint64_t bernstein_vazirani(const OracleSpec& o, RandomSource& rng);

// One search round: mix, phase-tag the marked item, invert about the mean
// (multi-controlled flip conjugated into the zero state), read the register.
Experiment grover_experiment(const OracleSpec& o);

struct GroverResult {
  bool found = false;
  uint64_t candidate = 0;
  int rounds = 0;
  // One circuit pass plus one classical check per round.
  int queries = 0;
};

// Repeats rounds until the classical check passes or the budget runs out.
// max_rounds <= 0 selects ceil(e * 2^n / (n + 2)), a few expected lifetimes.
GroverResult grover_search(const OracleSpec& o, RandomSource& rng, int max_rounds = 0);

// Row reduction over GF(2); rows are bit masks over n columns.
int gf2_rank(std::vector<uint64_t> rows, int n);
// Unique nonzero kernel vector of a rank n-1 system, 0 if the rank is not n-1.
uint64_t gf2_kernel_vector(const std::vector<uint64_t>& rows, int n);

// Hidden-shift subroutine: mix the query register around the oracle and read
// it out; the result is orthogonal to the shift.
Experiment simon_subroutine_experiment(const OracleSpec& o);
uint64_t simon_subroutine(const OracleSpec& o, RandomSource& rng);

enum class SimonVerdict { OneToOne, TwoToOne, BudgetExhausted };

struct SimonResult {
  SimonVerdict verdict = SimonVerdict::BudgetExhausted;
  uint64_t s = 0;  // recovered shift, 0 when one-to-one
  // Subroutine runs plus the final classical distinguishing query.
  int queries = 0;
};

// Collects subroutine outputs until they span a rank n-1 space, solves for
// the kernel vector, and distinguishes shift from no-shift with one check.
SimonResult simon_solve(const OracleSpec& o, RandomSource& rng, int max_queries);

// Deterministic variant: the answer register is seeded with the k-th phase
// pattern so the readout is the k-th row of the oracle's basis with
// certainty. Needs the zero-target oracle form.
Experiment simon_deterministic_experiment(const OracleSpec& o, int k);
// Runs the n scans via the exact engine (every outcome is a point mass) and
// reads the shift off the collected rows. Always n + 1 queries.
SimonResult simon_deterministic(const OracleSpec& o);

// Order finding for a mod 15 with three counting bits processed one at a
// time: controlled x a^2 then x a multipliers into the number register
// (initialized to 1), phase corrections conditioned on earlier outcomes, and
// three single-wire readouts. Outcome value y = 4 o2 + 2 o1 + o0.
Experiment shor15_subroutine_experiment(int a);

// Denominator of the best rational approximation to y / Q with denominator
// at most rmax, by continued fractions. Empty for y = 0 (no information).
std::optional<uint64_t> phase_denominator(uint64_t y, uint64_t Q, uint64_t rmax);

struct ShorOutcome {
  bool success = false;
  uint64_t factor_a = 0;
  uint64_t factor_b = 0;
  uint64_t order = 0;  // recovered multiplicative order of a
  int samples = 0;
  std::vector<uint64_t> ys;  // subroutine outputs in draw order
};

// Full factoring loop: sample the subroutine (one fresh stream per sample),
// turn y into an order candidate (lifting a proper divisor to the order by
// checking small multiples), and split 15 through gcd when the order is even.
ShorOutcome shor_factor15(int a, uint64_t seed, int max_samples = 16);

}  // namespace qsl
