#include "qsl/algorithms.hpp"

#include <cmath>
#include <numeric>

namespace qsl {
namespace {

void require_bit_answer(const OracleSpec& o) {
  if (o.answer.size() != 1)
    throw Error(Errc::BadOracleParameter, "needs a one-bit answer register");
}

// Shared preparation: everything to computational 0 except the answer wire,
// which is seeded to 1 so the mixed answer carries the kickback phase.
std::vector<Preparation> kickback_prep(const OracleSpec& o) {
  std::vector<Preparation> prep(static_cast<size_t>(o.circuit.width), {Basis::Z, false});
  prep[static_cast<size_t>(o.answer.lo)] = {Basis::Z, true};
  return prep;
}

uint64_t packed_outcome(const BitString& bits, int n) {
  uint64_t v = 0;
  for (int i = 0; i < n; ++i)
    if (bits[static_cast<size_t>(i)]) v |= uint64_t{1} << i;
  return v;
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
  uint64_t r = 1 % mod;
  base %= mod;
  for (; exp; exp >>= 1, base = base * base % mod)
    if (exp & 1) r = r * base % mod;
  return r;
}

}  // namespace

Experiment dj_experiment(const OracleSpec& o) {
  require_bit_answer(o);
  Experiment e;
  e.prep = kickback_prep(o);
  e.circuit = Circuit(o.circuit.width);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  e.circuit.append(Gate::h(o.answer.lo));
  e.circuit.append(o.circuit);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  e.plan = {{MeasurementSpec::all_zero_test(o.query.lo, o.query.hi)}};
  return e;
}

DJVerdict deutsch_jozsa(const OracleSpec& o, RandomSource& rng) {
  RunResult r = run(dj_experiment(o), rng);
  return r.bits[0] ? DJVerdict::NotBalanced : DJVerdict::NotConstant;
}

Experiment bv_experiment(const OracleSpec& o) {
  require_bit_answer(o);
  Experiment e;
  e.prep = kickback_prep(o);
  e.circuit = Circuit(o.circuit.width);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  e.circuit.append(Gate::h(o.answer.lo));
  e.circuit.append(o.circuit);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  for (int w = o.query.lo; w < o.query.hi; ++w)
    e.plan.push_back({MeasurementSpec::z(w)});
  return e;
}

uint64_t bernstein_vazirani(const OracleSpec& o, RandomSource& rng) {
  RunResult r = run(bv_experiment(o), rng);
  return packed_outcome(r.bits, o.query.size());
}

Experiment grover_experiment(const OracleSpec& o) {
  require_bit_answer(o);
  const int n = o.query.size();
  if (o.query.lo != 0 || n < 2)
    throw Error(Errc::BadOracleParameter, "search needs the query on wires 0..n-1, n >= 2");
  Experiment e;
  e.prep = kickback_prep(o);
  e.circuit = Circuit(o.circuit.width);
  for (int w = 0; w < n; ++w) e.circuit.append(Gate::h(w));
  e.circuit.append(Gate::h(o.answer.lo));
  e.circuit.append(o.circuit);
  for (int w = 0; w < n; ++w) e.circuit.append(Gate::h(w));
  // Inversion about the mean: flip the phase of the all-zero state.
  for (int w = 0; w < n; ++w) e.circuit.append(Gate::x(w));
  e.circuit.append(Gate::h(0));
  std::vector<int> controls;
  for (int w = 1; w < n; ++w) controls.push_back(w);
  e.circuit.append(Gate::n_toffoli(controls, 0, 0));
  e.circuit.append(Gate::h(0));
  for (int w = 0; w < n; ++w) e.circuit.append(Gate::x(w));
  for (int w = 0; w < n; ++w) e.circuit.append(Gate::h(w));
  for (int w = 0; w < n; ++w) e.plan.push_back({MeasurementSpec::z(w)});
  return e;
}

GroverResult grover_search(const OracleSpec& o, RandomSource& rng, int max_rounds) {
  const int n = o.query.size();
  if (max_rounds <= 0)
    max_rounds = static_cast<int>(
        std::ceil(std::exp(1.0) * std::ldexp(1.0, n) / (n + 2)));
  const Experiment e = grover_experiment(o);
  GroverResult res;
  for (int round = 0; round < max_rounds; ++round) {
    RunResult r = run(e, rng);
    res.rounds = round + 1;
    res.queries += 2;
    const uint64_t cand = packed_outcome(r.bits, n);
    if (o.truth(cand)) {
      res.found = true;
      res.candidate = cand;
      break;
    }
  }
  return res;
}

int gf2_rank(std::vector<uint64_t> rows, int n) {
  int rank = 0;
  for (int col = n - 1; col >= 0; --col) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows.size() && !((rows[piv] >> col) & 1)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<size_t>(rank) && ((rows[i] >> col) & 1))
        rows[i] ^= rows[static_cast<size_t>(rank)];
    ++rank;
  }
  return rank;
}

uint64_t gf2_kernel_vector(const std::vector<uint64_t>& rows_in, int n) {
  std::vector<uint64_t> rows = rows_in;
  std::vector<int> pivot_cols;
  for (int col = n - 1; col >= 0; --col) {
    size_t r = pivot_cols.size();
    size_t piv = r;
    while (piv < rows.size() && !((rows[piv] >> col) & 1)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && ((rows[i] >> col) & 1)) rows[i] ^= rows[r];
    pivot_cols.push_back(col);
  }
  if (static_cast<int>(pivot_cols.size()) != n - 1) return 0;
  uint64_t pivot_mask = 0;
  for (int c : pivot_cols) pivot_mask |= uint64_t{1} << c;
  int free_col = 0;
  while ((pivot_mask >> free_col) & 1) ++free_col;
  uint64_t v = uint64_t{1} << free_col;
  for (size_t i = 0; i < pivot_cols.size(); ++i)
    if ((rows[i] >> free_col) & 1)
      v |= uint64_t{1} << pivot_cols[i];
  return v;
}

Experiment simon_subroutine_experiment(const OracleSpec& o) {
  Experiment e;
  e.prep.assign(static_cast<size_t>(o.circuit.width), {Basis::Z, false});
  e.circuit = Circuit(o.circuit.width);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  e.circuit.append(o.circuit);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  for (int w = o.query.lo; w < o.query.hi; ++w)
    e.plan.push_back({MeasurementSpec::z(w)});
  return e;
}

uint64_t simon_subroutine(const OracleSpec& o, RandomSource& rng) {
  RunResult r = run(simon_subroutine_experiment(o), rng);
  return packed_outcome(r.bits, o.query.size());
}

SimonResult simon_solve(const OracleSpec& o, RandomSource& rng, int max_queries) {
  const int n = o.query.size();
  SimonResult res;
  std::vector<uint64_t> rows;
  while (gf2_rank(rows, n) < n - 1) {
    if (res.queries >= max_queries) return res;  // BudgetExhausted
    rows.push_back(simon_subroutine(o, rng));
    ++res.queries;
  }
  const uint64_t cand = gf2_kernel_vector(rows, n);
  ++res.queries;
  if (o.truth(0) == o.truth(cand)) {
    res.verdict = SimonVerdict::TwoToOne;
    res.s = cand;
  } else {
    res.verdict = SimonVerdict::OneToOne;
    res.s = 0;
  }
  return res;
}

Experiment simon_deterministic_experiment(const OracleSpec& o, int k) {
  const int n = o.query.size();
  if (o.answer.size() != n || o.ancilla.size() != 1)
    throw Error(Errc::BadOracleParameter, "deterministic scan needs the zero-target form");
  if (k < 0 || k >= n) throw Error(Errc::BadOracleParameter, "row index out of range");
  Experiment e;
  e.prep.assign(static_cast<size_t>(o.circuit.width), {Basis::Z, false});
  e.prep[static_cast<size_t>(o.answer.lo + k)] = {Basis::Z, true};
  e.circuit = Circuit(o.circuit.width);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  for (int w = o.answer.lo; w < o.answer.hi; ++w) e.circuit.append(Gate::h(w));
  e.circuit.append(o.circuit);
  for (int w = o.query.lo; w < o.query.hi; ++w) e.circuit.append(Gate::h(w));
  for (int w = o.query.lo; w < o.query.hi; ++w)
    e.plan.push_back({MeasurementSpec::z(w)});
  return e;
}

SimonResult simon_deterministic(const OracleSpec& o) {
  const int n = o.query.size();
  SimonResult res;
  std::vector<uint64_t> rows;
  for (int k = 0; k < n; ++k) {
    const Distribution d = exact_distribution(simon_deterministic_experiment(o, k));
    if (d.weight.size() != 1)
      throw Error(Errc::BadOracleParameter, "scan outcome is not deterministic");
    const std::string& key = d.weight.begin()->first;
    uint64_t row = 0;
    for (int i = 0; i < n; ++i)
      if (key[static_cast<size_t>(n - 1 - i)] == '1') row |= uint64_t{1} << i;
    rows.push_back(row);
    ++res.queries;
  }
  const int rank = gf2_rank(rows, n);
  ++res.queries;
  if (rank == n) {
    res.verdict = SimonVerdict::OneToOne;
    res.s = 0;
  } else {
    res.verdict = SimonVerdict::TwoToOne;
    res.s = gf2_kernel_vector(rows, n);
  }
  return res;
}

Experiment shor15_subroutine_experiment(int a) {
  const OracleSpec square = shor15_multiplier(a, 2);
  const OracleSpec once = shor15_multiplier(a, 1);
  Experiment e;
  e.prep.assign(7, {Basis::Z, false});
  e.prep[3] = {Basis::Z, true};  // number register starts at value 1
  e.circuit = Circuit(7);
  e.circuit.append(Gate::h(0));
  e.circuit.append(Gate::h(1));
  e.circuit.append(Gate::h(2));
  // Controlled multipliers: wire 2 would control the fourth power, which is
  // always the identity mod 15 and is omitted entirely.
  const std::vector<int> map1{1, 3, 4, 5, 6};
  const std::vector<int> map0{0, 3, 4, 5, 6};
  if (!square.circuit.gates.empty()) e.circuit.append(remap(square.circuit, map1, 7));
  e.circuit.append(remap(once.circuit, map0, 7));
  e.circuit.append(Gate::h(2));
  const size_t cut0 = e.circuit.gates.size();
  e.circuit.append(Gate::s(1).conditioned_on(0));
  e.circuit.append(Gate::h(1));
  const size_t cut1 = e.circuit.gates.size();
  e.circuit.append(Gate::s(0).conditioned_on(1));
  e.circuit.append(Gate::h(0));
  const size_t cut2 = e.circuit.gates.size();
  e.plan = {{MeasurementSpec::z(2), cut0},
            {MeasurementSpec::z(1), cut1},
            {MeasurementSpec::z(0), cut2}};
  return e;
}

std::optional<uint64_t> phase_denominator(uint64_t y, uint64_t Q, uint64_t rmax) {
  if (Q == 0 || y >= Q) throw Error(Errc::BadOracleParameter, "phase out of range");
  if (y == 0) return std::nullopt;
  // Continued fraction of y / Q; keep the last convergent denominator <= rmax.
  uint64_t num = y, den = Q;
  uint64_t k_prev = 0, k = 1;  // denominators of successive convergents
  uint64_t best = 1;
  while (num != 0) {
    const uint64_t q = den / num;
    const uint64_t k_next = q * k + k_prev;
    den = std::exchange(num, den % num);
    k_prev = std::exchange(k, k_next);
    if (k <= rmax) best = k;
  }
  return best;
}

ShorOutcome shor_factor15(int a, uint64_t seed, int max_samples) {
  const Experiment e = shor15_subroutine_experiment(a);
  ShorOutcome out;
  for (int t = 0; t < max_samples; ++t) {
    RandomSource rng(seed, static_cast<uint64_t>(t));
    const RunResult r = run(e, rng);
    ++out.samples;
    const uint64_t y = (r.bits[2] ? 4u : 0u) | (r.bits[1] ? 2u : 0u) | (r.bits[0] ? 1u : 0u);
    out.ys.push_back(y);
    const auto den = phase_denominator(y, 8, 4);
    if (!den) continue;
    uint64_t order = 0;
    for (uint64_t m = *den; m <= 4; m += *den)
      if (pow_mod(static_cast<uint64_t>(a), m, 15) == 1) {
        order = m;
        break;
      }
    if (order == 0 || order % 2 != 0) continue;
    const uint64_t half = pow_mod(static_cast<uint64_t>(a), order / 2, 15);
    const uint64_t f1 = std::gcd(half + 1, uint64_t{15});
    const uint64_t f2 = std::gcd(half - 1, uint64_t{15});
    if (f1 == 1 || f1 == 15 || f2 == 1 || f2 == 15) continue;
    out.success = true;
    out.order = order;
    out.factor_a = std::min(f1, f2);
    out.factor_b = std::max(f1, f2);
    break;
  }
  return out;
}

}  // namespace qsl
