#include "qsl/protocols.hpp"

#include <array>
#include <cmath>

#include "bit_feed.hpp"
#include "qsl/stats.hpp"

namespace qsl {
namespace {

Circuit pair_circuit() {
  Circuit c(2);
  c.append(Gate::h(1));
  c.append(Gate::cnot(1, 0));
  return c;
}

}  // namespace

std::pair<bool, bool> bell_prep_values(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlus: return {false, false};
    case BellKind::PhiPlus: return {false, true};
    case BellKind::PsiMinus: return {true, false};
    case BellKind::PhiMinus: return {true, true};
  }
  throw Error(Errc::BadOracleParameter, "unknown pair class");
}

Experiment bell_pair_experiment(BellKind kind, std::vector<PlanStep> plan) {
  const auto [v1, v0] = bell_prep_values(kind);
  Experiment e;
  e.circuit = pair_circuit();
  e.prep = {{Basis::Z, v0}, {Basis::Z, v1}};
  e.plan = std::move(plan);
  return e;
}

PauliCorrelations pair_correlations(BellKind kind) {
  auto sign = [&](const MeasurementSpec& m0, const MeasurementSpec& m1) -> int {
    Distribution d = exact_distribution(bell_pair_experiment(kind, {{m0}, {m1}}));
    const bool agree = d.p("00") + d.p("11") == 1.0;
    const bool differ = d.p("01") + d.p("10") == 1.0;
    if (agree) return 1;
    if (differ) return -1;
    return 0;
  };
  PauliCorrelations c;
  c.zz = sign(MeasurementSpec::z(0), MeasurementSpec::z(1));
  c.xx = sign(MeasurementSpec::x(0), MeasurementSpec::x(1));
  c.yy = sign(MeasurementSpec::y(0), MeasurementSpec::y(1));
  return c;
}

PauliCorrelations singlet_pauli_correlations() {
  return pair_correlations(BellKind::PhiMinus);
}

Experiment teleport_experiment(Preparation input) {
  Experiment e;
  e.circuit = Circuit(3);
  e.prep = {input, {Basis::Z, false}, {Basis::Z, false}};
  e.circuit.append(Gate::h(2));
  e.circuit.append(Gate::cnot(2, 1));
  e.circuit.append(Gate::cnot(0, 1));
  e.circuit.append(Gate::h(0));
  const size_t cut = e.circuit.gates.size();
  e.circuit.append(Gate::x(2).conditioned_on(0));
  e.circuit.append(Gate::z(2).conditioned_on(1));
  e.plan = {{MeasurementSpec::z(1), cut}, {MeasurementSpec::z(0), cut}};
  return e;
}

Experiment superdense_experiment(bool m1, bool m0) {
  Experiment e;
  e.circuit = pair_circuit();
  e.prep = {{Basis::Z, false}, {Basis::Z, false}};
  if (m0) e.circuit.append(Gate::x(1));
  if (m1) e.circuit.append(Gate::z(1));
  e.plan = {{MeasurementSpec::bell(0, 1)}};
  return e;
}

std::pair<bool, bool> superdense_decode(const BitString& outcome) {
  if (outcome.size() != 2)
    throw Error(Errc::WidthMismatch, "pair parity readout has two bits");
  return {outcome[1], outcome[0]};  // {m1 = phase parity, m0 = comp parity}
}

namespace {

BB84Round bb84_round_impl(bool eavesdrop, detail::BitFeed& feed) {
  BB84Round r;
  r.eve_present = eavesdrop;
  r.alice_basis = feed.next();
  r.alice_bit = feed.next();
  Register st;
  st.sys.push_back(
      detail::prepare_with({r.alice_basis ? Basis::X : Basis::Z, r.alice_bit}, feed));
  if (eavesdrop) {
    r.eve_basis = feed.next();
    r.eve_bit = detail::measure_with(
        r.eve_basis ? MeasurementSpec::x(0) : MeasurementSpec::z(0), st, feed)[0];
  }
  r.bob_basis = feed.next();
  r.bob_bit = detail::measure_with(
      r.bob_basis ? MeasurementSpec::x(0) : MeasurementSpec::z(0), st, feed)[0];
  return r;
}

}  // namespace

int bb84_round_bits(bool eavesdrop) { return eavesdrop ? 7 : 5; }

BB84Round bb84_round(bool eavesdrop, RandomSource& rng) {
  detail::BitFeed feed{&rng, nullptr, 0};
  return bb84_round_impl(eavesdrop, feed);
}

BB84Round bb84_round_replay(bool eavesdrop, const BitString& bits) {
  if (bits.size() != static_cast<size_t>(bb84_round_bits(eavesdrop)))
    throw Error(Errc::WidthMismatch, "wrong schedule length for one round");
  detail::BitFeed feed{nullptr, &bits, 0};
  return bb84_round_impl(eavesdrop, feed);
}

BB84Stats bb84_run(uint64_t rounds, bool eavesdrop, uint64_t seed) {
  BB84Stats stats;
  stats.rounds = rounds;
  for (uint64_t t = 0; t < rounds; ++t) {
    RandomSource rng(seed, t);
    const BB84Round r = bb84_round(eavesdrop, rng);
    if (r.sifted()) ++stats.sifted;
    if (r.error()) ++stats.errors;
  }
  return stats;
}

Circuit ghz_circuit(GHZForm form) {
  Circuit c(3);
  c.append(Gate::h(2));
  c.append(Gate::cnot(2, 1));
  if (form == GHZForm::Cnots)
    c.append(Gate::cnot(1, 0));
  else
    c.append(Gate::toffoli(2, 1, 0));
  return c;
}

Experiment ghz_experiment(GHZForm form) {
  Experiment e;
  e.circuit = ghz_circuit(form);
  e.prep.assign(3, {Basis::Z, false});
  e.plan = {{MeasurementSpec::z(0)}, {MeasurementSpec::x(1)}};
  return e;
}

double ghz_conditional_entropy(GHZForm form) {
  const Experiment e = ghz_experiment(form);
  const int budget = e.budget();
  // Joint counts over (outcome pair, wire-2 phase-space point).
  std::map<std::string, std::array<uint64_t, 4>> joint;
  const uint64_t total = uint64_t{1} << budget;
  for (uint64_t a = 0; a < total; ++a) {
    BitString bits(static_cast<size_t>(budget));
    for (int i = 0; i < budget; ++i) bits[static_cast<size_t>(i)] = (a >> i) & 1;
    const RunResult r = run_with_bits(e, bits);
    joint[Distribution::key(r.bits)][static_cast<size_t>(r.state.at(2).point())]++;
  }
  double h = 0.0;
  for (const auto& [key, counts] : joint) {
    uint64_t n = 0;
    for (uint64_t c : counts) n += c;
    stats::Probs cond;
    for (size_t pt = 0; pt < 4; ++pt)
      if (counts[pt])
        cond[std::string(1, static_cast<char>('0' + pt))] =
            static_cast<double>(counts[pt]) / static_cast<double>(n);
    h += (static_cast<double>(n) / static_cast<double>(total)) * stats::entropy(cond);
  }
  return h;
}

}  // namespace qsl
