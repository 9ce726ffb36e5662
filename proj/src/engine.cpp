#include "qsl/engine.hpp"

#include <algorithm>

#include "bit_feed.hpp"

namespace qsl {
namespace {

using detail::BitFeed;
using detail::measure_with;
using detail::prepare_with;

void check_wire(int w, int width) {
  if (w < 0 || w >= width)
    throw Error(Errc::WidthMismatch,
                "wire " + std::to_string(w) + " outside register of width " +
                    std::to_string(width));
}

void check_measurement(const MeasurementSpec& m, int width) {
  switch (m.kind) {
    case MeasureKind::Z:
    case MeasureKind::X:
    case MeasureKind::Y:
      check_wire(m.i, width);
      break;
    case MeasureKind::JointZZ:
    case MeasureKind::JointXX:
    case MeasureKind::JointZX:
    case MeasureKind::Bell:
      check_wire(m.i, width);
      check_wire(m.j, width);
      if (m.i == m.j)
        throw Error(Errc::WidthMismatch, "joint measurement needs two distinct wires");
      break;
    case MeasureKind::AllZeroTest:
      if (m.lo < 0 || m.hi <= m.lo || m.hi > width)
        throw Error(Errc::WidthMismatch, "bad AllZeroTest range");
      break;
  }
}

RunResult run_impl(const Experiment& e, BitFeed& feed) {
  RunResult r;
  r.state.sys.reserve(e.prep.size());
  for (const Preparation& p : e.prep) r.state.sys.push_back(prepare_with(p, feed));

  const size_t n_gates = e.circuit.gates.size();
  size_t pi = 0;
  for (size_t gi = 0; gi <= n_gates; ++gi) {
    while (pi < e.plan.size() &&
           std::min(e.plan[pi].after_gate, n_gates) == gi) {
      BitString bits = measure_with(e.plan[pi].m, r.state, feed);
      r.bits.insert(r.bits.end(), bits.begin(), bits.end());
      ++pi;
    }
    if (gi < n_gates) apply_in_place(e.circuit.gates[gi], r.state, r.bits);
  }
  return r;
}

}  // namespace

int MeasurementSpec::draws() const {
  switch (kind) {
    case MeasureKind::Bell:
      return 2;
    case MeasureKind::AllZeroTest:
      return hi - lo;
    default:
      return 1;
  }
}

int Experiment::budget() const {
  int b = 0;
  for (const Preparation& p : prep) b += p.draws();
  for (const PlanStep& s : plan) b += s.m.draws();
  return b;
}

int Experiment::outcome_bit_count() const {
  int b = 0;
  for (const PlanStep& s : plan) b += s.m.outcome_bits();
  return b;
}

void Experiment::validate() const {
  if (static_cast<int>(prep.size()) != circuit.width)
    throw Error(Errc::WidthMismatch,
                "preparation list has " + std::to_string(prep.size()) +
                    " entries for a circuit of width " + std::to_string(circuit.width));
  size_t last = 0;
  for (const PlanStep& s : plan) {
    check_measurement(s.m, circuit.width);
    size_t pos = std::min(s.after_gate, circuit.gates.size());
    if (pos < last)
      throw Error(Errc::WidthMismatch, "measurement plan out of order");
    last = pos;
  }
}

BitString measure(const MeasurementSpec& m, Register& state, RandomSource& rng) {
  check_measurement(m, state.width());
  BitFeed feed{&rng, nullptr, 0};
  return measure_with(m, state, feed);
}

RunResult run(const Experiment& e, RandomSource& rng) {
  e.validate();
  BitFeed feed{&rng, nullptr, 0};
  return run_impl(e, feed);
}

RunResult run_with_bits(const Experiment& e, const BitString& bits) {
  e.validate();
  if (bits.size() != static_cast<size_t>(e.budget()))
    throw Error(Errc::WidthMismatch,
                "need exactly " + std::to_string(e.budget()) + " bits, got " +
                    std::to_string(bits.size()));
  BitFeed feed{nullptr, &bits, 0};
  return run_impl(e, feed);
}

std::string Distribution::key(const BitString& plan_bits) {
  std::string s;
  s.reserve(plan_bits.size());
  for (size_t k = plan_bits.size(); k-- > 0;) s.push_back(plan_bits[k] ? '1' : '0');
  return s;
}

double Distribution::p(const std::string& outcome) const {
  if (total == 0) return 0.0;
  auto it = weight.find(outcome);
  if (it == weight.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::map<std::string, double> Distribution::probs() const {
  std::map<std::string, double> out;
  for (const auto& [k, w] : weight)
    out[k] = static_cast<double>(w) / static_cast<double>(total);
  return out;
}

Distribution sample(const Experiment& e, uint64_t trials, uint64_t seed) {
  e.validate();
  Distribution d;
  d.bits = e.outcome_bit_count();
  d.total = trials;
  d.exact = false;
  for (uint64_t t = 0; t < trials; ++t) {
    RandomSource rng(seed, t);
    RunResult r = run(e, rng);
    ++d.weight[Distribution::key(r.bits)];
  }
  return d;
}

}  // namespace qsl
