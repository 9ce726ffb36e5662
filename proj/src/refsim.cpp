#include "qsl/refsim.hpp"

#include <bit>
#include <cmath>

namespace qsl::refsim {
namespace {

using cd = std::complex<double>;

void check_width(int width) {
  if (width < 1 || width > kMaxWidth)
    throw Error(Errc::WidthMismatch,
                "reference simulator supports 1.." + std::to_string(kMaxWidth) +
                    " wires, got " + std::to_string(width));
}

void apply_gate(Amplitudes& a, const Gate& g, const BitString& outcomes) {
  if (g.condition >= 0) {
    if (static_cast<size_t>(g.condition) >= outcomes.size())
      throw Error(Errc::WidthMismatch, "condition refers to unrecorded outcome");
    if (!outcomes[static_cast<size_t>(g.condition)]) return;
  }
  const size_t dim = a.size();
  switch (g.kind) {
    case GateKind::X: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      for (uint64_t i = 0; i < dim; ++i)
        if (!(i & t)) std::swap(a[i], a[i | t]);
      break;
    }
    case GateKind::Z: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      for (uint64_t i = 0; i < dim; ++i)
        if (i & t) a[i] = -a[i];
      break;
    }
    case GateKind::Y: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      for (uint64_t i = 0; i < dim; ++i)
        if (!(i & t)) {
          cd lo = a[i], hi = a[i | t];
          a[i | t] = cd(0, 1) * lo;
          a[i] = cd(0, -1) * hi;
        }
      break;
    }
    case GateKind::H: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      const double s = 1.0 / std::sqrt(2.0);
      for (uint64_t i = 0; i < dim; ++i)
        if (!(i & t)) {
          cd lo = a[i], hi = a[i | t];
          a[i] = s * (lo + hi);
          a[i | t] = s * (lo - hi);
        }
      break;
    }
    case GateKind::S: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      for (uint64_t i = 0; i < dim; ++i)
        if (i & t) a[i] *= cd(0, 1);
      break;
    }
    case GateKind::Sinv: {
      const uint64_t t = uint64_t{1} << g.wires[0];
      for (uint64_t i = 0; i < dim; ++i)
        if (i & t) a[i] *= cd(0, -1);
      break;
    }
    case GateKind::Cnot: {
      const uint64_t c = uint64_t{1} << g.wires[0];
      const uint64_t t = uint64_t{1} << g.wires[1];
      for (uint64_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) std::swap(a[i], a[i | t]);
      break;
    }
    case GateKind::Cz: {
      const uint64_t c = uint64_t{1} << g.wires[0];
      const uint64_t t = uint64_t{1} << g.wires[1];
      for (uint64_t i = 0; i < dim; ++i)
        if ((i & c) && (i & t)) a[i] = -a[i];
      break;
    }
    case GateKind::Swap: {
      const uint64_t b0 = uint64_t{1} << g.wires[0];
      const uint64_t b1 = uint64_t{1} << g.wires[1];
      for (uint64_t i = 0; i < dim; ++i)
        if ((i & b0) && !(i & b1)) std::swap(a[i], a[(i & ~b0) | b1]);
      break;
    }
    case GateKind::Toffoli: {
      const uint64_t c1 = uint64_t{1} << g.wires[0];
      const uint64_t c2 = uint64_t{1} << g.wires[1];
      const uint64_t t = uint64_t{1} << g.wires[2];
      for (uint64_t i = 0; i < dim; ++i)
        if ((i & c1) && (i & c2) && !(i & t)) std::swap(a[i], a[i | t]);
      break;
    }
    case GateKind::Fredkin: {
      const uint64_t c = uint64_t{1} << g.wires[0];
      const uint64_t b0 = uint64_t{1} << g.wires[1];
      const uint64_t b1 = uint64_t{1} << g.wires[2];
      for (uint64_t i = 0; i < dim; ++i)
        if ((i & c) && (i & b0) && !(i & b1))
          std::swap(a[i], a[(i & ~b0) | b1]);
      break;
    }
    case GateKind::NToffoli: {
      const size_t m = g.wires.size() - 1;
      const uint64_t t = uint64_t{1} << g.wires[m];
      for (uint64_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        bool fire = true;
        for (size_t k = 0; k < m && fire; ++k) {
          bool bit = (i >> g.wires[k]) & 1;
          fire = bit != (((g.neg >> k) & 1) != 0);
        }
        if (fire) std::swap(a[i], a[i | t]);
      }
      break;
    }
  }
}

struct Branch {
  Amplitudes a;
  double prob = 1.0;
  BitString out;
};

constexpr double kEps = 1e-15;

// Projects onto outcome subspaces of a computational-parity observable over
// the given mask (single wire: that wire's Z value). Appends the resulting
// branches to `next`.
void project_parity(const Branch& b, uint64_t mask, std::vector<Branch>& next) {
  double p1 = 0.0;
  for (uint64_t i = 0; i < b.a.size(); ++i)
    if (std::popcount(i & mask) & 1) p1 += std::norm(b.a[i]);
  for (int outcome = 0; outcome < 2; ++outcome) {
    double p = outcome ? p1 : 1.0 - p1;
    if (p < kEps) continue;
    Branch nb;
    nb.prob = b.prob * p;
    nb.out = b.out;
    nb.out.push_back(outcome != 0);
    nb.a.assign(b.a.size(), cd(0));
    const double s = 1.0 / std::sqrt(p);
    for (uint64_t i = 0; i < b.a.size(); ++i)
      if ((std::popcount(i & mask) & 1) == outcome) nb.a[i] = s * b.a[i];
    next.push_back(std::move(nb));
  }
}

void rotate(Branch& b, const std::vector<Gate>& gs) {
  for (const Gate& g : gs) apply_gate(b.a, g, {});
}

std::vector<Branch> measure_branch(Branch b, const MeasurementSpec& m) {
  std::vector<Branch> next;
  switch (m.kind) {
    case MeasureKind::Z:
      project_parity(b, uint64_t{1} << m.i, next);
      break;
    case MeasureKind::X:
      rotate(b, {Gate::h(m.i)});
      project_parity(b, uint64_t{1} << m.i, next);
      for (Branch& nb : next) rotate(nb, {Gate::h(m.i)});
      break;
    case MeasureKind::Y:
      rotate(b, {Gate::sinv(m.i), Gate::h(m.i)});
      project_parity(b, uint64_t{1} << m.i, next);
      for (Branch& nb : next) rotate(nb, {Gate::h(m.i), Gate::s(m.i)});
      break;
    case MeasureKind::JointZZ:
      project_parity(b, (uint64_t{1} << m.i) | (uint64_t{1} << m.j), next);
      break;
    case MeasureKind::JointXX:
      rotate(b, {Gate::h(m.i), Gate::h(m.j)});
      project_parity(b, (uint64_t{1} << m.i) | (uint64_t{1} << m.j), next);
      for (Branch& nb : next) rotate(nb, {Gate::h(m.i), Gate::h(m.j)});
      break;
    case MeasureKind::JointZX:
      rotate(b, {Gate::h(m.j)});
      project_parity(b, (uint64_t{1} << m.i) | (uint64_t{1} << m.j), next);
      for (Branch& nb : next) rotate(nb, {Gate::h(m.j)});
      break;
    case MeasureKind::Bell: {
      // Commuting parity observables: computational parity, then phase parity.
      std::vector<Branch> mid;
      project_parity(b, (uint64_t{1} << m.i) | (uint64_t{1} << m.j), mid);
      for (Branch& nb : mid) {
        rotate(nb, {Gate::h(m.i), Gate::h(m.j)});
        std::vector<Branch> after;
        project_parity(nb, (uint64_t{1} << m.i) | (uint64_t{1} << m.j), after);
        for (Branch& fb : after) {
          rotate(fb, {Gate::h(m.i), Gate::h(m.j)});
          next.push_back(std::move(fb));
        }
      }
      break;
    }
    case MeasureKind::AllZeroTest: {
      uint64_t mask = 0;
      for (int wRange = m.lo; wRange < m.hi; ++wRange)
        mask |= uint64_t{1} << wRange;
      double p_zero = 0.0;
      for (uint64_t i = 0; i < b.a.size(); ++i)
        if (!(i & mask)) p_zero += std::norm(b.a[i]);
      for (int outcome = 0; outcome < 2; ++outcome) {
        double p = outcome ? p_zero : 1.0 - p_zero;
        if (p < kEps) continue;
        Branch nb;
        nb.prob = b.prob * p;
        nb.out = b.out;
        nb.out.push_back(outcome != 0);
        nb.a.assign(b.a.size(), cd(0));
        const double s = 1.0 / std::sqrt(p);
        for (uint64_t i = 0; i < b.a.size(); ++i)
          if (((i & mask) == 0) == (outcome != 0)) nb.a[i] = s * b.a[i];
        next.push_back(std::move(nb));
      }
      break;
    }
  }
  return next;
}

}  // namespace

double norm(const Amplitudes& a) {
  double n = 0.0;
  for (const cd& v : a) n += std::norm(v);
  return std::sqrt(n);
}

Amplitudes statevector_run(const Circuit& c, uint64_t basis_in,
                           const BitString& outcomes) {
  check_width(c.width);
  Amplitudes a(uint64_t{1} << c.width, cd(0));
  if (basis_in >= a.size())
    throw Error(Errc::WidthMismatch, "basis state outside register");
  a[basis_in] = cd(1);
  for (const Gate& g : c.gates) apply_gate(a, g, outcomes);
  return a;
}

std::map<std::string, double> ideal_distribution(const Experiment& e) {
  e.validate();
  check_width(e.circuit.width);
  const size_t dim = uint64_t{1} << e.circuit.width;

  // Initial branches: computational part of the preparation, then basis
  // rotations; Mixed wires split into uniform basis branches.
  std::vector<Branch> branches;
  std::vector<int> mixed;
  uint64_t base = 0;
  for (size_t wIdx = 0; wIdx < e.prep.size(); ++wIdx) {
    const Preparation& p = e.prep[wIdx];
    if (p.basis == Basis::Mixed)
      mixed.push_back(static_cast<int>(wIdx));
    else if (p.basis == Basis::Z && p.value)
      base |= uint64_t{1} << wIdx;
  }
  const size_t n_mixed = mixed.size();
  for (uint64_t m = 0; m < (uint64_t{1} << n_mixed); ++m) {
    uint64_t basis = base;
    for (size_t k = 0; k < n_mixed; ++k)
      if ((m >> k) & 1) basis |= uint64_t{1} << mixed[k];
    Branch b;
    b.prob = 1.0 / static_cast<double>(uint64_t{1} << n_mixed);
    b.a.assign(dim, cd(0));
    b.a[basis] = cd(1);
    for (size_t wIdx = 0; wIdx < e.prep.size(); ++wIdx) {
      const Preparation& p = e.prep[wIdx];
      int wi = static_cast<int>(wIdx);
      if (p.basis == Basis::X) {
        if (p.value) apply_gate(b.a, Gate::x(wi), {});
        apply_gate(b.a, Gate::h(wi), {});
      } else if (p.basis == Basis::Y) {
        if (p.value) apply_gate(b.a, Gate::x(wi), {});
        apply_gate(b.a, Gate::h(wi), {});
        apply_gate(b.a, Gate::s(wi), {});
      }
    }
    branches.push_back(std::move(b));
  }

  const size_t n_gates = e.circuit.gates.size();
  size_t pi = 0;
  for (size_t gi = 0; gi <= n_gates; ++gi) {
    while (pi < e.plan.size() && std::min(e.plan[pi].after_gate, n_gates) == gi) {
      std::vector<Branch> next;
      for (Branch& b : branches)
        for (Branch& nb : measure_branch(std::move(b), e.plan[pi].m))
          next.push_back(std::move(nb));
      branches = std::move(next);
      ++pi;
    }
    if (gi < n_gates)
      for (Branch& b : branches) apply_gate(b.a, e.circuit.gates[gi], b.out);
  }

  std::map<std::string, double> dist;
  for (const Branch& b : branches) dist[Distribution::key(b.out)] += b.prob;
  return dist;
}

}  // namespace qsl::refsim
