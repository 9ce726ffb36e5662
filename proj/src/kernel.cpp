#include "qsl/kernel.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace qsl {
namespace {

uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_wire(int w, int width) {
  if (w < 0 || w >= width)
    throw Error(Errc::WidthMismatch,
                "wire " + std::to_string(w) + " outside register of width " +
                    std::to_string(width));
}

}  // namespace

uint64_t Register::comp() const {
  uint64_t v = 0;
  for (size_t i = 0; i < sys.size(); ++i)
    if (sys[i].x) v |= uint64_t{1} << i;
  return v;
}

uint64_t Register::phase() const {
  uint64_t v = 0;
  for (size_t i = 0; i < sys.size(); ++i)
    if (sys[i].p) v |= uint64_t{1} << i;
  return v;
}

uint64_t RandomSource::word() {
  return mix64(mix64(mix64(seed_) ^ stream_) ^ counter_++);
}

uint64_t RandomSource::below(uint64_t n) {
  if (n == 0) throw Error(Errc::BadOracleParameter, "below(0)");
  if ((n & (n - 1)) == 0) return word() & (n - 1);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    uint64_t w = word();
    if (w < limit) return w % n;
  }
}

RandomSource RandomSource::substream(uint64_t s) const {
  return RandomSource(seed_, mix64(stream_ ^ mix64(s)));
}

ElementarySystem prepare(Basis basis, bool value, RandomSource& rng) {
  ElementarySystem e;
  switch (basis) {
    case Basis::Z:
      e.x = value;
      e.p = rng.bit();
      break;
    case Basis::X:
      e.p = value;
      e.x = rng.bit();
      break;
    case Basis::Y: {
      bool r = rng.bit();
      e.x = r;
      e.p = r ^ value;
      break;
    }
    case Basis::Mixed:
      e.x = rng.bit();
      e.p = rng.bit();
      break;
  }
  return e;
}

Register prepare_register(std::span<const Preparation> prep, RandomSource& rng) {
  Register r;
  r.sys.reserve(prep.size());
  for (const Preparation& p : prep) r.sys.push_back(prepare(p.basis, p.value, rng));
  return r;
}

Gate Gate::n_toffoli(std::vector<int> controls, uint32_t neg, int target) {
  if (controls.size() > 31)
    throw Error(Errc::WidthMismatch, "too many controls");
  if (neg >> controls.size())
    throw Error(Errc::WidthMismatch, "polarity mask wider than control list");
  Gate g;
  g.kind = GateKind::NToffoli;
  g.wires = std::move(controls);
  g.wires.push_back(target);
  g.neg = neg;
  return g;
}

int Gate::control_count() const {
  switch (kind) {
    case GateKind::Cnot:
    case GateKind::Toffoli:
    case GateKind::NToffoli:
      return static_cast<int>(wires.size()) - 1;
    case GateKind::Fredkin:
      return 1;
    default:
      return 0;
  }
}

Circuit& Circuit::append(Gate g) {
  for (size_t i = 0; i < g.wires.size(); ++i) {
    check_wire(g.wires[i], width);
    for (size_t j = i + 1; j < g.wires.size(); ++j)
      if (g.wires[i] == g.wires[j])
        throw Error(Errc::WidthMismatch, "gate addresses wire " +
                                             std::to_string(g.wires[i]) + " twice");
  }
  gates.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width > width)
    throw Error(Errc::WidthMismatch, "appended circuit is wider");
  for (const Gate& g : other.gates) append(g);
  return *this;
}

void apply_in_place(const Gate& g, Register& state, const BitString& outcomes) {
  for (int w : g.wires) check_wire(w, state.width());
  if (g.condition >= 0) {
    if (static_cast<size_t>(g.condition) >= outcomes.size())
      throw Error(Errc::WidthMismatch, "condition refers to unrecorded outcome");
    if (!outcomes[static_cast<size_t>(g.condition)]) return;
  }
  auto& sys = state.sys;
  switch (g.kind) {
    case GateKind::X:
      sys[g.wires[0]].x ^= 1;
      break;
    case GateKind::Z:
      sys[g.wires[0]].p ^= 1;
      break;
    case GateKind::Y:
      sys[g.wires[0]].x ^= 1;
      sys[g.wires[0]].p ^= 1;
      break;
    case GateKind::H:
      std::swap(sys[g.wires[0]].x, sys[g.wires[0]].p);
      break;
    case GateKind::S:
      sys[g.wires[0]].p ^= sys[g.wires[0]].x;
      sys[g.wires[0]].x ^= 1;
      break;
    case GateKind::Sinv:
      sys[g.wires[0]].p ^= sys[g.wires[0]].x ^ 1;
      sys[g.wires[0]].x ^= 1;
      break;
    case GateKind::Cnot: {
      auto& c = sys[g.wires[0]];
      auto& t = sys[g.wires[1]];
      c.p ^= t.p;
      t.x ^= c.x;
      break;
    }
    case GateKind::Cz: {
      auto& a = sys[g.wires[0]];
      auto& b = sys[g.wires[1]];
      bool ax = a.x, bx = b.x;
      a.p ^= bx;
      b.p ^= ax;
      break;
    }
    case GateKind::Swap:
      std::swap(sys[g.wires[0]], sys[g.wires[1]]);
      break;
    case GateKind::Toffoli: {
      auto& c1 = sys[g.wires[0]];
      auto& c2 = sys[g.wires[1]];
      auto& t = sys[g.wires[2]];
      bool x1 = c1.x, x2 = c2.x, tp = t.p;
      t.x ^= x1 & x2;
      c1.p ^= tp & x2;
      c2.p ^= tp & x1;
      break;
    }
    case GateKind::Fredkin: {
      auto& c = sys[g.wires[0]];
      auto& a = sys[g.wires[1]];
      auto& b = sys[g.wires[2]];
      bool dx = a.x ^ b.x, dp = a.p ^ b.p;
      c.p ^= dx & dp;
      if (c.x) {
        a.x ^= dx;
        b.x ^= dx;
        a.p ^= dp;
        b.p ^= dp;
      }
      break;
    }
    case GateKind::NToffoli: {
      const size_t m = g.wires.size() - 1;
      auto& t = sys[g.wires[m]];
      int zeros = 0;
      size_t zero_at = 0;
      for (size_t k = 0; k < m && zeros < 2; ++k) {
        bool adj = sys[g.wires[k]].x ^ ((g.neg >> k) & 1);
        if (!adj) {
          ++zeros;
          zero_at = k;
        }
      }
      if (zeros == 0) {
        bool tp = t.p;
        t.x ^= 1;
        for (size_t k = 0; k < m; ++k) sys[g.wires[k]].p ^= tp;
      } else if (zeros == 1) {
        sys[g.wires[zero_at]].p ^= t.p;
      }
      break;
    }
  }
}

void apply_in_place(const Circuit& c, Register& state, const BitString& outcomes) {
  if (c.width > state.width())
    throw Error(Errc::WidthMismatch, "circuit wider than register");
  for (const Gate& g : c.gates) apply_in_place(g, state, outcomes);
}

Register apply(const Gate& g, Register state, const BitString& outcomes) {
  apply_in_place(g, state, outcomes);
  return state;
}

Register apply(const Circuit& c, Register state, const BitString& outcomes) {
  apply_in_place(c, state, outcomes);
  return state;
}

namespace {

void append_core_ladder(Circuit& c, std::span<const int> controls, int target,
                        std::span<const int> ancillas) {
  const size_t m = controls.size();
  if (m == 0) {
    c.append(Gate::x(target));
  } else if (m == 1) {
    c.append(Gate::cnot(controls[0], target));
  } else if (m == 2) {
    c.append(Gate::toffoli(controls[0], controls[1], target));
  } else {
    int a = ancillas[0];
    c.append(Gate::toffoli(controls[0], controls[1], a));
    std::vector<int> rest;
    rest.reserve(m - 1);
    rest.push_back(a);
    rest.insert(rest.end(), controls.begin() + 2, controls.end());
    append_core_ladder(c, rest, target, ancillas.subspan(1));
    c.append(Gate::toffoli(controls[0], controls[1], a));
  }
}

}  // namespace

void append_n_toffoli(Circuit& c, std::span<const int> controls, uint32_t neg,
                      int target, std::span<const int> ancillas) {
  const size_t m = controls.size();
  const size_t needed = m > 2 ? m - 2 : 0;
  if (ancillas.size() < needed)
    throw Error(Errc::WidthMismatch, "need " + std::to_string(needed) +
                                         " ancilla wires, got " +
                                         std::to_string(ancillas.size()));
  for (size_t k = 0; k < m; ++k)
    if ((neg >> k) & 1) c.append(Gate::x(controls[k]));
  append_core_ladder(c, controls, target, ancillas);
  for (size_t k = 0; k < m; ++k)
    if ((neg >> k) & 1) c.append(Gate::x(controls[k]));
}

void n_toffoli(std::span<const int> controls, uint32_t neg, int target,
               Register& state, std::span<const int> ancillas) {
  const size_t needed = controls.size() > 2 ? controls.size() - 2 : 0;
  if (ancillas.size() < needed)
    throw Error(Errc::WidthMismatch, "need " + std::to_string(needed) +
                                         " ancilla wires, got " +
                                         std::to_string(ancillas.size()));
  for (size_t k = 0; k < needed; ++k) {
    check_wire(ancillas[k], state.width());
    if (state.at(ancillas[k]).x)
      throw Error(Errc::AncillaNotClean,
                  "ancilla wire " + std::to_string(ancillas[k]) +
                      " has computational bit 1");
  }
  Circuit c(state.width());
  append_n_toffoli(c, controls, neg, target, ancillas);
  apply_in_place(c, state);
}

namespace {

void append_transposition(Circuit& c, int n, uint64_t u, uint64_t v) {
  if (n == 1) {
    c.append(Gate::x(0));
    return;
  }
  const uint64_t d = u ^ v;
  const int pivot = std::countr_zero(d);
  const uint64_t rest = d & ~(uint64_t{1} << pivot);

  std::vector<int> conj;
  for (int j = 0; j < n; ++j)
    if ((rest >> j) & 1) conj.push_back(j);
  for (int j : conj) c.append(Gate::cnot(pivot, j));

  // Control pattern after the conjugation layer; u and v agree on it.
  uint64_t up = u;
  if ((u >> pivot) & 1) up ^= rest;

  std::vector<int> controls;
  uint32_t neg = 0;
  for (int w = 0; w < n; ++w) {
    if (w == pivot) continue;
    if (!((up >> w) & 1)) neg |= uint32_t{1} << controls.size();
    controls.push_back(w);
  }
  Gate flip = Gate::n_toffoli(controls, neg, n);
  c.append(flip);
  c.append(Gate::cnot(n, pivot));
  c.append(flip);

  for (auto it = conj.rbegin(); it != conj.rend(); ++it)
    c.append(Gate::cnot(pivot, *it));
}

}  // namespace

Circuit synthesize_permutation(const std::vector<uint64_t>& perm) {
  const size_t size = perm.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw Error(Errc::NotABijection, "domain size must be a power of two");
  const int n = std::countr_zero(size);
  std::vector<bool> seen(size, false);
  for (uint64_t v : perm) {
    if (v >= size || seen[v])
      throw Error(Errc::NotABijection, "not a bijection on [0, 2^n)");
    seen[v] = true;
  }

  Circuit c(n + 1);
  std::vector<bool> visited(size, false);
  for (uint64_t start = 0; start < size; ++start) {
    if (visited[start] || perm[start] == start) {
      visited[start] = true;
      continue;
    }
    std::vector<uint64_t> cycle;
    uint64_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      cycle.push_back(cur);
      cur = perm[cur];
    }
    for (size_t k = 1; k < cycle.size(); ++k)
      append_transposition(c, n, cycle[0], cycle[k]);
  }
  return c;
}

Circuit invert(const Circuit& c) {
  Circuit out(c.width);
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::S)
      g.kind = GateKind::Sinv;
    else if (g.kind == GateKind::Sinv)
      g.kind = GateKind::S;
    out.gates.push_back(std::move(g));
  }
  return out;
}

Circuit remap(const Circuit& c, std::span<const int> wire_map, int new_width) {
  if (wire_map.size() < static_cast<size_t>(c.width))
    throw Error(Errc::WidthMismatch, "wire map shorter than circuit width");
  Circuit out(new_width);
  for (const Gate& g : c.gates) {
    Gate h = g;
    for (int& w : h.wires) w = wire_map[static_cast<size_t>(w)];
    out.append(std::move(h));
  }
  return out;
}

}  // namespace qsl
