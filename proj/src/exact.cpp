// Exact output distributions. Every stored bit is tracked as an affine GF(2)
// form over the experiment's free bits. Linear gates update forms directly;
// products (Toffoli-family computational updates and phase kicks) and observed
// values are settled by branching, where each branch pins one new independent
// linear combination of free bits. A branch of rank r therefore has exact
// probability 2^-r, and summing leaves reproduces full enumeration bit for bit.
#include <bit>
#include <cstring>
#include <optional>
#include <utility>

#include "qsl/engine.hpp"

namespace qsl {
namespace {

// Affine form: XOR of the free bits selected by `m`, plus constant `c`.
struct Expr {
  uint64_t m = 0;
  bool c = false;
  bool is_const() const { return m == 0; }
  void operator^=(const Expr& o) {
    m ^= o.m;
    c ^= o.c;
  }
};

Expr var(int idx) { return Expr{uint64_t{1} << idx, false}; }
Expr constant(bool b) { return Expr{0, b}; }

struct World {
  std::vector<Expr> xs, ps;
  // Packed mirror of the computational side: bit w of `xk` says xs[w] is a
  // known constant, and then bit w of `xv` is its value (stale where
  // unknown). Multi-control gates whose controls are all known can act on
  // these words directly instead of scanning per-wire forms.
  uint64_t xk = 0, xv = 0;
  // Linear system in reduced echelon form: <row_mask[k], free bits> =
  // row_rhs[k], and no row contains another row's pivot. Every stored form in
  // xs/ps is kept free of all pivot bits (constrain substitutes new rows in
  // immediately), so resolving a stored form is a constant-time check.
  std::vector<uint64_t> row_mask;
  std::vector<int> row_pivot;
  uint64_t row_rhs = 0;    // bit k = rhs of row k
  uint64_t pivot_set = 0;  // union of all pivot bits
  BitString out;
  size_t gate_idx = 0;
  size_t plan_idx = 0;

  int rank() const { return static_cast<int>(row_mask.size()); }

  Expr reduce(Expr e) const {
    for (size_t k = 0; k < row_mask.size(); ++k)
      if ((e.m >> row_pivot[k]) & 1) {
        e.m ^= row_mask[k];
        e.c ^= (row_rhs >> k) & 1;
      }
    return e;
  }

  // e must be reduced and non-constant.
  void constrain(const Expr& e, bool val) {
    const uint64_t pbit = e.m & -e.m;
    const bool rhs = val ^ e.c;
    for (size_t k = 0; k < row_mask.size(); ++k)
      if (row_mask[k] & pbit) {
        row_mask[k] ^= e.m;
        if (rhs) row_rhs ^= uint64_t{1} << k;
      }
    for (size_t i = 0; i < xs.size(); ++i) {
      Expr& f = xs[i];
      if (f.m & pbit) {
        f.m ^= e.m;
        f.c ^= rhs;
        if (f.m == 0) {
          xk |= uint64_t{1} << i;
          xv = (xv & ~(uint64_t{1} << i)) | (uint64_t{f.c} << i);
        }
      }
    }
    for (Expr& f : ps)
      if (f.m & pbit) {
        f.m ^= e.m;
        f.c ^= rhs;
      }
    row_pivot.push_back(std::countr_zero(e.m));
    row_mask.push_back(e.m);
    pivot_set |= pbit;
    if (rhs) row_rhs |= uint64_t{1} << (row_mask.size() - 1);
  }
};

// Per-step first free-bit indices, following the fixed draw schedule.
struct VarLayout {
  std::vector<int> plan_base;
  int total = 0;
};

VarLayout layout_vars(const Experiment& e) {
  VarLayout l;
  int idx = 0;
  for (const Preparation& p : e.prep) idx += p.draws();
  for (const PlanStep& s : e.plan) {
    l.plan_base.push_back(idx);
    idx += s.m.draws();
  }
  l.total = idx;
  return l;
}

World initial_world(const Experiment& e) {
  World w;
  w.xs.reserve(e.prep.size());
  w.ps.reserve(e.prep.size());
  int idx = 0;
  for (const Preparation& p : e.prep) {
    const size_t wire = w.xs.size();
    switch (p.basis) {
      case Basis::Z:
        w.xs.push_back(constant(p.value));
        w.ps.push_back(var(idx++));
        w.xk |= uint64_t{1} << wire;
        w.xv |= uint64_t{p.value} << wire;
        break;
      case Basis::X:
        w.ps.push_back(constant(p.value));
        w.xs.push_back(var(idx++));
        break;
      case Basis::Y: {
        Expr r = var(idx++);
        w.xs.push_back(r);
        r.c ^= p.value;
        w.ps.push_back(r);
        break;
      }
      case Basis::Mixed:
        w.xs.push_back(var(idx++));
        w.ps.push_back(var(idx++));
        break;
    }
  }
  return w;
}

// Gates flattened into one contiguous array of packed 16-byte ops
// (multi-control wire lists go to a byte-wide shared pool), so every world
// re-walks sequential, cache-dense memory instead of per-gate heap blocks.
// Wire indices fit a byte because the free-bit budget caps the width.
struct Op {
  uint8_t kind;  // GateKind, known to fit a byte
  uint8_t has_cond;
  uint8_t w0 = 0, w1 = 0, w2 = 0;
  uint8_t pad = 0;
  uint16_t pool_cnt = 0;  // NToffoli wire count, target last
  uint32_t pool_off = 0;
  uint32_t nt_idx = 0;  // NToffoli side-table slot
};
static_assert(sizeof(Op) == 16);

// kind and has_cond read together as one little-endian half-word, letting the
// dominant plain-CNOT case be recognized with a single compare.
inline uint16_t op_tag(const Op& g) {
  uint16_t t;
  std::memcpy(&t, &g, sizeof t);
  return t;
}
constexpr uint16_t kPlainCnot = static_cast<uint16_t>(GateKind::Cnot);

// Per-NToffoli precomputed wire masks. `fast` is clear when control wires
// repeat, in which case only the ordered per-control scan is faithful.
struct NtPre {
  uint64_t cmask = 0;  // control wires
  uint64_t negw = 0;   // wires with inverted control sense
  uint32_t neg = 0;    // original per-position senses, for the scan path
  uint32_t fast = 0;
};

struct FlatCircuit {
  std::vector<Op> ops;
  std::vector<uint8_t> pool;
  std::vector<NtPre> nts;
  std::vector<int32_t> conds;  // per-op condition index, -1 if none
};

FlatCircuit flatten(const Circuit& c) {
  FlatCircuit f;
  f.ops.reserve(c.gates.size());
  bool any_cond = false;
  auto wire8 = [&](int v) -> uint8_t {
    if (v < 0 || v >= c.width)
      throw Error(Errc::WidthMismatch, "gate wire out of range");
    return static_cast<uint8_t>(v);
  };
  for (const Gate& g : c.gates) {
    Op op{static_cast<uint8_t>(g.kind), static_cast<uint8_t>(g.condition >= 0)};
    any_cond |= g.condition >= 0;
    if (g.kind == GateKind::NToffoli) {
      op.pool_off = static_cast<uint32_t>(f.pool.size());
      op.pool_cnt = static_cast<uint16_t>(g.wires.size());
      op.nt_idx = static_cast<uint32_t>(f.nts.size());
      NtPre pre;
      pre.neg = g.neg;
      for (size_t k = 0; k + 1 < g.wires.size(); ++k) {
        const uint64_t bit = uint64_t{1} << wire8(g.wires[k]);
        pre.cmask |= bit;
        if ((g.neg >> k) & 1) pre.negw |= bit;
      }
      pre.fast =
          static_cast<size_t>(std::popcount(pre.cmask)) + 1 == g.wires.size();
      f.nts.push_back(pre);
      for (int wv : g.wires) f.pool.push_back(wire8(wv));
    } else {
      if (!g.wires.empty()) op.w0 = wire8(g.wires[0]);
      if (g.wires.size() > 1) op.w1 = wire8(g.wires[1]);
      if (g.wires.size() > 2) op.w2 = wire8(g.wires[2]);
    }
    f.ops.push_back(op);
  }
  if (any_cond) {
    f.conds.reserve(c.gates.size());
    for (const Gate& g : c.gates) f.conds.push_back(g.condition);
  }
  return f;
}

// Settles `e` against the constraint rows in place. Returns true if constant
// (value in e.c); false leaves the reduced form in `e` for a branch to pin.
// Combinations of stored forms carry no pivot bits, so the common case skips
// reduction entirely; the fallback covers any other source.
bool settle(const World& w, Expr& e) {
  if (e.m & w.pivot_set) e = w.reduce(e);
  return e.is_const();
}

// Applies one gate; returns true with the form to branch on in `pending` if
// it is undetermined. Handlers never mutate the world before all needed forms
// are settled, so a retry after constraining is safe.
// Refreshes one wire's slot in the packed computational mirror.
inline void sync_comp(World& w, const Expr* xs, int wire) {
  const uint64_t bit = uint64_t{1} << wire;
  if (xs[wire].m == 0) {
    w.xk |= bit;
    w.xv = (w.xv & ~bit) | (uint64_t{xs[wire].c} << wire);
  } else {
    w.xk &= ~bit;
  }
}

// Raw xs/ps pointers come from the caller so the hot loop carries no repeated
// vector-internals loads; nothing below resizes those vectors. Conditions are
// already checked by the caller.
bool sym_gate(World& w, Expr* const xs, Expr* const ps, const Op& g,
              const uint8_t* pool, const NtPre* nts, Expr& pending) {
  switch (static_cast<GateKind>(g.kind)) {
    case GateKind::X:
      xs[g.w0].c ^= 1;
      w.xv ^= uint64_t{1} << g.w0;
      break;
    case GateKind::Z:
      ps[g.w0].c ^= 1;
      break;
    case GateKind::Y:
      xs[g.w0].c ^= 1;
      ps[g.w0].c ^= 1;
      w.xv ^= uint64_t{1} << g.w0;
      break;
    case GateKind::H:
      std::swap(xs[g.w0], ps[g.w0]);
      sync_comp(w, xs, g.w0);
      break;
    case GateKind::S:
      ps[g.w0] ^= xs[g.w0];
      xs[g.w0].c ^= 1;
      w.xv ^= uint64_t{1} << g.w0;
      break;
    case GateKind::Sinv:
      ps[g.w0] ^= xs[g.w0];
      ps[g.w0].c ^= 1;
      xs[g.w0].c ^= 1;
      w.xv ^= uint64_t{1} << g.w0;
      break;
    case GateKind::Cnot:
      ps[g.w0] ^= ps[g.w1];
      xs[g.w1] ^= xs[g.w0];
      sync_comp(w, xs, g.w1);
      break;
    case GateKind::Cz:
      ps[g.w0] ^= xs[g.w1];
      ps[g.w1] ^= xs[g.w0];
      break;
    case GateKind::Swap: {
      std::swap(xs[g.w0], xs[g.w1]);
      std::swap(ps[g.w0], ps[g.w1]);
      sync_comp(w, xs, g.w0);
      sync_comp(w, xs, g.w1);
      break;
    }
    case GateKind::Toffoli: {
      Expr c1 = xs[g.w0];
      if (!settle(w, c1)) {
        pending = c1;
        return true;
      }
      Expr c2 = xs[g.w1];
      if (!settle(w, c2)) {
        pending = c2;
        return true;
      }
      Expr tp = ps[g.w2];
      if (c1.c && c2.c) {
        xs[g.w2].c ^= 1;
        w.xv ^= uint64_t{1} << g.w2;
      }
      if (c2.c) ps[g.w0] ^= tp;
      if (c1.c) ps[g.w1] ^= tp;
      break;
    }
    case GateKind::Fredkin: {
      Expr c = xs[g.w0];
      if (!settle(w, c)) {
        pending = c;
        return true;
      }
      Expr dx = xs[g.w1];
      dx ^= xs[g.w2];
      if (!settle(w, dx)) {
        pending = dx;
        return true;
      }
      Expr dp = ps[g.w1];
      dp ^= ps[g.w2];
      if (dx.c) ps[g.w0] ^= dp;
      if (c.c) {
        if (dx.c) {
          xs[g.w1].c ^= 1;
          xs[g.w2].c ^= 1;
          w.xv ^= uint64_t{1} << g.w1;
          w.xv ^= uint64_t{1} << g.w2;
        }
        ps[g.w1] ^= dp;
        ps[g.w2] ^= dp;
      }
      break;
    }
    case GateKind::NToffoli: {
      const uint8_t* wires = pool + g.pool_off;
      const size_t m = static_cast<size_t>(g.pool_cnt) - 1;
      const NtPre& pre = nts[g.nt_idx];
      // When every control is a known constant the zero set falls out of the
      // packed mirror in a few word operations.
      if (pre.fast && (pre.cmask & ~w.xk) == 0) {
        const uint64_t zeros = pre.cmask & ~(w.xv ^ pre.negw);
        if (zeros == 0) {
          const int t = wires[m];
          Expr tp = ps[t];
          xs[t].c ^= 1;
          w.xv ^= uint64_t{1} << t;
          for (size_t j = 0; j < m; ++j) ps[wires[j]] ^= tp;
        } else if ((zeros & (zeros - 1)) == 0) {
          ps[std::countr_zero(zeros)] ^= ps[wires[m]];
        }
        break;
      }
      // Controls are scanned in order and the scan stops at the second zero;
      // splitting the scan at the first zero keeps the common path lean.
      const uint64_t neg = pre.neg;
      size_t first_zero = m;
      size_t k = 0;
      for (; k < m; ++k) {
        const Expr& f = xs[wires[k]];
        bool v = f.c ^ (((neg >> k) & 1) != 0);
        if (f.m) {
          Expr adj{f.m, v};
          if (!settle(w, adj)) {
            pending = adj;
            return true;
          }
          v = adj.c;
        }
        if (!v) {
          first_zero = k++;
          break;
        }
      }
      if (first_zero == m) {
        const int t = wires[m];
        Expr tp = ps[t];
        xs[t].c ^= 1;
        w.xv ^= uint64_t{1} << t;
        for (size_t j = 0; j < m; ++j) ps[wires[j]] ^= tp;
        break;
      }
      for (; k < m; ++k) {
        const Expr& f = xs[wires[k]];
        bool v = f.c ^ (((neg >> k) & 1) != 0);
        if (f.m) {
          Expr adj{f.m, v};
          if (!settle(w, adj)) {
            pending = adj;
            return true;
          }
          v = adj.c;
        }
        if (!v) break;
      }
      if (k == m) ps[wires[first_zero]] ^= ps[wires[m]];
      break;
    }
  }
  return false;
}

bool sym_measure(World& w, const MeasurementSpec& m, int base, Expr& pending) {
  switch (m.kind) {
    case MeasureKind::Z: {
      Expr r = w.xs[m.i];
      if (!settle(w, r)) {
        pending = r;
        return true;
      }
      w.out.push_back(r.c);
      w.ps[m.i] = var(base);
      break;
    }
    case MeasureKind::X: {
      Expr r = w.ps[m.i];
      if (!settle(w, r)) {
        pending = r;
        return true;
      }
      w.out.push_back(r.c);
      w.xs[m.i] = var(base);
      w.xk &= ~(uint64_t{1} << m.i);
      break;
    }
    case MeasureKind::Y: {
      Expr sum = w.xs[m.i];
      sum ^= w.ps[m.i];
      if (!settle(w, sum)) {
        pending = sum;
        return true;
      }
      w.out.push_back(sum.c);
      w.xs[m.i] = var(base);
      w.ps[m.i] = var(base);
      w.ps[m.i].c = sum.c;
      w.xk &= ~(uint64_t{1} << m.i);
      break;
    }
    case MeasureKind::JointZZ: {
      Expr sum = w.xs[m.i];
      sum ^= w.xs[m.j];
      if (!settle(w, sum)) {
        pending = sum;
        return true;
      }
      w.out.push_back(sum.c);
      w.xs[m.i] = var(base);
      w.xs[m.j] = var(base);
      w.xs[m.j].c = sum.c;
      w.xk &= ~(uint64_t{1} << m.i);
      w.xk &= ~(uint64_t{1} << m.j);
      break;
    }
    case MeasureKind::JointXX: {
      Expr sum = w.ps[m.i];
      sum ^= w.ps[m.j];
      if (!settle(w, sum)) {
        pending = sum;
        return true;
      }
      w.out.push_back(sum.c);
      w.ps[m.i] = var(base);
      w.ps[m.j] = var(base);
      w.ps[m.j].c = sum.c;
      break;
    }
    case MeasureKind::JointZX: {
      Expr sum = w.xs[m.i];
      sum ^= w.ps[m.j];
      if (!settle(w, sum)) {
        pending = sum;
        return true;
      }
      w.out.push_back(sum.c);
      w.xs[m.i] = var(base);
      w.ps[m.j] = var(base);
      w.ps[m.j].c = sum.c;
      w.xk &= ~(uint64_t{1} << m.i);
      break;
    }
    case MeasureKind::Bell: {
      Expr sx = w.xs[m.i];
      sx ^= w.xs[m.j];
      if (!settle(w, sx)) {
        pending = sx;
        return true;
      }
      Expr sp = w.ps[m.i];
      sp ^= w.ps[m.j];
      if (!settle(w, sp)) {
        pending = sp;
        return true;
      }
      w.out.push_back(sx.c);
      w.out.push_back(sp.c);
      w.xs[m.i] = var(base);
      w.xs[m.j] = var(base);
      w.xs[m.j].c = sx.c;
      w.ps[m.i] = var(base + 1);
      w.ps[m.j] = var(base + 1);
      w.ps[m.j].c = sp.c;
      w.xk &= ~(uint64_t{1} << m.i);
      w.xk &= ~(uint64_t{1} << m.j);
      break;
    }
    case MeasureKind::AllZeroTest: {
      bool outcome = true;
      for (int wire = m.lo; wire < m.hi; ++wire) {
        Expr r = w.xs[wire];
        if (!settle(w, r)) {
          pending = r;
          return true;
        }
        if (r.c) {
          outcome = false;
          break;
        }
      }
      w.out.push_back(outcome);
      for (int wire = m.lo; wire < m.hi; ++wire)
        w.ps[wire] = var(base + (wire - m.lo));
      break;
    }
  }
  return false;
}

}  // namespace

Distribution exact_distribution(const Experiment& e, const ExactOptions& opt) {
  e.validate();
  const int budget = e.budget();
  const int cap = std::min(opt.budget_cap, 62);
  if (budget > cap)
    throw Error(Errc::ExactIntractable,
                "free-bit budget " + std::to_string(budget) +
                    " exceeds the exact-enumeration cap " + std::to_string(cap));

  const VarLayout layout = layout_vars(e);
  const size_t n_gates = e.circuit.gates.size();
  const FlatCircuit flat = flatten(e.circuit);
  const Op* ops = flat.ops.data();
  const uint8_t* pool = flat.pool.data();
  const NtPre* nts = flat.nts.data();
  const int32_t* conds = flat.conds.data();
  std::vector<size_t> fire_at(e.plan.size());
  for (size_t k = 0; k < e.plan.size(); ++k)
    fire_at[k] = std::min(e.plan[k].after_gate, n_gates);

  Distribution d;
  d.bits = e.outcome_bit_count();
  d.total = uint64_t{1} << budget;
  d.exact = true;

  std::vector<World> stack;
  stack.push_back(initial_world(e));
  while (!stack.empty()) {
    World w = std::move(stack.back());
    stack.pop_back();

    // Run gates in uninterrupted stretches up to the next plan boundary, so
    // the hot loop carries no per-gate plan check and indexes via locals.
    Expr pending;
    bool branch = false;
    {
      Expr* const xs = w.xs.data();
      Expr* const ps = w.ps.data();
      size_t gi = w.gate_idx;
      for (;;) {
        const size_t stop =
            w.plan_idx < e.plan.size() ? fire_at[w.plan_idx] : n_gates;
        while (gi < stop) {
          const Op& g = ops[gi];
          // Synthesized circuits are dominated by CNOTs; handle them inline
          // so the dispatch below stays predictable.
          if (op_tag(g) == kPlainCnot) {
            ps[g.w0] ^= ps[g.w1];
            Expr& x1 = xs[g.w1];
            x1 ^= xs[g.w0];
            const uint64_t bit = uint64_t{1} << g.w1;
            if (x1.m == 0) {
              w.xk |= bit;
              w.xv = (w.xv & ~bit) | (uint64_t{x1.c} << g.w1);
            } else {
              w.xk &= ~bit;
            }
            ++gi;
            continue;
          }
          if (g.has_cond) {
            const int32_t cond = conds[gi];
            if (static_cast<size_t>(cond) >= w.out.size())
              throw Error(Errc::WidthMismatch,
                          "condition refers to unrecorded outcome");
            if (!w.out[static_cast<size_t>(cond)]) {
              ++gi;
              continue;
            }
          }
          branch = sym_gate(w, xs, ps, g, pool, nts, pending);
          if (branch) break;
          ++gi;
        }
        if (branch || w.plan_idx == e.plan.size()) break;
        w.gate_idx = gi;
        branch = sym_measure(w, e.plan[w.plan_idx].m,
                             layout.plan_base[w.plan_idx], pending);
        if (branch) break;
        ++w.plan_idx;
      }
      w.gate_idx = gi;
    }

    if (branch) {
      World w0 = w;
      w0.constrain(pending, false);
      w.constrain(pending, true);
      stack.push_back(std::move(w0));
      stack.push_back(std::move(w));
      continue;
    }
    d.weight[Distribution::key(w.out)] += uint64_t{1} << (budget - w.rank());
  }
  return d;
}

}  // namespace qsl
