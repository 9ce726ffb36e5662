// Internal: the bit supply shared by the sampling and replay paths, plus the
// preparation and measurement semantics parameterized over it. Engine and
// protocol code include this; it is not part of the public headers.
#pragma once

#include "qsl/engine.hpp"

namespace qsl::detail {

// Bits either drawn from a random source or replayed from a fixed schedule;
// both paths consume exactly the same number of bits at the same points.
struct BitFeed {
  RandomSource* rng = nullptr;
  const BitString* forced = nullptr;
  size_t idx = 0;

  bool next() {
    if (rng) return rng->bit();
    return (*forced)[idx++];
  }
};

inline ElementarySystem prepare_with(const Preparation& p, BitFeed& feed) {
  ElementarySystem e;
  switch (p.basis) {
    case Basis::Z:
      e.x = p.value;
      e.p = feed.next();
      break;
    case Basis::X:
      e.p = p.value;
      e.x = feed.next();
      break;
    case Basis::Y: {
      bool r = feed.next();
      e.x = r;
      e.p = r ^ p.value;
      break;
    }
    case Basis::Mixed:
      e.x = feed.next();
      e.p = feed.next();
      break;
  }
  return e;
}

inline BitString measure_with(const MeasurementSpec& m, Register& st, BitFeed& feed) {
  auto& sys = st.sys;
  switch (m.kind) {
    case MeasureKind::Z: {
      bool o = sys[m.i].x;
      sys[m.i].p = feed.next();
      return {o};
    }
    case MeasureKind::X: {
      bool o = sys[m.i].p;
      sys[m.i].x = feed.next();
      return {o};
    }
    case MeasureKind::Y: {
      bool o = sys[m.i].x ^ sys[m.i].p;
      bool r = feed.next();
      sys[m.i].x = r;
      sys[m.i].p = r ^ o;
      return {o};
    }
    case MeasureKind::JointZZ: {
      bool o = sys[m.i].x ^ sys[m.j].x;
      bool r = feed.next();
      sys[m.i].x = r;
      sys[m.j].x = r ^ o;
      return {o};
    }
    case MeasureKind::JointXX: {
      bool o = sys[m.i].p ^ sys[m.j].p;
      bool r = feed.next();
      sys[m.i].p = r;
      sys[m.j].p = r ^ o;
      return {o};
    }
    case MeasureKind::JointZX: {
      bool o = sys[m.i].x ^ sys[m.j].p;
      bool r = feed.next();
      sys[m.i].x = r;
      sys[m.j].p = r ^ o;
      return {o};
    }
    case MeasureKind::Bell: {
      bool ox = sys[m.i].x ^ sys[m.j].x;
      bool op = sys[m.i].p ^ sys[m.j].p;
      bool r1 = feed.next();
      sys[m.i].x = r1;
      sys[m.j].x = r1 ^ ox;
      bool r2 = feed.next();
      sys[m.i].p = r2;
      sys[m.j].p = r2 ^ op;
      return {ox, op};
    }
    case MeasureKind::AllZeroTest: {
      bool o = true;
      for (int w = m.lo; w < m.hi; ++w)
        if (sys[w].x) {
          o = false;
          break;
        }
      for (int w = m.lo; w < m.hi; ++w) sys[w].p = feed.next();
      return {o};
    }
  }
  throw Error(Errc::WidthMismatch, "unhandled measurement kind");
}

}  // namespace qsl::detail
