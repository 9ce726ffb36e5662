#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qsl/refsim.hpp"
#include "test_util.hpp"

using namespace qsl;
using cd = std::complex<double>;

TEST_CASE("phase conventions") {
  Circuit c(1);
  c.append(Gate::x(0)).append(Gate::s(0));
  auto a = refsim::statevector_run(c, 0);
  CHECK(std::abs(a[1] - cd(0, 1)) < 1e-12);

  Circuit y(1);
  y.append(Gate::y(0));
  a = refsim::statevector_run(y, 0);
  CHECK(std::abs(a[1] - cd(0, 1)) < 1e-12);
  a = refsim::statevector_run(y, 1);
  CHECK(std::abs(a[0] - cd(0, -1)) < 1e-12);

  Circuit sz(1);
  sz.append(Gate::s(0)).append(Gate::s(0));
  a = refsim::statevector_run(sz, 1);
  CHECK(std::abs(a[1] - cd(-1, 0)) < 1e-12);
}

TEST_CASE("pair state amplitudes") {
  Circuit c(2);
  c.append(Gate::h(1)).append(Gate::cnot(1, 0));
  auto a = refsim::statevector_run(c, 0);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(a[0] - cd(s, 0)) < 1e-12);
  CHECK(std::abs(a[3] - cd(s, 0)) < 1e-12);
  CHECK(std::abs(a[1]) < 1e-12);
  CHECK(std::abs(a[2]) < 1e-12);
}

TEST_CASE("norm is preserved on random circuits") {
  RandomSource rng(5, 0);
  for (int rep = 0; rep < 25; ++rep) {
    Circuit c = testutil::random_circuit(rng, 5, 40);
    auto a = refsim::statevector_run(c, rng.below(32));
    CHECK(std::abs(refsim::norm(a) - 1.0) < 1e-10);
  }
}

TEST_CASE("computational-basis agreement with the bit-level simulator") {
  // Circuits over the permutation subset map basis states to basis states and
  // must agree with the computational action of the bit-level gate maps.
  RandomSource rng(6, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int width = 4;
    Circuit c(width);
    for (int i = 0; i < 20; ++i) {
      switch (rng.below(5)) {
        case 0: c.append(Gate::x(rng.below(width))); break;
        case 1: c.append(Gate::cnot(0, 1 + rng.below(width - 1))); break;
        case 2: c.append(Gate::toffoli(0, 1, 2 + rng.below(width - 2))); break;
        case 3: c.append(Gate::fredkin(3, 0, 1)); break;
        default:
          c.append(Gate::n_toffoli({0, 1, 2}, static_cast<uint32_t>(rng.below(8)), 3));
          break;
      }
    }
    for (uint64_t x = 0; x < 16; ++x) {
      Register st;
      for (int w = 0; w < width; ++w) st.sys.push_back({((x >> w) & 1) != 0, false});
      apply_in_place(c, st);
      auto a = refsim::statevector_run(c, x);
      CHECK(std::abs(a[st.comp()] - cd(1, 0)) < 1e-10);
    }
  }
}

TEST_CASE("ideal distributions for simple experiments") {
  {
    Experiment e;
    e.circuit = Circuit(1);
    e.circuit.append(Gate::h(0));
    e.prep = {{Basis::Z, false}};
    e.plan.push_back({MeasurementSpec::z(0), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["0"] == doctest::Approx(0.5));
    CHECK(d["1"] == doctest::Approx(0.5));
  }
  {
    // X measurement of an X-basis preparation is deterministic.
    Experiment e;
    e.circuit = Circuit(1);
    e.prep = {{Basis::X, true}};
    e.plan.push_back({MeasurementSpec::x(0), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["1"] == doctest::Approx(1.0));
  }
  {
    // Y measurement of a Y-basis preparation is deterministic.
    Experiment e;
    e.circuit = Circuit(1);
    e.prep = {{Basis::Y, false}};
    e.plan.push_back({MeasurementSpec::y(0), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["0"] == doctest::Approx(1.0));
  }
  {
    // Entangled pair: perfect computational parity.
    Experiment e;
    e.circuit = Circuit(2);
    e.circuit.append(Gate::h(1)).append(Gate::cnot(1, 0));
    e.prep = {{Basis::Z, false}, {Basis::Z, false}};
    e.plan.push_back({MeasurementSpec::joint_zz(0, 1), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["0"] == doctest::Approx(1.0));
  }
  {
    // Mixed preparation measures uniformly.
    Experiment e;
    e.circuit = Circuit(1);
    e.prep = {{Basis::Mixed, false}};
    e.plan.push_back({MeasurementSpec::z(0), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["0"] == doctest::Approx(0.5));
    CHECK(d["1"] == doctest::Approx(0.5));
  }
  {
    // AllZeroTest on |+>|0>.
    Experiment e;
    e.circuit = Circuit(2);
    e.prep = {{Basis::X, false}, {Basis::Z, false}};
    e.plan.push_back({MeasurementSpec::all_zero_test(0, 2), SIZE_MAX});
    auto d = refsim::ideal_distribution(e);
    CHECK(d["1"] == doctest::Approx(0.5));
    CHECK(d["0"] == doctest::Approx(0.5));
  }
}

TEST_CASE("classically controlled gates see their condition bits") {
  // Measure a superposed wire, then correct a copy of it; parity is pinned.
  Experiment e;
  e.circuit = Circuit(2);
  e.circuit.append(Gate::h(0));
  e.plan.push_back({MeasurementSpec::z(0), 1});
  e.circuit.append(Gate::x(1).conditioned_on(0));
  e.prep = {{Basis::Z, false}, {Basis::Z, false}};
  e.plan.push_back({MeasurementSpec::joint_zz(0, 1), SIZE_MAX});
  auto d = refsim::ideal_distribution(e);
  double pinned = 0.0;
  for (const auto& [k, v] : d)
    if (k.front() == '0') pinned += v;
  CHECK(pinned == doctest::Approx(1.0));
}

TEST_CASE("width limit") {
  Circuit c(15);
  CHECK_THROWS_AS(refsim::statevector_run(c, 0), Error);
}
