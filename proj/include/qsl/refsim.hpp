// Dense complex statevector reference simulator for the same circuit IR,
// used to cross-check oracle truth tables and to produce ideal output
// distributions for comparison metrics. Width is capped at 14 wires.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qsl/engine.hpp"

namespace qsl::refsim {

using Amplitudes = std::vector<std::complex<double>>;

constexpr int kMaxWidth = 14;

// Runs the circuit unitarily from a computational basis state. Gate phase
// conventions: S = diag(1, i), Y = [[0, -i], [i, 0]].
Amplitudes statevector_run(const Circuit& c, uint64_t basis_in,
                           const BitString& outcomes = {});

double norm(const Amplitudes& a);

// Ideal (Born-rule) outcome distribution of an experiment, branching over
// measurement results so that classically controlled gates see their
// condition bits. Mixed preparations branch uniformly over the basis states.
// Keys follow the same convention as Distribution.
std::map<std::string, double> ideal_distribution(const Experiment& e);

}  // namespace qsl::refsim
