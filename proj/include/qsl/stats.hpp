// Distribution comparison and information measures used by the drivers and
// the acceptance checks.
#pragma once

#include <map>
#include <string>

#include "qsl/engine.hpp"

namespace qsl::stats {

using Probs = std::map<std::string, double>;

// 1 - (1/2) * L1 distance; equals the squared fidelity of the underlying
// preparations when the distributions are over phase-space points.
double statistical_overlap(const Probs& p, const Probs& q);
double statistical_overlap(const Distribution& p, const Distribution& q);

// sqrt of the statistical overlap.
double fidelity(const Probs& p, const Probs& q);
double fidelity(const Distribution& p, const Distribution& q);

// Squared statistical overlap of amplitudes: (sum_i sqrt(p_i q_i))^2.
double sso(const Probs& p, const Probs& q);
double sso(const Distribution& p, const Distribution& q);
double sso(const Distribution& p, const Probs& q);

// Shannon entropy in bits.
double entropy(const Probs& p);
double entropy(const Distribution& p);

}  // namespace qsl::stats
