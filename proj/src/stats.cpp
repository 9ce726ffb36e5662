#include "qsl/stats.hpp"

#include <cmath>
#include <set>

namespace qsl::stats {
namespace {

double get(const Probs& p, const std::string& k) {
  auto it = p.find(k);
  return it == p.end() ? 0.0 : it->second;
}

std::set<std::string> key_union(const Probs& p, const Probs& q) {
  std::set<std::string> keys;
  for (const auto& [k, v] : p) keys.insert(k);
  for (const auto& [k, v] : q) keys.insert(k);
  return keys;
}

}  // namespace

double statistical_overlap(const Probs& p, const Probs& q) {
  double l1 = 0.0;
  for (const auto& k : key_union(p, q)) l1 += std::abs(get(p, k) - get(q, k));
  return 1.0 - 0.5 * l1;
}

double fidelity(const Probs& p, const Probs& q) {
  return std::sqrt(statistical_overlap(p, q));
}

double sso(const Probs& p, const Probs& q) {
  double s = 0.0;
  for (const auto& k : key_union(p, q)) s += std::sqrt(get(p, k) * get(q, k));
  return s * s;
}

double entropy(const Probs& p) {
  double h = 0.0;
  for (const auto& [k, v] : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double statistical_overlap(const Distribution& p, const Distribution& q) {
  return statistical_overlap(p.probs(), q.probs());
}

double fidelity(const Distribution& p, const Distribution& q) {
  return fidelity(p.probs(), q.probs());
}

double sso(const Distribution& p, const Distribution& q) {
  return sso(p.probs(), q.probs());
}

double sso(const Distribution& p, const Probs& q) { return sso(p.probs(), q); }

double entropy(const Distribution& p) { return entropy(p.probs()); }

}  // namespace qsl::stats
