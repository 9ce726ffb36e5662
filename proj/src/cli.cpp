// Front-end wiring: flag parsing via CLI11, reports as insertion-ordered
// JSON. All randomness is rooted at a single seed (flag, then QSL_SEED, then
// 0), so repeating an invocation with the same configuration emits
// byte-identical output.
#include "qsl/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/algorithms.hpp"
#include "qsl/engine.hpp"
#include "qsl/oracles.hpp"
#include "qsl/protocols.hpp"
#include "qsl/refsim.hpp"
#include "qsl/stats.hpp"

namespace qsl::cli {
namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- formatting

// Rounds through a 12-significant-digit decimal so reports never carry more
// precision than documented.
double sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string sig12_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string reduced_fraction(uint64_t num, uint64_t den) {
  const uint64_t g = std::max<uint64_t>(std::gcd(num, den), 1);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

std::string bits_msb(int n, uint64_t v) {
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((v >> i) & 1) s[static_cast<size_t>(n - 1 - i)] = '1';
  return s;
}

uint64_t parse_bits(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 20)
    throw std::invalid_argument(std::string(what) + " must be a binary string of 1..20 digits");
  uint64_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument(std::string(what) + " must contain only 0/1 digits");
    v = (v << 1) | static_cast<uint64_t>(c - '0');
  }
  return v;
}

json distribution_json(const Distribution& d) {
  json j = json::object();
  for (const auto& [key, w] : d.weight)
    j[key] = sig12(static_cast<double>(w) / static_cast<double>(d.total));
  return j;
}

json fractions_json(const Distribution& d) {
  json j = json::object();
  for (const auto& [key, w] : d.weight) j[key] = reduced_fraction(w, d.total);
  return j;
}

void emit(const json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

void emit_distribution_csv(const Distribution& d, std::ostream& out) {
  out << (d.exact ? "outcome,probability,num/den\n" : "outcome,probability\n");
  for (const auto& [key, w] : d.weight) {
    out << key << ',' << sig12_text(static_cast<double>(w) / static_cast<double>(d.total));
    if (d.exact) out << ',' << reduced_fraction(w, d.total);
    out << '\n';
  }
}

// ------------------------------------------------------------------ plumbing

uint64_t resolve_seed(bool seed_given, uint64_t flag_value) {
  if (seed_given) return flag_value;
  if (const char* env = std::getenv("QSL_SEED")) {
    const std::string s(env);
    uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw std::invalid_argument("QSL_SEED must be an unsigned integer, got \"" + s + "\"");
    return v;
  }
  return 0;
}

// Permutation parameter: a named generator ("identity", "random") or an
// explicit comma-separated value list. The random generator draws from the
// run seed on its own stream, keeping reports reproducible.
std::vector<uint64_t> make_perm(const std::string& text, int n, uint64_t seed, json& param_out) {
  const uint64_t size = uint64_t{1} << n;
  std::vector<uint64_t> v(size);
  std::iota(v.begin(), v.end(), uint64_t{0});
  if (text == "identity") {
    param_out = "identity";
    return v;
  }
  if (text == "random") {
    param_out = "random";
    RandomSource rng(seed, 1);
    for (uint64_t i = size - 1; i > 0; --i)
      std::swap(v[i], v[rng.below(i + 1)]);
    return v;
  }
  v.clear();
  std::string token;
  for (size_t pos = 0; pos <= text.size(); ++pos) {
    if (pos == text.size() || text[pos] == ',') {
      uint64_t value = 0;
      const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc{} || p != token.data() + token.size())
        throw std::invalid_argument("--perm entries must be unsigned integers");
      v.push_back(value);
      token.clear();
    } else {
      token += text[pos];
    }
  }
  if (v.size() != size)
    throw std::invalid_argument("--perm needs exactly 2^n = " + std::to_string(size) + " entries");
  std::vector<bool> seen(size, false);
  for (uint64_t x : v) {
    if (x >= size || seen[x])
      throw std::invalid_argument("--perm must be a permutation of 0..2^n-1");
    seen[x] = true;
  }
  param_out = json(v);
  return v;
}

// ------------------------------------------------------------ run subcommand

struct RunOptions {
  std::string algorithm;
  int n = -1;
  std::string s;
  std::string xstar;
  std::string function;
  std::string variant;
  std::string perm = "identity";
  int b0 = 1;
  int b1 = 0;
  int b = 1;
  uint64_t a = 0;
  bool a_given = false;
  std::string mode = "exact";
  uint64_t trials = 4096;
  bool trials_given = false;
  uint64_t seed_flag = 0;
  bool seed_given = false;
  std::string format = "json";
};

struct BuiltRun {
  OracleSpec oracle;
  Experiment experiment;
  json params;
  int n = 0;
};

int require_n(const RunOptions& o, int lo, int hi, const char* why) {
  if (o.n < lo || o.n > hi)
    throw std::invalid_argument(std::string("--n must be in [") + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] " + why);
  return o.n;
}

int width_from_string(const RunOptions& o, const std::string& str, const char* flag, int lo,
                      int hi) {
  const int n = static_cast<int>(str.size());
  if (n < lo || n > hi)
    throw std::invalid_argument(std::string(flag) + " must have between " + std::to_string(lo) +
                                " and " + std::to_string(hi) + " digits");
  if (o.n >= 0 && o.n != n)
    throw std::invalid_argument(std::string("--n disagrees with the length of ") + flag);
  return n;
}

BuiltRun build_dj(const RunOptions& o, uint64_t seed) {
  BuiltRun b;
  const int forms = (!o.function.empty() ? 1 : 0) + (!o.variant.empty() ? 1 : 0) +
                    (o.a_given ? 1 : 0);
  if (forms > 1)
    throw std::invalid_argument("dj takes at most one of --function, --variant, --a");
  if (!o.function.empty()) {
    for (const CatalogEntry& e : dj3_catalog())
      if (e.label == o.function) {
        b.oracle = e.spec;
        break;
      }
    if (b.oracle.circuit.width == 0)
      throw std::invalid_argument("--function is not one of the 72 constant-or-balanced strings");
    b.n = 3;
    b.params["function"] = o.function;
  } else if (!o.variant.empty()) {
    static const std::map<std::string, MajorityVariant> kinds = {
        {"A", MajorityVariant::A},
        {"B", MajorityVariant::B},
        {"C", MajorityVariant::C},
        {"D", MajorityVariant::D}};
    const auto it = kinds.find(o.variant);
    if (it == kinds.end()) throw std::invalid_argument("dj --variant must be A, B, C or D");
    b.oracle = majority_oracle(it->second);
    b.n = 3;
    b.params["variant"] = o.variant;
  } else if (o.a_given) {
    b.n = require_n(o, 1, 6, "for the threshold form");
    if (o.a > (uint64_t{1} << b.n))
      throw std::invalid_argument("--a must be at most 2^n");
    json perm_param;
    b.oracle = dj_decision_oracle(b.n, o.a, make_perm(o.perm, b.n, seed, perm_param));
    b.params["n"] = b.n;
    b.params["a"] = o.a;
    b.params["perm"] = perm_param;
  } else {
    b.n = require_n(o, 1, 11, "for the promise form");
    json perm_param;
    b.oracle = dj_promise_oracle(b.n, o.b0 != 0, o.b1 != 0,
                                 make_perm(o.perm, b.n, seed, perm_param));
    b.params["n"] = b.n;
    b.params["b0"] = o.b0;
    b.params["b1"] = o.b1;
    b.params["perm"] = perm_param;
  }
  b.experiment = dj_experiment(b.oracle);
  return b;
}

BuiltRun build_bv(const RunOptions& o) {
  BuiltRun b;
  if (o.s.empty()) throw std::invalid_argument("bv needs --s");
  b.n = width_from_string(o, o.s, "--s", 1, 11);
  b.oracle = bv_oracle(b.n, parse_bits(o.s, "--s"));
  b.experiment = bv_experiment(b.oracle);
  b.params["n"] = b.n;
  b.params["s"] = o.s;
  return b;
}

BuiltRun build_grover(const RunOptions& o) {
  BuiltRun b;
  if (o.xstar.empty()) throw std::invalid_argument("grover needs --xstar");
  b.n = width_from_string(o, o.xstar, "--xstar", 2, 11);
  b.oracle = grover_oracle(b.n, parse_bits(o.xstar, "--xstar"));
  b.experiment = grover_experiment(b.oracle);
  b.params["n"] = b.n;
  b.params["xstar"] = o.xstar;
  return b;
}

BuiltRun build_simon(const RunOptions& o, uint64_t seed, SimonVariant* variant_out) {
  BuiltRun b;
  if (o.s.empty()) throw std::invalid_argument("simon needs --s");
  std::string variant = o.variant.empty() ? "zero" : o.variant;
  static const std::map<std::string, SimonVariant> kinds = {
      {"zero", SimonVariant::ZeroTarget},
      {"xor", SimonVariant::XorTarget},
      {"deterministic", SimonVariant::Deterministic}};
  const auto it = kinds.find(variant);
  if (it == kinds.end())
    throw std::invalid_argument("simon --variant must be zero, xor or deterministic");
  *variant_out = it->second;
  const int max_n = it->second == SimonVariant::XorTarget ? 5 : 7;
  b.n = width_from_string(o, o.s, "--s", 1, max_n);
  const uint64_t s = parse_bits(o.s, "--s");
  if (s == 0) throw std::invalid_argument("--s must be nonzero");
  json perm_param;
  b.oracle = simon_oracle(b.n, s, o.b != 0, make_perm(o.perm, b.n, seed, perm_param),
                          it->second);
  b.experiment = it->second == SimonVariant::Deterministic
                     ? simon_deterministic_experiment(b.oracle, 0)
                     : simon_subroutine_experiment(b.oracle);
  b.params["n"] = b.n;
  b.params["s"] = o.s;
  b.params["b"] = o.b;
  b.params["variant"] = variant;
  b.params["perm"] = perm_param;
  return b;
}

const std::vector<uint64_t> kShorBases = {2, 4, 7, 8, 11, 13};

BuiltRun build_shor15(const RunOptions& o) {
  BuiltRun b;
  if (!o.a_given) throw std::invalid_argument("shor15 needs --a");
  if (std::find(kShorBases.begin(), kShorBases.end(), o.a) == kShorBases.end())
    throw std::invalid_argument("--a must be one of 2, 4, 7, 8, 11, 13");
  b.n = 3;
  b.experiment = shor15_subroutine_experiment(static_cast<int>(o.a));
  b.params["a"] = o.a;
  return b;
}

std::string simon_verdict_text(const SimonResult& r, int n) {
  switch (r.verdict) {
    case SimonVerdict::OneToOne:
      return "one-to-one";
    case SimonVerdict::TwoToOne:
      return "two-to-one:" + bits_msb(n, r.s);
    default:
      return "exhausted";
  }
}

int do_run(const RunOptions& o, std::ostream& out) {
  const uint64_t seed = resolve_seed(o.seed_given, o.seed_flag);
  if (o.mode == "exact" && o.trials_given)
    throw std::invalid_argument("--trials applies only to --mode sample");

  SimonVariant simon_variant = SimonVariant::ZeroTarget;
  BuiltRun b;
  if (o.algorithm == "dj") {
    b = build_dj(o, seed);
  } else if (o.algorithm == "bv") {
    b = build_bv(o);
  } else if (o.algorithm == "grover") {
    b = build_grover(o);
  } else if (o.algorithm == "simon") {
    b = build_simon(o, seed, &simon_variant);
  } else {
    b = build_shor15(o);
  }

  const Distribution dist = o.mode == "exact" ? exact_distribution(b.experiment)
                                              : sample(b.experiment, o.trials, seed);

  RandomSource rng(seed, 0);
  std::string verdict;
  int queries = 1;
  json metrics = json::object();
  if (o.algorithm == "dj") {
    verdict = deutsch_jozsa(b.oracle, rng) == DJVerdict::NotBalanced ? "not-balanced"
                                                                     : "not-constant";
  } else if (o.algorithm == "bv") {
    verdict = bits_msb(b.n, bernstein_vazirani(b.oracle, rng));
  } else if (o.algorithm == "grover") {
    const GroverResult r = grover_search(b.oracle, rng);
    verdict = r.found ? bits_msb(b.n, r.candidate) : "exhausted";
    queries = r.queries;
  } else if (o.algorithm == "simon") {
    const SimonResult r = simon_variant == SimonVariant::Deterministic
                              ? simon_deterministic(b.oracle)
                              : simon_solve(b.oracle, rng, 8 * b.n);
    verdict = simon_verdict_text(r, b.n);
    queries = r.queries;
  }
  if (o.mode == "exact" && (o.algorithm == "grover" || o.algorithm == "shor15"))
    metrics["sso"] = sig12(stats::sso(dist, refsim::ideal_distribution(b.experiment)));
  metrics["entropy"] = sig12(stats::entropy(dist));

  if (o.format == "csv") {
    emit_distribution_csv(dist, out);
    return 0;
  }
  json rep;
  rep["algorithm"] = o.algorithm;
  rep["params"] = b.params;
  rep["mode"] = o.mode;
  rep["seed"] = seed;
  rep["queries"] = queries;
  rep["distribution"] = distribution_json(dist);
  if (dist.exact) rep["num/den"] = fractions_json(dist);
  if (!verdict.empty()) rep["verdict"] = verdict;
  rep["metrics"] = metrics;
  emit(rep, out);
  return 0;
}

// ----------------------------------------------------------- demo subcommand

json demo_teleport() {
  struct Case {
    const char* name;
    Preparation prep;
  };
  const Case cases[] = {
      {"z0", {Basis::Z, false}}, {"z1", {Basis::Z, true}},
      {"x0", {Basis::X, false}}, {"x1", {Basis::X, true}},
      {"y0", {Basis::Y, false}}, {"y1", {Basis::Y, true}},
      {"mixed", {Basis::Mixed, false}},
  };
  json inputs = json::array();
  bool all_ok = true;
  for (const Case& c : cases) {
    const Experiment e = teleport_experiment(c.prep);
    const Experiment ref{Circuit(3), e.prep, {}};
    const int budget = e.budget();
    const int ref_budget = ref.budget();
    bool identity = true;
    std::map<std::string, uint64_t> outcomes;
    for (uint64_t m = 0; m < (uint64_t{1} << budget); ++m) {
      BitString bits(static_cast<size_t>(budget));
      for (int i = 0; i < budget; ++i) bits[static_cast<size_t>(i)] = (m >> i) & 1;
      const RunResult r = run_with_bits(e, bits);
      const BitString prefix(bits.begin(), bits.begin() + ref_budget);
      const RunResult sent = run_with_bits(ref, prefix);
      identity = identity && r.state.at(2).point() == sent.state.at(0).point();
      ++outcomes[Distribution::key(r.bits)];
    }
    bool uniform = outcomes.size() == 4;
    for (const auto& [key, count] : outcomes)
      uniform = uniform && count == (uint64_t{1} << budget) / 4;
    json entry;
    entry["input"] = c.name;
    entry["branches"] = uint64_t{1} << budget;
    entry["identity"] = identity;
    entry["sender_outcomes_uniform"] = uniform;
    inputs.push_back(entry);
    all_ok = all_ok && identity && uniform;
  }
  json j;
  j["protocol"] = "teleport";
  j["inputs"] = inputs;
  j["identity_channel"] = all_ok;
  return j;
}

json demo_superdense() {
  json messages = json::array();
  bool ok = true;
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m0 = 0; m0 < 2; ++m0) {
      const Distribution d = exact_distribution(superdense_experiment(m1 != 0, m0 != 0));
      std::string readout = "??";
      for (const auto& [key, w] : d.weight)
        if (w == d.total) readout = key;
      BitString outcome(readout.size());
      for (size_t i = 0; i < readout.size(); ++i)
        outcome[i] = readout[readout.size() - 1 - i] == '1';
      const auto [d1, d0] = superdense_decode(outcome);
      const std::string message = {static_cast<char>('0' + m1), static_cast<char>('0' + m0)};
      const std::string decoded = {static_cast<char>('0' + (d1 ? 1 : 0)),
                                   static_cast<char>('0' + (d0 ? 1 : 0))};
      json entry;
      entry["message"] = message;
      entry["readout"] = readout;
      entry["decoded"] = decoded;
      messages.push_back(entry);
      ok = ok && decoded == message;
    }
  }
  json j;
  j["protocol"] = "superdense";
  j["messages"] = messages;
  j["all_decoded"] = ok;
  return j;
}

json demo_bb84(uint64_t seed) {
  json j;
  j["protocol"] = "bb84";
  j["seed"] = seed;
  json exact;
  for (const bool eve : {false, true}) {
    const int nbits = bb84_round_bits(eve);
    uint64_t sifted = 0;
    uint64_t errors = 0;
    for (uint64_t m = 0; m < (uint64_t{1} << nbits); ++m) {
      BitString bits(static_cast<size_t>(nbits));
      for (int i = 0; i < nbits; ++i) bits[static_cast<size_t>(i)] = (m >> i) & 1;
      const BB84Round r = bb84_round_replay(eve, bits);
      sifted += r.sifted() ? 1 : 0;
      errors += r.error() ? 1 : 0;
    }
    json side;
    side["rounds"] = uint64_t{1} << nbits;
    side["sifted"] = sifted;
    side["errors"] = errors;
    side["qber"] = sig12(static_cast<double>(errors) / static_cast<double>(sifted));
    exact[eve ? "tapped" : "clean"] = side;
  }
  j["exact"] = exact;
  json sampled;
  for (const bool eve : {false, true}) {
    const BB84Stats st = bb84_run(100000, eve, seed);
    json side;
    side["rounds"] = st.rounds;
    side["sifted"] = st.sifted;
    side["errors"] = st.errors;
    side["qber"] = sig12(st.error_rate());
    sampled[eve ? "tapped" : "clean"] = side;
  }
  j["sampled"] = sampled;
  return j;
}

json demo_ghz() {
  json j;
  j["protocol"] = "ghz";
  for (const GHZForm form : {GHZForm::Toffoli, GHZForm::Cnots}) {
    Experiment zzz;
    zzz.circuit = ghz_circuit(form);
    zzz.prep = {{Basis::Z, false}, {Basis::Z, false}, {Basis::Z, false}};
    zzz.plan = {{MeasurementSpec::z(0), SIZE_MAX},
                {MeasurementSpec::z(1), SIZE_MAX},
                {MeasurementSpec::z(2), SIZE_MAX}};
    json side;
    side["zzz"] = distribution_json(exact_distribution(zzz));
    side["conditional_entropy_bits"] = sig12(ghz_conditional_entropy(form));
    j[form == GHZForm::Toffoli ? "toffoli" : "cnot"] = side;
  }
  return j;
}

json demo_singlet() {
  const PauliCorrelations c = singlet_pauli_correlations();
  json j;
  j["protocol"] = "singlet";
  j["zz"] = c.zz;
  j["xx"] = c.xx;
  j["yy"] = c.yy;
  return j;
}

// ---------------------------------------------------------- file subcommands

stats::Probs load_probs(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  json j = json::parse(f);
  const json* obj = &j;
  if (j.is_object() && j.contains("distribution") && j["distribution"].is_object())
    obj = &j["distribution"];
  if (!obj->is_object() || obj->empty())
    throw std::invalid_argument(path + ": expected an object of outcome probabilities");
  stats::Probs p;
  for (const auto& [key, value] : obj->items()) {
    if (!value.is_number())
      throw std::invalid_argument(path + ": probabilities must be numbers");
    p[key] = value.get<double>();
  }
  return p;
}

// ------------------------------------------------------------------- driver

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit-pair simulator: query algorithms, protocols, exact distributions"};
  app.name("qsl");
  app.require_subcommand(1);

  RunOptions o;
  CLI::App* run = app.add_subcommand("run", "Run an algorithm and report its distribution");
  run->add_option("--algorithm", o.algorithm, "dj | bv | grover | simon | shor15")
      ->required()
      ->check(CLI::IsMember({"dj", "bv", "grover", "simon", "shor15"}));
  run->add_option("--n", o.n, "query register width");
  run->add_option("--s", o.s, "secret bit string, most significant bit first (bv, simon)");
  run->add_option("--xstar", o.xstar, "marked item bit string (grover)");
  run->add_option("--function", o.function, "3-bit catalog function string (dj)");
  run->add_option("--variant", o.variant,
                  "dj: majority A|B|C|D; simon: zero|xor|deterministic");
  CLI::Option* a_opt =
      run->add_option("--a", o.a, "dj: threshold count; shor15: base in {2,4,7,8,11,13}");
  run->add_option("--b0", o.b0, "promise flag: 0 constant, 1 balanced (dj)")
      ->check(CLI::Range(0, 1));
  run->add_option("--b1", o.b1, "promise flip flag (dj)")->check(CLI::Range(0, 1));
  run->add_option("--b", o.b, "simon: 1 two-to-one, 0 one-to-one")->check(CLI::Range(0, 1));
  run->add_option("--perm", o.perm, "identity | random | explicit comma-separated values");
  run->add_option("--mode", o.mode, "exact | sample")
      ->check(CLI::IsMember({"exact", "sample"}));
  CLI::Option* trials_opt =
      run->add_option("--trials", o.trials, "sample count (sample mode only)")
          ->check(CLI::PositiveNumber);
  CLI::Option* run_seed = run->add_option("--seed", o.seed_flag, "random seed");
  run->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  std::string protocol;
  uint64_t demo_seed_flag = 0;
  CLI::App* demo = app.add_subcommand("demo", "Run a protocol demonstration");
  demo->add_option("protocol", protocol, "bb84 | teleport | superdense | ghz | singlet")
      ->required()
      ->check(CLI::IsMember({"bb84", "teleport", "superdense", "ghz", "singlet"}));
  CLI::Option* demo_seed = demo->add_option("--seed", demo_seed_flag, "random seed");

  std::string catalog_set;
  std::string catalog_format = "json";
  CLI::App* catalog = app.add_subcommand("catalog", "List an oracle catalog");
  catalog->add_option("set", catalog_set, "dj3")->required()->check(CLI::IsMember({"dj3"}));
  catalog->add_option("--format", catalog_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string observed_path;
  std::string ideal_path;
  CLI::App* sso_cmd =
      app.add_subcommand("sso", "Squared statistical overlap of two distribution files");
  sso_cmd->add_option("--observed", observed_path, "distribution JSON file")->required();
  sso_cmd->add_option("--ideal", ideal_path, "distribution JSON file")->required();

  std::string entropy_path;
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "Shannon entropy (bits) of a distribution file");
  entropy_cmd->add_option("--in", entropy_path, "distribution JSON file")->required();

  uint64_t shor_a = 0;
  int shor_samples = 16;
  uint64_t shor_seed_flag = 0;
  CLI::App* shor = app.add_subcommand("shor15", "Factor 15 end to end");
  shor->add_option("--a", shor_a, "base, one of 2, 4, 7, 8, 11, 13")
      ->required()
      ->check(CLI::IsMember({2, 4, 7, 8, 11, 13}));
  shor->add_option("--samples", shor_samples, "subroutine sample budget")
      ->check(CLI::Range(1, 64));
  CLI::Option* shor_seed = shor->add_option("--seed", shor_seed_flag, "random seed");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qsl");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    out << leaf->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (run->parsed()) {
      o.a_given = a_opt->count() > 0;
      o.trials_given = trials_opt->count() > 0;
      o.seed_given = run_seed->count() > 0;
      return do_run(o, out);
    }
    if (demo->parsed()) {
      const uint64_t seed = resolve_seed(demo_seed->count() > 0, demo_seed_flag);
      if (protocol == "teleport") emit(demo_teleport(), out);
      if (protocol == "superdense") emit(demo_superdense(), out);
      if (protocol == "bb84") emit(demo_bb84(seed), out);
      if (protocol == "ghz") emit(demo_ghz(), out);
      if (protocol == "singlet") emit(demo_singlet(), out);
      return 0;
    }
    if (catalog->parsed()) {
      const std::vector<CatalogEntry> entries = dj3_catalog();
      if (catalog_format == "csv") {
        out << "function,toffolis,cnots,balanced\n";
        for (const CatalogEntry& e : entries)
          out << e.label << ',' << e.toffolis << ',' << e.cnots << ','
              << (e.balanced ? "true" : "false") << '\n';
        return 0;
      }
      json j;
      j["catalog"] = "dj3";
      j["count"] = entries.size();
      json list = json::array();
      for (const CatalogEntry& e : entries) {
        json entry;
        entry["function"] = e.label;
        entry["toffolis"] = e.toffolis;
        entry["cnots"] = e.cnots;
        entry["balanced"] = e.balanced;
        list.push_back(entry);
      }
      j["entries"] = list;
      emit(j, out);
      return 0;
    }
    if (sso_cmd->parsed()) {
      json j;
      j["sso"] = sig12(stats::sso(load_probs(observed_path), load_probs(ideal_path)));
      emit(j, out);
      return 0;
    }
    if (entropy_cmd->parsed()) {
      json j;
      j["entropy"] = sig12(stats::entropy(load_probs(entropy_path)));
      emit(j, out);
      return 0;
    }
    if (shor->parsed()) {
      const uint64_t seed = resolve_seed(shor_seed->count() > 0, shor_seed_flag);
      const ShorOutcome r =
          shor_factor15(static_cast<int>(shor_a), seed, shor_samples);
      json j;
      j["algorithm"] = "shor15";
      json params;
      params["a"] = shor_a;
      j["params"] = params;
      j["seed"] = seed;
      j["success"] = r.success;
      j["order"] = r.order;
      json factors = json::array();
      if (r.success) {
        factors.push_back(std::min(r.factor_a, r.factor_b));
        factors.push_back(std::max(r.factor_a, r.factor_b));
      }
      j["factors"] = factors;
      j["samples"] = r.samples;
      j["ys"] = json(r.ys);
      emit(j, out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qsl::cli
