// Python bindings for the bit-pair simulator: state and gate layer, oracle
// constructors, experiment builders, exact / sampled distributions, the
// algorithm drivers, the protocol suite, and the comparison metrics.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl/algorithms.hpp"
#include "qsl/protocols.hpp"
#include "qsl/refsim.hpp"
#include "qsl/stats.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace qsl;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical simulator for pair-of-bits systems: gates, measurement "
            "disturbance, oracle-query algorithms, and exact output distributions.";

  py::register_exception<Error>(m, "Error");

  // --- kernel ---------------------------------------------------------------
  py::enum_<Basis>(m, "Basis")
      .value("Z", Basis::Z)
      .value("X", Basis::X)
      .value("Y", Basis::Y)
      .value("Mixed", Basis::Mixed);

  py::class_<RandomSource>(m, "RandomSource",
                           "Deterministic splittable random source; equal (seed, stream) "
                           "pairs give identical sequences.")
      .def(py::init<uint64_t, uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("bit", &RandomSource::bit)
      .def("word", &RandomSource::word)
      .def("below", &RandomSource::below, py::arg("n"))
      .def("substream", &RandomSource::substream, py::arg("s"))
      .def_property_readonly("seed", &RandomSource::seed)
      .def_property_readonly("stream", &RandomSource::stream);

  py::class_<ElementarySystem>(m, "ElementarySystem",
                               "One computational bit x and one phase bit p.")
      .def(py::init([](bool x, bool p) { return ElementarySystem{x, p}; }),
           py::arg("x") = false, py::arg("p") = false)
      .def_readwrite("x", &ElementarySystem::x)
      .def_readwrite("p", &ElementarySystem::p)
      .def("point", &ElementarySystem::point)
      .def("__eq__", [](const ElementarySystem& a, const ElementarySystem& b) { return a == b; })
      .def("__repr__", [](const ElementarySystem& s) {
        return "ElementarySystem(x=" + std::to_string(s.x) + ", p=" + std::to_string(s.p) + ")";
      });

  py::class_<Register>(m, "Register")
      .def(py::init([](int width) {
             Register r;
             r.sys.resize(static_cast<size_t>(width));
             return r;
           }),
           py::arg("width") = 0)
      .def_property_readonly("width", &Register::width)
      .def("at", [](const Register& r, int w) { return r.at(w); }, py::arg("wire"))
      .def("set", [](Register& r, int w, const ElementarySystem& s) { r.at(w) = s; },
           py::arg("wire"), py::arg("system"))
      .def("comp", &Register::comp, "Packed computational bits, wire 0 least significant.")
      .def("phase", &Register::phase, "Packed phase bits, wire 0 least significant.");

  py::class_<Preparation>(m, "Preparation")
      .def(py::init([](Basis basis, bool value) { return Preparation{basis, value}; }),
           py::arg("basis") = Basis::Z, py::arg("value") = false)
      .def_readwrite("basis", &Preparation::basis)
      .def_readwrite("value", &Preparation::value)
      .def("draws", &Preparation::draws);

  py::enum_<GateKind>(m, "GateKind")
      .value("X", GateKind::X)
      .value("Z", GateKind::Z)
      .value("Y", GateKind::Y)
      .value("H", GateKind::H)
      .value("S", GateKind::S)
      .value("Sinv", GateKind::Sinv)
      .value("Cnot", GateKind::Cnot)
      .value("Cz", GateKind::Cz)
      .value("Swap", GateKind::Swap)
      .value("Toffoli", GateKind::Toffoli)
      .value("Fredkin", GateKind::Fredkin)
      .value("NToffoli", GateKind::NToffoli);

  py::class_<Gate>(m, "Gate")
      .def_readonly("kind", &Gate::kind)
      .def_readonly("wires", &Gate::wires)
      .def_readonly("neg", &Gate::neg)
      .def_readonly("condition", &Gate::condition)
      .def_static("x", &Gate::x, py::arg("wire"))
      .def_static("z", &Gate::z, py::arg("wire"))
      .def_static("y", &Gate::y, py::arg("wire"))
      .def_static("h", &Gate::h, py::arg("wire"))
      .def_static("s", &Gate::s, py::arg("wire"))
      .def_static("sinv", &Gate::sinv, py::arg("wire"))
      .def_static("cnot", &Gate::cnot, py::arg("control"), py::arg("target"))
      .def_static("cz", &Gate::cz, py::arg("a"), py::arg("b"))
      .def_static("swap", &Gate::swap, py::arg("a"), py::arg("b"))
      .def_static("toffoli", &Gate::toffoli, py::arg("c1"), py::arg("c2"), py::arg("target"))
      .def_static("fredkin", &Gate::fredkin, py::arg("control"), py::arg("a"), py::arg("b"))
      .def_static("n_toffoli", &Gate::n_toffoli, py::arg("controls"), py::arg("neg"),
                  py::arg("target"),
                  "Multi-controlled flip; bit k of neg fires control k on value 0.")
      .def("conditioned_on", &Gate::conditioned_on, py::arg("outcome_bit"),
           "Copy of the gate applied only when the recorded outcome bit is 1.");

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<int>(), py::arg("width") = 0)
      .def_readwrite("width", &Circuit::width)
      .def_property_readonly("gates", [](const Circuit& c) { return c.gates; })
      .def("append", [](Circuit& c, const Gate& g) { c.append(g); }, py::arg("gate"))
      .def("extend", [](Circuit& c, const Circuit& other) { c.append(other); },
           py::arg("circuit"));

  m.def("apply", [](const Circuit& c, Register state, const BitString& outcomes) {
          return apply(c, std::move(state), outcomes);
        },
        py::arg("circuit"), py::arg("state"), py::arg("outcomes") = BitString{},
        "Returns the register after the circuit; outcomes back classical conditions.");
  m.def("prepare_register",
        [](const std::vector<Preparation>& prep, RandomSource& rng) {
          return prepare_register(prep, rng);
        },
        py::arg("prep"), py::arg("rng"));
  m.def("synthesize_permutation", &synthesize_permutation, py::arg("perm"),
        "Circuit realizing the bijection on computational values; one ancilla wire.");
  m.def("invert", &invert, py::arg("circuit"));

  // --- engine ---------------------------------------------------------------
  py::class_<MeasurementSpec>(m, "MeasurementSpec")
      .def_static("z", &MeasurementSpec::z, py::arg("wire"))
      .def_static("x", &MeasurementSpec::x, py::arg("wire"))
      .def_static("y", &MeasurementSpec::y, py::arg("wire"))
      .def_static("joint_zz", &MeasurementSpec::joint_zz, py::arg("i"), py::arg("j"))
      .def_static("joint_xx", &MeasurementSpec::joint_xx, py::arg("i"), py::arg("j"))
      .def_static("joint_zx", &MeasurementSpec::joint_zx, py::arg("i"), py::arg("j"))
      .def_static("bell", &MeasurementSpec::bell, py::arg("i"), py::arg("j"))
      .def_static("all_zero_test", &MeasurementSpec::all_zero_test, py::arg("lo"),
                  py::arg("hi"))
      .def("outcome_bits", &MeasurementSpec::outcome_bits)
      .def("draws", &MeasurementSpec::draws);

  py::class_<PlanStep>(m, "PlanStep")
      .def(py::init([](const MeasurementSpec& spec, size_t after_gate) {
             return PlanStep{spec, after_gate};
           }),
           py::arg("measurement"), py::arg("after_gate") = SIZE_MAX,
           "Measurement scheduled once `after_gate` gates have run (default: end).")
      .def_readwrite("measurement", &PlanStep::m)
      .def_readwrite("after_gate", &PlanStep::after_gate);

  py::class_<Experiment>(m, "Experiment")
      .def(py::init<>())
      .def_readwrite("circuit", &Experiment::circuit)
      .def_readwrite("prep", &Experiment::prep)
      .def_readwrite("plan", &Experiment::plan)
      .def_property_readonly("width", &Experiment::width)
      .def("budget", &Experiment::budget, "Free bits consumed by every run.")
      .def("outcome_bit_count", &Experiment::outcome_bit_count)
      .def("validate", &Experiment::validate);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("bits", &RunResult::bits)
      .def_readonly("state", &RunResult::state);

  py::class_<Distribution>(m, "Distribution",
                           "Outcome histogram; exact ones carry integer weights over a "
                           "power-of-two total.")
      .def_readonly("bits", &Distribution::bits)
      .def_readonly("weight", &Distribution::weight)
      .def_readonly("total", &Distribution::total)
      .def_readonly("exact", &Distribution::exact)
      .def("p", &Distribution::p, py::arg("outcome"))
      .def("probs", &Distribution::probs);

  m.def("measure", &measure, py::arg("measurement"), py::arg("state"), py::arg("rng"),
        "Standalone measurement on a live register; returns the outcome bits.");
  m.def("run", &run, py::arg("experiment"), py::arg("rng"));
  m.def("run_with_bits", &run_with_bits, py::arg("experiment"), py::arg("bits"),
        "Deterministic replay with the whole free-bit schedule supplied up front.");
  m.def("sample", &sample, py::arg("experiment"), py::arg("trials"), py::arg("seed"));
  m.def("exact_distribution",
        [](const Experiment& e, int budget_cap) {
          return exact_distribution(e, ExactOptions{budget_cap});
        },
        py::arg("experiment"), py::arg("budget_cap") = ExactOptions{}.budget_cap,
        "Exact output distribution over all free-bit assignments.");

  // --- oracles --------------------------------------------------------------
  py::enum_<OracleFamily>(m, "OracleFamily")
      .value("BV", OracleFamily::BV)
      .value("DJPromise", OracleFamily::DJPromise)
      .value("DJDecision", OracleFamily::DJDecision)
      .value("DJ3Catalog", OracleFamily::DJ3Catalog)
      .value("Majority", OracleFamily::Majority)
      .value("Grover", OracleFamily::Grover)
      .value("Simon", OracleFamily::Simon)
      .value("Shor15Mult", OracleFamily::Shor15Mult);

  py::enum_<MajorityVariant>(m, "MajorityVariant")
      .value("A", MajorityVariant::A)
      .value("B", MajorityVariant::B)
      .value("C", MajorityVariant::C)
      .value("D", MajorityVariant::D);

  py::enum_<SimonVariant>(m, "SimonVariant")
      .value("ZeroTarget", SimonVariant::ZeroTarget)
      .value("XorTarget", SimonVariant::XorTarget)
      .value("Deterministic", SimonVariant::Deterministic);

  py::class_<WireRange>(m, "WireRange")
      .def_readonly("lo", &WireRange::lo)
      .def_readonly("hi", &WireRange::hi)
      .def_property_readonly("size", &WireRange::size);

  py::class_<OracleSpec>(m, "OracleSpec")
      .def_readonly("family", &OracleSpec::family)
      .def_readonly("name", &OracleSpec::name)
      .def_readonly("circuit", &OracleSpec::circuit)
      .def_readonly("query", &OracleSpec::query)
      .def_readonly("answer", &OracleSpec::answer)
      .def_readonly("ancilla", &OracleSpec::ancilla)
      .def("truth", [](const OracleSpec& o, uint64_t x) { return o.truth(x); },
           py::arg("x"), "Classical reference function over query-register values.");

  py::class_<CatalogEntry>(m, "CatalogEntry")
      .def_readonly("spec", &CatalogEntry::spec)
      .def_readonly("label", &CatalogEntry::label)
      .def_readonly("toffolis", &CatalogEntry::toffolis)
      .def_readonly("cnots", &CatalogEntry::cnots)
      .def_readonly("balanced", &CatalogEntry::balanced);

  m.def("bv_oracle", &bv_oracle, py::arg("n"), py::arg("s"));
  m.def("dj_promise_oracle", &dj_promise_oracle, py::arg("n"), py::arg("b0"),
        py::arg("b1"), py::arg("perm"));
  m.def("dj_decision_oracle", &dj_decision_oracle, py::arg("n"), py::arg("a"),
        py::arg("perm"));
  m.def("dj3_catalog", &dj3_catalog,
        "All 72 constant-or-balanced functions on 3 bits in their class shapes.");
  m.def("majority_oracle", &majority_oracle, py::arg("variant"));
  m.def("grover_oracle", &grover_oracle, py::arg("n"), py::arg("xstar"));
  m.def("simon_oracle", &simon_oracle, py::arg("n"), py::arg("s"), py::arg("b"),
        py::arg("perm"), py::arg("variant"));
  m.def("simon_basis", &simon_basis, py::arg("n"), py::arg("s"));
  m.def("shor15_multiplier", &shor15_multiplier, py::arg("a"), py::arg("power"));

  // --- algorithms -----------------------------------------------------------
  py::enum_<DJVerdict>(m, "DJVerdict")
      .value("NotBalanced", DJVerdict::NotBalanced)
      .value("NotConstant", DJVerdict::NotConstant);

  py::enum_<SimonVerdict>(m, "SimonVerdict")
      .value("OneToOne", SimonVerdict::OneToOne)
      .value("TwoToOne", SimonVerdict::TwoToOne)
      .value("BudgetExhausted", SimonVerdict::BudgetExhausted);

  py::class_<GroverResult>(m, "GroverResult")
      .def_readonly("found", &GroverResult::found)
      .def_readonly("candidate", &GroverResult::candidate)
      .def_readonly("rounds", &GroverResult::rounds)
      .def_readonly("queries", &GroverResult::queries);

  py::class_<SimonResult>(m, "SimonResult")
      .def_readonly("verdict", &SimonResult::verdict)
      .def_readonly("s", &SimonResult::s)
      .def_readonly("queries", &SimonResult::queries);

  py::class_<ShorOutcome>(m, "ShorOutcome")
      .def_readonly("success", &ShorOutcome::success)
      .def_readonly("factor_a", &ShorOutcome::factor_a)
      .def_readonly("factor_b", &ShorOutcome::factor_b)
      .def_readonly("order", &ShorOutcome::order)
      .def_readonly("samples", &ShorOutcome::samples)
      .def_readonly("ys", &ShorOutcome::ys);

  m.def("dj_experiment", &dj_experiment, py::arg("oracle"));
  m.def("deutsch_jozsa", &deutsch_jozsa, py::arg("oracle"), py::arg("rng"));
  m.def("bv_experiment", &bv_experiment, py::arg("oracle"));
  m.def("bernstein_vazirani", &bernstein_vazirani, py::arg("oracle"), py::arg("rng"));
  m.def("grover_experiment", &grover_experiment, py::arg("oracle"));
  m.def("grover_search", &grover_search, py::arg("oracle"), py::arg("rng"),
        py::arg("max_rounds") = 0);
  m.def("gf2_rank", &gf2_rank, py::arg("rows"), py::arg("n"));
  m.def("gf2_kernel_vector", &gf2_kernel_vector, py::arg("rows"), py::arg("n"));
  m.def("simon_subroutine_experiment", &simon_subroutine_experiment, py::arg("oracle"));
  m.def("simon_subroutine", &simon_subroutine, py::arg("oracle"), py::arg("rng"));
  m.def("simon_solve", &simon_solve, py::arg("oracle"), py::arg("rng"),
        py::arg("max_queries"));
  m.def("simon_deterministic_experiment", &simon_deterministic_experiment,
        py::arg("oracle"), py::arg("k"));
  m.def("simon_deterministic", &simon_deterministic, py::arg("oracle"));
  m.def("shor15_subroutine_experiment", &shor15_subroutine_experiment, py::arg("a"));
  m.def("phase_denominator", &phase_denominator, py::arg("y"), py::arg("Q"),
        py::arg("rmax"),
        "Best continued-fraction denominator of y/Q at most rmax; None for y = 0.");
  m.def("shor_factor15", &shor_factor15, py::arg("a"), py::arg("seed"),
        py::arg("max_samples") = 16);

  // --- protocols ------------------------------------------------------------
  py::enum_<BellKind>(m, "BellKind")
      .value("PsiPlus", BellKind::PsiPlus)
      .value("PhiPlus", BellKind::PhiPlus)
      .value("PsiMinus", BellKind::PsiMinus)
      .value("PhiMinus", BellKind::PhiMinus);

  py::enum_<GHZForm>(m, "GHZForm")
      .value("Cnots", GHZForm::Cnots)
      .value("Toffoli", GHZForm::Toffoli);

  py::class_<PauliCorrelations>(m, "PauliCorrelations")
      .def_readonly("zz", &PauliCorrelations::zz)
      .def_readonly("xx", &PauliCorrelations::xx)
      .def_readonly("yy", &PauliCorrelations::yy);

  py::class_<BB84Round>(m, "BB84Round")
      .def_readonly("alice_basis", &BB84Round::alice_basis)
      .def_readonly("alice_bit", &BB84Round::alice_bit)
      .def_readonly("eve_present", &BB84Round::eve_present)
      .def_readonly("eve_basis", &BB84Round::eve_basis)
      .def_readonly("eve_bit", &BB84Round::eve_bit)
      .def_readonly("bob_basis", &BB84Round::bob_basis)
      .def_readonly("bob_bit", &BB84Round::bob_bit)
      .def("sifted", &BB84Round::sifted)
      .def("error", &BB84Round::error);

  py::class_<BB84Stats>(m, "BB84Stats")
      .def_readonly("rounds", &BB84Stats::rounds)
      .def_readonly("sifted", &BB84Stats::sifted)
      .def_readonly("errors", &BB84Stats::errors)
      .def("error_rate", &BB84Stats::error_rate);

  m.def("bell_prep_values", &bell_prep_values, py::arg("kind"));
  m.def("bell_pair_experiment", &bell_pair_experiment, py::arg("kind"), py::arg("plan"));
  m.def("pair_correlations", &pair_correlations, py::arg("kind"));
  m.def("singlet_pauli_correlations", &singlet_pauli_correlations);
  m.def("teleport_experiment", &teleport_experiment, py::arg("input"));
  m.def("superdense_experiment", &superdense_experiment, py::arg("m1"), py::arg("m0"));
  m.def("superdense_decode", &superdense_decode, py::arg("outcome"));
  m.def("bb84_round_bits", &bb84_round_bits, py::arg("eavesdrop"));
  m.def("bb84_round", &bb84_round, py::arg("eavesdrop"), py::arg("rng"));
  m.def("bb84_round_replay", &bb84_round_replay, py::arg("eavesdrop"), py::arg("bits"));
  m.def("bb84_run", &bb84_run, py::arg("rounds"), py::arg("eavesdrop"), py::arg("seed"));
  m.def("ghz_circuit", &ghz_circuit, py::arg("form"));
  m.def("ghz_experiment", &ghz_experiment, py::arg("form"));
  m.def("ghz_conditional_entropy", &ghz_conditional_entropy, py::arg("form"));

  // --- stats and reference simulator ---------------------------------------
  m.def("statistical_overlap",
        py::overload_cast<const stats::Probs&, const stats::Probs&>(
            &stats::statistical_overlap),
        py::arg("p"), py::arg("q"), "1 - L1/2 distance between outcome distributions.");
  m.def("fidelity",
        py::overload_cast<const stats::Probs&, const stats::Probs&>(&stats::fidelity),
        py::arg("p"), py::arg("q"));
  m.def("sso", py::overload_cast<const stats::Probs&, const stats::Probs&>(&stats::sso),
        py::arg("p"), py::arg("q"),
        "Squared statistical overlap of amplitudes, (sum_i sqrt(p_i q_i))^2.");
  m.def("entropy", py::overload_cast<const stats::Probs&>(&stats::entropy), py::arg("p"),
        "Shannon entropy in bits.");
  m.def("statevector_run", &refsim::statevector_run, py::arg("circuit"),
        py::arg("basis_in"), py::arg("outcomes") = BitString{},
        "Dense wave-picture run from a computational basis state.");
  m.def("ideal_distribution", &refsim::ideal_distribution, py::arg("experiment"),
        "Born-rule outcome distribution of the experiment in the wave picture.");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
