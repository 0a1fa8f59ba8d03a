#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "exord/applications.hpp"
#include "exord/oracle.hpp"
#include "exord/order_finding.hpp"

namespace py = pybind11;
using namespace exord;

namespace {

std::pair<unsigned long long, unsigned long long> to_fraction(const ExactProbability& p) {
    return {p.numerator().convert_to<unsigned long long>(),
            p.denominator().convert_to<unsigned long long>()};
}

py::dict order_trace_dict(const OrderTrace& trace) {
    py::list records;
    for (const auto& r : trace.records) {
        py::dict rec;
        rec["round"] = r.round;
        rec["j"] = r.j;
        rec["measured_k"] = r.measured_k;
        rec["rep_dk"] = r.rep_dk;
        rec["d_before"] = r.d_before;
        rec["d_after"] = r.d_after;
        rec["pre_boost_probability"] = r.pre_boost_probability;
        records.append(rec);
    }
    py::dict d;
    d["rounds"] = trace.rounds;
    d["fourier_calls_exact"] = trace.counters.fourier_exact;
    d["standard_qft_units"] = trace.counters.standard_qft_units();
    d["seed"] = trace.seed;
    d["records"] = records;
    return d;
}

py::dict find_order_py(const CyclicGroupHandle& group, GroupElement x, std::uint64_t m,
                       std::uint64_t seed) {
    SeededRng rng(seed);
    const OrderResult result = find_order(OrderInstance(group, x, m), rng);
    py::dict d;
    d["order"] = result.order;
    d["trace"] = order_trace_dict(result.trace);
    return d;
}

py::dict primality_py(std::uint64_t n, std::uint64_t seed, std::uint32_t max_candidates,
                      bool randomize, std::optional<std::vector<std::uint64_t>> candidates) {
    SeededRng rng(seed);
    PrimalityOptions options;
    options.max_candidates = max_candidates;
    options.randomize_order = randomize;
    if (candidates.has_value()) options.candidates = *candidates;
    const PrimalityVerdict verdict = primality_test(n, rng, options);
    py::dict d;
    d["verdict"] = verdict.is_prime() ? "prime"
                   : verdict.is_composite() ? "composite"
                                            : "inconclusive";
    d["witness"] = verdict.witness;
    d["witness_gcd"] = verdict.witness_gcd;
    d["witness_residue"] = verdict.witness_residue;
    d["detail"] = verdict.detail;
    d["fourier_calls_exact"] = verdict.counters.fourier_exact;
    py::list cands;
    for (const auto& c : verdict.candidates) {
        py::dict rec;
        rec["x"] = c.x;
        rec["outcome"] = c.outcome;
        rec["order"] = c.order;
        cands.append(rec);
    }
    d["candidates"] = cands;
    return d;
}

py::dict find_primitive_py(const CyclicGroupHandle& group, std::optional<GroupElement> start,
                           std::uint64_t seed) {
    SeededRng rng(seed);
    const PrimitiveResult result = find_primitive(group, start, rng);
    py::dict d;
    d["generator"] = result.generator;
    d["generator_pretty"] = group.format_element(result.generator);
    d["start"] = result.trace.start;
    d["start_order"] = result.trace.start_order;
    d["fourier_calls_exact"] = result.trace.counters.fourier_exact;
    py::list rounds;
    for (const auto& r : result.trace.rounds) {
        py::dict rec;
        rec["x"] = r.x;
        rec["order_x"] = r.r_x;
        rec["y"] = r.y;
        rec["order_y"] = r.r_y;
        rec["combined"] = r.combined;
        rec["new_order"] = r.new_order;
        rec["pre_boost_probability"] = r.pre_boost_probability;
        rounds.append(rec);
    }
    d["rounds"] = rounds;
    return d;
}

// Flag weight of |psi_j> for an instance, straight from the simulator.
double uj_success_probability_py(const CyclicGroupHandle& group, GroupElement x, std::uint64_t m,
                                 std::uint64_t d, std::int32_t j) {
    const OrderInstance inst(group, x, m);
    auto [prog, oracle] = build_Uj(inst, ChiParams{d, m, j});
    return success_probability(run_program_from_zero(prog), oracle);
}

py::dict amplify_demo_py(double a, const std::string& mode) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("a must lie strictly between 0 and 1");
    if (mode != "half" && mode != "quarter") throw ParameterError("mode must be half or quarter");
    RegisterLayout layout({{"coin", 2, RegisterRole::Coin}});
    ReversibleProgram prep(layout);
    prep.append(CoinRotationOp{0, std::asin(std::sqrt(a))});
    const auto good = PredicateOracle::value_equals(0, 1);
    const double pre = success_probability(run_program_from_zero(prep), good);
    const auto boosted = mode == "half" ? exact_boost_half(prep, good, false)
                                        : exact_boost_quarter(prep, good, false);
    const double post = success_probability(run_program_from_zero(boosted), good);
    py::dict d;
    d["pre_boost"] = pre;
    d["post_boost"] = post;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact order finding, derandomized primality testing and primitive-element "
              "finding on a sparse statevector simulator";

    py::register_exception<LayoutError>(m, "LayoutError");
    py::register_exception<GroupError>(m, "GroupError");
    py::register_exception<ParameterError>(m, "ParameterError");
    py::register_exception<InternalError>(m, "InternalError");

    py::class_<CyclicGroupHandle>(m, "Group")
        .def_static("units_mod_n", &CyclicGroupHandle::units_mod_n, py::arg("n"))
        .def_static("prime_field", &CyclicGroupHandle::prime_field, py::arg("p"))
        .def_static("extension_field", &CyclicGroupHandle::extension_field, py::arg("p"),
                    py::arg("k"), py::arg("poly") = std::vector<std::uint32_t>{})
        .def_static("parse", &CyclicGroupHandle::parse_spec, py::arg("spec"))
        .def_property_readonly("order", &CyclicGroupHandle::order)
        .def_property_readonly("identity", &CyclicGroupHandle::identity)
        .def("contains", &CyclicGroupHandle::contains)
        .def("mul", &CyclicGroupHandle::mul)
        .def("inv", &CyclicGroupHandle::inv)
        .def("pow", &CyclicGroupHandle::pow)
        .def("elements", &CyclicGroupHandle::elements)
        .def("index_of", &CyclicGroupHandle::index_of)
        .def("element_at", &CyclicGroupHandle::element_at)
        .def("format_element", &CyclicGroupHandle::format_element)
        .def("spec_string", &CyclicGroupHandle::spec_string)
        .def("__repr__",
             [](const CyclicGroupHandle& g) { return "<Group " + g.spec_string() + ">"; });

    m.def("find_order", &find_order_py, py::arg("group"), py::arg("x"), py::arg("m"),
          py::arg("seed") = 0,
          "Exact order of x given a multiple m of the order; returns the result and trace.");
    m.def("primality_test", &primality_py, py::arg("n"), py::arg("seed") = 0,
          py::arg("max_candidates") = 64, py::arg("randomize") = false,
          py::arg("candidates") = std::nullopt);
    m.def("find_primitive", &find_primitive_py, py::arg("group"),
          py::arg("start") = std::nullopt, py::arg("seed") = 0);
    m.def("amplify_demo", &amplify_demo_py, py::arg("a"), py::arg("mode") = "half");
    m.def("uj_success_probability", &uj_success_probability_py, py::arg("group"), py::arg("x"),
          py::arg("m"), py::arg("d"), py::arg("j"));

    m.def("iterate_amplitudes", [](double a, std::uint32_t j) {
        const auto it = iterate_amplitudes(a, j);
        py::dict d;
        d["a"] = it.a;
        d["theta"] = it.theta;
        d["k"] = it.k;
        d["l"] = it.l;
        d["success_probability"] = it.success_probability();
        return d;
    });

    m.def("rep", &rep, py::arg("v"), py::arg("m"));
    m.def("chi_j", [](std::uint64_t k, std::uint32_t b, std::uint64_t d, std::uint64_t m,
                      std::int32_t j) { return chi_j(k, b, ChiParams{d, m, j}); },
          py::arg("k"), py::arg("b"), py::arg("d"), py::arg("m"), py::arg("j"));
    m.def("update_divisor", &update_divisor, py::arg("d"), py::arg("k"), py::arg("m"));
    m.def("coprime_split", &coprime_split, py::arg("a"), py::arg("b"));
    m.def("combine_elements", &combine_elements, py::arg("group"), py::arg("x"), py::arg("r_x"),
          py::arg("y"), py::arg("r_y"));

    m.def("brute_order", &brute_order, py::arg("group"), py::arg("x"));
    m.def("primitive_roots", &primitive_roots, py::arg("group"));
    m.def("trial_division_is_prime", &trial_division_is_prime, py::arg("n"));
    m.def("gamma_distribution", [](std::uint64_t mm, std::uint64_t r) {
        py::list out;
        for (const auto& p : gamma_distribution(mm, r)) out.append(to_fraction(p));
        return out;
    });
    m.def("exact_success_probability", [](std::uint64_t d, std::uint64_t r, std::uint64_t mm,
                                          std::int32_t j) {
        return to_fraction(exact_success_probability(d, r, mm, j));
    });
    m.def("exact_p_success_probability", [](std::uint64_t r, std::uint64_t mm) {
        return to_fraction(exact_p_success_probability(r, mm));
    });
}
