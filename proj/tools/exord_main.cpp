// Command-line front end: exact order finding, derandomized primality
// testing, primitive-element finding, and an amplitude-amplification demo.
// Exit codes: 0 success, 2 input error, 3 internal invariant violation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <atomic>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "exord/applications.hpp"
#include "exord/oracle.hpp"
#include "exord/order_finding.hpp"
#include "exord/report.hpp"

using namespace exord;

namespace {

struct CommonFlags {
    std::uint64_t seed = 0;
    bool json = false;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Measurement RNG seed")->capture_default_str();
    cmd->add_flag("--json", flags.json, "Machine-readable JSON report on stdout");
    cmd->add_flag("--timing", flags.timing,
                  "Include wall_time_ms in the report (breaks byte-for-byte determinism)");
}

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(OrderedJson report, const CommonFlags& flags, const Timer& timer,
          const std::string& headline) {
    if (flags.timing) report["wall_time_ms"] = timer.ms();
    if (flags.json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << headline << "\n" << render_report_text(report);
    }
}

int run_order(const std::string& group_spec, std::uint64_t element, std::uint64_t multiple,
              std::uint32_t trials, bool with_trace, const CommonFlags& flags) {
    const Timer timer;
    const auto group = CyclicGroupHandle::parse_spec(group_spec);
    if (element > UINT32_MAX || !group.contains(static_cast<GroupElement>(element))) {
        throw GroupError("element " + std::to_string(element) + " is not in " + group_spec);
    }
    const OrderInstance inst(group, static_cast<GroupElement>(element), multiple);

    auto report_for_seed = [&](std::uint64_t seed) {
        SeededRng rng(seed);
        const OrderResult result = find_order(inst, rng);
        OrderedJson res;
        res["order"] = result.order;
        OrderedJson inputs;
        inputs["group"] = group.spec_string();
        inputs["element"] = element;
        inputs["multiple"] = multiple;
        OrderedJson report = make_report("order", inputs, seed, res);
        report["rounds"] = result.trace.rounds;
        report["fourier_calls"] = counters_json(result.trace.counters);
        if (with_trace) report["trace"] = order_trace_json(result.trace);
        return std::make_pair(result.order, report);
    };

    if (trials <= 1) {
        auto [order, report] = report_for_seed(flags.seed);
        emit(std::move(report), flags, timer, "order = " + std::to_string(order));
        return 0;
    }

    // Independent seeded runs fanned out across threads.
    std::vector<OrderedJson> reports(trials);
    std::vector<std::uint64_t> orders(trials);
    std::vector<std::thread> pool;
    std::atomic<std::uint32_t> next{0};
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), trials));
    auto worker = [&] {
        for (;;) {
            const std::uint32_t i = next.fetch_add(1);
            if (i >= trials) return;
            auto [order, report] = report_for_seed(flags.seed + i);
            orders[i] = order;
            reports[i] = std::move(report);
        }
    };
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    OrderedJson inputs;
    inputs["group"] = group.spec_string();
    inputs["element"] = element;
    inputs["multiple"] = multiple;
    inputs["trials"] = trials;
    OrderedJson res;
    res["orders_agree"] = std::all_of(orders.begin(), orders.end(),
                                      [&](std::uint64_t o) { return o == orders.front(); });
    res["order"] = orders.front();
    OrderedJson report = make_report("order", inputs, flags.seed, res);
    report["trials"] = OrderedJson::array();
    for (auto& r : reports) report["trials"].push_back(std::move(r));
    emit(std::move(report), flags, timer,
         "order = " + std::to_string(orders.front()) + " (every one of " +
             std::to_string(trials) + " trials)");
    return 0;
}

int run_primality(std::uint64_t n, std::uint32_t max_candidates, bool randomize,
                  const CommonFlags& flags) {
    const Timer timer;
    SeededRng rng(flags.seed);
    PrimalityOptions options;
    options.max_candidates = max_candidates;
    options.randomize_order = randomize;
    const PrimalityVerdict verdict = primality_test(n, rng, options);

    OrderedJson inputs;
    inputs["n"] = n;
    inputs["max_candidates"] = max_candidates;
    inputs["randomize"] = randomize;
    OrderedJson report = make_report("primality", inputs, flags.seed, primality_json(verdict));
    std::string headline;
    switch (verdict.kind) {
    case PrimalityVerdict::Kind::Prime:
        headline = std::to_string(n) + " is prime (witness " + std::to_string(verdict.witness) +
                   " of order n-1)";
        break;
    case PrimalityVerdict::Kind::Composite:
        headline = std::to_string(n) + " is composite (" + verdict.detail + ")";
        break;
    case PrimalityVerdict::Kind::Inconclusive:
        headline = std::to_string(n) + ": inconclusive (" + verdict.detail + ")";
        break;
    }
    emit(std::move(report), flags, timer, headline);
    return 0;
}

int run_primitive(const std::string& field_spec, const std::string& field_file,
                  std::optional<std::uint64_t> start, const CommonFlags& flags) {
    const Timer timer;
    if (!field_spec.empty() && !field_file.empty()) {
        throw ParameterError("give either --field or --field-file, not both");
    }
    const CyclicGroupHandle group = !field_file.empty() ? load_field_spec_file(field_file)
                                                        : CyclicGroupHandle::parse_spec(field_spec);
    std::optional<GroupElement> start_element;
    if (start.has_value()) {
        if (*start > UINT32_MAX || !group.contains(static_cast<GroupElement>(*start))) {
            throw GroupError("start element is not in the field's unit group");
        }
        start_element = static_cast<GroupElement>(*start);
    }
    SeededRng rng(flags.seed);
    const PrimitiveResult result = find_primitive(group, start_element, rng);

    // oracle-verify before printing
    if (brute_order(group, result.generator) != group.order()) {
        throw InternalError("returned element is not a generator");
    }

    OrderedJson inputs;
    inputs["field"] = group.spec_string();
    if (start.has_value()) inputs["start"] = *start;
    OrderedJson res;
    res["generator"] = result.generator;
    res["generator_pretty"] = group.format_element(result.generator);
    res["order"] = group.order();
    OrderedJson report = make_report("primitive", inputs, flags.seed, res);
    report["rounds"] = result.trace.rounds.size();
    report["fourier_calls"] = counters_json(result.trace.counters);
    report["trace"] = primitive_trace_json(group, result.trace);
    emit(std::move(report), flags, timer,
         "generator = " + group.format_element(result.generator) + " of " + group.spec_string());
    return 0;
}

int run_amplify_demo(double a, const std::string& mode, const CommonFlags& flags) {
    const Timer timer;
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("--a must lie strictly between 0 and 1");
    const bool half = mode == "half";
    const double target = half ? 0.5 : 0.25;

    RegisterLayout layout({{"coin", 2, RegisterRole::Coin}});
    ReversibleProgram prep(layout);
    prep.append(CoinRotationOp{0, std::asin(std::sqrt(a))});
    const auto good = PredicateOracle::value_equals(0, 1);

    const double pre = success_probability(run_program_from_zero(prep), good);
    const auto boosted = half ? exact_boost_half(prep, good, false)
                              : exact_boost_quarter(prep, good, false);
    const double post = success_probability(run_program_from_zero(boosted), good);
    const bool off_target = std::abs(pre - target) > 1e-9;

    OrderedJson inputs;
    inputs["a"] = a;
    inputs["mode"] = mode;
    OrderedJson res;
    res["pre_boost"] = pre;
    res["post_boost"] = post;
    res["phase"] = half ? "sqrt(-1)" : "-1";
    if (off_target) {
        res["warning"] = "preparation is not at the exact-boost operating point " +
                         std::to_string(target) + "; the boost is not exact";
    }
    OrderedJson report = make_report("amplify-demo", inputs, flags.seed, res);
    std::string headline = "success probability " + std::to_string(pre) + " -> " +
                           std::to_string(post);
    if (off_target) headline += "  [warning: a != " + std::to_string(target) + "]";
    emit(std::move(report), flags, timer, headline);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact quantum order finding, primality testing and primitive-element "
                 "finding on a sparse statevector simulator"};
    app.require_subcommand(1);

    // order
    auto* order_cmd = app.add_subcommand("order", "Find the exact multiplicative order of an "
                                                  "element given a multiple of the order");
    std::string group_spec;
    std::uint64_t element = 0, multiple = 0;
    std::uint32_t trials = 1;
    bool with_trace = false;
    CommonFlags order_flags;
    order_cmd->add_option("--group", group_spec, "Group spec: zn:<n>, fp:<p>, fpk:<p>,<k>[,<c0..ck>]")
        ->required();
    order_cmd->add_option("--element", element, "Group element (residue or packed code)")->required();
    order_cmd->add_option("--multiple", multiple, "Known multiple m of the order")->required();
    order_cmd->add_option("--trials", trials, "Fan out N independent seeded runs across threads");
    order_cmd->add_flag("--trace", with_trace, "Include per-iteration records in the report");
    add_common(order_cmd, order_flags);

    // primality
    auto* primality_cmd =
        app.add_subcommand("primality", "Derandomized primality test via exact order finding");
    std::uint64_t n = 0;
    std::uint32_t max_candidates = 64;
    bool randomize = false;
    CommonFlags primality_flags;
    primality_cmd->add_option("n", n, "Integer to test (n >= 2)")->required();
    primality_cmd->add_option("--max-candidates", max_candidates, "Candidate sweep cap")
        ->capture_default_str();
    primality_cmd->add_flag("--randomize", randomize, "Shuffle the candidate sweep with the seed");
    add_common(primality_cmd, primality_flags);

    // primitive
    auto* primitive_cmd =
        app.add_subcommand("primitive", "Find a generator of a finite field's unit group");
    std::string field_spec, field_file;
    std::optional<std::uint64_t> start;
    CommonFlags primitive_flags;
    primitive_cmd->add_option("--field", field_spec, "Field spec: fp:<p> or fpk:<p>,<k>[,<c0..ck>]");
    primitive_cmd->add_option("--field-file", field_file,
                              "File with records 'p k c0,c1,...,ck'; the first record is used");
    primitive_cmd->add_option("--start", start, "Starting element (random when omitted)");
    add_common(primitive_cmd, primitive_flags);

    // amplify-demo
    auto* demo_cmd = app.add_subcommand(
        "amplify-demo", "Prepare a synthetic success probability and apply an exact boost");
    double a = 0.5;
    std::string mode = "half";
    CommonFlags demo_flags;
    demo_cmd->add_option("--a", a, "Prepared success probability in (0,1)")->required();
    demo_cmd->add_option("--mode", mode, "half (phases sqrt(-1)) or quarter (phases -1)")
        ->check(CLI::IsMember({"half", "quarter"}))
        ->capture_default_str();
    add_common(demo_cmd, demo_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (order_cmd->parsed()) {
            return run_order(group_spec, element, multiple, trials, with_trace, order_flags);
        }
        if (primality_cmd->parsed()) {
            return run_primality(n, max_candidates, randomize, primality_flags);
        }
        if (primitive_cmd->parsed()) {
            if (field_spec.empty() && field_file.empty()) {
                throw ParameterError("primitive needs --field or --field-file");
            }
            return run_primitive(field_spec, field_file, start, primitive_flags);
        }
        if (demo_cmd->parsed()) {
            return run_amplify_demo(a, mode, demo_flags);
        }
    } catch (const InternalError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
