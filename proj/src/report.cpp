#include "exord/report.hpp"

#include <sstream>

namespace exord {

OrderedJson counters_json(const OpCounters& counters) {
    OrderedJson j;
    j["exact"] = counters.fourier_exact;
    j["standard_qft_units"] = counters.standard_qft_units();
    return j;
}

OrderedJson order_trace_json(const OrderTrace& trace) {
    OrderedJson records = OrderedJson::array();
    for (const auto& r : trace.records) {
        OrderedJson rec;
        rec["round"] = r.round;
        rec["j"] = r.j;
        rec["measured_k"] = r.measured_k;
        rec["rep_dk"] = r.rep_dk;
        rec["d_before"] = r.d_before;
        rec["d_after"] = r.d_after;
        rec["pre_boost_probability"] = r.pre_boost_probability;
        records.push_back(std::move(rec));
    }
    OrderedJson j;
    j["rounds"] = trace.rounds;
    j["fourier_calls"] = counters_json(trace.counters);
    j["records"] = std::move(records);
    return j;
}

OrderedJson primitive_trace_json(const CyclicGroupHandle& group, const PrimitiveTrace& trace) {
    OrderedJson rounds = OrderedJson::array();
    for (const auto& r : trace.rounds) {
        OrderedJson rec;
        rec["x"] = r.x;
        rec["x_pretty"] = group.format_element(r.x);
        rec["order_x"] = r.r_x;
        rec["y"] = r.y;
        rec["y_pretty"] = group.format_element(r.y);
        rec["order_y"] = r.r_y;
        rec["combined"] = r.combined;
        rec["new_order"] = r.new_order;
        rec["pre_boost_probability"] = r.pre_boost_probability;
        rounds.push_back(std::move(rec));
    }
    OrderedJson j;
    j["start"] = trace.start;
    j["start_order"] = trace.start_order;
    j["rounds"] = std::move(rounds);
    j["fourier_calls"] = counters_json(trace.counters);
    return j;
}

OrderedJson primality_json(const PrimalityVerdict& verdict) {
    OrderedJson j;
    switch (verdict.kind) {
    case PrimalityVerdict::Kind::Prime: j["verdict"] = "prime"; break;
    case PrimalityVerdict::Kind::Composite: j["verdict"] = "composite"; break;
    case PrimalityVerdict::Kind::Inconclusive: j["verdict"] = "inconclusive"; break;
    }
    j["witness"] = verdict.witness;
    if (verdict.witness_gcd > 1) j["witness_gcd"] = verdict.witness_gcd;
    if (verdict.witness_residue != 0) j["witness_residue"] = verdict.witness_residue;
    j["detail"] = verdict.detail;
    OrderedJson candidates = OrderedJson::array();
    for (const auto& c : verdict.candidates) {
        OrderedJson rec;
        rec["x"] = c.x;
        rec["outcome"] = c.outcome;
        if (c.order != 0) rec["order"] = c.order;
        candidates.push_back(std::move(rec));
    }
    j["candidates"] = std::move(candidates);
    j["fourier_calls"] = counters_json(verdict.counters);
    return j;
}

OrderedJson make_report(const std::string& command, OrderedJson inputs, std::uint64_t seed,
                        OrderedJson result) {
    OrderedJson report;
    report["schema_version"] = kReportSchemaVersion;
    report["command"] = command;
    report["inputs"] = std::move(inputs);
    report["seed"] = seed;
    report["result"] = std::move(result);
    return report;
}

namespace {

void render_value(std::ostringstream& out, const OrderedJson& value, int indent) {
    const std::string pad(indent, ' ');
    if (value.is_object()) {
        for (const auto& [key, sub] : value.items()) {
            if (sub.is_object() || sub.is_array()) {
                out << pad << key << ":\n";
                render_value(out, sub, indent + 2);
            } else {
                out << pad << key << ": " << sub.dump() << "\n";
            }
        }
    } else if (value.is_array()) {
        std::size_t i = 0;
        for (const auto& sub : value) {
            if (sub.is_object() || sub.is_array()) {
                out << pad << "- [" << i << "]\n";
                render_value(out, sub, indent + 2);
            } else {
                out << pad << "- " << sub.dump() << "\n";
            }
            ++i;
        }
    } else {
        out << pad << value.dump() << "\n";
    }
}

} // namespace

std::string render_report_text(const OrderedJson& report) {
    std::ostringstream out;
    render_value(out, report, 0);
    return out.str();
}

} // namespace exord
