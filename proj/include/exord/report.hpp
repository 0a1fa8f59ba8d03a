#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "exord/applications.hpp"
#include "exord/order_finding.hpp"

namespace exord {

// Reports use ordered JSON with a fixed insertion order so that identical
// inputs and seed produce byte-identical output.
using OrderedJson = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

OrderedJson counters_json(const OpCounters& counters);
OrderedJson order_trace_json(const OrderTrace& trace);
OrderedJson primitive_trace_json(const CyclicGroupHandle& group, const PrimitiveTrace& trace);
OrderedJson primality_json(const PrimalityVerdict& verdict);

// The common report envelope: schema_version, command, inputs, seed, result,
// then command-specific sections.
OrderedJson make_report(const std::string& command, OrderedJson inputs, std::uint64_t seed,
                        OrderedJson result);

std::string render_report_text(const OrderedJson& report);

} // namespace exord
