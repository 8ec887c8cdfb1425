#pragma once

#include <iosfwd>

#include "json.hpp"

#include "behaviorlab/behavior_model.hpp"
#include "behaviorlab/metrics.hpp"

namespace behaviorlab {

using Json = nlohmann::ordered_json;

Json to_json(const Item& item);
Item item_from_json(const Json& j, ItemKind kind);

/// Numbers as-is; sentinels as the strings "novel" and "undefined".
Json to_json(const MetricValue& v);
MetricValue metric_from_json(const Json& j);

Json to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j, ItemKind kind);

/// Canonical record: subject_id, window, label, target, item_kind, items,
/// weight, then optional stamps and debt.
Json to_json(const BehaviorSequence& seq);
BehaviorSequence sequence_from_json(const Json& j);

Json to_json(const BehaviorVector& v);
BehaviorVector behavior_vector_from_json(const Json& j);

/// One compact JSON record per line.
void write_jsonl(std::ostream& out, const Dataset& data);

/// Throws SchemaError (with line number) on malformed or non-canonical records.
Dataset read_jsonl(std::istream& in);

/// Sort by subject_id then window start (stable).
void canonical_sort(Dataset& data);

}  // namespace behaviorlab
