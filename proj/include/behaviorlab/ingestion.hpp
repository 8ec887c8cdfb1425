#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "behaviorlab/behavior_model.hpp"

namespace behaviorlab {

// ---------------------------------------------------------------------------
// Source records
// ---------------------------------------------------------------------------

/// Row kind in an orderbook extract. Without an `event` column the first row
/// of a serial id is the placement and later rows are its fills.
enum class OrderEvent : std::uint8_t { order, fill, withdraw, expire };

struct OrderRecord {
    std::string serial_id;
    std::chrono::sys_days date{};
    Duration time{};
    std::string account_id;
    std::string security;
    Side action = Side::B;
    double price = 0.0;
    std::int64_t volume = 0;
    std::optional<OrderEvent> event;
    std::size_t line = 0;

    Timestamp timestamp() const { return Timestamp{date} + time; }
};

struct ActivityRecord {
    std::string person_id;
    Timestamp timestamp{};
    std::string activity_code;
    std::size_t line = 0;
};

struct DebtRecord {
    std::string person_id;
    std::string debt_id;
    std::chrono::sys_days raised_date{};
    double amount = 0.0;
    std::int64_t duration_days = 0;
};

/// One customer's categorical attributes in source column order; an empty
/// value means the attribute is absent. `label` overrides the debt-derived
/// class when the file carries a label column.
struct DemographicRecord {
    std::string person_id;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::optional<std::string> label;
    std::size_t line = 0;
};

/// Column names of the demographics file, in order (label is optional and last).
const std::vector<std::string>& demographic_columns();

std::vector<OrderRecord> parse_orderbook(std::istream& in, const std::string& name = "orderbook");
std::vector<ActivityRecord> parse_activities(std::istream& in, const std::string& name = "activities");
std::vector<DebtRecord> parse_debts(std::istream& in, const std::string& name = "debts");
std::vector<DemographicRecord> parse_demographics(std::istream& in, const std::string& name = "demographics");

/// Opens `path` and dispatches to the stream overloads; throws InputError when unreadable.
std::vector<OrderRecord> parse_orderbook_file(const std::string& path);
std::vector<ActivityRecord> parse_activities_file(const std::string& path);
std::vector<DebtRecord> parse_debts_file(const std::string& path);
std::vector<DemographicRecord> parse_demographics_file(const std::string& path);

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

/// Volume thresholds: S up to `small`, M up to `medium`, L above.
struct SizeCutpoints {
    std::int64_t small = 0;
    std::int64_t medium = 0;
    auto operator<=>(const SizeCutpoints&) const = default;
};

OrderSize discretize_order_size(std::int64_t volume, const SizeCutpoints& cuts);

/// Nearest-rank terciles of `volumes`, nudged apart when ties collapse them.
SizeCutpoints tercile_cutpoints(std::vector<std::int64_t> volumes);

struct TradeProbability {
    double raw = 0.0;
    FillLevel level = FillLevel::L;
};

/// Filled share of the ordered volume. Bins: L below 1/3, M below 2/3, H otherwise.
TradeProbability trade_probability(const std::vector<std::int64_t>& fills, std::int64_t ordered_volume);

// ---------------------------------------------------------------------------
// Conversion
// ---------------------------------------------------------------------------

struct ConversionConfig {
    std::map<std::string, SizeCutpoints> size_cutpoints;  // per security
    std::optional<SizeCutpoints> default_cutpoints;       // else terciles per security
    Duration association_window{3600};
    Duration window_length{86400};
    Duration bucket_length{60};
    Timestamp window_origin{};  // windows are aligned at this instant
};

/// Throws InputError on non-positive durations or non-increasing cutpoints.
void validate(const ConversionConfig& cfg);

struct ConversionSummary {
    std::size_t records = 0;
    std::size_t sequences = 0;
    std::size_t dropped_empty = 0;
    std::map<std::string, std::size_t> labels;
};

/// One sequence per (account, window); one vector per order lifecycle,
/// with the placement's time/price/volume as its stamp. Output is canonical.
Dataset build_microstructure_sequences(const std::vector<OrderRecord>& orders, const ConversionConfig& cfg,
                                       ConversionSummary* summary = nullptr);

/// One sequence per (person, window) of activity codes in time order. A debt
/// raised inside the window labels it DET and its ledger is attached; other
/// sequences carry the person's debts from elsewhere (if any) as context.
Dataset build_activity_sequences(const std::vector<ActivityRecord>& acts, const std::vector<DebtRecord>& debts,
                                 const ConversionConfig& cfg, ConversionSummary* summary = nullptr);

/// One itemset per person ("attribute=value" items), labeled DET when the
/// person has any debt unless the record carries its own label. Throws
/// InputError listing duplicate person ids.
Dataset build_demographic_vectors(const std::vector<DemographicRecord>& demo, const std::vector<DebtRecord>& debts,
                                  ConversionSummary* summary = nullptr);

/// Item key used for a demographics column ("age_band" → "age").
std::string demographic_item_key(const std::string& column);

}  // namespace behaviorlab
