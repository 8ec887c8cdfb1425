#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/metrics.hpp"
#include "behaviorlab/seqmine.hpp"

namespace behaviorlab {

using Date = std::chrono::sys_days;

struct TradingDay {
    Date date{};
    Dataset sequences;
};

/// Splits sequences by the calendar day their window starts on, ascending.
std::vector<TradingDay> group_by_day(const Dataset& data);

struct ExceptionalConfig {
    MiningConfig mining;               // workers parallelize across target days
    std::size_t benchmark_days = 20;   // immediately preceding trading days
    double min_ii = 0.0;
    double min_ie = 1.0;
    std::vector<double> benchmark_weights;  // oldest first; empty means equal
    Duration bucket_length{60};
    std::optional<Date> target_date;   // default: every day with enough history
};

/// Throws InputError on negative thresholds or a weight vector of the wrong size.
void validate(const ExceptionalConfig& cfg);

struct ExceptionalPattern {
    Pattern pattern;
    Date date{};
    double support = 0.0;
    double ii = 0.0;
    MetricValue ie;
    MetricValue ar;  // undefined when fewer than three price buckets
    std::string security;  // instrument the AR series was taken from
};

struct ExceptionalReport {
    std::vector<ExceptionalPattern> patterns;  // descending I_e, then pattern, then date
    std::vector<std::string> warnings;
};

/// Frequent patterns of each target day scored against its benchmark days and
/// kept when both interestingness thresholds hold. AR is taken over the
/// bucketed VWAP series of orders by accounts whose sequence contains the
/// pattern, on the instrument carrying most of their volume.
ExceptionalReport mine_exceptional(const std::vector<TradingDay>& days, const ExceptionalConfig& cfg);

/// AR of the given orders: VWAP per bucket, then abnormal_return. Undefined
/// when there are fewer than three buckets.
MetricValue bucketed_abnormal_return(const std::vector<OrderStamp>& orders, Timestamp origin, Duration bucket);

struct SeverityTiers {
    double medium = 5.0;
    double high = 10.0;
};

struct AlertRule {
    Pattern pattern;
    Date date{};
    MetricValue ie;
    std::string severity;  // low, medium, high
    std::string message;

    /// True when the sequence contains the rule's pattern.
    bool fires(const BehaviorSequence& seq) const;
};

std::string severity_of(const MetricValue& ie, const SeverityTiers& tiers = {});

std::vector<AlertRule> to_alert_rules(const std::vector<ExceptionalPattern>& patterns,
                                      const SeverityTiers& tiers = {});

Json to_json(const ExceptionalPattern& p, const SeverityTiers& tiers = {});
ExceptionalPattern exceptional_pattern_from_json(const Json& j);

}  // namespace behaviorlab
