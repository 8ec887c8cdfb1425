#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace behaviorlab {

enum class MetricStatus : std::uint8_t { ok, novel, undefined };

/// A metric value or a typed sentinel. `novel` stands for +inf (a pattern
/// never seen in the reference data), `undefined` for a zero denominator.
class MetricValue {
public:
    MetricValue() = default;

    static MetricValue of(double v) { return MetricValue(v, MetricStatus::ok); }
    static MetricValue novel();
    static MetricValue undefined();

    bool ok() const noexcept { return status_ == MetricStatus::ok; }
    MetricStatus status() const noexcept { return status_; }
    /// +inf for novel, NaN for undefined.
    double value() const noexcept { return value_; }

    /// undefined < any number < novel; used for report ordering and thresholds.
    bool at_least(double threshold) const noexcept;
    friend bool metric_greater(const MetricValue& a, const MetricValue& b) noexcept;

    bool operator==(const MetricValue& other) const noexcept;

private:
    MetricValue(double v, MetricStatus s) : value_(v), status_(s) {}

    double value_ = 0.0;
    MetricStatus status_ = MetricStatus::undefined;
};

std::string to_string(MetricStatus status);

// ---------------------------------------------------------------------------
// Association rule basics
// ---------------------------------------------------------------------------

/// Supp(X→L) / Supp(X).
MetricValue confidence(double supp_rule, double supp_antecedent);

/// conf(X→L) / Supp(L).
MetricValue lift(const MetricValue& conf, double supp_label);

// ---------------------------------------------------------------------------
// Market impact
// ---------------------------------------------------------------------------

struct PriceVolume {
    double price = 0.0;
    double volume = 0.0;
};

struct PricePoint {
    std::int64_t time_bucket = 0;
    double vwap = 0.0;
};

/// Σ(price×volume)/Σvolume. Throws InputError when Σvolume <= 0.
double vwap(std::span<const PriceVolume> orders);

/// Sample standard deviation of log returns between consecutive points,
/// divided by the square root of the number of returns. Needs at least three
/// points with strictly increasing buckets; throws InputError otherwise.
double abnormal_return(std::span<const PricePoint> prices);

// ---------------------------------------------------------------------------
// Interestingness
// ---------------------------------------------------------------------------

/// supp · pattern_len / avg_len.
double intentional_interestingness(double supp, std::size_t pattern_len, double avg_len);

struct BenchmarkPeriod {
    double support = 0.0;
    double avg_len = 1.0;
    double weight = 1.0;
};

/// How much more often a pattern shows in the target period than in the
/// weighted benchmark periods, after length normalization. `novel` when the
/// pattern is absent from every benchmark.
MetricValue exceptional_interestingness(double supp, double avg_len, std::span<const BenchmarkPeriod> bench);

// ---------------------------------------------------------------------------
// Contrast and reversal
// ---------------------------------------------------------------------------

/// supp_a - supp_b. The opposite direction is class_difference(supp_b, supp_a).
double class_difference(double supp_a, double supp_b);

/// supp_a / supp_b; novel when supp_b is zero and supp_a is not.
MetricValue class_difference_ratio(double supp_a, double supp_b);

/// [Prob(PQ→L)/Prob(PQ)] / [Prob(P→L)/Prob(P)].
MetricValue conditional_impact_ratio(double prob_pq_l, double prob_pq, double prob_p_l, double prob_p);

/// Prob(PQ→L)/Prob(P) - (Prob(PQ)/Prob(P))·(Prob(P→L)/Prob(P)).
MetricValue conditional_ps_ratio(double prob_pq_l, double prob_pq, double prob_p_l, double prob_p);

// ---------------------------------------------------------------------------
// Debt risk
// ---------------------------------------------------------------------------

/// One sequence matching a pattern with its debt ledger (zeros when none).
struct RiskInstance {
    bool target = false;
    double amount = 0.0;
    double duration = 0.0;
};

struct Risk {
    MetricValue amount;
    MetricValue duration;
};

/// Share of debt amount (duration) carried by the target-labeled matches.
Risk risk(std::span<const RiskInstance> matches);

// ---------------------------------------------------------------------------
// Combined patterns
// ---------------------------------------------------------------------------

/// lift / (lift_D · lift_A).
MetricValue pattern_interestingness(const MetricValue& lift, const MetricValue& lift_d, const MetricValue& lift_a);

}  // namespace behaviorlab
