#include "behaviorlab/metrics.hpp"

#include <cmath>
#include <limits>

#include "behaviorlab/error.hpp"

namespace behaviorlab {

MetricValue MetricValue::novel() {
    return MetricValue(std::numeric_limits<double>::infinity(), MetricStatus::novel);
}

MetricValue MetricValue::undefined() {
    return MetricValue(std::numeric_limits<double>::quiet_NaN(), MetricStatus::undefined);
}

bool MetricValue::at_least(double threshold) const noexcept {
    switch (status_) {
        case MetricStatus::ok: return value_ >= threshold;
        case MetricStatus::novel: return true;
        case MetricStatus::undefined: return false;
    }
    return false;
}

bool metric_greater(const MetricValue& a, const MetricValue& b) noexcept {
    auto rank = [](const MetricValue& m) {
        return m.status_ == MetricStatus::undefined ? 0 : m.status_ == MetricStatus::ok ? 1 : 2;
    };
    if (rank(a) != rank(b)) {
        return rank(a) > rank(b);
    }
    return a.ok() && a.value_ > b.value_;
}

bool MetricValue::operator==(const MetricValue& other) const noexcept {
    return status_ == other.status_ && (status_ != MetricStatus::ok || value_ == other.value_);
}

std::string to_string(MetricStatus status) {
    switch (status) {
        case MetricStatus::ok: return "ok";
        case MetricStatus::novel: return "novel";
        case MetricStatus::undefined: return "undefined";
    }
    return "undefined";
}

MetricValue confidence(double supp_rule, double supp_antecedent) {
    if (supp_antecedent <= 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of(supp_rule / supp_antecedent);
}

MetricValue lift(const MetricValue& conf, double supp_label) {
    if (!conf.ok() || supp_label <= 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of(conf.value() / supp_label);
}

double vwap(std::span<const PriceVolume> orders) {
    double notional = 0.0;
    double volume = 0.0;
    for (const auto& o : orders) {
        notional += o.price * o.volume;
        volume += o.volume;
    }
    if (volume <= 0.0) {
        throw InputError("vwap of an empty bucket");
    }
    return notional / volume;
}

double abnormal_return(std::span<const PricePoint> prices) {
    if (prices.size() < 3) {
        throw InputError("abnormal return needs at least 3 price points");
    }
    const std::size_t n = prices.size() - 1;
    double mean = 0.0;
    for (std::size_t i = 1; i < prices.size(); ++i) {
        if (prices[i].time_bucket <= prices[i - 1].time_bucket) {
            throw InputError("price buckets must be strictly increasing");
        }
        if (prices[i].vwap <= 0.0 || prices[i - 1].vwap <= 0.0) {
            throw InputError("prices must be positive");
        }
        mean += std::log(prices[i].vwap / prices[i - 1].vwap);
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const double d = std::log(prices[i].vwap / prices[i - 1].vwap) - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return sd / std::sqrt(static_cast<double>(n));
}

double intentional_interestingness(double supp, std::size_t pattern_len, double avg_len) {
    if (!(avg_len > 0.0)) {
        throw InputError("average sequence length must be positive");
    }
    return supp * static_cast<double>(pattern_len) / avg_len;
}

MetricValue exceptional_interestingness(double supp, double avg_len, std::span<const BenchmarkPeriod> bench) {
    if (!(avg_len > 0.0)) {
        throw InputError("average sequence length must be positive");
    }
    double weight_sum = 0.0;
    double denominator = 0.0;
    for (const auto& b : bench) {
        if (!(b.avg_len > 0.0)) {
            throw InputError("benchmark average length must be positive");
        }
        weight_sum += b.weight;
        denominator += b.support / b.avg_len * b.weight;
    }
    if (!(weight_sum > 0.0)) {
        throw InputError("benchmark weights must sum to a positive value");
    }
    const double numerator = supp / avg_len * weight_sum;
    if (denominator <= 0.0) {
        return numerator > 0.0 ? MetricValue::novel() : MetricValue::undefined();
    }
    return MetricValue::of(numerator / denominator);
}

double class_difference(double supp_a, double supp_b) { return supp_a - supp_b; }

MetricValue class_difference_ratio(double supp_a, double supp_b) {
    if (supp_b <= 0.0) {
        return supp_a > 0.0 ? MetricValue::novel() : MetricValue::undefined();
    }
    return MetricValue::of(supp_a / supp_b);
}

MetricValue conditional_impact_ratio(double prob_pq_l, double prob_pq, double prob_p_l, double prob_p) {
    if (prob_pq <= 0.0 || prob_p_l <= 0.0 || prob_p <= 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of((prob_pq_l / prob_pq) / (prob_p_l / prob_p));
}

MetricValue conditional_ps_ratio(double prob_pq_l, double prob_pq, double prob_p_l, double prob_p) {
    if (prob_p <= 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of(prob_pq_l / prob_p - (prob_pq / prob_p) * (prob_p_l / prob_p));
}

Risk risk(std::span<const RiskInstance> matches) {
    double amt_target = 0.0, amt_all = 0.0, dur_target = 0.0, dur_all = 0.0;
    for (const auto& m : matches) {
        amt_all += m.amount;
        dur_all += m.duration;
        if (m.target) {
            amt_target += m.amount;
            dur_target += m.duration;
        }
    }
    Risk out;
    out.amount = amt_all > 0.0 ? MetricValue::of(amt_target / amt_all) : MetricValue::undefined();
    out.duration = dur_all > 0.0 ? MetricValue::of(dur_target / dur_all) : MetricValue::undefined();
    return out;
}

MetricValue pattern_interestingness(const MetricValue& lift, const MetricValue& lift_d, const MetricValue& lift_a) {
    if (!lift.ok() || !lift_d.ok() || !lift_a.ok() || lift_d.value() <= 0.0 || lift_a.value() <= 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of(lift.value() / (lift_d.value() * lift_a.value()));
}

}  // namespace behaviorlab
