#include "behaviorlab/microstructure_miner.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "behaviorlab/error.hpp"
#include "parallel.hpp"

namespace behaviorlab {

std::vector<TradingDay> group_by_day(const Dataset& data) {
    std::map<Date, Dataset> by_day;
    for (const auto& seq : data) {
        by_day[std::chrono::floor<std::chrono::days>(seq.window.start)].push_back(seq);
    }
    std::vector<TradingDay> out;
    for (auto& [date, seqs] : by_day) {
        out.push_back({date, std::move(seqs)});
    }
    return out;
}

void validate(const ExceptionalConfig& cfg) {
    validate(cfg.mining);
    if (cfg.benchmark_days == 0) {
        throw InputError("at least one benchmark day is required");
    }
    if (cfg.min_ii < 0 || cfg.min_ie < 0) {
        throw InputError("interestingness thresholds must be non-negative");
    }
    if (!cfg.benchmark_weights.empty() && cfg.benchmark_weights.size() != cfg.benchmark_days) {
        throw InputError("benchmark weights must match the number of benchmark days");
    }
    for (double w : cfg.benchmark_weights) {
        if (!(w >= 0)) {
            throw InputError("benchmark weights must be non-negative");
        }
    }
    if (cfg.bucket_length.count() <= 0) {
        throw InputError("bucket length must be positive");
    }
}

MetricValue bucketed_abnormal_return(const std::vector<OrderStamp>& orders, Timestamp origin, Duration bucket) {
    std::map<std::int64_t, std::pair<double, double>> sums;  // bucket -> (Σ price·volume, Σ volume)
    for (const auto& o : orders) {
        auto offset = (o.time - origin).count();
        auto b = offset >= 0 ? offset / bucket.count() : -((-offset + bucket.count() - 1) / bucket.count());
        auto& s = sums[b];
        s.first += o.price * static_cast<double>(o.volume);
        s.second += static_cast<double>(o.volume);
    }
    std::vector<PricePoint> points;
    for (const auto& [b, s] : sums) {
        if (s.second > 0 && s.first > 0) {
            points.push_back({b, s.first / s.second});
        }
    }
    if (points.size() < 3) {
        return MetricValue::undefined();
    }
    return MetricValue::of(abnormal_return(points));
}

namespace {

double average_length(const Dataset& data) {
    double weighted = 0, total = 0;
    for (const auto& seq : data) {
        weighted += static_cast<double>(seq.weight) * static_cast<double>(seq.items.size());
        total += static_cast<double>(seq.weight);
    }
    return total > 0 ? weighted / total : 0.0;
}

std::string day_text(Date d) { return format_date(d); }

/// Orders of the covering sequences on the instrument with most of their volume.
std::pair<std::string, std::vector<OrderStamp>> dominant_orders(const Dataset& day,
                                                               const std::vector<std::uint32_t>& cover) {
    std::map<std::string, std::vector<OrderStamp>> by_security;
    std::map<std::string, std::int64_t> volume;
    for (auto idx : cover) {
        for (const auto& s : day[idx].stamps) {
            by_security[s.security].push_back(s);
            volume[s.security] += s.volume;
        }
    }
    std::string best;
    std::int64_t best_volume = -1;
    for (const auto& [security, v] : volume) {
        if (v > best_volume) {
            best = security;
            best_volume = v;
        }
    }
    return {best, std::move(by_security[best])};
}

}  // namespace

ExceptionalReport mine_exceptional(const std::vector<TradingDay>& days, const ExceptionalConfig& cfg) {
    validate(cfg);
    for (std::size_t i = 1; i < days.size(); ++i) {
        if (!(days[i - 1].date < days[i].date)) {
            throw InputError("trading days must be distinct and ascending");
        }
    }
    ExceptionalReport report;
    const std::size_t m = cfg.benchmark_days;
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < days.size(); ++i) {
        if (cfg.target_date && days[i].date != *cfg.target_date) {
            continue;
        }
        if (i < m) {
            report.warnings.push_back("day " + day_text(days[i].date) + " skipped: " + std::to_string(i) +
                                      " prior trading days, " + std::to_string(m) + " required");
            continue;
        }
        targets.push_back(i);
    }
    if (cfg.target_date && targets.empty() && report.warnings.empty()) {
        report.warnings.push_back("target day " + day_text(*cfg.target_date) + " not present in the input");
    }

    std::vector<double> weights = cfg.benchmark_weights;
    if (weights.empty()) {
        weights.assign(m, 1.0 / static_cast<double>(m));
    }

    std::vector<std::vector<ExceptionalPattern>> found(targets.size());
    MiningConfig per_day = cfg.mining;
    per_day.workers = 1;
    detail::parallel_for(targets.size(), cfg.mining.workers, [&](std::size_t t) {
        const auto& day = days[targets[t]];
        if (day.sequences.empty()) {
            return;
        }
        const double avg_len = average_length(day.sequences);
        std::vector<SupportIndex> bench_index;
        std::vector<double> bench_len;
        for (std::size_t j = targets[t] - m; j < targets[t]; ++j) {
            bench_index.emplace_back(days[j].sequences, cfg.mining.contiguous);
            const double len = average_length(days[j].sequences);
            bench_len.push_back(len > 0 ? len : 1.0);
        }
        const SupportIndex day_index(day.sequences, cfg.mining.contiguous);
        for (const auto& sp : mine_frequent(day.sequences, per_day)) {
            const double ii = intentional_interestingness(sp.support, sp.pattern.size(), avg_len);
            if (ii < cfg.min_ii) {
                continue;
            }
            std::vector<BenchmarkPeriod> bench;
            for (std::size_t j = 0; j < m; ++j) {
                const double supp = bench_index[j].total_weight() > 0
                                        ? static_cast<double>(bench_index[j].count(sp.pattern).total) /
                                              static_cast<double>(bench_index[j].total_weight())
                                        : 0.0;
                bench.push_back({supp, bench_len[j], weights[j]});
            }
            auto ie = exceptional_interestingness(sp.support, avg_len, bench);
            if (!ie.at_least(cfg.min_ie)) {
                continue;
            }
            ExceptionalPattern p{sp.pattern, day.date, sp.support, ii, ie, MetricValue::undefined(), ""};
            auto [security, orders] = dominant_orders(day.sequences, day_index.cover(sp.pattern));
            p.security = security;
            p.ar = bucketed_abnormal_return(orders, Timestamp{day.date}, cfg.bucket_length);
            found[t].push_back(std::move(p));
        }
    });
    for (auto& f : found) {
        for (auto& p : f) {
            report.patterns.push_back(std::move(p));
        }
    }
    std::stable_sort(report.patterns.begin(), report.patterns.end(),
                     [](const ExceptionalPattern& a, const ExceptionalPattern& b) {
                         if (metric_greater(a.ie, b.ie) || metric_greater(b.ie, a.ie)) {
                             return metric_greater(a.ie, b.ie);
                         }
                         if (a.pattern != b.pattern) {
                             return a.pattern < b.pattern;
                         }
                         return a.date < b.date;
                     });
    return report;
}

// ---------------------------------------------------------------------------
// Alert rules
// ---------------------------------------------------------------------------

bool AlertRule::fires(const BehaviorSequence& seq) const { return contains(seq, pattern); }

std::string severity_of(const MetricValue& ie, const SeverityTiers& tiers) {
    if (ie.at_least(tiers.high)) {
        return "high";
    }
    return ie.at_least(tiers.medium) ? "medium" : "low";
}

std::vector<AlertRule> to_alert_rules(const std::vector<ExceptionalPattern>& patterns, const SeverityTiers& tiers) {
    std::vector<AlertRule> out;
    for (const auto& p : patterns) {
        AlertRule rule{p.pattern};
        rule.date = p.date;
        rule.ie = p.ie;
        rule.severity = severity_of(p.ie, tiers);
        char ie_text[32];
        if (p.ie.ok()) {
            std::snprintf(ie_text, sizeof ie_text, "%.2f", p.ie.value());
        } else {
            std::snprintf(ie_text, sizeof ie_text, "%s", to_string(p.ie.status()).c_str());
        }
        rule.message = "[" + rule.severity + "] " + format_date(p.date) + ": account sequence contains " +
                       to_string(p.pattern) + " (I_e " + ie_text + ")";
        out.push_back(std::move(rule));
    }
    return out;
}

Json to_json(const ExceptionalPattern& p, const SeverityTiers& tiers) {
    Json j;
    j["date"] = format_date(p.date);
    j["pattern"] = to_json(p.pattern);
    j["support"] = p.support;
    j["I_i"] = p.ii;
    j["I_e"] = to_json(p.ie);
    j["AR"] = to_json(p.ar);
    j["AR_percent"] = to_json(p.ar.ok() ? MetricValue::of(p.ar.value() * 100.0) : p.ar);
    j["security"] = p.security;
    j["severity"] = severity_of(p.ie, tiers);
    return j;
}

ExceptionalPattern exceptional_pattern_from_json(const Json& j) {
    try {
        auto date = parse_date(j.at("date").get<std::string>());
        if (!date) {
            throw SchemaError("bad date in exceptional pattern record");
        }
        ExceptionalPattern p{pattern_from_json(j.at("pattern"), ItemKind::microstructure_vector)};
        p.date = *date;
        p.support = j.value("support", 0.0);
        p.ii = j.at("I_i").get<double>();
        p.ie = metric_from_json(j.at("I_e"));
        p.ar = metric_from_json(j.at("AR"));
        p.security = j.value("security", std::string());
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid exceptional pattern record: ") + e.what());
    }
}

}  // namespace behaviorlab
