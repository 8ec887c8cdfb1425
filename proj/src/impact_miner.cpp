#include "behaviorlab/impact_miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "behaviorlab/error.hpp"

namespace behaviorlab {

namespace {

RiskInstance instance_of(const BehaviorSequence& seq) {
    RiskInstance r;
    r.target = seq.label.target;
    if (seq.debt) {
        r.amount = seq.debt->amount * static_cast<double>(seq.weight);
        r.duration = static_cast<double>(seq.debt->duration_days) * static_cast<double>(seq.weight);
    }
    return r;
}

Risk risk_over(const Dataset& data, const std::vector<std::uint32_t>& idx) {
    std::vector<RiskInstance> matches;
    matches.reserve(idx.size());
    for (auto i : idx) {
        matches.push_back(instance_of(data[i]));
    }
    return risk(matches);
}

void put_risk(Json& j, const std::optional<Risk>& r) {
    if (r) {
        j["risk_amt"] = to_json(r->amount);
        j["risk_dur"] = to_json(r->duration);
    }
}

std::optional<Risk> get_risk(const Json& j) {
    if (!j.contains("risk_amt")) {
        return std::nullopt;
    }
    return Risk{metric_from_json(j.at("risk_amt")), metric_from_json(j.at("risk_dur"))};
}

}  // namespace

Risk pattern_risk(const Pattern& p, const Dataset& data) {
    return risk_over(data, SupportIndex(data).cover(p));
}

// ---------------------------------------------------------------------------
// Contrast
// ---------------------------------------------------------------------------

std::pair<Dataset, Dataset> split_by_label(const Dataset& data, const std::string& label) {
    std::pair<Dataset, Dataset> out;
    for (const auto& seq : data) {
        (seq.label.display == label ? out.first : out.second).push_back(seq);
    }
    return out;
}

ContrastReport mine_contrast(const Dataset& a, const Dataset& b, const MiningConfig& cfg) {
    validate(cfg);
    if (a.empty() || b.empty()) {
        throw InputError("contrast mining needs two non-empty datasets");
    }
    ContrastReport report;
    std::set<Item> alpha_a, alpha_b;
    for (const auto& s : a) {
        alpha_a.insert(s.items.begin(), s.items.end());
    }
    for (const auto& s : b) {
        alpha_b.insert(s.items.begin(), s.items.end());
    }
    const bool shared = std::any_of(alpha_a.begin(), alpha_a.end(), [&](const Item& i) { return alpha_b.count(i); });
    if (!shared) {
        report.warnings.push_back("the two datasets share no items; nothing to contrast");
        return report;
    }
    std::set<Pattern> candidates;
    for (const auto& sp : mine_frequent(a, cfg)) {
        candidates.insert(sp.pattern);
    }
    for (const auto& sp : mine_frequent(b, cfg)) {
        candidates.insert(sp.pattern);
    }
    const SupportIndex index_a(a, cfg.contiguous), index_b(b, cfg.contiguous);
    for (const auto& p : candidates) {
        ContrastPattern c{p};
        c.supp_a = static_cast<double>(index_a.count(p).total) / static_cast<double>(index_a.total_weight());
        c.supp_b = static_cast<double>(index_b.count(p).total) / static_cast<double>(index_b.total_weight());
        c.cd_ab = class_difference(c.supp_a, c.supp_b);
        c.cd_ba = class_difference(c.supp_b, c.supp_a);
        c.cdr_ab = class_difference_ratio(c.supp_a, c.supp_b);
        c.cdr_ba = class_difference_ratio(c.supp_b, c.supp_a);
        report.patterns.push_back(std::move(c));
    }
    std::stable_sort(report.patterns.begin(), report.patterns.end(),
                     [](const ContrastPattern& x, const ContrastPattern& y) {
                         const double dx = std::abs(x.cd_ab), dy = std::abs(y.cd_ab);
                         if (dx != dy) {
                             return dx > dy;
                         }
                         return x.pattern < y.pattern;
                     });
    return report;
}

// ---------------------------------------------------------------------------
// Reversals
// ---------------------------------------------------------------------------

ReversalReport mine_reversals(const Dataset& data, const ReversalConfig& cfg) {
    validate(cfg.mining);
    if (cfg.cir_min < 0) {
        throw InputError("cir_min must be non-negative");
    }
    ReversalReport report;
    std::string target_label, other_label;
    for (const auto& seq : data) {
        auto& slot = seq.label.target ? target_label : other_label;
        if (slot.empty()) {
            slot = seq.label.display;
        }
    }
    if (target_label.empty() || other_label.empty()) {
        report.warnings.push_back("dataset carries a single label; no reversal is possible");
        return report;
    }
    const auto frequent = mine_frequent(data, cfg.mining);
    std::map<Pattern, const SupportedPattern*> by_pattern;
    for (const auto& sp : frequent) {
        by_pattern.emplace(sp.pattern, &sp);
    }
    std::uint64_t total = 0;
    for (const auto& seq : data) {
        total += seq.weight;
    }
    const double n = static_cast<double>(total);

    for (const auto& pq : frequent) {
        const auto& items = pq.pattern.items();
        for (std::size_t k = 1; k < items.size(); ++k) {
            const Pattern p(std::vector<Item>(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(k)));
            const Pattern q(std::vector<Item>(items.begin() + static_cast<std::ptrdiff_t>(k), items.end()));
            auto it = by_pattern.find(p);
            if (it == by_pattern.end()) {
                continue;  // only reachable for itemsets, whose prefixes are not subpatterns in order
            }
            const auto& under = *it->second;
            for (bool to_target : {false, true}) {
                const double p_l = static_cast<double>(to_target ? under.count_target : under.count_nontarget);
                const double pq_l = static_cast<double>(to_target ? pq.count_target : pq.count_nontarget);
                const double p_all = static_cast<double>(under.count);
                const double pq_all = static_cast<double>(pq.count);
                const auto conf_p = confidence(p_l / n, p_all / n);
                const auto conf_pq = confidence(pq_l / n, pq_all / n);
                if (!(conf_p.ok() && conf_pq.ok() && conf_p.value() < 0.5 && conf_pq.value() >= 0.5)) {
                    continue;
                }
                const auto cir = conditional_impact_ratio(pq_l / n, pq_all / n, p_l / n, p_all / n);
                const auto cps = conditional_ps_ratio(pq_l / n, pq_all / n, p_l / n, p_all / n);
                if (!cir.at_least(cfg.cir_min) || !cps.at_least(cfg.cps_min)) {
                    continue;
                }
                ReversalPair r{p, q, pq.pattern};
                r.from_label = to_target ? other_label : target_label;
                r.to_label = to_target ? target_label : other_label;
                r.support_underlying = under.support;
                r.support_derivative = pq.support;
                r.conf_underlying = conf_p;
                r.conf_derivative = conf_pq;
                r.cir = cir;
                r.cps = cps;
                report.pairs.push_back(std::move(r));
            }
        }
    }
    std::stable_sort(report.pairs.begin(), report.pairs.end(), [](const ReversalPair& a, const ReversalPair& b) {
        if (metric_greater(a.cir, b.cir) || metric_greater(b.cir, a.cir)) {
            return metric_greater(a.cir, b.cir);
        }
        if (metric_greater(a.cps, b.cps) || metric_greater(b.cps, a.cps)) {
            return metric_greater(a.cps, b.cps);
        }
        return std::tie(a.derivative, a.underlying, a.to_label) < std::tie(b.derivative, b.underlying, b.to_label);
    });
    return report;
}

// ---------------------------------------------------------------------------
// Risk annotation
// ---------------------------------------------------------------------------

void annotate_risk(std::vector<ContrastPattern>& patterns, const Dataset& ledgers) {
    const SupportIndex index(ledgers);
    for (auto& c : patterns) {
        c.risk = risk_over(ledgers, index.cover(c.pattern));
    }
}

void annotate_risk(std::vector<ReversalPair>& pairs, const Dataset& ledgers) {
    const SupportIndex index(ledgers);
    for (auto& r : pairs) {
        r.risk = risk_over(ledgers, index.cover(r.derivative));
    }
}

std::vector<std::optional<Risk>> risk_for_rules(const std::vector<ImpactRule>& rules, const Dataset& ledgers) {
    const SupportIndex index(ledgers);
    std::vector<std::optional<Risk>> out;
    for (const auto& rule : rules) {
        auto cover = index.cover(rule.pattern);
        if (rule.negated) {
            std::vector<std::uint32_t> rest;
            std::size_t k = 0;
            for (std::uint32_t i = 0; i < ledgers.size(); ++i) {
                if (k < cover.size() && cover[k] == i) {
                    ++k;
                } else {
                    rest.push_back(i);
                }
            }
            cover = std::move(rest);
        }
        out.push_back(risk_over(ledgers, cover));
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

Json to_json(const ContrastPattern& c) {
    Json j;
    j["pattern"] = to_json(c.pattern);
    j["supp_A"] = c.supp_a;
    j["supp_B"] = c.supp_b;
    j["Cd"] = c.cd_ab;
    j["Cdr"] = to_json(c.cdr_ab);
    j["Cd_BA"] = c.cd_ba;
    j["Cdr_BA"] = to_json(c.cdr_ba);
    put_risk(j, c.risk);
    return j;
}

ContrastPattern contrast_pattern_from_json(const Json& j, ItemKind kind) {
    try {
        ContrastPattern c{pattern_from_json(j.at("pattern"), kind)};
        c.supp_a = j.at("supp_A").get<double>();
        c.supp_b = j.at("supp_B").get<double>();
        c.cd_ab = j.at("Cd").get<double>();
        c.cdr_ab = metric_from_json(j.at("Cdr"));
        c.cd_ba = j.at("Cd_BA").get<double>();
        c.cdr_ba = metric_from_json(j.at("Cdr_BA"));
        c.risk = get_risk(j);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid contrast record: ") + e.what());
    }
}

Json to_json(const ReversalPair& r) {
    Json j;
    j["P"] = to_json(r.underlying);
    j["Q"] = to_json(r.trigger);
    j["PQ"] = to_json(r.derivative);
    j["direction"] = r.from_label + "->" + r.to_label;
    j["supp_P"] = r.support_underlying;
    j["supp_PQ"] = r.support_derivative;
    j["conf_P"] = to_json(r.conf_underlying);
    j["conf_PQ"] = to_json(r.conf_derivative);
    j["Cir"] = to_json(r.cir);
    j["Cps"] = to_json(r.cps);
    put_risk(j, r.risk);
    return j;
}

ReversalPair reversal_pair_from_json(const Json& j, ItemKind kind) {
    try {
        const auto p = pattern_from_json(j.at("P"), kind);
        const auto q = pattern_from_json(j.at("Q"), kind);
        ReversalPair r{p, q, concat(p, q)};
        const auto direction = j.at("direction").get<std::string>();
        const auto arrow = direction.find("->");
        if (arrow == std::string::npos) {
            throw SchemaError("reversal direction must read FROM->TO");
        }
        r.from_label = direction.substr(0, arrow);
        r.to_label = direction.substr(arrow + 2);
        r.support_underlying = j.value("supp_P", 0.0);
        r.support_derivative = j.value("supp_PQ", 0.0);
        r.conf_underlying = j.contains("conf_P") ? metric_from_json(j.at("conf_P")) : MetricValue::undefined();
        r.conf_derivative = j.contains("conf_PQ") ? metric_from_json(j.at("conf_PQ")) : MetricValue::undefined();
        r.cir = metric_from_json(j.at("Cir"));
        r.cps = metric_from_json(j.at("Cps"));
        r.risk = get_risk(j);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid reversal record: ") + e.what());
    }
}

Json to_json(const ImpactRule& r, const std::optional<Risk>& risk) {
    Json j;
    j["pattern"] = to_json(r.pattern);
    j["negated"] = r.negated;
    j["label"] = r.label;
    j["count"] = r.count;
    j["support"] = r.support;
    j["confidence"] = to_json(r.confidence);
    j["lift"] = to_json(r.lift);
    put_risk(j, risk);
    return j;
}

}  // namespace behaviorlab
