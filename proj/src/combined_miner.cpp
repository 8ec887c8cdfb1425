#include "behaviorlab/combined_miner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "behaviorlab/error.hpp"
#include "parallel.hpp"

namespace behaviorlab {

void validate(const CombinedConfig& cfg) {
    validate(cfg.demographic);
    validate(cfg.activity);
    if (!(cfg.min_support > 0.0 && cfg.min_support <= 1.0)) {
        throw InputError("joint min_support must be in (0, 1]");
    }
}

void score(CombinedPattern& p, double n, double n_t, double n_d, double n_dt, double n_a, double n_at, double n_da,
           double n_dat) {
    const double supp_t = n_t / n;
    p.count = static_cast<std::uint64_t>(n_dat);
    p.support = n_dat / n;
    p.confidence = confidence(n_dat / n, n_da / n);
    p.lift = lift(p.confidence, supp_t);
    p.lift_d = lift(confidence(n_dt / n, n_d / n), supp_t);
    p.lift_a = lift(confidence(n_at / n, n_a / n), supp_t);
    p.ip = pattern_interestingness(p.lift, p.lift_d, p.lift_a);
}

namespace {

using Cover = std::vector<std::uint32_t>;

Cover intersect(const Cover& a, const Cover& b) {
    Cover out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

double weight_of(const Cover& c, const std::vector<std::uint64_t>& weights) {
    double w = 0;
    for (auto i : c) {
        w += static_cast<double>(weights[i]);
    }
    return w;
}

double weight_in_class(const Cover& c, const std::vector<std::uint64_t>& weights, const std::vector<int>& cls,
                       int k) {
    double w = 0;
    for (auto i : c) {
        w += cls[i] == k ? static_cast<double>(weights[i]) : 0.0;
    }
    return w;
}

bool item_disjoint(const Pattern& a, const Pattern& b) {
    std::set<Item> left(a.items().begin(), a.items().end());
    return std::none_of(b.items().begin(), b.items().end(), [&](const Item& i) { return left.count(i) > 0; });
}

bool parts_compatible(const Pattern& a, const Pattern& b, bool strict) {
    return strict ? item_disjoint(a, b) : a != b;
}

}  // namespace

CombinedReport mine_combined(const Dataset& demographics, const Dataset& activities, const CombinedConfig& cfg) {
    validate(cfg);
    if (demographics.empty()) {
        throw InputError("combined mining needs demographic records");
    }
    for (const auto& s : demographics) {
        if (s.item_kind != ItemKind::demographic_item) {
            throw InputError("demographic input holds " + to_string(s.item_kind) + " records");
        }
    }
    std::map<std::string, std::size_t> person;
    for (std::size_t i = 0; i < demographics.size(); ++i) {
        if (!person.emplace(demographics[i].subject_id, i).second) {
            throw InputError("duplicate person in demographics: " + demographics[i].subject_id);
        }
    }

    // Activities aligned with the demographic records.
    Dataset aligned(demographics.size());
    for (std::size_t i = 0; i < demographics.size(); ++i) {
        aligned[i].subject_id = demographics[i].subject_id;
        aligned[i].label = demographics[i].label;
        aligned[i].item_kind = ItemKind::activity_code;
        aligned[i].weight = demographics[i].weight;
    }
    std::set<std::string> orphans;
    Dataset sorted_acts = activities;
    std::stable_sort(sorted_acts.begin(), sorted_acts.end(), [](const auto& a, const auto& b) {
        return std::tie(a.subject_id, a.window.start) < std::tie(b.subject_id, b.window.start);
    });
    for (const auto& s : sorted_acts) {
        if (s.item_kind != ItemKind::activity_code) {
            throw InputError("activity input holds " + to_string(s.item_kind) + " records");
        }
        auto it = person.find(s.subject_id);
        if (it == person.end()) {
            orphans.insert(s.subject_id);
            continue;
        }
        auto& items = aligned[it->second].items;
        items.insert(items.end(), s.items.begin(), s.items.end());
    }
    if (!orphans.empty()) {
        std::string list;
        for (const auto& o : orphans) {
            list += (list.empty() ? "" : ", ") + o;
        }
        throw InputError("activity subjects without a demographic record: " + list);
    }

    CombinedReport report;
    std::vector<std::string> class_names = cfg.classes;
    std::map<std::string, int> class_index;
    if (class_names.empty()) {
        std::set<std::string> present;
        for (const auto& s : demographics) {
            present.insert(s.label.display);
        }
        class_names.assign(present.begin(), present.end());
    }
    for (std::size_t k = 0; k < class_names.size(); ++k) {
        class_index[class_names[k]] = static_cast<int>(k);
    }
    std::vector<int> cls(demographics.size(), -1);
    std::vector<std::uint64_t> weights(demographics.size());
    std::vector<double> class_weight(class_names.size(), 0.0);
    double n = 0;
    for (std::size_t i = 0; i < demographics.size(); ++i) {
        auto it = class_index.find(demographics[i].label.display);
        cls[i] = it == class_index.end() ? -1 : it->second;
        weights[i] = demographics[i].weight;
        n += static_cast<double>(weights[i]);
        if (cls[i] >= 0) {
            class_weight[static_cast<std::size_t>(cls[i])] += static_cast<double>(weights[i]);
        }
    }
    for (std::size_t k = 0; k < class_names.size(); ++k) {
        if (class_weight[k] == 0) {
            report.warnings.push_back("class " + class_names[k] + " has no persons");
        }
    }

    const auto d_patterns = mine_frequent(demographics, cfg.demographic);
    const auto a_patterns = mine_frequent(aligned, cfg.activity);
    const SupportIndex d_index(demographics), a_index(aligned, cfg.activity.contiguous);
    std::vector<Cover> a_covers;
    for (const auto& ap : a_patterns) {
        a_covers.push_back(a_index.cover(ap.pattern));
    }
    const auto needed = static_cast<double>(min_count(cfg.min_support, static_cast<std::uint64_t>(n)));

    std::vector<std::vector<CombinedPattern>> found(d_patterns.size());
    detail::parallel_for(d_patterns.size(), cfg.demographic.workers, [&](std::size_t di) {
        const auto& dp = d_patterns[di];
        const auto d_cover = d_index.cover(dp.pattern);
        const double n_d = weight_of(d_cover, weights);
        for (std::size_t k = 0; k < class_names.size(); ++k) {
            const double n_t = class_weight[k];
            if (n_t == 0) {
                continue;
            }
            const int kc = static_cast<int>(k);
            const double n_dt = weight_in_class(d_cover, weights, cls, kc);
            if (n_dt >= needed) {
                CombinedPattern p{"", dp.pattern, std::nullopt, class_names[k]};
                score(p, n, n_t, n_d, n_dt, n, n_t, n_d, n_dt);
                found[di].push_back(std::move(p));
            }
            if (n_dt < needed) {
                continue;
            }
            for (std::size_t ai = 0; ai < a_patterns.size(); ++ai) {
                const auto joint = intersect(d_cover, a_covers[ai]);
                const double n_dat = weight_in_class(joint, weights, cls, kc);
                if (n_dat < needed) {
                    continue;
                }
                CombinedPattern p{"", dp.pattern, a_patterns[ai].pattern, class_names[k]};
                score(p, n, n_t, n_d, n_dt, weight_of(a_covers[ai], weights),
                      weight_in_class(a_covers[ai], weights, cls, kc), weight_of(joint, weights), n_dat);
                found[di].push_back(std::move(p));
            }
        }
    });
    for (auto& f : found) {
        for (auto& p : f) {
            report.patterns.push_back(std::move(p));
        }
    }
    std::stable_sort(report.patterns.begin(), report.patterns.end(),
                     [](const CombinedPattern& a, const CombinedPattern& b) {
                         if (metric_greater(a.ip, b.ip) || metric_greater(b.ip, a.ip)) {
                             return metric_greater(a.ip, b.ip);
                         }
                         return std::tie(a.demographic, a.activity, a.label) <
                                std::tie(b.demographic, b.activity, b.label);
                     });
    for (std::size_t i = 0; i < report.patterns.size(); ++i) {
        report.patterns[i].id = "P" + std::to_string(i + 1);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Pairs and clusters
// ---------------------------------------------------------------------------

MetricValue contribution(const CombinedPattern& p, const std::string& shared) {
    const auto& base = shared == "D" ? p.lift_d : p.lift_a;
    if (!p.lift.ok() || !base.ok() || base.value() == 0.0) {
        return MetricValue::undefined();
    }
    return MetricValue::of(p.lift.value() / base.value());
}

double class_distance(const std::string& a, const std::string& b) { return a == b ? 0.0 : 1.0; }

MetricValue pair_interestingness(const CombinedPattern& a, const CombinedPattern& b, const std::string& shared) {
    const auto ca = contribution(a, shared);
    const auto cb = contribution(b, shared);
    if (!ca.ok() || !cb.ok()) {
        return MetricValue::undefined();
    }
    return MetricValue::of(ca.value() * cb.value() * class_distance(a.label, b.label));
}

namespace {

bool pairable(const CombinedPattern& a, const CombinedPattern& b, const std::string& shared, bool strict) {
    if (a.label == b.label || !a.activity || !b.activity) {
        return false;
    }
    if (shared == "D") {
        return a.demographic == b.demographic && parts_compatible(*a.activity, *b.activity, strict);
    }
    return *a.activity == *b.activity && parts_compatible(a.demographic, b.demographic, strict);
}

}  // namespace

std::vector<PatternPair> make_pairs(const std::vector<CombinedPattern>& patterns, bool strict_disjoint) {
    std::vector<PatternPair> out;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t j = i + 1; j < patterns.size(); ++j) {
            const auto& a = patterns[i];
            const auto& b = patterns[j];
            for (const char* shared : {"D", "A"}) {
                if (!pairable(a, b, shared, strict_disjoint)) {
                    continue;
                }
                const Pattern key = std::string(shared) == "D" ? a.demographic : *a.activity;
                out.push_back({shared, a.id, b.id, key, pair_interestingness(a, b, shared)});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PatternPair& x, const PatternPair& y) {
        if (metric_greater(x.i_pair, y.i_pair) || metric_greater(y.i_pair, x.i_pair)) {
            return metric_greater(x.i_pair, y.i_pair);
        }
        return std::tie(x.shared, x.key, x.left, x.right) < std::tie(y.shared, y.key, y.left, y.right);
    });
    return out;
}

std::vector<PatternCluster> make_clusters(const std::vector<CombinedPattern>& patterns, bool strict_disjoint) {
    std::map<Pattern, std::vector<const CombinedPattern*>> groups;
    for (const auto& p : patterns) {
        if (p.activity) {
            groups[p.demographic].push_back(&p);
        }
    }
    std::vector<PatternCluster> out;
    for (const auto& [d, members] : groups) {
        if (members.size() < 2) {
            continue;
        }
        PatternCluster c{d, {}, MetricValue::of(0.0)};
        for (const auto* m : members) {
            c.members.push_back(m->id);
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (!pairable(*members[i], *members[j], "D", strict_disjoint)) {
                    continue;
                }
                const auto v = pair_interestingness(*members[i], *members[j], "D");
                if (metric_greater(v, c.i_cluster)) {
                    c.i_cluster = v;
                }
            }
        }
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const PatternCluster& x, const PatternCluster& y) {
        if (metric_greater(x.i_cluster, y.i_cluster) || metric_greater(y.i_cluster, x.i_cluster)) {
            return metric_greater(x.i_cluster, y.i_cluster);
        }
        return x.shared_d < y.shared_d;
    });
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

Json to_json(const CombinedPattern& p) {
    Json j;
    j["id"] = p.id;
    j["D"] = to_json(p.demographic);
    j["A"] = p.activity ? to_json(*p.activity) : Json::array();
    j["T"] = p.label;
    j["count"] = p.count;
    j["support"] = p.support;
    j["conf"] = to_json(p.confidence);
    j["lift"] = to_json(p.lift);
    j["lift_D"] = to_json(p.lift_d);
    j["lift_A"] = to_json(p.lift_a);
    j["I_P"] = to_json(p.ip);
    return j;
}

CombinedPattern combined_pattern_from_json(const Json& j) {
    try {
        CombinedPattern p{j.value("id", std::string()), pattern_from_json(j.at("D"), ItemKind::demographic_item)};
        if (!j.at("A").empty()) {
            p.activity = pattern_from_json(j.at("A"), ItemKind::activity_code);
        }
        p.label = j.at("T").get<std::string>();
        p.count = j.at("count").get<std::uint64_t>();
        p.support = j.value("support", 0.0);
        p.confidence = metric_from_json(j.at("conf"));
        p.lift = metric_from_json(j.at("lift"));
        p.lift_d = metric_from_json(j.at("lift_D"));
        p.lift_a = metric_from_json(j.at("lift_A"));
        p.ip = metric_from_json(j.at("I_P"));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid combined pattern record: ") + e.what());
    }
}

Json to_json(const PatternPair& p) {
    Json j;
    j["shared"] = p.shared;
    j["key"] = to_json(p.key);
    j["left"] = p.left;
    j["right"] = p.right;
    j["I_pair"] = to_json(p.i_pair);
    return j;
}

Json to_json(const PatternCluster& c) {
    Json j;
    j["D"] = to_json(c.shared_d);
    j["members"] = c.members;
    j["I_cluster"] = to_json(c.i_cluster);
    return j;
}

}  // namespace behaviorlab
