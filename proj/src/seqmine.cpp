#include "behaviorlab/seqmine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "behaviorlab/error.hpp"
#include "parallel.hpp"

namespace behaviorlab {

namespace {

constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();

using Ids = std::vector<std::uint32_t>;

/// Dataset over dense item ids; ids follow the item order so that id-wise
/// lexicographic order equals pattern order.
struct Encoded {
    std::vector<Item> alphabet;
    std::vector<Ids> seqs;
    std::vector<std::uint64_t> weights;
    std::vector<bool> target;
    std::uint64_t total = 0;
    ItemKind kind = ItemKind::activity_code;
};

ItemKind dataset_kind(const Dataset& data) {
    const ItemKind kind = data.front().item_kind;
    for (const auto& seq : data) {
        if (seq.item_kind != kind) {
            throw InputError("dataset mixes item kinds");
        }
    }
    return kind;
}

Encoded encode_dataset(const Dataset& data, const std::optional<std::vector<Item>>& restrict_to) {
    Encoded enc;
    enc.kind = dataset_kind(data);
    std::set<Item> items;
    for (const auto& seq : data) {
        validate(seq);
        items.insert(seq.items.begin(), seq.items.end());
    }
    if (restrict_to) {
        std::set<Item> allowed(restrict_to->begin(), restrict_to->end());
        std::erase_if(items, [&](const Item& item) { return !allowed.contains(item); });
    }
    enc.alphabet.assign(items.begin(), items.end());
    std::map<Item, std::uint32_t> ids;
    for (std::uint32_t i = 0; i < enc.alphabet.size(); ++i) {
        ids.emplace(enc.alphabet[i], i);
    }
    for (const auto& seq : data) {
        Ids row;
        row.reserve(seq.items.size());
        for (const auto& item : seq.items) {
            auto it = ids.find(item);
            row.push_back(it == ids.end() ? kOutside : it->second);
        }
        if (enc.kind == ItemKind::demographic_item) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        enc.seqs.push_back(std::move(row));
        enc.weights.push_back(seq.weight);
        enc.target.push_back(seq.label.target);
        enc.total += seq.weight;
    }
    return enc;
}

struct Found {
    Ids pattern;
    std::uint64_t count = 0;
    std::uint64_t target = 0;
};

// --- sequential patterns: prefix projection ---------------------------------

struct Entry {
    std::uint32_t seq;
    std::uint32_t pos;  // first position still available to the next item
};

class PrefixSpan {
public:
    PrefixSpan(const Encoded& enc, std::uint64_t min_count, std::size_t max_len, bool contiguous)
        : enc_(enc), min_count_(min_count), max_len_(max_len), contiguous_(contiguous) {}

    /// Projections of every single item, indexed by item id.
    std::vector<std::vector<Entry>> root() const {
        std::vector<Entry> start;
        for (std::uint32_t s = 0; s < enc_.seqs.size(); ++s) {
            if (contiguous_) {
                for (std::uint32_t p = 0; p < enc_.seqs[s].size(); ++p) {
                    start.push_back({s, p});
                }
            } else {
                start.push_back({s, 0});
            }
        }
        std::vector<std::uint64_t> count, target;
        return extend(start, count, target);
    }

    void grow(Ids& prefix, const std::vector<Entry>& projection, std::vector<Found>& out) const {
        if (prefix.size() >= max_len_) {
            return;
        }
        std::vector<std::uint64_t> count, target;
        auto next = extend(projection, count, target);
        for (std::uint32_t x = 0; x < next.size(); ++x) {
            if (count[x] < min_count_) {
                continue;
            }
            prefix.push_back(x);
            out.push_back({prefix, count[x], target[x]});
            grow(prefix, next[x], out);
            prefix.pop_back();
        }
    }

    void counts_of(const std::vector<Entry>& projection, std::uint64_t& count, std::uint64_t& target) const {
        count = target = 0;
        std::uint32_t last = kOutside;
        for (const auto& e : projection) {
            if (e.seq != last) {
                last = e.seq;
                count += enc_.weights[e.seq];
                target += enc_.target[e.seq] ? enc_.weights[e.seq] : 0;
            }
        }
    }

private:
    std::vector<std::vector<Entry>> extend(const std::vector<Entry>& projection, std::vector<std::uint64_t>& count,
                                           std::vector<std::uint64_t>& target) const {
        const std::size_t n = enc_.alphabet.size();
        std::vector<std::vector<Entry>> next(n);
        std::vector<std::uint32_t> seen(n, kOutside);
        count.assign(n, 0);
        target.assign(n, 0);
        auto visit = [&](std::uint32_t seq, std::uint32_t x, std::uint32_t pos, bool first_only) {
            if (x == kOutside) {
                return;
            }
            const bool fresh = seen[x] != seq;
            if (fresh) {
                seen[x] = seq;
                count[x] += enc_.weights[seq];
                target[x] += enc_.target[seq] ? enc_.weights[seq] : 0;
            }
            if (fresh || !first_only) {
                next[x].push_back({seq, pos + 1});
            }
        };
        for (const auto& e : projection) {
            const auto& row = enc_.seqs[e.seq];
            if (contiguous_) {
                if (e.pos < row.size()) {
                    visit(e.seq, row[e.pos], e.pos, false);
                }
            } else {
                for (std::uint32_t p = e.pos; p < row.size(); ++p) {
                    visit(e.seq, row[p], p, true);
                }
            }
        }
        return next;
    }

    const Encoded& enc_;
    std::uint64_t min_count_;
    std::size_t max_len_;
    bool contiguous_;
};

std::vector<Found> mine_sequences(const Encoded& enc, std::uint64_t min_count, const MiningConfig& cfg) {
    PrefixSpan miner(enc, min_count, cfg.max_pattern_length, cfg.contiguous);
    const auto roots = miner.root();
    std::vector<std::uint32_t> frequent;
    for (std::uint32_t x = 0; x < roots.size(); ++x) {
        std::uint64_t count = 0, target = 0;
        miner.counts_of(roots[x], count, target);
        if (count >= min_count) {
            frequent.push_back(x);
        }
    }
    std::vector<std::vector<Found>> parts(frequent.size());
    detail::parallel_for(frequent.size(), cfg.workers, [&](std::size_t i) {
        const auto x = frequent[i];
        std::uint64_t count = 0, target = 0;
        miner.counts_of(roots[x], count, target);
        Ids prefix{x};
        parts[i].push_back({prefix, count, target});
        miner.grow(prefix, roots[x], parts[i]);
    });
    std::vector<Found> out;
    for (auto& part : parts) {
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

// --- itemsets: tid-list intersection ----------------------------------------

class Eclat {
public:
    Eclat(const Encoded& enc, std::uint64_t min_count, std::size_t max_len)
        : enc_(enc), min_count_(min_count), max_len_(max_len) {}

    std::vector<Ids> tidlists() const {
        std::vector<Ids> lists(enc_.alphabet.size());
        for (std::uint32_t s = 0; s < enc_.seqs.size(); ++s) {
            for (auto x : enc_.seqs[s]) {
                if (x != kOutside) {
                    lists[x].push_back(s);
                }
            }
        }
        return lists;
    }

    void tally(const Ids& tids, std::uint64_t& count, std::uint64_t& target) const {
        count = target = 0;
        for (auto s : tids) {
            count += enc_.weights[s];
            target += enc_.target[s] ? enc_.weights[s] : 0;
        }
    }

    void grow(Ids& prefix, const Ids& tids, const std::vector<Ids>& lists, std::vector<Found>& out) const {
        if (prefix.size() >= max_len_) {
            return;
        }
        for (std::uint32_t x = prefix.back() + 1; x < lists.size(); ++x) {
            Ids joint;
            std::set_intersection(tids.begin(), tids.end(), lists[x].begin(), lists[x].end(),
                                  std::back_inserter(joint));
            std::uint64_t count = 0, target = 0;
            tally(joint, count, target);
            if (count < min_count_) {
                continue;
            }
            prefix.push_back(x);
            out.push_back({prefix, count, target});
            grow(prefix, joint, lists, out);
            prefix.pop_back();
        }
    }

private:
    const Encoded& enc_;
    std::uint64_t min_count_;
    std::size_t max_len_;
};

std::vector<Found> mine_itemsets(const Encoded& enc, std::uint64_t min_count, const MiningConfig& cfg) {
    Eclat miner(enc, min_count, cfg.max_pattern_length);
    const auto lists = miner.tidlists();
    std::vector<std::uint32_t> frequent;
    for (std::uint32_t x = 0; x < lists.size(); ++x) {
        std::uint64_t count = 0, target = 0;
        miner.tally(lists[x], count, target);
        if (count >= min_count) {
            frequent.push_back(x);
        }
    }
    std::vector<std::vector<Found>> parts(frequent.size());
    detail::parallel_for(frequent.size(), cfg.workers, [&](std::size_t i) {
        const auto x = frequent[i];
        std::uint64_t count = 0, target = 0;
        miner.tally(lists[x], count, target);
        Ids prefix{x};
        parts[i].push_back({prefix, count, target});
        miner.grow(prefix, lists[x], lists, parts[i]);
    });
    std::vector<Found> out;
    for (auto& part : parts) {
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace

void validate(const MiningConfig& cfg) {
    if (!(cfg.min_support > 0.0 && cfg.min_support <= 1.0)) {
        throw InputError("min_support must be in (0, 1]");
    }
    if (cfg.max_pattern_length < 1) {
        throw InputError("max_pattern_length must be at least 1");
    }
}

std::uint64_t min_count(double min_support, std::uint64_t total) {
    const double raw = std::ceil(min_support * static_cast<double>(total) - 1e-9);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::max(0.0, raw)));
}

void sort_canonical(std::vector<SupportedPattern>& patterns) {
    std::sort(patterns.begin(), patterns.end(), [](const SupportedPattern& a, const SupportedPattern& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.pattern < b.pattern;
    });
}

// --- SupportIndex ------------------------------------------------------------

SupportIndex::SupportIndex(const Dataset& data, bool contiguous) : contiguous_(contiguous) {
    if (!data.empty()) {
        auto enc = encode_dataset(data, std::nullopt);
        kind_ = enc.kind;
        for (std::uint32_t i = 0; i < enc.alphabet.size(); ++i) {
            ids_.emplace(enc.alphabet[i], i);
        }
        seqs_ = std::move(enc.seqs);
        weights_ = std::move(enc.weights);
        target_ = std::move(enc.target);
        total_ = enc.total;
        for (std::size_t s = 0; s < seqs_.size(); ++s) {
            target_total_ += target_[s] ? weights_[s] : 0;
        }
    }
}

std::optional<Ids> SupportIndex::encode(const Pattern& p) const {
    if (kind_ && *kind_ != p.kind()) {
        throw InputError("pattern kind " + to_string(p.kind()) + " does not match dataset kind " +
                         to_string(*kind_));
    }
    Ids ids;
    for (const auto& item : p.items()) {
        auto it = ids_.find(item);
        if (it == ids_.end()) {
            return std::nullopt;
        }
        ids.push_back(it->second);
    }
    return ids;
}

bool SupportIndex::matches(std::size_t seq, const Ids& ids) const {
    const auto& row = seqs_[seq];
    if (kind_ == ItemKind::demographic_item) {
        return std::includes(row.begin(), row.end(), ids.begin(), ids.end());
    }
    if (contiguous_) {
        return std::search(row.begin(), row.end(), ids.begin(), ids.end()) != row.end();
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < row.size() && j < ids.size(); ++i) {
        if (row[i] == ids[j]) {
            ++j;
        }
    }
    return j == ids.size();
}

SupportCounts SupportIndex::count(const Pattern& p) const {
    SupportCounts out;
    auto ids = encode(p);
    if (!ids) {
        return out;
    }
    for (std::size_t s = 0; s < seqs_.size(); ++s) {
        if (matches(s, *ids)) {
            out.total += weights_[s];
            (target_[s] ? out.target : out.nontarget) += weights_[s];
        }
    }
    return out;
}

std::vector<std::uint32_t> SupportIndex::cover(const Pattern& p) const {
    std::vector<std::uint32_t> out;
    auto ids = encode(p);
    if (!ids) {
        return out;
    }
    for (std::uint32_t s = 0; s < seqs_.size(); ++s) {
        if (matches(s, *ids)) {
            out.push_back(s);
        }
    }
    return out;
}

double SupportIndex::support(const Pattern& p) const {
    if (total_ == 0) {
        throw InputError("support is undefined on an empty dataset");
    }
    return static_cast<double>(count(p).total) / static_cast<double>(total_);
}

double support(const Pattern& p, const Dataset& data, bool contiguous) {
    if (data.empty()) {
        throw InputError("support is undefined on an empty dataset");
    }
    return SupportIndex(data, contiguous).support(p);
}

std::vector<SupportedPattern> mine_frequent(const Dataset& data, const MiningConfig& cfg) {
    validate(cfg);
    if (data.empty()) {
        throw InputError("cannot mine an empty dataset");
    }
    const auto enc = encode_dataset(data, cfg.alphabet);
    const auto threshold = min_count(cfg.min_support, enc.total);
    auto found = enc.kind == ItemKind::demographic_item ? mine_itemsets(enc, threshold, cfg)
                                                        : mine_sequences(enc, threshold, cfg);
    const double total = static_cast<double>(enc.total);
    std::vector<SupportedPattern> out;
    out.reserve(found.size());
    for (const auto& f : found) {
        std::vector<Item> items;
        items.reserve(f.pattern.size());
        for (auto id : f.pattern) {
            items.push_back(enc.alphabet[id]);
        }
        SupportedPattern sp{Pattern(std::move(items))};
        sp.count = f.count;
        sp.count_target = f.target;
        sp.count_nontarget = f.count - f.target;
        sp.support = static_cast<double>(sp.count) / total;
        sp.support_target = static_cast<double>(sp.count_target) / total;
        sp.support_nontarget = static_cast<double>(sp.count_nontarget) / total;
        out.push_back(std::move(sp));
    }
    sort_canonical(out);
    return out;
}

// --- impact-oriented rules ---------------------------------------------------

ImpactReport mine_impact_oriented(const Dataset& data, const MiningConfig& cfg, const TargetLabel& target) {
    validate(cfg);
    if (data.empty()) {
        throw InputError("cannot mine an empty dataset");
    }
    ImpactReport report;
    std::uint64_t total = 0, n_t = 0;
    std::string other_label;
    std::vector<bool> is_t;
    for (const auto& seq : data) {
        const bool t = seq.label.display == target.display;
        is_t.push_back(t);
        total += seq.weight;
        n_t += t ? seq.weight : 0;
        if (!t && other_label.empty()) {
            other_label = seq.label.display;
        }
    }
    if (other_label.empty() || n_t == 0) {
        report.warnings.push_back("dataset carries a single label; lift is undefined for the missing label");
    }
    if (other_label.empty()) {
        other_label = "not " + target.display;
    }
    const std::uint64_t n_nt = total - n_t;
    const double N = static_cast<double>(total);
    report.support_target = static_cast<double>(n_t) / N;
    report.support_nontarget = static_cast<double>(n_nt) / N;

    // Relabel so that the miner's target split follows the requested label.
    Dataset relabeled = data;
    for (std::size_t i = 0; i < relabeled.size(); ++i) {
        relabeled[i].label.target = is_t[i];
    }
    const auto patterns = mine_frequent(relabeled, cfg);

    auto make_rule = [&](const SupportedPattern& sp, bool negated, bool for_target) {
        const std::uint64_t n_label = for_target ? n_t : n_nt;
        const std::uint64_t with_p = for_target ? sp.count_target : sp.count_nontarget;
        ImpactRule rule{sp.pattern, negated, "", false, 0, 0.0, MetricValue::undefined(), MetricValue::undefined()};
        rule.negated = negated;
        rule.label = for_target ? target.display : other_label;
        rule.label_is_target = for_target;
        rule.count = negated ? n_label - with_p : with_p;
        rule.support = static_cast<double>(rule.count) / N;
        const double antecedent = negated ? static_cast<double>(total - sp.count) / N : sp.support;
        rule.confidence = confidence(rule.support, antecedent);
        rule.lift = lift(rule.confidence, static_cast<double>(n_label) / N);
        return rule;
    };
    for (const auto& sp : patterns) {
        report.positive.push_back(make_rule(sp, false, true));
        report.positive.push_back(make_rule(sp, false, false));
        report.negative.push_back(make_rule(sp, true, true));
        report.negative.push_back(make_rule(sp, true, false));
    }
    return report;
}

}  // namespace behaviorlab
