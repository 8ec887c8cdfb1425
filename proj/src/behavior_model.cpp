#include "behaviorlab/behavior_model.hpp"

#include <algorithm>

#include "behaviorlab/error.hpp"

namespace behaviorlab {

std::string to_string(ItemKind kind) {
    switch (kind) {
        case ItemKind::activity_code: return "activity_code";
        case ItemKind::microstructure_vector: return "microstructure_vector";
        case ItemKind::demographic_item: return "demographic_item";
    }
    return "unknown";
}

std::optional<ItemKind> item_kind_from_string(const std::string& text) {
    for (auto kind : {ItemKind::activity_code, ItemKind::microstructure_vector, ItemKind::demographic_item}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    return std::nullopt;
}

std::string to_string(const MicrostructureVector& v) {
    static constexpr const char* sizes[] = {"S", "M", "L"};
    static constexpr const char* levels[] = {"L", "M", "H"};
    std::string out = "(b_";
    out += sizes[static_cast<int>(v.order_size)];
    out += v.action == Side::B ? ",B,l_" : ",S,l_";
    out += levels[static_cast<int>(v.trade_probability)];
    out += ",u_" + std::to_string(v.status);
    out += ",m_" + std::to_string(v.associate) + ")";
    return out;
}

std::string to_string(const Item& item) {
    struct Visitor {
        std::string operator()(const ActivityCode& a) const { return a.code; }
        std::string operator()(const MicrostructureVector& v) const { return to_string(v); }
        std::string operator()(const DemographicItem& d) const { return d.token; }
    };
    return std::visit(Visitor{}, item);
}

Pattern::Pattern(std::vector<Item> items) : items_(std::move(items)) {
    if (items_.empty()) {
        throw InputError("pattern must contain at least one item");
    }
    const auto kind = kind_of(items_.front());
    for (const auto& item : items_) {
        if (kind_of(item) != kind) {
            throw InputError("pattern mixes item kinds");
        }
    }
    if (kind == ItemKind::demographic_item) {
        std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }
}

std::string to_string(const Pattern& p) {
    std::string out;
    for (const auto& item : p.items()) {
        if (!out.empty()) {
            out += ",";
        }
        out += to_string(item);
    }
    return out;
}

Pattern concat(const Pattern& p, const Pattern& q) {
    if (p.kind() != q.kind()) {
        throw InputError("cannot concatenate patterns of different item kinds");
    }
    std::vector<Item> items = p.items();
    items.insert(items.end(), q.items().begin(), q.items().end());
    return Pattern(std::move(items));
}

void validate(const BehaviorSequence& seq) {
    if (seq.subject_id.empty()) {
        throw InputError("sequence without subject_id");
    }
    if (seq.weight == 0) {
        throw InputError("sequence weight must be positive: " + seq.subject_id);
    }
    for (const auto& item : seq.items) {
        if (kind_of(item) != seq.item_kind) {
            throw InputError("item kind does not match sequence kind: " + seq.subject_id);
        }
    }
    if (!seq.stamps.empty() && seq.stamps.size() != seq.items.size()) {
        throw InputError("order stamps not aligned with items: " + seq.subject_id);
    }
}

namespace {

bool subsequence(const std::vector<Item>& items, const std::vector<Item>& pattern) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < items.size() && j < pattern.size(); ++i) {
        if (items[i] == pattern[j]) {
            ++j;
        }
    }
    return j == pattern.size();
}

bool contiguous_run(const std::vector<Item>& items, const std::vector<Item>& pattern) {
    return std::search(items.begin(), items.end(), pattern.begin(), pattern.end()) != items.end();
}

bool itemset_inclusion(const std::vector<Item>& items, const std::vector<Item>& pattern) {
    return std::all_of(pattern.begin(), pattern.end(), [&](const Item& needle) {
        return std::find(items.begin(), items.end(), needle) != items.end();
    });
}

}  // namespace

bool contains(const std::vector<Item>& items, const Pattern& p, bool contiguous) {
    for (const auto& item : items) {
        if (kind_of(item) != p.kind()) {
            throw InputError("pattern kind " + to_string(p.kind()) + " does not match sequence item kind " +
                             to_string(kind_of(item)));
        }
    }
    if (p.kind() == ItemKind::demographic_item) {
        return itemset_inclusion(items, p.items());
    }
    return contiguous ? contiguous_run(items, p.items()) : subsequence(items, p.items());
}

bool contains(const BehaviorSequence& seq, const Pattern& p, bool contiguous) {
    if (seq.item_kind != p.kind()) {
        throw InputError("pattern kind " + to_string(p.kind()) + " does not match sequence kind " +
                         to_string(seq.item_kind));
    }
    return contains(seq.items, p, contiguous);
}

SimplifiedVector project_simplified(const BehaviorVector& v) {
    return {v.subject_id, v.object_id, v.action, v.impact, v.time};
}

BehaviorVector embed(const SimplifiedVector& v) {
    BehaviorVector out;
    out.subject_id = v.subject_id;
    out.object_id = v.object_id;
    out.action = v.action;
    out.impact = v.impact;
    out.time = v.time;
    return out;
}

}  // namespace behaviorlab
