#include "behaviorlab/oracle.hpp"

#include <algorithm>
#include <functional>

#include "behaviorlab/error.hpp"

namespace behaviorlab::oracle {

void check_guard(const Dataset& data) {
    if (data.size() > kMaxSequences) {
        throw InputError("oracle guard: more than " + std::to_string(kMaxSequences) + " sequences");
    }
    std::set<Item> alphabet;
    for (const auto& seq : data) {
        if (seq.items.size() > kMaxSequenceLength) {
            throw InputError("oracle guard: sequence longer than " + std::to_string(kMaxSequenceLength));
        }
        alphabet.insert(seq.items.begin(), seq.items.end());
    }
    if (alphabet.size() > kMaxAlphabet) {
        throw InputError("oracle guard: alphabet larger than " + std::to_string(kMaxAlphabet));
    }
}

namespace {

/// Calls visit(indices) for every increasing index tuple of length 1..max_len.
void for_each_index_tuple(std::size_t n, std::size_t max_len,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        for (std::size_t i = from; i < n; ++i) {
            idx.push_back(i);
            visit(idx);
            if (idx.size() < max_len) {
                rec(i + 1);
            }
            idx.pop_back();
        }
    };
    rec(0);
}

std::vector<Item> normalized(const BehaviorSequence& seq) {
    std::vector<Item> items = seq.items;
    if (seq.item_kind == ItemKind::demographic_item) {
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
    }
    return items;
}

}  // namespace

std::map<Pattern, ExactSupport> enumerate_patterns(const Dataset& data, std::size_t max_len) {
    check_guard(data);
    std::uint64_t total = 0;
    for (const auto& seq : data) {
        total += seq.weight;
    }
    std::map<Pattern, ExactSupport> out;
    for (const auto& seq : data) {
        const auto items = normalized(seq);
        std::set<std::vector<Item>> distinct;
        for_each_index_tuple(items.size(), max_len, [&](const std::vector<std::size_t>& idx) {
            std::vector<Item> sub;
            for (auto i : idx) {
                sub.push_back(items[i]);
            }
            distinct.insert(std::move(sub));
        });
        for (auto& sub : distinct) {
            auto& entry = out.try_emplace(Pattern(sub), ExactSupport{0, total}).first->second;
            entry.count += seq.weight;
        }
    }
    return out;
}

bool contains_by_enumeration(const std::vector<Item>& items, const Pattern& p) {
    if (items.size() > kMaxSequenceLength) {
        throw InputError("oracle guard: sequence too long");
    }
    const auto& needle = p.items();
    bool found = false;
    for_each_index_tuple(items.size(), needle.size(), [&](const std::vector<std::size_t>& idx) {
        if (found || idx.size() != needle.size()) {
            return;
        }
        bool all = true;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            all = all && items[idx[k]] == needle[k];
        }
        found = all;
    });
    return found;
}

ContingencyTable probabilities(const Dataset& data, const Pattern& p, const Pattern& q, const std::string& label) {
    check_guard(data);
    std::vector<Item> pq_items = p.items();
    pq_items.insert(pq_items.end(), q.items().begin(), q.items().end());
    const Pattern pq(pq_items);
    ContingencyTable table;
    for (const auto& seq : data) {
        table.n_total += seq.weight;
        const bool is_label = seq.label.display == label;
        if (contains_by_enumeration(seq.items, p)) {
            (is_label ? table.n_P_T : table.n_P_nT) += seq.weight;
        }
        if (pq.size() <= kMaxSequenceLength && contains_by_enumeration(seq.items, pq)) {
            (is_label ? table.n_PQ_T : table.n_PQ_nT) += seq.weight;
        }
    }
    return table;
}

std::set<std::string> nested_loop_join(const std::vector<std::string>& people, const std::vector<std::string>& keys) {
    std::set<std::string> out;
    for (const auto& person : people) {
        for (const auto& key : keys) {
            if (person == key) {
                out.insert(person);
            }
        }
    }
    return out;
}

}  // namespace behaviorlab::oracle
