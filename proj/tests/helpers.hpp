#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "behaviorlab/behavior_model.hpp"

namespace testing {

using namespace behaviorlab;

inline Pattern acts(std::initializer_list<const char*> codes) {
    std::vector<Item> items;
    for (const auto* c : codes) {
        items.push_back(ActivityCode{c});
    }
    return Pattern(std::move(items));
}

inline std::vector<Item> act_items(std::initializer_list<const char*> codes) {
    std::vector<Item> items;
    for (const auto* c : codes) {
        items.push_back(ActivityCode{c});
    }
    return items;
}

inline BehaviorSequence act_seq(std::string subject, std::initializer_list<const char*> codes, bool debt = false) {
    BehaviorSequence seq;
    seq.subject_id = std::move(subject);
    seq.item_kind = ItemKind::activity_code;
    seq.items = act_items(codes);
    seq.label = debt ? TargetLabel::debt() : TargetLabel::no_debt();
    return seq;
}

inline BehaviorSequence demo_seq(std::string subject, std::initializer_list<const char*> tokens, std::string cls) {
    BehaviorSequence seq;
    seq.subject_id = std::move(subject);
    seq.item_kind = ItemKind::demographic_item;
    for (const auto* t : tokens) {
        seq.items.push_back(DemographicItem{t});
    }
    seq.label = {cls == "DET", std::move(cls)};
    return seq;
}

/// Random labeled activity dataset over the letters A.. (alphabet_size).
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t max_sequences, std::size_t max_length,
                              std::size_t alphabet_size, std::size_t min_sequences = 1) {
    std::uniform_int_distribution<std::size_t> n_dist(min_sequences, max_sequences);
    std::uniform_int_distribution<std::size_t> len_dist(0, max_length);
    std::uniform_int_distribution<std::size_t> item_dist(0, alphabet_size - 1);
    std::bernoulli_distribution label_dist(0.4);
    Dataset data;
    const auto n = n_dist(rng);
    for (std::size_t s = 0; s < n; ++s) {
        BehaviorSequence seq;
        seq.subject_id = "p" + std::to_string(s);
        seq.item_kind = ItemKind::activity_code;
        const auto len = len_dist(rng);
        for (std::size_t i = 0; i < len; ++i) {
            seq.items.push_back(ActivityCode{std::string(1, static_cast<char>('A' + item_dist(rng)))});
        }
        seq.label = label_dist(rng) ? TargetLabel::debt() : TargetLabel::no_debt();
        data.push_back(std::move(seq));
    }
    return data;
}

inline Pattern random_pattern(std::mt19937_64& rng, std::size_t max_length, std::size_t alphabet_size) {
    std::uniform_int_distribution<std::size_t> len_dist(1, max_length);
    std::uniform_int_distribution<std::size_t> item_dist(0, alphabet_size - 1);
    std::vector<Item> items;
    const auto len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i) {
        items.push_back(ActivityCode{std::string(1, static_cast<char>('A' + item_dist(rng)))});
    }
    return Pattern(std::move(items));
}

}  // namespace testing
