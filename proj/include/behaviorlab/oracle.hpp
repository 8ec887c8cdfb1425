#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "behaviorlab/behavior_model.hpp"

// Brute-force reference implementations. Exponential on purpose; every entry
// point refuses inputs above the size guards.
namespace behaviorlab::oracle {

inline constexpr std::size_t kMaxSequences = 12;
inline constexpr std::size_t kMaxSequenceLength = 8;
inline constexpr std::size_t kMaxAlphabet = 6;

struct ExactSupport {
    std::uint64_t count = 0;
    std::uint64_t total = 0;

    double value() const { return static_cast<double>(count) / static_cast<double>(total); }
    bool operator==(const ExactSupport&) const = default;
};

/// Throws InputError when `data` exceeds the guards.
void check_guard(const Dataset& data);

/// Every distinct subsequence (itemset subset for demographic data) of length
/// 1..max_len with its exact weighted support.
std::map<Pattern, ExactSupport> enumerate_patterns(const Dataset& data, std::size_t max_len);

/// Containment by enumerating every increasing index tuple.
bool contains_by_enumeration(const std::vector<Item>& items, const Pattern& p);

struct ContingencyTable {
    std::uint64_t n_PQ_T = 0;
    std::uint64_t n_PQ_nT = 0;
    std::uint64_t n_P_T = 0;
    std::uint64_t n_P_nT = 0;
    std::uint64_t n_total = 0;
};

/// Counts of sequences containing P (and P followed by Q) split by whether
/// their label display equals `label`.
ContingencyTable probabilities(const Dataset& data, const Pattern& p, const Pattern& q, const std::string& label);

/// Nested-loop join: ids in `people` that have at least one match in `keys`.
std::set<std::string> nested_loop_join(const std::vector<std::string>& people, const std::vector<std::string>& keys);

}  // namespace behaviorlab::oracle
