#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "behaviorlab/behavior_model.hpp"
#include "behaviorlab/metrics.hpp"

namespace behaviorlab {

struct MiningConfig {
    double min_support = 0.1;              // fraction in (0, 1]
    std::size_t max_pattern_length = 6;
    bool contiguous = false;               // strict adjacency instead of ordered subsequence
    std::optional<std::vector<Item>> alphabet;  // restrict candidate items
    unsigned workers = 1;
};

/// Throws InputError when thresholds are out of range.
void validate(const MiningConfig& cfg);

/// Smallest weighted count that meets min_support over `total`.
std::uint64_t min_count(double min_support, std::uint64_t total);

struct SupportCounts {
    std::uint64_t total = 0;      // Σ weight of containing sequences
    std::uint64_t target = 0;     // ... labeled target
    std::uint64_t nontarget = 0;  // ... labeled non-target
};

struct SupportedPattern {
    Pattern pattern;
    double support = 0.0;
    double support_target = 0.0;
    double support_nontarget = 0.0;
    std::uint64_t count = 0;
    std::uint64_t count_target = 0;
    std::uint64_t count_nontarget = 0;
};

/// Descending support, then lexicographic pattern order.
void sort_canonical(std::vector<SupportedPattern>& patterns);

/// Dataset encoded once for repeated containment queries.
class SupportIndex {
public:
    explicit SupportIndex(const Dataset& data, bool contiguous = false);

    std::uint64_t total_weight() const noexcept { return total_; }
    std::uint64_t target_weight() const noexcept { return target_total_; }
    std::size_t size() const noexcept { return seqs_.size(); }

    SupportCounts count(const Pattern& p) const;
    /// Indices (into the source dataset) of sequences containing p.
    std::vector<std::uint32_t> cover(const Pattern& p) const;
    /// Throws InputError on an empty dataset.
    double support(const Pattern& p) const;

private:
    bool matches(std::size_t seq, const std::vector<std::uint32_t>& ids) const;
    std::optional<std::vector<std::uint32_t>> encode(const Pattern& p) const;

    std::map<Item, std::uint32_t> ids_;
    std::vector<std::vector<std::uint32_t>> seqs_;
    std::vector<std::uint64_t> weights_;
    std::vector<bool> target_;
    std::uint64_t total_ = 0;
    std::uint64_t target_total_ = 0;
    bool contiguous_ = false;
    std::optional<ItemKind> kind_;
};

/// Fraction of (weighted) sequences containing p. Throws InputError on an
/// empty dataset.
double support(const Pattern& p, const Dataset& data, bool contiguous = false);

/// All patterns with support >= min_support and length <= max_pattern_length,
/// each annotated with label-split supports, in canonical order. Sequential
/// patterns are enumerated by prefix projection; demographic itemsets by
/// tid-list intersection.
std::vector<SupportedPattern> mine_frequent(const Dataset& data, const MiningConfig& cfg);

// ---------------------------------------------------------------------------
// Impact-oriented rules
// ---------------------------------------------------------------------------

struct ImpactRule {
    Pattern pattern;
    bool negated = false;   // ¬P → label
    std::string label;
    bool label_is_target = false;
    std::uint64_t count = 0;
    double support = 0.0;   // Supp(P→L) or Supp(¬P→L)
    MetricValue confidence;
    MetricValue lift;
};

struct ImpactReport {
    std::vector<ImpactRule> positive;  // P→T and P→T̄
    std::vector<ImpactRule> negative;  // ¬P→T and ¬P→T̄
    double support_target = 0.0;
    double support_nontarget = 0.0;
    std::vector<std::string> warnings;
};

/// Positive and negative rules for every frequent pattern. `target` names the
/// label playing T (matched by display string).
ImpactReport mine_impact_oriented(const Dataset& data, const MiningConfig& cfg, const TargetLabel& target);

}  // namespace behaviorlab
