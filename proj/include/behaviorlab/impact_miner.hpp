#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/metrics.hpp"
#include "behaviorlab/seqmine.hpp"

namespace behaviorlab {

// ---------------------------------------------------------------------------
// Risk
// ---------------------------------------------------------------------------

/// Debt-weighted risk over the sequences containing p. Sequences without a
/// ledger contribute zero amount and duration.
Risk pattern_risk(const Pattern& p, const Dataset& data);

// ---------------------------------------------------------------------------
// Contrast between two datasets
// ---------------------------------------------------------------------------

struct ContrastPattern {
    Pattern pattern;
    double supp_a = 0.0;
    double supp_b = 0.0;
    double cd_ab = 0.0;   // supp_a - supp_b
    double cd_ba = 0.0;   // supp_b - supp_a
    MetricValue cdr_ab;   // supp_a / supp_b
    MetricValue cdr_ba;   // supp_b / supp_a
    std::optional<Risk> risk;
};

struct ContrastReport {
    std::vector<ContrastPattern> patterns;  // descending |Cd|, then pattern
    std::vector<std::string> warnings;
};

/// Patterns frequent in either dataset, scored in both directions.
ContrastReport mine_contrast(const Dataset& a, const Dataset& b, const MiningConfig& cfg);

/// (sequences whose label display is `label`, all others).
std::pair<Dataset, Dataset> split_by_label(const Dataset& data, const std::string& label);

// ---------------------------------------------------------------------------
// Reversals
// ---------------------------------------------------------------------------

struct ReversalConfig {
    MiningConfig mining;
    double cir_min = 1.0;
    double cps_min = 0.0;
};

struct ReversalPair {
    Pattern underlying;
    Pattern trigger;
    Pattern derivative;
    std::string from_label;  // dominant on the underlying pattern
    std::string to_label;    // dominant on the derivative
    double support_underlying = 0.0;
    double support_derivative = 0.0;
    MetricValue conf_underlying;  // conf(P → to_label)
    MetricValue conf_derivative;  // conf(PQ → to_label)
    MetricValue cir;
    MetricValue cps;
    std::optional<Risk> risk;  // over the derivative's matches
};

struct ReversalReport {
    std::vector<ReversalPair> pairs;  // descending Cir, then Cps, then patterns
    std::vector<std::string> warnings;
};

/// Every split of a frequent pattern into P and a non-empty suffix Q where
/// the dominant label flips: conf(P → L) < 0.5 while conf(PQ → L) >= 0.5.
/// Both directions are searched. Pairs are kept when Cir >= cir_min and
/// Cps >= cps_min.
ReversalReport mine_reversals(const Dataset& data, const ReversalConfig& cfg);

// ---------------------------------------------------------------------------
// Risk annotation and reports
// ---------------------------------------------------------------------------

void annotate_risk(std::vector<ContrastPattern>& patterns, const Dataset& ledgers);
void annotate_risk(std::vector<ReversalPair>& pairs, const Dataset& ledgers);
std::vector<std::optional<Risk>> risk_for_rules(const std::vector<ImpactRule>& rules, const Dataset& ledgers);

Json to_json(const ContrastPattern& c);
ContrastPattern contrast_pattern_from_json(const Json& j, ItemKind kind = ItemKind::activity_code);

Json to_json(const ReversalPair& r);
ReversalPair reversal_pair_from_json(const Json& j, ItemKind kind = ItemKind::activity_code);

Json to_json(const ImpactRule& r, const std::optional<Risk>& risk = std::nullopt);

}  // namespace behaviorlab
