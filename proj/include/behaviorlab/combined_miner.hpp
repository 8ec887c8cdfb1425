#pragma once

#include <optional>
#include <string>
#include <vector>

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/metrics.hpp"
#include "behaviorlab/seqmine.hpp"

namespace behaviorlab {

struct CombinedConfig {
    MiningConfig demographic;  // itemsets D
    MiningConfig activity;     // sequences A
    double min_support = 0.05; // joint support of D ∧ A → T
    std::vector<std::string> classes;  // empty: every class present
    bool strict_disjoint = false;      // pairs need item-disjoint (not just distinct) parts
};

void validate(const CombinedConfig& cfg);

/// D ∧ A → T. An absent A is the degenerate rule D → T.
struct CombinedPattern {
    std::string id;
    Pattern demographic;
    std::optional<Pattern> activity;
    std::string label;
    std::uint64_t count = 0;  // persons matching D, A and T
    double support = 0.0;
    MetricValue confidence;
    MetricValue lift;
    MetricValue lift_d;  // Lift(D → T)
    MetricValue lift_a;  // Lift(A → T)
    MetricValue ip;
};

struct CombinedReport {
    std::vector<CombinedPattern> patterns;  // descending I_P, then D, A, T; ids follow this order
    std::vector<std::string> warnings;
};

/// Joins demographic itemsets and activity patterns on person cohorts.
/// Every activity subject must have a demographic record (orphans are listed
/// in the InputError); demographic persons without activity count as empty
/// sequences. Several activity sequences of one person are concatenated in
/// window order.
CombinedReport mine_combined(const Dataset& demographics, const Dataset& activities, const CombinedConfig& cfg);

/// Scores one rule from raw person counts: n persons overall, n_t of class T,
/// n_d with D, n_dt with D and T, n_a/n_at likewise for A (n_a = n when A is
/// absent), n_da with both and n_dat with both and T.
void score(CombinedPattern& p, double n, double n_t, double n_d, double n_dt, double n_a, double n_at, double n_da,
           double n_dat);

struct PatternPair {
    std::string shared;  // "D" or "A"
    std::string left;    // pattern ids
    std::string right;
    Pattern key;         // the shared part
    MetricValue i_pair;
};

struct PatternCluster {
    Pattern shared_d;
    std::vector<std::string> members;
    MetricValue i_cluster;
};

/// Contribution of the non-shared part: lift / lift of the shared part.
MetricValue contribution(const CombinedPattern& p, const std::string& shared);

/// 0 for equal classes, 1 otherwise.
double class_distance(const std::string& a, const std::string& b);

/// I_pair of two patterns sharing `shared` ("D" or "A").
MetricValue pair_interestingness(const CombinedPattern& a, const CombinedPattern& b, const std::string& shared);

/// Pairs with a shared D (distinct A's) or a shared A (distinct D's) and
/// different classes.
std::vector<PatternPair> make_pairs(const std::vector<CombinedPattern>& patterns, bool strict_disjoint = false);

/// Patterns with an activity part grouped by exact D; groups of two or more.
/// I_cluster is the best I_pair among members that form a valid pair, 0 if none.
std::vector<PatternCluster> make_clusters(const std::vector<CombinedPattern>& patterns, bool strict_disjoint = false);

Json to_json(const CombinedPattern& p);
CombinedPattern combined_pattern_from_json(const Json& j);
Json to_json(const PatternPair& p);
Json to_json(const PatternCluster& c);

}  // namespace behaviorlab
