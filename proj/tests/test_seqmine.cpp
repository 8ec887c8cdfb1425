#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"

#include "behaviorlab/error.hpp"
#include "behaviorlab/oracle.hpp"
#include "behaviorlab/seqmine.hpp"
#include "helpers.hpp"

using namespace behaviorlab;
using doctest::Approx;
using testing::acts;

namespace {

std::map<Pattern, std::uint64_t> as_map(const std::vector<SupportedPattern>& mined) {
    std::map<Pattern, std::uint64_t> out;
    for (const auto& sp : mined) {
        out[sp.pattern] = sp.count;
    }
    return out;
}

std::map<Pattern, std::uint64_t> oracle_frequent(const Dataset& data, double s, std::size_t max_len) {
    const auto all = oracle::enumerate_patterns(data, max_len);
    std::map<Pattern, std::uint64_t> out;
    for (const auto& [p, sup] : all) {
        if (static_cast<double>(sup.count) >= s * static_cast<double>(sup.total) - 1e-9) {
            out[p] = sup.count;
        }
    }
    return out;
}

bool contiguous_in(const std::vector<Item>& items, const std::vector<Item>& needle) {
    for (std::size_t i = 0; i + needle.size() <= items.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), items.begin() + static_cast<std::ptrdiff_t>(i))) {
            return true;
        }
    }
    return false;
}

Dataset random_demographics(std::mt19937_64& rng, std::size_t n) {
    const char* tokens[] = {"gender=f", "gender=m", "age=18-24", "age=65+", "region=r1", "marital=single"};
    Dataset data;
    for (std::size_t i = 0; i < n; ++i) {
        BehaviorSequence seq;
        seq.subject_id = "d" + std::to_string(i);
        seq.item_kind = ItemKind::demographic_item;
        for (const auto* t : tokens) {
            if (rng() % 2) {
                seq.items.push_back(DemographicItem{t});
            }
        }
        seq.label = rng() % 3 == 0 ? TargetLabel::debt() : TargetLabel::no_debt();
        data.push_back(std::move(seq));
    }
    return data;
}

}  // namespace

TEST_CASE("min_count rounds up with a small epsilon") {
    CHECK(min_count(0.1, 10) == 1);
    CHECK(min_count(0.3, 10) == 3);
    CHECK(min_count(0.25, 10) == 3);
    CHECK(min_count(0.001, 10) == 1);
    CHECK(min_count(1.0, 7) == 7);
}

TEST_CASE("config validation") {
    MiningConfig cfg;
    cfg.min_support = 0.0;
    CHECK_THROWS_AS(validate(cfg), InputError);
    cfg.min_support = 1.5;
    CHECK_THROWS_AS(validate(cfg), InputError);
    cfg.min_support = 0.5;
    cfg.max_pattern_length = 0;
    CHECK_THROWS_AS(validate(cfg), InputError);
}

TEST_CASE("support on a small hand-built dataset") {
    Dataset data{testing::act_seq("a", {"A", "B", "C"}, true), testing::act_seq("b", {"A", "C"}),
                 testing::act_seq("c", {"C", "A"}), testing::act_seq("d", {"B"})};
    CHECK(support(acts({"A", "C"}), data) == Approx(0.5));
    CHECK(support(acts({"A"}), data) == Approx(0.75));
    CHECK(support(acts({"A", "C"}), data, true) == Approx(0.25));
    CHECK_THROWS_AS(support(acts({"A"}), Dataset{}), InputError);

    const SupportIndex index(data);
    const auto c = index.count(acts({"A", "C"}));
    CHECK(c.total == 2);
    CHECK(c.target == 1);
    CHECK(c.nontarget == 1);
    CHECK(index.cover(acts({"C", "A"})) == std::vector<std::uint32_t>{2});
    CHECK(index.count(acts({"Z"})).total == 0);
}

TEST_CASE("weighted sequences count by weight") {
    auto a = testing::act_seq("a", {"A", "B"});
    a.weight = 3;
    Dataset data{a, testing::act_seq("b", {"B"})};
    CHECK(support(acts({"A"}), data) == Approx(0.75));
}

TEST_CASE("mined frequent sequences equal brute-force enumeration") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 150; ++trial) {
        const auto data = testing::random_dataset(rng, 12, 7, 4, 1);
        const double s = std::vector<double>{0.1, 0.2, 0.34, 0.5, 1.0}[rng() % 5];
        MiningConfig cfg;
        cfg.min_support = s;
        cfg.max_pattern_length = 4;
        const auto mined = mine_frequent(data, cfg);
        CHECK(as_map(mined) == oracle_frequent(data, s, 4));
        for (const auto& sp : mined) {
            CHECK(sp.count == sp.count_target + sp.count_nontarget);
            CHECK(sp.support == Approx(sp.support_target + sp.support_nontarget));
        }
    }
}

TEST_CASE("contiguous mining equals a brute-force window scan") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = testing::random_dataset(rng, 10, 7, 3, 1);
        MiningConfig cfg;
        cfg.min_support = 0.2;
        cfg.max_pattern_length = 4;
        cfg.contiguous = true;
        const auto mined = as_map(mine_frequent(data, cfg));
        std::map<Pattern, std::uint64_t> expected;
        const auto candidates = oracle::enumerate_patterns(data, 4);
        for (const auto& [p, sup] : candidates) {
            std::uint64_t n = 0;
            for (const auto& seq : data) {
                n += contiguous_in(seq.items, p.items()) ? seq.weight : 0;
            }
            if (n >= min_count(0.2, sup.total)) {
                expected[p] = n;
            }
        }
        CHECK(mined == expected);
    }
}

TEST_CASE("demographic itemsets equal brute-force subset enumeration") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto data = random_demographics(rng, 1 + rng() % 12);
        bool any = std::any_of(data.begin(), data.end(), [](const auto& s) { return !s.items.empty(); });
        if (!any) {
            continue;
        }
        MiningConfig cfg;
        cfg.min_support = 0.25;
        cfg.max_pattern_length = 3;
        CHECK(as_map(mine_frequent(data, cfg)) == oracle_frequent(data, 0.25, 3));
    }
}

TEST_CASE("output is in canonical order and independent of worker count") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = testing::random_dataset(rng, 60, 10, 6, 20);
        MiningConfig cfg;
        cfg.min_support = 0.1;
        cfg.max_pattern_length = 5;
        const auto one = mine_frequent(data, cfg);
        cfg.workers = 4;
        const auto four = mine_frequent(data, cfg);
        REQUIRE(one.size() == four.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i].pattern == four[i].pattern);
            CHECK(one[i].count == four[i].count);
        }
        for (std::size_t i = 1; i < one.size(); ++i) {
            const bool ordered = one[i - 1].count > one[i].count ||
                                 (one[i - 1].count == one[i].count && one[i - 1].pattern < one[i].pattern);
            CHECK(ordered);
        }
    }
}

TEST_CASE("support is anti-monotone under extension") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = testing::random_dataset(rng, 30, 8, 4, 5);
        const SupportIndex index(data);
        const auto p = testing::random_pattern(rng, 3, 4);
        const auto q = testing::random_pattern(rng, 2, 4);
        CHECK(index.count(concat(p, q)).total <= index.count(p).total);
    }
}

TEST_CASE("alphabet restriction drops patterns with excluded items") {
    Dataset data{testing::act_seq("a", {"A", "B", "C"}), testing::act_seq("b", {"A", "C"})};
    MiningConfig cfg;
    cfg.min_support = 0.5;
    cfg.alphabet = std::vector<Item>{ActivityCode{"A"}, ActivityCode{"C"}};
    const auto mined = as_map(mine_frequent(data, cfg));
    CHECK(mined.size() == 3);
    CHECK(mined.count(acts({"A", "C"})) == 1);
}

namespace {

/// 10000 weighted sequences: 364 debt-labeled, 1490 with UPD, 162 both.
Dataset upd_population() {
    auto make = [](const char* subject, const char* code, bool debt, std::uint64_t w) {
        auto s = testing::act_seq(subject, {code}, debt);
        s.weight = w;
        return s;
    };
    return {make("a", "UPD", true, 162), make("b", "UPD", false, 1328), make("c", "XXX", true, 202),
            make("d", "XXX", false, 8308)};
}

}  // namespace

TEST_CASE("impact rules on a population shaped like the UPD row") {
    MiningConfig cfg;
    cfg.min_support = 0.1;
    const auto report = mine_impact_oriented(upd_population(), cfg, TargetLabel::debt());
    CHECK(report.support_target == Approx(0.0364));
    const ImpactRule* upd_t = nullptr;
    for (const auto& r : report.positive) {
        if (r.pattern == acts({"UPD"}) && r.label_is_target) {
            upd_t = &r;
        }
    }
    REQUIRE(upd_t != nullptr);
    CHECK(upd_t->support == Approx(0.0162));
    CHECK(upd_t->confidence.value() == Approx(162.0 / 1490.0));
    CHECK(upd_t->lift.value() == Approx(162.0 / 1490.0 / 0.0364));
    CHECK(std::abs(upd_t->lift.value() - 3.0) < 0.05);
}

TEST_CASE("impact rules partition each label's support") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto data = testing::random_dataset(rng, 30, 6, 4, 10);
        MiningConfig cfg;
        cfg.min_support = 0.2;
        const auto report = mine_impact_oriented(data, cfg, TargetLabel::debt());
        REQUIRE(report.positive.size() == report.negative.size());
        for (std::size_t i = 0; i < report.positive.size(); ++i) {
            const auto& pos = report.positive[i];
            const auto& neg = report.negative[i];
            CHECK(pos.pattern == neg.pattern);
            CHECK(pos.label == neg.label);
            const double label_support = pos.label_is_target ? report.support_target : report.support_nontarget;
            CHECK(pos.support + neg.support == Approx(label_support));
        }
    }
}

TEST_CASE("single-label data warns instead of failing") {
    Dataset data{testing::act_seq("a", {"A"}, true), testing::act_seq("b", {"A", "B"}, true)};
    MiningConfig cfg;
    cfg.min_support = 0.5;
    const auto report = mine_impact_oriented(data, cfg, TargetLabel::debt());
    CHECK_FALSE(report.warnings.empty());
    for (const auto& r : report.positive) {
        if (!r.label_is_target) {
            CHECK(r.lift.status() == MetricStatus::undefined);
        }
    }
}
