#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "behaviorlab/error.hpp"
#include "behaviorlab/microstructure_miner.hpp"

using namespace behaviorlab;
using doctest::Approx;

namespace {

const MicrostructureVector kV1{OrderSize::L, Side::B, FillLevel::L, -1, 1};
const MicrostructureVector kV2{OrderSize::M, Side::S, FillLevel::H, 1, 0};

Date day(int offset) { return *parse_date("2005-06-01") + std::chrono::days{offset}; }

BehaviorSequence micro_seq(const std::string& subject, Date d, std::vector<MicrostructureVector> items) {
    BehaviorSequence seq;
    seq.subject_id = subject;
    seq.window = {Timestamp{d}, Timestamp{d + std::chrono::days{1}}};
    seq.label = {false, "NORMAL"};
    seq.item_kind = ItemKind::microstructure_vector;
    for (const auto& v : items) {
        seq.items.emplace_back(v);
    }
    return seq;
}

MicrostructureVector random_vector(std::mt19937_64& rng, int variety) {
    MicrostructureVector v;
    v.order_size = static_cast<OrderSize>(rng() % 3);
    v.action = static_cast<Side>(rng() % 2);
    v.trade_probability = static_cast<FillLevel>(rng() % std::max(1, variety));
    return v;
}

/// Background days: n sequences of length 2..4 over a small vector alphabet.
TradingDay background_day(std::mt19937_64& rng, Date d, int n, int variety = 2) {
    TradingDay td{d, {}};
    for (int i = 0; i < n; ++i) {
        std::vector<MicrostructureVector> items(2 + rng() % 3);
        for (auto& v : items) {
            v = random_vector(rng, variety);
        }
        td.sequences.push_back(micro_seq("A" + std::to_string(i), d, items));
    }
    return td;
}

/// 100 sequences of length 2 per day; the pair (v1, v2) appears in `planted`
/// of them, the rest repeat a fixed filler pair.
TradingDay planted_day(Date d, int planted) {
    TradingDay td{d, {}};
    const MicrostructureVector filler{OrderSize::S, Side::B, FillLevel::M, 0, 0};
    for (int i = 0; i < 100; ++i) {
        td.sequences.push_back(micro_seq("A" + std::to_string(i), d,
                                         i < planted ? std::vector{kV1, kV2} : std::vector{filler, filler}));
    }
    return td;
}

}  // namespace

TEST_CASE("group_by_day orders days") {
    Dataset data{micro_seq("a", day(2), {kV1}), micro_seq("b", day(0), {kV2}), micro_seq("c", day(2), {kV2})};
    const auto days = group_by_day(data);
    REQUIRE(days.size() == 2);
    CHECK(days[0].date == day(0));
    CHECK(days[1].sequences.size() == 2);
}

TEST_CASE("planted pair at ten times its benchmark rate") {
    std::vector<TradingDay> days;
    for (int j = 0; j < 5; ++j) {
        days.push_back(planted_day(day(j), 2));
    }
    days.push_back(planted_day(day(5), 20));
    ExceptionalConfig cfg;
    cfg.benchmark_days = 5;
    cfg.mining.min_support = 0.1;
    cfg.min_ie = 5;
    const auto report = mine_exceptional(days, cfg);
    CHECK(report.warnings.size() == 5);
    const ExceptionalPattern* pair = nullptr;
    for (const auto& p : report.patterns) {
        CHECK(p.date == day(5));
        if (p.pattern == Pattern({kV1, kV2})) {
            pair = &p;
        }
    }
    REQUIRE(pair != nullptr);
    CHECK(pair->ie.value() == Approx(10.0));
    CHECK(pair->ii == Approx(0.2));
    // closed form: equal lengths, so I_e is the support ratio
    CHECK(pair->ie.value() == Approx(0.2 / 0.02));
}

TEST_CASE("a target day identical to its benchmarks passes no threshold above one") {
    std::mt19937_64 rng(3);
    const auto base = background_day(rng, day(0), 50);
    std::vector<TradingDay> days;
    for (int j = 0; j < 4; ++j) {
        auto d = base;
        d.date = day(j);
        days.push_back(d);
    }
    ExceptionalConfig cfg;
    cfg.benchmark_days = 3;
    cfg.mining.min_support = 0.05;
    cfg.min_ie = 0.0;
    const auto all = mine_exceptional(days, cfg);
    REQUIRE_FALSE(all.patterns.empty());
    for (const auto& p : all.patterns) {
        CHECK(p.ie.value() == Approx(1.0).epsilon(1e-12));
    }
    cfg.min_ie = 1.0 + 1e-9;
    CHECK(mine_exceptional(days, cfg).patterns.empty());
}

TEST_CASE("unseen-in-benchmark patterns are novel and rank first") {
    std::vector<TradingDay> days{planted_day(day(0), 0), planted_day(day(1), 30)};
    ExceptionalConfig cfg;
    cfg.benchmark_days = 1;
    cfg.mining.min_support = 0.2;
    cfg.min_ie = 5;
    const auto report = mine_exceptional(days, cfg);
    REQUIRE_FALSE(report.patterns.empty());
    CHECK(report.patterns.front().ie.status() == MetricStatus::novel);
}

TEST_CASE("thresholds give nested outputs and every emitted pattern re-checks") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<TradingDay> days;
        for (int j = 0; j < 4; ++j) {
            days.push_back(background_day(rng, day(j), 40 + static_cast<int>(rng() % 20), 1 + trial % 3));
        }
        ExceptionalConfig loose;
        loose.benchmark_days = 3;
        loose.mining.min_support = 0.05;
        loose.min_ie = 0.5;
        loose.min_ii = 0.01;
        auto strict = loose;
        strict.min_ie = 1.2;
        strict.min_ii = 0.05;
        const auto a = mine_exceptional(days, loose);
        const auto b = mine_exceptional(days, strict);
        std::set<Pattern> loose_set;
        for (const auto& p : a.patterns) {
            loose_set.insert(p.pattern);
        }
        for (const auto& p : b.patterns) {
            CHECK(loose_set.count(p.pattern) == 1);
            CHECK(p.ii >= strict.min_ii);
            CHECK(p.ie.at_least(strict.min_ie));
            const auto& target = days.back().sequences;
            double len = 0;
            for (const auto& s : target) {
                len += static_cast<double>(s.items.size());
            }
            len /= static_cast<double>(target.size());
            CHECK(p.ii == Approx(support(p.pattern, target) * static_cast<double>(p.pattern.size()) / len));
        }
    }
}

TEST_CASE("report is independent of worker count") {
    std::mt19937_64 rng(1);
    std::vector<TradingDay> days;
    for (int j = 0; j < 8; ++j) {
        days.push_back(background_day(rng, day(j), 60));
    }
    ExceptionalConfig cfg;
    cfg.benchmark_days = 3;
    cfg.mining.min_support = 0.05;
    cfg.min_ie = 0.0;
    const auto one = mine_exceptional(days, cfg);
    cfg.mining.workers = 4;
    const auto four = mine_exceptional(days, cfg);
    REQUIRE(one.patterns.size() == four.patterns.size());
    for (std::size_t i = 0; i < one.patterns.size(); ++i) {
        CHECK(to_json(one.patterns[i]).dump() == to_json(four.patterns[i]).dump());
    }
}

TEST_CASE("configuration errors") {
    ExceptionalConfig cfg;
    cfg.min_ie = -1;
    CHECK_THROWS_AS(mine_exceptional({}, cfg), InputError);
    cfg.min_ie = 1;
    cfg.benchmark_weights = {1.0};
    CHECK_THROWS_AS(mine_exceptional({}, cfg), InputError);
}

TEST_CASE("AR over bucketed VWAP of the matching accounts") {
    const Timestamp t0{day(0)};
    std::vector<OrderStamp> orders{{t0 + Duration{10}, 100.0, 100, "S"},
                                   {t0 + Duration{20}, 100.0, 300, "S"},
                                   {t0 + Duration{70}, 110.0, 50, "S"},
                                   {t0 + Duration{130}, 100.0, 10, "S"}};
    CHECK(bucketed_abnormal_return(orders, t0, Duration{60}).value() == Approx(std::log(1.1)));
    orders.pop_back();
    CHECK(bucketed_abnormal_return(orders, t0, Duration{60}).status() == MetricStatus::undefined);

    // only accounts holding the pattern contribute prices
    auto matching = micro_seq("a", day(1), {kV1, kV2, kV1});
    matching.stamps = {{Timestamp{day(1)} + Duration{0}, 10.0, 100, "S"},
                       {Timestamp{day(1)} + Duration{60}, 11.0, 100, "S"},
                       {Timestamp{day(1)} + Duration{120}, 10.0, 100, "S"}};
    auto other = micro_seq("b", day(1), {kV2});
    other.stamps = {{Timestamp{day(1)} + Duration{60}, 50.0, 1000, "S"}};
    std::vector<TradingDay> days{{day(0), {micro_seq("c", day(0), {kV2})}}, {day(1), {matching, other}}};
    ExceptionalConfig cfg;
    cfg.benchmark_days = 1;
    cfg.mining.min_support = 0.5;
    cfg.min_ie = 0;
    const auto report = mine_exceptional(days, cfg);
    bool seen = false;
    for (const auto& p : report.patterns) {
        if (p.pattern == Pattern({kV1, kV2})) {
            seen = true;
            CHECK(p.ar.value() == Approx(std::log(1.1)));
            CHECK(p.security == "S");
        }
    }
    CHECK(seen);
}

TEST_CASE("report records round-trip") {
    const MicrostructureVector v{OrderSize::S, Side::S, FillLevel::M, 0, 0};
    ExceptionalPattern p{Pattern({v, v})};
    p.date = *parse_date("24/05/2005");
    p.support = 0.027;
    p.ii = 0.054;
    p.ie = MetricValue::of(11.2);
    p.ar = MetricValue::of(0.0638);
    p.security = "S123";
    const auto j = Json::parse(to_json(p).dump());
    CHECK(j.at("severity") == "high");
    CHECK(j.at("AR_percent").get<double>() == Approx(6.38));
    CHECK(j.at("date") == "2005-05-24");
    const auto back = exceptional_pattern_from_json(j);
    CHECK(back.pattern == p.pattern);
    CHECK(back.ii == 0.054);
    CHECK(back.ie == p.ie);
    CHECK(back.ar == p.ar);
    CHECK(back.date == p.date);
    ExceptionalPattern n = p;
    n.ie = MetricValue::novel();
    n.ar = MetricValue::undefined();
    const auto nj = Json::parse(to_json(n).dump());
    CHECK(nj.at("I_e") == "novel");
    CHECK(exceptional_pattern_from_json(nj).ar.status() == MetricStatus::undefined);
}

TEST_CASE("alert rules") {
    CHECK(to_alert_rules({}).empty());
    CHECK(severity_of(MetricValue::of(11.2)) == "high");
    CHECK(severity_of(MetricValue::of(10.0)) == "high");
    CHECK(severity_of(MetricValue::of(9.99)) == "medium");
    CHECK(severity_of(MetricValue::of(5.0)) == "medium");
    CHECK(severity_of(MetricValue::of(4.99)) == "low");
    CHECK(severity_of(MetricValue::novel()) == "high");

    ExceptionalPattern p{Pattern({kV1, kV2})};
    p.ie = MetricValue::of(7);
    const auto rules = to_alert_rules({p});
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].severity == "medium");

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<MicrostructureVector> items(rng() % 6);
        for (auto& v : items) {
            v = rng() % 3 == 0 ? (rng() % 2 ? kV1 : kV2) : random_vector(rng, 3);
        }
        const auto seq = micro_seq("x", day(0), items);
        CHECK(rules[0].fires(seq) == contains(seq, rules[0].pattern));
    }
}

TEST_CASE("severity is monotone in I_e") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ie(0.0, 20.0);
    auto rank = [](const std::string& s) { return s == "low" ? 0 : s == "medium" ? 1 : 2; };
    for (int i = 0; i < 200; ++i) {
        const double a = ie(rng), b = ie(rng);
        if (a <= b) {
            CHECK(rank(severity_of(MetricValue::of(a))) <= rank(severity_of(MetricValue::of(b))));
        }
    }
}
