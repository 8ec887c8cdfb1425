#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "behaviorlab/combined_miner.hpp"
#include "behaviorlab/error.hpp"
#include "helpers.hpp"

using namespace behaviorlab;
using doctest::Approx;
using testing::act_seq;
using testing::acts;
using testing::demo_seq;

namespace {

Pattern demo(std::initializer_list<const char*> tokens) {
    std::vector<Item> items;
    for (const auto* t : tokens) {
        items.push_back(DemographicItem{t});
    }
    return Pattern(std::move(items));
}

CombinedPattern scored(const char* label, double lift, double lift_d, double lift_a) {
    CombinedPattern p{"", demo({"x=1"}), acts({"A"}), label};
    p.lift = MetricValue::of(lift);
    p.lift_d = MetricValue::of(lift_d);
    p.lift_a = MetricValue::of(lift_a);
    p.ip = pattern_interestingness(p.lift, p.lift_d, p.lift_a);
    return p;
}

CombinedConfig loose_config() {
    CombinedConfig cfg;
    cfg.demographic.min_support = 0.01;
    cfg.activity.min_support = 0.01;
    cfg.min_support = 0.01;
    return cfg;
}

const CombinedPattern* find(const CombinedReport& r, const Pattern& d, const std::optional<Pattern>& a,
                            const std::string& label) {
    for (const auto& p : r.patterns) {
        if (p.demographic == d && p.activity == a && p.label == label) {
            return &p;
        }
    }
    return nullptr;
}

// Brute-force counts over persons; activity items per person already joined.
struct Person {
    std::set<std::string> demo;
    BehaviorSequence acts;
    std::string cls;
};

std::vector<Person> join(const Dataset& demos, const Dataset& activities) {
    std::vector<Person> people;
    for (const auto& d : demos) {
        Person p;
        for (const auto& i : d.items) {
            p.demo.insert(std::get<DemographicItem>(i).token);
        }
        p.acts.item_kind = ItemKind::activity_code;
        for (const auto& a : activities) {
            if (a.subject_id == d.subject_id) {
                p.acts.items.insert(p.acts.items.end(), a.items.begin(), a.items.end());
            }
        }
        p.cls = d.label.display;
        people.push_back(std::move(p));
    }
    return people;
}

bool has_demo(const Person& p, const Pattern& d) {
    for (const auto& i : d.items()) {
        if (!p.demo.count(std::get<DemographicItem>(i).token)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("interestingness of the two reference pair rows") {
    // lift, lift of D, lift of A as printed; expected I_P 1.47 and 1.38
    CHECK(pattern_interestingness(MetricValue::of(1.95), MetricValue::of(0.91), MetricValue::of(1.46)).value() ==
          Approx(1.47).epsilon(0.005));
    CHECK(pattern_interestingness(MetricValue::of(1.35), MetricValue::of(1.24), MetricValue::of(0.79)).value() ==
          Approx(1.38).epsilon(0.005));
}

TEST_CASE("a rule without activity part has interestingness exactly one") {
    CombinedPattern p{"", demo({"a=1"}), std::nullopt, "A"};
    score(p, 100, 40, 30, 20, 100, 40, 30, 20);
    CHECK(p.lift_a.value() == 1.0);
    CHECK(p.ip.value() == 1.0);
    CHECK(p.lift.value() == Approx((20.0 / 30.0) / 0.4));
}

TEST_CASE("six persons: every count matches the contingency table") {
    const Dataset demos{
        demo_seq("1", {"age=65+", "income=0"}, "A"), demo_seq("2", {"age=65+"}, "A"),
        demo_seq("3", {"age=65+", "income=0"}, "C"), demo_seq("4", {"income=0"}, "A"),
        demo_seq("5", {"age=22-25"}, "C"),           demo_seq("6", {"age=22-25", "income=0"}, "C"),
    };
    const Dataset activities{
        act_seq("1", {"WH", "CP"}), act_seq("2", {"WH"}), act_seq("3", {"IR", "WH"}),
        act_seq("4", {"CP"}),       act_seq("5", {"WH"}),
    };
    const auto report = mine_combined(demos, activities, loose_config());
    // age=65+ & WH -> A: D covers {1,2,3}, A covers {1,2,3,5}, DA {1,2,3}, DAT {1,2}
    const auto* p = find(report, demo({"age=65+"}), acts({"WH"}), "A");
    REQUIRE(p != nullptr);
    CHECK(p->count == 2);
    CHECK(p->support == Approx(2.0 / 6));
    CHECK(p->confidence.value() == Approx(2.0 / 3));
    const double supp_t = 3.0 / 6;
    CHECK(p->lift.value() == Approx((2.0 / 3) / supp_t));
    CHECK(p->lift_d.value() == Approx((2.0 / 3) / supp_t));
    CHECK(p->lift_a.value() == Approx((2.0 / 4) / supp_t));
    CHECK(p->ip.value() == Approx(p->lift.value() / (p->lift_d.value() * p->lift_a.value())));
    // person 6 has no activity and still counts in the population
    const auto* q = find(report, demo({"age=22-25"}), std::nullopt, "C");
    REQUIRE(q != nullptr);
    CHECK(q->count == 2);
    CHECK(q->confidence.value() == 1.0);
    // ids follow report order
    for (std::size_t i = 0; i < report.patterns.size(); ++i) {
        CHECK(report.patterns[i].id == "P" + std::to_string(i + 1));
    }
}

TEST_CASE("property: random joins agree with brute-force counting") {
    std::mt19937_64 rng(11);
    const std::vector<const char*> tokens{"a=1", "a=2", "b=1", "b=2", "c=1"};
    const std::vector<const char*> classes{"A", "B", "C"};
    for (int round = 0; round < 15; ++round) {
        Dataset demos, activities;
        const int n = 8 + static_cast<int>(rng() % 20);
        for (int i = 0; i < n; ++i) {
            auto d = demo_seq(std::to_string(i), {}, classes[rng() % 3]);
            std::set<std::string> chosen;
            for (const auto* t : tokens) {
                if (rng() % 2) {
                    chosen.insert(t);
                }
            }
            if (chosen.empty()) {
                chosen.insert(tokens[rng() % tokens.size()]);
            }
            for (const auto& t : chosen) {
                d.items.push_back(DemographicItem{t});
            }
            demos.push_back(d);
            const auto windows = rng() % 3;
            for (std::size_t w = 0; w < windows; ++w) {
                auto a = act_seq(std::to_string(i), {});
                a.window.start = Timestamp{std::chrono::seconds(static_cast<long>(w) * 100)};
                const auto len = 1 + rng() % 3;
                for (std::size_t k = 0; k < len; ++k) {
                    a.items.push_back(ActivityCode{std::string(1, static_cast<char>('P' + rng() % 3))});
                }
                activities.push_back(a);
            }
        }
        auto cfg = loose_config();
        cfg.demographic.min_support = 0.2;
        cfg.activity.min_support = 0.2;
        cfg.min_support = 0.1;
        const auto report = mine_combined(demos, activities, cfg);
        const auto people = join(demos, activities);
        const double total = static_cast<double>(people.size());
        for (const auto& p : report.patterns) {
            double n_t = 0, n_d = 0, n_dt = 0, n_a = 0, n_at = 0, n_da = 0, n_dat = 0;
            for (const auto& person : people) {
                const bool t = person.cls == p.label;
                const bool d = has_demo(person, p.demographic);
                const bool a = !p.activity || contains(person.acts, *p.activity);
                n_t += t;
                n_d += d;
                n_dt += d && t;
                n_a += a;
                n_at += a && t;
                n_da += d && a;
                n_dat += d && a && t;
            }
            CHECK(static_cast<double>(p.count) == n_dat);
            CHECK(n_dat >= std::ceil(0.1 * total - 1e-9));
            CHECK(p.confidence.value() == Approx(n_dat / n_da));
            CHECK(p.lift.value() == Approx((n_dat / n_da) / (n_t / total)));
            CHECK(p.lift_d.value() == Approx((n_dt / n_d) / (n_t / total)));
            CHECK(p.lift_a.value() == Approx((n_at / n_a) / (n_t / total)));
        }
        for (std::size_t i = 1; i < report.patterns.size(); ++i) {
            CHECK_FALSE(metric_greater(report.patterns[i].ip, report.patterns[i - 1].ip));
        }
    }
}

TEST_CASE("pair interestingness multiplies contributions and class distance") {
    auto a = scored("A", 2.0, 1.0, 1.0);
    auto b = scored("B", 3.0, 1.5, 1.0);
    CHECK(pair_interestingness(a, b, "D").value() == Approx(4.0));
    b.label = "A";
    CHECK(pair_interestingness(a, b, "D").value() == 0.0);
    CHECK(class_distance("A", "B") == 1.0);
}

TEST_CASE("patterns sharing A with overlapping demographics pair only when not strict") {
    auto p1 = scored("B", 1.95, 0.91, 1.46);
    p1.id = "P1";
    p1.demographic = demo({"income=0", "remote=Y", "marital=Sep", "gender=F"});
    p1.activity = acts({"WH", "CP"});
    auto p2 = scored("A", 1.35, 1.24, 0.79);
    p2.id = "P2";
    p2.demographic = demo({"income=0", "age=65+"});
    p2.activity = acts({"WH", "CP"});
    const auto loose = make_pairs({p1, p2});
    REQUIRE(loose.size() == 1);
    CHECK(loose[0].shared == "A");
    CHECK(loose[0].i_pair.value() == Approx((1.95 / 1.46) * (1.35 / 0.79)));
    CHECK(make_pairs({p1, p2}, true).empty());
}

TEST_CASE("cluster under one demographic takes the best valid pair") {
    std::vector<CombinedPattern> members{scored("A", 2.02, 1.24, 1.90), scored("A", 1.92, 1.24, 1.79),
                                         scored("A", 1.86, 1.24, 1.57), scored("C", 3.40, 0.85, 1.38)};
    const std::vector<Pattern> parts{acts({"WH"}), acts({"IR"}), acts({"WH", "IR"}), acts({"WH", "IR", "W2"})};
    for (std::size_t i = 0; i < members.size(); ++i) {
        members[i].id = "p" + std::to_string(i + 1);
        members[i].demographic = demo({"age=65+"});
        members[i].activity = parts[i];
    }
    const auto clusters = make_clusters(members);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].members.size() == 4);
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            best = std::max(best, pair_interestingness(members[i], members[j], "D").value());
        }
    }
    CHECK(best > 0.0);
    CHECK(clusters[0].i_cluster.value() == Approx(best));

    // same class only: no valid pair
    members[3].label = "A";
    CHECK(make_clusters(members)[0].i_cluster.value() == 0.0);
    // a lone pattern forms no cluster
    CHECK(make_clusters({members[0]}).empty());
}

TEST_CASE("activity subjects without demographics are rejected by name") {
    const Dataset demos{demo_seq("1", {"a=1"}, "A")};
    const Dataset activities{act_seq("1", {"X"}), act_seq("ghost", {"X"}), act_seq("zz", {"Y"})};
    try {
        mine_combined(demos, activities, loose_config());
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string what = e.what();
        CHECK(what.find("ghost") != std::string::npos);
        CHECK(what.find("zz") != std::string::npos);
    }
}

TEST_CASE("combined records round-trip through json") {
    const Dataset demos{demo_seq("1", {"a=1"}, "A"), demo_seq("2", {"a=1"}, "B"), demo_seq("3", {"a=2"}, "B")};
    const Dataset activities{act_seq("1", {"X"}), act_seq("2", {"X"})};
    const auto report = mine_combined(demos, activities, loose_config());
    REQUIRE_FALSE(report.patterns.empty());
    for (const auto& p : report.patterns) {
        const auto back = combined_pattern_from_json(to_json(p));
        CHECK(back.demographic == p.demographic);
        CHECK(back.activity == p.activity);
        CHECK(back.count == p.count);
        CHECK(back.ip == p.ip);
    }
    CHECK_THROWS_AS(combined_pattern_from_json(Json{{"id", "P1"}}), SchemaError);
}
