#include "behaviorlab/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/error.hpp"
#include "behaviorlab/ingestion.hpp"
#include "behaviorlab/time.hpp"

namespace behaviorlab {

namespace {

using Date = std::chrono::sys_days;

constexpr std::array<std::pair<Profile, const char*>, 4> profile_names{{
    {Profile::uniform, "uniform"},
    {Profile::planted_exception, "planted-exception"},
    {Profile::planted_reversal, "planted-reversal"},
    {Profile::debt_cohort, "debt-cohort"},
}};

// Portable draws: std distributions differ between standard libraries.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(pick(static_cast<std::size_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[pick(i)]);
        }
    }
    /// k distinct indices out of [0, n), ascending.
    std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
            idx[i] = i;
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(idx[i], idx[i + pick(n - i)]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    std::mt19937_64 rng_;
};

std::string clock_text(std::int64_t seconds) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", static_cast<int>(seconds / 3600),
                  static_cast<int>(seconds / 60 % 60), static_cast<int>(seconds % 60));
    return buf;
}

std::string money(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const Date kFirstDay = std::chrono::sys_days{std::chrono::year{2026} / 3 / 2};

// ---------------------------------------------------------------------------
// Orderbook profiles
// ---------------------------------------------------------------------------

constexpr std::int64_t kSmallCut = 300;
constexpr std::int64_t kMediumCut = 700;

struct Lifecycle {
    OrderSize size;
    Side side;
    FillLevel fill;
    std::int8_t status;
    bool operator==(const Lifecycle&) const = default;
};

Lifecycle lifecycle_of(const MicrostructureVector& v) {
    return {v.order_size, v.action, v.trade_probability, v.status};
}

std::vector<Lifecycle> background_lifecycles(bool reserve_planted) {
    const std::array<std::pair<FillLevel, std::int8_t>, 7> fill_status{{{FillLevel::L, 0},
                                                                        {FillLevel::L, -1},
                                                                        {FillLevel::M, 0},
                                                                        {FillLevel::M, -1},
                                                                        {FillLevel::H, 0},
                                                                        {FillLevel::H, -1},
                                                                        {FillLevel::H, 1}}};
    std::vector<Lifecycle> out;
    for (auto size : {OrderSize::S, OrderSize::M, OrderSize::L}) {
        for (auto side : {Side::B, Side::S}) {
            for (const auto& [fill, status] : fill_status) {
                Lifecycle c{size, side, fill, status};
                if (reserve_planted &&
                    (c == lifecycle_of(planted_first()) || c == lifecycle_of(planted_second()))) {
                    continue;
                }
                out.push_back(c);
            }
        }
    }
    return out;
}

class OrderbookWriter {
public:
    explicit OrderbookWriter(Draw& draw) : draw_(draw) {
        out_ << "serial_id,date,time,account_id,security,action,price,volume,event\n";
    }

    void order(Date day, std::int64_t at, const std::string& account, const std::string& security, double price,
               const Lifecycle& c) {
        std::int64_t volume = c.size == OrderSize::S   ? draw_.between(100, kSmallCut)
                              : c.size == OrderSize::M ? draw_.between(400, kMediumCut)
                                                       : draw_.between(800, 1200);
        volume -= volume % 4;
        std::int64_t filled = 0;
        switch (c.fill) {
            case FillLevel::L: filled = draw_.chance(0.5) ? 0 : volume / 4; break;
            case FillLevel::M: filled = volume / 2; break;
            case FillLevel::H: filled = c.status == 1 ? volume : volume / 4 * 3; break;
        }
        char serial[32];
        std::snprintf(serial, sizeof serial, "O%07zu", ++serial_);
        const std::string prefix = std::string(serial) + "," + format_date(day) + ",";
        const std::string tail = account + "," + security + "," + (c.side == Side::B ? "B" : "S") + "," + money(price);
        out_ << prefix << clock_text(at) << "," << tail << "," << volume << ",order\n";
        if (filled > 0) {
            out_ << prefix << clock_text(at + 30) << "," << tail << "," << filled << ",fill\n";
        }
        if (c.status == -1) {
            out_ << prefix << clock_text(at + 45) << "," << tail << ",0,withdraw\n";
        }
    }

    std::string text() const { return out_.str(); }

private:
    Draw& draw_;
    std::ostringstream out_;
    std::size_t serial_ = 0;
};

void orderbook_profile(const GeneratorConfig& cfg, bool plant, std::map<std::string, std::string>& files) {
    Draw draw(cfg.seed);
    const auto background = background_lifecycles(true);
    const std::vector<std::string> securities{"SEC1", "SEC2", "SEC3"};
    std::vector<double> base{12.0, 35.0, 4.5};
    OrderbookWriter book(draw);

    const std::size_t days = cfg.benchmark_days + 1;
    const std::size_t n = cfg.sequences_per_day;
    const std::size_t target_plants = plant ? cfg.planted_sequences : 0;
    const auto bench_plants = static_cast<std::size_t>(std::llround(static_cast<double>(target_plants) / cfg.rate_ratio));
    const Date target_day = kFirstDay + std::chrono::days(static_cast<long>(days - 1));

    for (std::size_t d = 0; d < days; ++d) {
        const Date day = kFirstDay + std::chrono::days(static_cast<long>(d));
        for (auto& b : base) {
            b *= 1.0 + (draw.unit() - 0.5) * 0.02;
        }
        std::vector<std::size_t> lengths(n);
        for (std::size_t i = 0; i < n; ++i) {
            lengths[i] = 2 + i % 5;
        }
        draw.shuffle(lengths);
        const auto planted = draw.sample(n, d + 1 == days ? target_plants : bench_plants);
        std::size_t next_plant = 0;
        for (std::size_t i = 0; i < n; ++i) {
            char account[32];
            std::snprintf(account, sizeof account, "A%04zu", i + 1);
            const auto& security = securities[i % securities.size()];
            const bool carries = next_plant < planted.size() && planted[next_plant] == i;
            next_plant += carries ? 1 : 0;
            std::int64_t at = 10 * 3600 + draw.between(0, 240) * 60;
            for (std::size_t k = 0; k < lengths[i]; ++k) {
                Lifecycle c = background[draw.pick(background.size())];
                if (carries && k + 2 == lengths[i]) {
                    c = lifecycle_of(planted_first());
                } else if (carries && k + 1 == lengths[i]) {
                    c = lifecycle_of(planted_second());
                }
                const double price = base[i % base.size()] * (1.0 + (draw.unit() - 0.5) * 0.01);
                book.order(day, at, account, security, price, c);
                at += draw.between(60, 1200);
            }
        }
    }
    files["orderbook.csv"] = book.text();

    Json truth;
    truth["profile"] = to_string(cfg.profile);
    truth["seed"] = cfg.seed;
    truth["first_date"] = format_date(kFirstDay);
    truth["target_date"] = format_date(target_day);
    truth["benchmark_days"] = cfg.benchmark_days;
    truth["sequences_per_day"] = n;
    truth["size_cutpoints"] = {{"small", kSmallCut}, {"medium", kMediumCut}};
    truth["planted"] = Json::array();
    if (plant) {
        const double target_rate = static_cast<double>(target_plants) / static_cast<double>(n);
        const double bench_rate = static_cast<double>(bench_plants) / static_cast<double>(n);
        Json p;
        p["pattern"] = Json::array({to_json(Item{planted_first()}), to_json(Item{planted_second()})});
        p["target_sequences"] = target_plants;
        p["benchmark_sequences_per_day"] = bench_plants;
        p["target_rate"] = target_rate;
        p["benchmark_rate"] = bench_rate;
        p["rate_ratio"] = target_rate / bench_rate;
        // every day has the same average length, so I_e reduces to the rate ratio
        p["I_e_expected"] = target_rate / bench_rate;
        truth["planted"].push_back(p);
    }
    truth["background_rate_ratio"] = 1.0;
    files["truth.json"] = truth.dump(2) + "\n";

    std::ostringstream run;
    run << "# generated run configuration\n"
        << "kind = orderbook\n"
        << "size-small = " << kSmallCut << "\n"
        << "size-medium = " << kMediumCut << "\n"
        << "mode = exceptional\n"
        << "benchmark-days = " << cfg.benchmark_days << "\n"
        << "target-date = " << format_date(target_day) << "\n"
        << "min-supp = 0.02\n"
        << "min-ie = 5\n";
    files["run.cfg"] = run.str();
}

// ---------------------------------------------------------------------------
// Person profiles
// ---------------------------------------------------------------------------

std::string person_id(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "C%06zu", i + 1);
    return buf;
}

struct PersonWriter {
    std::ostringstream acts;
    std::ostringstream debts;
    std::size_t debt_serial = 0;

    PersonWriter() {
        acts << "person_id,timestamp,activity_code\n";
        debts << "person_id,debt_id,raised_date,amount,duration_days\n";
    }

    void activities(const std::string& person, Date day, const std::vector<std::string>& codes) {
        for (std::size_t k = 0; k < codes.size(); ++k) {
            acts << person << "," << format_date(day) << " " << clock_text(9 * 3600 + static_cast<std::int64_t>(k) * 600)
                 << "," << codes[k] << "\n";
        }
    }

    void debt(Draw& draw, const std::string& person, Date day) {
        char id[32];
        std::snprintf(id, sizeof id, "D%06zu", ++debt_serial);
        debts << person << "," << id << "," << format_date(day) << "," << money(static_cast<double>(draw.between(100, 5000)))
              << "," << draw.between(7, 180) << "\n";
    }
};

const std::vector<std::string> kBackgroundCodes{"ADR", "CHG", "DOC", "INC", "REA", "STM"};

void reversal_profile(const GeneratorConfig& cfg, std::map<std::string, std::string>& files) {
    Draw draw(cfg.seed);
    PersonWriter out;
    constexpr double kUnderlyingShare = 0.3;
    constexpr double kTriggerShare = 1.0 / 3.0;
    constexpr double kDebtWithTrigger = 0.8;
    constexpr double kDebtUnderlyingOnly = 0.1;
    constexpr double kDebtOtherwise = 0.2;
    for (std::size_t i = 0; i < cfg.persons; ++i) {
        const auto id = person_id(i);
        std::vector<std::string> codes;
        const auto len = static_cast<std::size_t>(draw.between(2, 5));
        for (std::size_t k = 0; k < len; ++k) {
            codes.push_back(kBackgroundCodes[draw.pick(kBackgroundCodes.size())]);
        }
        const bool underlying = draw.chance(kUnderlyingShare);
        const bool trigger = underlying && draw.chance(kTriggerShare);
        if (underlying) {
            const auto at = draw.pick(codes.size() + 1);
            codes.insert(codes.begin() + static_cast<long>(at), "ARR");
            if (trigger) {
                const auto after = at + 1 + draw.pick(codes.size() - at);
                codes.insert(codes.begin() + static_cast<long>(after), "IRR");
            }
        }
        const double p_debt = trigger ? kDebtWithTrigger : underlying ? kDebtUnderlyingOnly : kDebtOtherwise;
        out.activities(id, kFirstDay, codes);
        if (draw.chance(p_debt)) {
            out.debt(draw, id, kFirstDay);
        }
    }
    files["activities.csv"] = out.acts.str();
    files["debts.csv"] = out.debts.str();

    const double conf_underlying =
        kTriggerShare * kDebtWithTrigger + (1.0 - kTriggerShare) * kDebtUnderlyingOnly;
    Json truth;
    truth["profile"] = to_string(cfg.profile);
    truth["seed"] = cfg.seed;
    truth["persons"] = cfg.persons;
    truth["planted"] = Json::array({Json{{"underlying", {"ARR"}},
                                         {"trigger", {"IRR"}},
                                         {"from_label", "NDT"},
                                         {"to_label", "DET"},
                                         {"conf_underlying_expected", conf_underlying},
                                         {"conf_derivative_expected", kDebtWithTrigger},
                                         {"Cir_expected", kDebtWithTrigger / conf_underlying}}});
    files["truth.json"] = truth.dump(2) + "\n";
    files["run.cfg"] = "# generated run configuration\nkind = activity\nmode = reversal\nmin-supp = 0.05\ncir-min = 1.5\n";
}

void uniform_persons(Draw& draw, std::vector<std::string>& codes) {
    const auto len = static_cast<std::size_t>(draw.between(1, 4));
    for (std::size_t k = 0; k < len; ++k) {
        codes.push_back(std::vector<std::string>{"CSH", "PO", "WH", "IRR"}[draw.pick(4)]);
    }
}

void debt_cohort_profile(const GeneratorConfig& cfg, std::map<std::string, std::string>& files) {
    Draw draw(cfg.seed);
    const auto targets = static_cast<std::size_t>(std::llround(cfg.debt_rate * static_cast<double>(cfg.persons)));
    const auto debtors = draw.sample(cfg.persons, targets);
    std::vector<bool> is_debtor(cfg.persons, false);
    for (auto i : debtors) {
        is_debtor[i] = true;
    }
    constexpr double kMarkerGivenTarget = 0.6;
    constexpr double kMarkerOtherwise = 0.1;

    const std::map<std::string, std::vector<std::string>> values{
        {"indigenous_code", {"N", "Y"}},
        {"medical_condition", {"N", "Y"}},
        {"region_office", {"north", "south", "east", "west"}},
        {"gender", {"F", "M"}},
        {"age_band", {"18-21", "22-25", "26-45", "46-64", "65+"}},
        {"marital_status", {"single", "married", "sep"}},
        {"birth_country", {"AU", "NZ", "UK", "other"}},
        {"migration_status", {"citizen", "resident"}},
        {"education_level", {"school", "trade", "degree"}},
        {"postcode", {"2000", "2600", "3000", "4000"}},
        {"language", {"en", "other"}},
        {"rent_type", {"own", "private", "public"}},
        {"method_of_payment", {"cash", "post", "bank"}},
    };
    std::ostringstream demo;
    const auto& cols = demographic_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        demo << (c ? "," : "") << cols[c];
    }
    demo << "\n";
    PersonWriter out;
    for (std::size_t i = 0; i < cfg.persons; ++i) {
        const auto id = person_id(i);
        demo << id;
        for (std::size_t c = 1; c < cols.size(); ++c) {
            demo << ",";
            if (cols[c] == "partner_person_id") {
                demo << (draw.chance(0.5) ? person_id(draw.pick(cfg.persons)) : "");
            } else {
                const auto& opts = values.at(cols[c]);
                demo << opts[draw.pick(opts.size())];
            }
        }
        demo << "\n";
        std::vector<std::string> codes;
        uniform_persons(draw, codes);
        if (draw.chance(is_debtor[i] ? kMarkerGivenTarget : kMarkerOtherwise)) {
            codes.insert(codes.begin() + static_cast<long>(draw.pick(codes.size() + 1)), "ARR");
        }
        out.activities(id, kFirstDay, codes);
        if (is_debtor[i]) {
            out.debt(draw, id, kFirstDay);
        }
    }
    files["demographics.csv"] = demo.str();
    files["activities.csv"] = out.acts.str();
    files["debts.csv"] = out.debts.str();

    Json truth;
    truth["profile"] = to_string(cfg.profile);
    truth["seed"] = cfg.seed;
    truth["persons"] = cfg.persons;
    truth["debt_rate"] = cfg.debt_rate;
    truth["target_persons"] = targets;
    truth["prevalence"] = static_cast<double>(targets) / static_cast<double>(cfg.persons);
    truth["planted"] = Json::array({Json{{"pattern", {"ARR"}},
                                         {"rate_given_target", kMarkerGivenTarget},
                                         {"rate_given_nontarget", kMarkerOtherwise}}});
    files["truth.json"] = truth.dump(2) + "\n";
    files["run.cfg"] = "# generated run configuration\nmode = combined\nmin-supp = 0.05\n";
}

}  // namespace

std::optional<Profile> profile_from_string(const std::string& text) {
    for (const auto& [p, name] : profile_names) {
        if (text == name) {
            return p;
        }
    }
    return std::nullopt;
}

std::string to_string(Profile p) {
    for (const auto& [q, name] : profile_names) {
        if (p == q) {
            return name;
        }
    }
    return "?";
}

void validate(const GeneratorConfig& cfg) {
    if (cfg.profile == Profile::uniform || cfg.profile == Profile::planted_exception) {
        if (cfg.benchmark_days == 0 || cfg.sequences_per_day == 0) {
            throw InputError("benchmark days and sequences per day must be positive");
        }
    }
    if (cfg.profile == Profile::planted_exception) {
        if (cfg.planted_sequences == 0 || cfg.planted_sequences > cfg.sequences_per_day) {
            throw InputError("planted sequences must be in [1, sequences per day]");
        }
        if (!(cfg.rate_ratio >= 1.0) ||
            std::llround(static_cast<double>(cfg.planted_sequences) / cfg.rate_ratio) < 1) {
            throw InputError("rate ratio must be >= 1 and leave at least one planted benchmark sequence per day");
        }
    }
    if (cfg.profile == Profile::planted_reversal || cfg.profile == Profile::debt_cohort) {
        if (cfg.persons == 0) {
            throw InputError("persons must be positive");
        }
        if (!(cfg.debt_rate >= 0.0 && cfg.debt_rate <= 1.0)) {
            throw InputError("debt rate must be in [0, 1]");
        }
    }
}

MicrostructureVector planted_first() { return {OrderSize::L, Side::B, FillLevel::L, -1, 1}; }
MicrostructureVector planted_second() { return {OrderSize::M, Side::S, FillLevel::H, 1, 0}; }

std::map<std::string, std::string> generate(const GeneratorConfig& cfg) {
    validate(cfg);
    std::map<std::string, std::string> files;
    switch (cfg.profile) {
        case Profile::uniform: orderbook_profile(cfg, false, files); break;
        case Profile::planted_exception: orderbook_profile(cfg, true, files); break;
        case Profile::planted_reversal: reversal_profile(cfg, files); break;
        case Profile::debt_cohort: debt_cohort_profile(cfg, files); break;
    }
    return files;
}

std::vector<std::string> generate_to(const GeneratorConfig& cfg, const std::string& dir) {
    const auto files = generate(cfg);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory " + dir + ": " + ec.message());
    }
    std::vector<std::string> names;
    for (const auto& [name, text] : files) {
        const auto path = std::filesystem::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) {
            throw InputError("cannot write " + path.string());
        }
        names.push_back(name);
    }
    return names;
}

}  // namespace behaviorlab
