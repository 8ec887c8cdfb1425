#include "behaviorlab/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/error.hpp"
#include "csv.hpp"

namespace behaviorlab {

using detail::CsvReader;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return in;
}

std::chrono::sys_days date_field(const CsvReader& row, const std::string& col) {
    auto day = parse_date(row.text(col));
    if (!day) {
        row.fail(col, "unrecognized date '" + row.text(col) + "' (expected DD/MM/YYYY or YYYY-MM-DD)");
    }
    return *day;
}

std::optional<OrderEvent> event_from(const std::string& text) {
    if (text == "order") return OrderEvent::order;
    if (text == "fill") return OrderEvent::fill;
    if (text == "withdraw") return OrderEvent::withdraw;
    if (text == "expire") return OrderEvent::expire;
    return std::nullopt;
}

}  // namespace

const std::vector<std::string>& demographic_columns() {
    static const std::vector<std::string> cols{
        "person_id",       "partner_person_id", "indigenous_code", "medical_condition", "region_office",
        "gender",          "age_band",          "marital_status",  "birth_country",     "migration_status",
        "education_level", "postcode",          "language",        "rent_type",         "method_of_payment"};
    return cols;
}

std::string demographic_item_key(const std::string& column) {
    if (column == "age_band") {
        return "age";
    }
    if (column == "partner_person_id") {
        return "partner";
    }
    std::string key = column;
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

std::vector<OrderRecord> parse_orderbook(std::istream& in, const std::string& name) {
    CsvReader row(in, name, {"serial_id", "date", "time", "account_id", "security", "action", "price", "volume"},
                  {"event"});
    std::vector<OrderRecord> out;
    while (row.next()) {
        OrderRecord r;
        r.line = row.line();
        r.serial_id = row.non_empty("serial_id");
        r.date = date_field(row, "date");
        auto tod = parse_time_of_day(row.text("time"));
        if (!tod) {
            row.fail("time", "unrecognized time '" + row.text("time") + "' (expected HH:MM:SS)");
        }
        r.time = *tod;
        r.account_id = row.non_empty("account_id");
        r.security = row.non_empty("security");
        const auto& action = row.text("action");
        if (action == "B") {
            r.action = Side::B;
        } else if (action == "S") {
            r.action = Side::S;
        } else {
            row.fail("action", "unknown action '" + action + "' (expected B or S)");
        }
        r.price = row.decimal("price");
        if (!(r.price >= 0) || !std::isfinite(r.price)) {
            row.fail("price", "price must be a finite non-negative number");
        }
        r.volume = row.integer("volume");
        if (row.has("event") && !row.text("event").empty()) {
            r.event = event_from(row.text("event"));
            if (!r.event) {
                row.fail("event", "unknown event '" + row.text("event") + "'");
            }
        }
        const bool needs_volume = !r.event || *r.event == OrderEvent::order || *r.event == OrderEvent::fill;
        if (needs_volume && r.volume <= 0) {
            row.fail("volume", "volume must be positive");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ActivityRecord> parse_activities(std::istream& in, const std::string& name) {
    CsvReader row(in, name, {"person_id", "timestamp", "activity_code"});
    std::vector<ActivityRecord> out;
    while (row.next()) {
        ActivityRecord r;
        r.line = row.line();
        r.person_id = row.non_empty("person_id");
        auto ts = parse_timestamp(row.text("timestamp"));
        if (!ts) {
            row.fail("timestamp", "unrecognized timestamp '" + row.text("timestamp") + "'");
        }
        r.timestamp = *ts;
        r.activity_code = row.non_empty("activity_code");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<DebtRecord> parse_debts(std::istream& in, const std::string& name) {
    CsvReader row(in, name, {"person_id", "debt_id", "raised_date", "amount", "duration_days"});
    std::vector<DebtRecord> out;
    while (row.next()) {
        DebtRecord r;
        r.person_id = row.non_empty("person_id");
        r.debt_id = row.text("debt_id");
        r.raised_date = date_field(row, "raised_date");
        r.amount = row.decimal("amount");
        if (!(r.amount >= 0) || !std::isfinite(r.amount)) {
            row.fail("amount", "amount must be a finite non-negative number");
        }
        r.duration_days = row.integer("duration_days");
        if (r.duration_days < 0) {
            row.fail("duration_days", "duration must be non-negative");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<DemographicRecord> parse_demographics(std::istream& in, const std::string& name) {
    const auto& cols = demographic_columns();
    CsvReader row(in, name, cols, {"label"});
    std::vector<DemographicRecord> out;
    while (row.next()) {
        DemographicRecord r;
        r.line = row.line();
        r.person_id = row.non_empty("person_id");
        for (std::size_t i = 1; i < cols.size(); ++i) {
            r.attributes.emplace_back(cols[i], row.text(cols[i]));
        }
        if (row.has("label") && !row.text("label").empty()) {
            r.label = row.text("label");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<OrderRecord> parse_orderbook_file(const std::string& path) {
    auto in = open_input(path);
    return parse_orderbook(in, path);
}

std::vector<ActivityRecord> parse_activities_file(const std::string& path) {
    auto in = open_input(path);
    return parse_activities(in, path);
}

std::vector<DebtRecord> parse_debts_file(const std::string& path) {
    auto in = open_input(path);
    return parse_debts(in, path);
}

std::vector<DemographicRecord> parse_demographics_file(const std::string& path) {
    auto in = open_input(path);
    return parse_demographics(in, path);
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

OrderSize discretize_order_size(std::int64_t volume, const SizeCutpoints& cuts) {
    if (volume <= 0) {
        throw InputError("order volume must be positive");
    }
    if (cuts.small >= cuts.medium) {
        throw InputError("size cutpoints must be strictly increasing");
    }
    if (volume <= cuts.small) {
        return OrderSize::S;
    }
    return volume <= cuts.medium ? OrderSize::M : OrderSize::L;
}

SizeCutpoints tercile_cutpoints(std::vector<std::int64_t> volumes) {
    if (volumes.empty()) {
        throw InputError("cannot compute terciles of no volumes");
    }
    std::sort(volumes.begin(), volumes.end());
    const auto n = volumes.size();
    auto rank = [&](std::size_t k) { return volumes[(k * n + 2) / 3 - 1]; };
    SizeCutpoints cuts{rank(1), rank(2)};
    if (cuts.medium <= cuts.small) {
        cuts.medium = cuts.small + 1;
    }
    return cuts;
}

TradeProbability trade_probability(const std::vector<std::int64_t>& fills, std::int64_t ordered_volume) {
    if (ordered_volume <= 0) {
        throw InputError("ordered volume must be positive");
    }
    std::int64_t filled = 0;
    for (auto f : fills) {
        if (f < 0) {
            throw InputError("negative fill volume");
        }
        filled += f;
    }
    if (filled > ordered_volume) {
        throw InputError("fills exceed the ordered volume");
    }
    TradeProbability out;
    out.raw = static_cast<double>(filled) / static_cast<double>(ordered_volume);
    if (3 * filled < ordered_volume) {
        out.level = FillLevel::L;
    } else if (3 * filled < 2 * ordered_volume) {
        out.level = FillLevel::M;
    } else {
        out.level = FillLevel::H;
    }
    return out;
}

void validate(const ConversionConfig& cfg) {
    if (cfg.association_window.count() < 0) {
        throw InputError("association window must be non-negative");
    }
    if (cfg.window_length.count() <= 0 || cfg.bucket_length.count() <= 0) {
        throw InputError("window and bucket lengths must be positive");
    }
    auto check = [](const SizeCutpoints& c) {
        if (c.small >= c.medium) {
            throw InputError("size cutpoints must be strictly increasing");
        }
    };
    for (const auto& [security, cuts] : cfg.size_cutpoints) {
        check(cuts);
    }
    if (cfg.default_cutpoints) {
        check(*cfg.default_cutpoints);
    }
}

// ---------------------------------------------------------------------------
// Order lifecycles → microstructure sequences
// ---------------------------------------------------------------------------

namespace {

struct Lifecycle {
    const OrderRecord* placement = nullptr;
    TimeWindow window;
    std::int64_t filled = 0;
    bool withdrawn = false;
};

std::vector<Lifecycle> lifecycles(const std::vector<OrderRecord>& orders, const ConversionConfig& cfg) {
    std::vector<Lifecycle> out;
    std::map<std::pair<std::string, std::string>, std::size_t> by_serial;
    for (const auto& r : orders) {
        const auto key = std::make_pair(r.security, r.serial_id);
        auto it = by_serial.find(key);
        const bool placement = r.event ? *r.event == OrderEvent::order : it == by_serial.end();
        if (placement) {
            if (it != by_serial.end()) {
                throw ParseError("orderbook", r.line, "event", "second placement for order " + r.serial_id);
            }
            Lifecycle lc;
            lc.placement = &r;
            lc.window = window_of(r.timestamp(), cfg.window_origin, cfg.window_length);
            by_serial.emplace(key, out.size());
            out.push_back(lc);
            continue;
        }
        if (it == by_serial.end()) {
            throw ParseError("orderbook", r.line, "serial_id", "no placement precedes this row of order " + r.serial_id);
        }
        auto& lc = out[it->second];
        if (r.account_id != lc.placement->account_id) {
            throw ParseError("orderbook", r.line, "account_id", "order " + r.serial_id + " changes account");
        }
        if (!lc.window.contains(r.timestamp())) {
            continue;  // after the window closed: the lifecycle is judged at close
        }
        if (r.event && (*r.event == OrderEvent::withdraw || *r.event == OrderEvent::expire)) {
            lc.withdrawn = true;
            continue;
        }
        if (r.action != lc.placement->action) {
            throw ParseError("orderbook", r.line, "action", "fill side differs from order " + r.serial_id);
        }
        lc.filled += r.volume;
        if (lc.filled > lc.placement->volume) {
            throw ParseError("orderbook", r.line, "volume", "fills exceed the ordered volume of " + r.serial_id);
        }
    }
    return out;
}

}  // namespace

Dataset build_microstructure_sequences(const std::vector<OrderRecord>& orders, const ConversionConfig& cfg,
                                       ConversionSummary* summary) {
    validate(cfg);
    const auto cycles = lifecycles(orders, cfg);

    std::map<std::string, SizeCutpoints> cuts = cfg.size_cutpoints;
    if (!cfg.default_cutpoints) {
        std::map<std::string, std::vector<std::int64_t>> volumes;
        for (const auto& lc : cycles) {
            if (!cuts.count(lc.placement->security)) {
                volumes[lc.placement->security].push_back(lc.placement->volume);
            }
        }
        for (auto& [security, v] : volumes) {
            cuts[security] = tercile_cutpoints(std::move(v));
        }
    }
    auto cuts_for = [&](const std::string& security) {
        auto it = cuts.find(security);
        return it != cuts.end() ? it->second : *cfg.default_cutpoints;
    };

    std::map<std::pair<std::string, Timestamp>, std::vector<const Lifecycle*>> groups;
    for (const auto& lc : cycles) {
        groups[{lc.placement->account_id, lc.window.start}].push_back(&lc);
    }

    Dataset out;
    for (auto& [key, members] : groups) {
        std::stable_sort(members.begin(), members.end(), [](const Lifecycle* a, const Lifecycle* b) {
            return a->placement->timestamp() < b->placement->timestamp();
        });
        BehaviorSequence seq;
        seq.subject_id = key.first;
        seq.window = members.front()->window;
        seq.label = {false, "NORMAL"};
        seq.item_kind = ItemKind::microstructure_vector;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& lc = *members[i];
            const auto& p = *lc.placement;
            MicrostructureVector v;
            v.order_size = discretize_order_size(p.volume, cuts_for(p.security));
            v.action = p.action;
            v.trade_probability = trade_probability({lc.filled}, p.volume).level;
            v.status = lc.filled == p.volume ? 1 : (lc.withdrawn ? -1 : 0);
            if (i + 1 < members.size()) {
                const auto& next = *members[i + 1]->placement;
                if (next.timestamp() - p.timestamp() <= cfg.association_window) {
                    v.associate = next.action != p.action ? 1 : -1;
                }
            }
            seq.items.emplace_back(v);
            seq.stamps.push_back({p.timestamp(), p.price, p.volume, p.security});
        }
        out.push_back(std::move(seq));
    }
    canonical_sort(out);
    if (summary) {
        summary->records = orders.size();
        summary->sequences = out.size();
        summary->dropped_empty = 0;
        summary->labels.clear();
        if (!out.empty()) {
            summary->labels["NORMAL"] = out.size();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Activities and demographics
// ---------------------------------------------------------------------------

namespace {

struct Ledger {
    double amount = 0;
    std::int64_t duration = 0;
    bool any = false;

    void add(const DebtRecord& d) {
        amount += d.amount;
        duration = std::max(duration, d.duration_days);
        any = true;
    }
    std::optional<DebtLedger> get() const {
        return any ? std::optional<DebtLedger>(DebtLedger{amount, duration}) : std::nullopt;
    }
};

void count_labels(const Dataset& data, ConversionSummary* summary) {
    if (!summary) {
        return;
    }
    summary->labels.clear();
    for (const auto& seq : data) {
        ++summary->labels[seq.label.display];
    }
    summary->sequences = data.size();
}

}  // namespace

Dataset build_activity_sequences(const std::vector<ActivityRecord>& acts, const std::vector<DebtRecord>& debts,
                                 const ConversionConfig& cfg, ConversionSummary* summary) {
    validate(cfg);
    using Key = std::pair<std::string, Timestamp>;
    std::map<Key, std::vector<const ActivityRecord*>> groups;
    for (const auto& a : acts) {
        groups[{a.person_id, window_of(a.timestamp, cfg.window_origin, cfg.window_length).start}].push_back(&a);
    }
    std::map<Key, Ledger> in_window;
    std::map<std::string, std::vector<const DebtRecord*>> by_person;
    for (const auto& d : debts) {
        const auto w = window_of(Timestamp{d.raised_date}, cfg.window_origin, cfg.window_length);
        in_window[{d.person_id, w.start}].add(d);
        by_person[d.person_id].push_back(&d);
    }

    Dataset out;
    for (auto& [key, members] : groups) {
        std::stable_sort(members.begin(), members.end(),
                         [](const ActivityRecord* a, const ActivityRecord* b) { return a->timestamp < b->timestamp; });
        BehaviorSequence seq;
        seq.subject_id = key.first;
        seq.window = window_of(key.second, cfg.window_origin, cfg.window_length);
        seq.item_kind = ItemKind::activity_code;
        for (const auto* a : members) {
            seq.items.emplace_back(ActivityCode{a->activity_code});
        }
        auto it = in_window.find(key);
        if (it != in_window.end()) {
            seq.label = TargetLabel::debt();
            seq.debt = it->second.get();
        } else {
            seq.label = TargetLabel::no_debt();
            Ledger elsewhere;
            for (const auto* d : by_person[key.first]) {
                elsewhere.add(*d);
            }
            seq.debt = elsewhere.get();
        }
        out.push_back(std::move(seq));
    }
    canonical_sort(out);
    if (summary) {
        summary->records = acts.size();
        summary->dropped_empty = 0;
        for (const auto& [key, ledger] : in_window) {
            summary->dropped_empty += groups.count(key) ? 0 : 1;
        }
        count_labels(out, summary);
    }
    return out;
}

Dataset build_demographic_vectors(const std::vector<DemographicRecord>& demo, const std::vector<DebtRecord>& debts,
                                  ConversionSummary* summary) {
    std::set<std::string> seen, duplicates;
    for (const auto& r : demo) {
        if (!seen.insert(r.person_id).second) {
            duplicates.insert(r.person_id);
        }
    }
    if (!duplicates.empty()) {
        std::string list;
        for (const auto& d : duplicates) {
            list += (list.empty() ? "" : ", ") + d;
        }
        throw InputError("duplicate person_id in demographics: " + list);
    }
    std::map<std::string, Ledger> ledgers;
    for (const auto& d : debts) {
        ledgers[d.person_id].add(d);
    }
    Dataset out;
    for (const auto& r : demo) {
        BehaviorSequence seq;
        seq.subject_id = r.person_id;
        seq.item_kind = ItemKind::demographic_item;
        for (const auto& [column, value] : r.attributes) {
            if (value.empty()) {
                continue;
            }
            const auto key = demographic_item_key(column);
            seq.items.emplace_back(DemographicItem{key + "=" + (column == "partner_person_id" ? "yes" : value)});
        }
        std::sort(seq.items.begin(), seq.items.end());
        auto it = ledgers.find(r.person_id);
        if (it != ledgers.end()) {
            seq.debt = it->second.get();
        }
        if (r.label) {
            seq.label = {*r.label == "DET", *r.label};
        } else {
            seq.label = it != ledgers.end() ? TargetLabel::debt() : TargetLabel::no_debt();
        }
        out.push_back(std::move(seq));
    }
    canonical_sort(out);
    if (summary) {
        summary->records = demo.size();
        summary->dropped_empty = 0;
        count_labels(out, summary);
    }
    return out;
}

}  // namespace behaviorlab
