#include "behaviorlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "behaviorlab/behavior_io.hpp"
#include "behaviorlab/combined_miner.hpp"
#include "behaviorlab/error.hpp"
#include "behaviorlab/generator.hpp"
#include "behaviorlab/impact_miner.hpp"
#include "behaviorlab/ingestion.hpp"
#include "behaviorlab/microstructure_miner.hpp"
#include "behaviorlab/oracle.hpp"
#include "behaviorlab/time.hpp"

namespace behaviorlab {

namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string out;
    std::string config;

    // convert
    std::string kind;
    std::string debts;
    std::int64_t size_small = 0;
    std::int64_t size_medium = 0;
    std::int64_t association_window = 3600;
    std::int64_t window_length = 86400;
    std::string window_origin;

    // mine
    std::string mode;
    double min_supp = 0.1;
    std::size_t max_length = 6;
    bool contiguous = false;
    unsigned workers = 1;
    std::size_t benchmark_days = 20;
    double min_ii = 0.0;
    double min_ie = 1.0;
    std::string target_date;
    std::int64_t bucket = 60;
    double cir_min = 1.0;
    double cps_min = 0.0;
    std::string target_label = "DET";
    std::vector<std::string> classes;
    bool strict_disjoint = false;

    // generate
    std::string profile;
    std::uint64_t seed = 0;
    std::size_t sequences = 500;
    std::size_t planted = 50;
    double ratio = 10.0;
    std::size_t persons = 10000;
    double debt_rate = 0.2;

    // oracle
    std::string p;
    std::string q;
    std::string label = "DET";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return read_jsonl(in);
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void require_kind(const Dataset& data, ItemKind kind, const std::string& path) {
    for (const auto& s : data) {
        if (s.item_kind != kind) {
            throw SchemaError(path + ": expected " + to_string(kind) + " records, found " + to_string(s.item_kind));
        }
    }
}

template <class Rows>
void write_lines(const std::string& path, const Rows& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    for (const auto& j : rows) {
        out << j.dump() << '\n';
    }
    if (!out) {
        throw InputError("cannot write " + path);
    }
}

std::string sibling(const std::string& out, const std::string& suffix) {
    const std::string ext = ".jsonl";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
        return out.substr(0, out.size() - ext.size()) + suffix;
    }
    return out + suffix;
}

MiningConfig mining_config(const Options& o) {
    MiningConfig m;
    m.min_support = o.min_supp;
    m.max_pattern_length = o.max_length;
    m.contiguous = o.contiguous;
    m.workers = o.workers;
    return m;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

int run_convert(const Options& o, std::ostream& out) {
    if (o.inputs.size() != 1) {
        throw UsageError("convert takes exactly one --input");
    }
    ConversionConfig cfg;
    if (o.size_small > 0 || o.size_medium > 0) {
        cfg.default_cutpoints = SizeCutpoints{o.size_small, o.size_medium};
    }
    cfg.association_window = Duration{o.association_window};
    cfg.window_length = Duration{o.window_length};
    if (!o.window_origin.empty()) {
        const auto origin = parse_timestamp(o.window_origin);
        if (!origin) {
            throw UsageError("unrecognized --window-origin '" + o.window_origin + "'");
        }
        cfg.window_origin = *origin;
    }
    validate(cfg);
    const auto debts = o.debts.empty() ? std::vector<DebtRecord>{} : parse_debts_file(o.debts);

    ConversionSummary summary;
    Dataset data;
    if (o.kind == "orderbook") {
        data = build_microstructure_sequences(parse_orderbook_file(o.inputs[0]), cfg, &summary);
    } else if (o.kind == "activity") {
        data = build_activity_sequences(parse_activities_file(o.inputs[0]), debts, cfg, &summary);
    } else {
        data = build_demographic_vectors(parse_demographics_file(o.inputs[0]), debts, &summary);
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw InputError("cannot write " + o.out);
    }
    write_jsonl(file, data);

    out << "kind=" << o.kind << " records=" << summary.records << " sequences=" << summary.sequences
        << " dropped_empty=" << summary.dropped_empty << " labels=";
    bool first = true;
    for (const auto& [label, n] : summary.labels) {
        out << (first ? "" : ",") << label << ':' << n;
        first = false;
    }
    out << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// mine
// ---------------------------------------------------------------------------

std::size_t mine_exceptional_mode(const Options& o, std::ostream& err) {
    Dataset data;
    for (const auto& path : o.inputs) {
        auto part = read_dataset(path);
        require_kind(part, ItemKind::microstructure_vector, path);
        data.insert(data.end(), part.begin(), part.end());
    }
    ExceptionalConfig cfg;
    cfg.mining = mining_config(o);
    cfg.benchmark_days = o.benchmark_days;
    cfg.min_ii = o.min_ii;
    cfg.min_ie = o.min_ie;
    cfg.bucket_length = Duration{o.bucket};
    if (!o.target_date.empty()) {
        const auto day = parse_date(o.target_date);
        if (!day) {
            throw UsageError("unrecognized --target-date '" + o.target_date + "'");
        }
        cfg.target_date = *day;
    }
    const auto report = mine_exceptional(group_by_day(data), cfg);
    print_warnings(report.warnings, err);
    std::vector<Json> rows;
    for (const auto& p : report.patterns) {
        rows.push_back(to_json(p));
    }
    write_lines(o.out, rows);
    return rows.size();
}

std::size_t mine_impact_mode(const Options& o, std::ostream& err) {
    if (o.inputs.size() != 1) {
        throw UsageError("mode impact takes exactly one --input");
    }
    const auto data = read_dataset(o.inputs[0]);
    require_kind(data, ItemKind::activity_code, o.inputs[0]);
    const auto report = mine_impact_oriented(data, mining_config(o), TargetLabel{true, o.target_label});
    print_warnings(report.warnings, err);
    std::vector<ImpactRule> rules = report.positive;
    rules.insert(rules.end(), report.negative.begin(), report.negative.end());
    const auto risks = risk_for_rules(rules, data);
    std::vector<Json> rows;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        rows.push_back(to_json(rules[i], risks[i]));
    }
    write_lines(o.out, rows);
    return rows.size();
}

std::size_t mine_contrast_mode(const Options& o, std::ostream& err) {
    if (o.inputs.empty() || o.inputs.size() > 2) {
        throw UsageError("mode contrast takes one labeled --input or two --input datasets");
    }
    Dataset a = read_dataset(o.inputs[0]);
    require_kind(a, ItemKind::activity_code, o.inputs[0]);
    Dataset b;
    if (o.inputs.size() == 2) {
        b = read_dataset(o.inputs[1]);
        require_kind(b, ItemKind::activity_code, o.inputs[1]);
    } else {
        std::tie(a, b) = split_by_label(a, o.target_label);
    }
    auto report = mine_contrast(a, b, mining_config(o));
    print_warnings(report.warnings, err);
    Dataset ledgers = a;
    ledgers.insert(ledgers.end(), b.begin(), b.end());
    annotate_risk(report.patterns, ledgers);
    std::vector<Json> rows;
    for (const auto& c : report.patterns) {
        rows.push_back(to_json(c));
    }
    write_lines(o.out, rows);
    return rows.size();
}

std::size_t mine_reversal_mode(const Options& o, std::ostream& err) {
    if (o.inputs.size() != 1) {
        throw UsageError("mode reversal takes exactly one --input");
    }
    const auto data = read_dataset(o.inputs[0]);
    require_kind(data, ItemKind::activity_code, o.inputs[0]);
    ReversalConfig cfg{mining_config(o), o.cir_min, o.cps_min};
    auto report = mine_reversals(data, cfg);
    print_warnings(report.warnings, err);
    annotate_risk(report.pairs, data);
    std::vector<Json> rows;
    for (const auto& r : report.pairs) {
        rows.push_back(to_json(r));
    }
    write_lines(o.out, rows);
    return rows.size();
}

std::size_t mine_combined_mode(const Options& o, std::ostream& err) {
    if (o.inputs.size() != 2) {
        throw UsageError("mode combined takes a demographic and an activity --input");
    }
    auto first = read_dataset(o.inputs[0]);
    auto second = read_dataset(o.inputs[1]);
    std::string demo_path = o.inputs[0], act_path = o.inputs[1];
    if (!first.empty() && first.front().item_kind == ItemKind::activity_code) {
        std::swap(first, second);
        std::swap(demo_path, act_path);
    }
    require_kind(first, ItemKind::demographic_item, demo_path);
    require_kind(second, ItemKind::activity_code, act_path);
    CombinedConfig cfg;
    cfg.demographic = mining_config(o);
    cfg.activity = mining_config(o);
    cfg.min_support = o.min_supp;
    cfg.classes = o.classes;
    cfg.strict_disjoint = o.strict_disjoint;
    const auto report = mine_combined(first, second, cfg);
    print_warnings(report.warnings, err);
    std::vector<Json> rows, pairs, clusters;
    for (const auto& p : report.patterns) {
        rows.push_back(to_json(p));
    }
    for (const auto& p : make_pairs(report.patterns, o.strict_disjoint)) {
        pairs.push_back(to_json(p));
    }
    for (const auto& c : make_clusters(report.patterns, o.strict_disjoint)) {
        clusters.push_back(to_json(c));
    }
    write_lines(o.out, rows);
    write_lines(sibling(o.out, ".pairs.jsonl"), pairs);
    write_lines(sibling(o.out, ".clusters.jsonl"), clusters);
    return rows.size();
}

int run_mine(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.inputs.empty()) {
        throw UsageError("mine needs at least one --input");
    }
    std::size_t n = 0;
    if (o.mode == "exceptional") {
        n = mine_exceptional_mode(o, err);
    } else if (o.mode == "impact") {
        n = mine_impact_mode(o, err);
    } else if (o.mode == "contrast") {
        n = mine_contrast_mode(o, err);
    } else if (o.mode == "reversal") {
        n = mine_reversal_mode(o, err);
    } else {
        n = mine_combined_mode(o, err);
    }
    out << "mode=" << o.mode << " patterns=" << n << " out=" << o.out << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------
// generate / oracle
// ---------------------------------------------------------------------------

int run_generate(const Options& o, std::ostream& out, std::ostream& err) {
    const auto profile = profile_from_string(o.profile);
    if (!profile) {
        err << "error: unknown profile '" << o.profile
            << "' (expected uniform, planted-exception, planted-reversal or debt-cohort)\n";
        return exit_usage;
    }
    GeneratorConfig cfg;
    cfg.profile = *profile;
    cfg.seed = o.seed;
    cfg.benchmark_days = o.benchmark_days;
    cfg.sequences_per_day = o.sequences;
    cfg.planted_sequences = o.planted;
    cfg.rate_ratio = o.ratio;
    cfg.persons = o.persons;
    cfg.debt_rate = o.debt_rate;
    const auto names = generate_to(cfg, o.out);
    out << "profile=" << o.profile << " seed=" << o.seed << " files=";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? "," : "") << names[i];
    }
    out << " out=" << o.out << '\n';
    return exit_ok;
}

Pattern pattern_argument(const std::string& text, ItemKind kind, const char* flag) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw UsageError(std::string(flag) + " must be a JSON array of items");
    }
    return pattern_from_json(j, kind);
}

int run_oracle(const Options& o, std::ostream& out) {
    if (o.inputs.size() != 1) {
        throw UsageError("oracle takes exactly one --input");
    }
    const auto data = read_dataset(o.inputs[0]);
    const ItemKind kind = data.empty() ? ItemKind::activity_code : data.front().item_kind;
    std::vector<Json> rows;
    if (!o.p.empty()) {
        const auto p = pattern_argument(o.p, kind, "--p");
        const auto t = o.q.empty() ? oracle::probabilities(data, p, p, o.label)
                                   : oracle::probabilities(data, p, pattern_argument(o.q, kind, "--q"), o.label);
        rows.push_back(Json{{"n_PQ_T", t.n_PQ_T},
                            {"n_PQ_nT", t.n_PQ_nT},
                            {"n_P_T", t.n_P_T},
                            {"n_P_nT", t.n_P_nT},
                            {"n_total", t.n_total}});
    } else {
        const auto all = oracle::enumerate_patterns(data, o.max_length);
        std::vector<std::pair<Pattern, oracle::ExactSupport>> kept;
        for (const auto& [p, s] : all) {
            if (s.count > 0 && s.value() + 1e-12 >= o.min_supp) {
                kept.emplace_back(p, s);
            }
        }
        std::stable_sort(kept.begin(), kept.end(),
                         [](const auto& a, const auto& b) { return a.second.count > b.second.count; });
        for (const auto& [p, s] : kept) {
            rows.push_back(Json{{"pattern", to_json(p)}, {"count", s.count}, {"support", s.value()}});
        }
    }
    if (o.out.empty() || o.out == "-") {
        for (const auto& r : rows) {
            out << r.dump() << '\n';
        }
    } else {
        write_lines(o.out, rows);
        out << "oracle rows=" << rows.size() << " out=" << o.out << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// config file
// ---------------------------------------------------------------------------

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

/// Inserts `--key value` pairs from a flat key=value file right after the
/// subcommand, skipping options the command line already sets. Keys of other
/// subcommands are ignored so one file can drive a whole run.
void merge_config(CLI::App& app, std::vector<std::string>& args) {
    auto sub_it = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
    if (sub_it == args.end()) {
        return;
    }
    CLI::App* sub = nullptr;
    try {
        sub = app.get_subcommand(*sub_it);
    } catch (const CLI::OptionNotFound&) {
        return;
    }
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return;
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file " + path);
    }
    std::vector<std::string> injected;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (key == "config") {
            throw UsageError(path + ":" + std::to_string(line_no) + ": config files cannot nest");
        }
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        if (opt == nullptr) {
            bool known = false;
            for (const auto* other : app.get_subcommands({})) {
                known = known || other->get_option_no_throw(flag) != nullptr;
            }
            if (!known) {
                throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
            continue;
        }
        if (given_on_command_line(args, flag)) {
            continue;
        }
        if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1" || value == "yes") {
                injected.push_back(flag);
            }
        } else {
            injected.push_back(flag);
            injected.push_back(value);
        }
    }
    args.insert(sub_it + 1, injected.begin(), injected.end());
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Behavior pattern analysis: conversion, mining and synthetic data", "behaviorlab"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    const auto add_config = [&](CLI::App* s) {
        s->add_option("--config", o.config, "Flat key = value file; command-line flags win");
    };
    const auto add_mining = [&](CLI::App* s) {
        s->add_option("--min-supp", o.min_supp, "Minimum support fraction")->check(CLI::Range(0.0, 1.0));
        s->add_option("--max-length", o.max_length, "Longest pattern mined")->check(CLI::PositiveNumber);
        s->add_flag("--contiguous", o.contiguous, "Patterns must match adjacent items");
        s->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* convert = app.add_subcommand("convert", "Turn source CSV extracts into behavior sequences");
    convert->add_option("--kind", o.kind, "orderbook, activity or demographic")
        ->required()
        ->check(CLI::IsMember({"orderbook", "activity", "demographic"}));
    convert->add_option("--input", o.inputs, "Source CSV")->required()->check(CLI::ExistingFile)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    convert->add_option("--debts", o.debts, "Debt CSV (activity and demographic kinds)")->check(CLI::ExistingFile);
    convert->add_option("--out", o.out, "Behavior JSON-lines file")->required();
    convert->add_option("--size-small", o.size_small, "Largest small order volume")->check(CLI::NonNegativeNumber);
    convert->add_option("--size-medium", o.size_medium, "Largest medium order volume")->check(CLI::NonNegativeNumber);
    convert->add_option("--association-window", o.association_window, "Seconds within which a next order associates")
        ->check(CLI::PositiveNumber);
    convert->add_option("--window-length", o.window_length, "Sequence window in seconds")->check(CLI::PositiveNumber);
    convert->add_option("--window-origin", o.window_origin, "Timestamp windows are aligned to");
    add_config(convert);

    auto* mine = app.add_subcommand("mine", "Mine behavior patterns from converted data");
    mine->add_option("--mode", o.mode, "exceptional, impact, contrast, reversal or combined")
        ->required()
        ->check(CLI::IsMember({"exceptional", "impact", "contrast", "reversal", "combined"}));
    mine->add_option("--input", o.inputs, "Behavior JSON-lines file(s)")->check(CLI::ExistingFile)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    mine->add_option("--out", o.out, "Report JSON-lines file")->required();
    add_mining(mine);
    mine->add_option("--benchmark-days", o.benchmark_days, "Preceding days each target day is compared with")
        ->check(CLI::PositiveNumber);
    mine->add_option("--min-ii", o.min_ii, "Minimum intentional interestingness")->check(CLI::NonNegativeNumber);
    mine->add_option("--min-ie", o.min_ie, "Minimum exceptional interestingness")->check(CLI::NonNegativeNumber);
    mine->add_option("--target-date", o.target_date, "Only score this day");
    mine->add_option("--bucket", o.bucket, "Price bucket in seconds for abnormal return")->check(CLI::PositiveNumber);
    mine->add_option("--cir-min", o.cir_min, "Minimum conditional impact ratio")->check(CLI::NonNegativeNumber);
    mine->add_option("--cps-min", o.cps_min, "Minimum conditional P-S ratio")->check(CLI::NonNegativeNumber);
    mine->add_option("--target-label", o.target_label, "Label treated as the target class");
    mine->add_option("--class", o.classes, "Class considered by combined mining (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    mine->add_flag("--strict-disjoint", o.strict_disjoint, "Paired parts must share no item");
    add_config(mine);

    auto* gen = app.add_subcommand("generate", "Write synthetic inputs with a ground-truth sidecar");
    gen->add_option("--profile", o.profile, "uniform, planted-exception, planted-reversal or debt-cohort")->required();
    gen->add_option("--seed", o.seed, "Random seed")->required();
    gen->add_option("--out", o.out, "Output directory")->required();
    gen->add_option("--benchmark-days", o.benchmark_days, "Benchmark days before the target day")
        ->check(CLI::PositiveNumber);
    gen->add_option("--sequences", o.sequences, "Account sequences per day")->check(CLI::PositiveNumber);
    gen->add_option("--planted", o.planted, "Target-day sequences carrying the planted pattern")
        ->check(CLI::PositiveNumber);
    gen->add_option("--ratio", o.ratio, "Target to benchmark rate ratio")->check(CLI::PositiveNumber);
    gen->add_option("--persons", o.persons, "Persons in person profiles")->check(CLI::PositiveNumber);
    gen->add_option("--debt-rate", o.debt_rate, "Share of persons with debt")->check(CLI::Range(0.0, 1.0));
    add_config(gen);

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answers for small inputs");
    oracle_cmd->add_option("--input", o.inputs, "Behavior JSON-lines file")->required()->check(CLI::ExistingFile)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    oracle_cmd->add_option("--out", o.out, "Output file (default stdout)");
    oracle_cmd->add_option("--max-length", o.max_length, "Longest pattern enumerated")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--min-supp", o.min_supp, "Only list patterns at or above this support")
        ->check(CLI::Range(0.0, 1.0));
    oracle_cmd->add_option("--p", o.p, "Pattern P as a JSON item array; prints its contingency table");
    oracle_cmd->add_option("--q", o.q, "Suffix Q as a JSON item array");
    oracle_cmd->add_option("--label", o.label, "Label counted as T");
    add_config(oracle_cmd);

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    try {
        merge_config(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (!mine->parsed()) {
        o.min_supp = oracle_cmd->parsed() ? 0.0 : o.min_supp;
    }
    if (oracle_cmd->parsed() && oracle_cmd->get_option("--max-length")->count() == 0) {
        o.max_length = 3;
    }

    try {
        if (convert->parsed()) {
            return run_convert(o, out);
        }
        if (mine->parsed()) {
            return run_mine(o, out, err);
        }
        if (gen->parsed()) {
            return run_generate(o, out, err);
        }
        return run_oracle(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    }
}

}  // namespace behaviorlab
