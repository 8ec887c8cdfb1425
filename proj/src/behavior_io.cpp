#include "behaviorlab/behavior_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "behaviorlab/error.hpp"

namespace behaviorlab {

namespace {

constexpr const char* kSizes[] = {"S", "M", "L"};
constexpr const char* kLevels[] = {"L", "M", "H"};

template <typename Enum, std::size_t N>
Enum enum_from(const Json& j, const char* field, const char* const (&names)[N]) {
    const auto text = j.at(field).get<std::string>();
    for (std::size_t i = 0; i < N; ++i) {
        if (text == names[i]) {
            return static_cast<Enum>(i);
        }
    }
    throw SchemaError(std::string("invalid value for '") + field + "': " + text);
}

std::int8_t tristate_from(const Json& j, const char* field) {
    const auto value = j.at(field).get<int>();
    if (value < -1 || value > 1) {
        throw SchemaError(std::string("field '") + field + "' must be -1, 0 or 1");
    }
    return static_cast<std::int8_t>(value);
}

Timestamp timestamp_from(const Json& j) {
    auto t = parse_timestamp(j.get<std::string>());
    if (!t) {
        throw SchemaError("invalid timestamp: " + j.get<std::string>());
    }
    return *t;
}

Json impact_to_json(const Impact& impact) {
    if (const auto* number = std::get_if<double>(&impact)) {
        return *number;
    }
    return std::get<std::string>(impact);
}

Impact impact_from_json(const Json& j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    return j.get<std::string>();
}

template <typename T>
void put_optional(Json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    }
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        return it->get<std::string>();
    }
    return std::nullopt;
}

}  // namespace

Json to_json(const Item& item) {
    struct Visitor {
        Json operator()(const ActivityCode& a) const { return a.code; }
        Json operator()(const DemographicItem& d) const { return d.token; }
        Json operator()(const MicrostructureVector& v) const {
            Json j;
            j["b"] = kSizes[static_cast<int>(v.order_size)];
            j["a"] = v.action == Side::B ? "B" : "S";
            j["l"] = kLevels[static_cast<int>(v.trade_probability)];
            j["u"] = v.status;
            j["m"] = v.associate;
            return j;
        }
    };
    return std::visit(Visitor{}, item);
}

Item item_from_json(const Json& j, ItemKind kind) {
    switch (kind) {
        case ItemKind::activity_code:
            if (!j.is_string() || j.get<std::string>().empty()) {
                throw SchemaError("activity item must be a non-empty string");
            }
            return ActivityCode{j.get<std::string>()};
        case ItemKind::demographic_item:
            if (!j.is_string() || j.get<std::string>().empty()) {
                throw SchemaError("demographic item must be a non-empty string");
            }
            return DemographicItem{j.get<std::string>()};
        case ItemKind::microstructure_vector: {
            if (!j.is_object()) {
                throw SchemaError("microstructure item must be an object");
            }
            MicrostructureVector v;
            v.order_size = enum_from<OrderSize>(j, "b", kSizes);
            const auto side = j.at("a").get<std::string>();
            if (side != "B" && side != "S") {
                throw SchemaError("invalid value for 'a': " + side);
            }
            v.action = side == "B" ? Side::B : Side::S;
            v.trade_probability = enum_from<FillLevel>(j, "l", kLevels);
            v.status = tristate_from(j, "u");
            v.associate = tristate_from(j, "m");
            return v;
        }
    }
    throw SchemaError("unknown item kind");
}

Json to_json(const MetricValue& v) {
    if (v.ok()) {
        return v.value();
    }
    return to_string(v.status());
}

MetricValue metric_from_json(const Json& j) {
    if (j.is_number()) {
        return MetricValue::of(j.get<double>());
    }
    if (j == "novel") {
        return MetricValue::novel();
    }
    if (j == "undefined") {
        return MetricValue::undefined();
    }
    throw SchemaError("metric must be a number, \"novel\" or \"undefined\"");
}

Json to_json(const Pattern& p) {
    Json j = Json::array();
    for (const auto& item : p.items()) {
        j.push_back(to_json(item));
    }
    return j;
}

Pattern pattern_from_json(const Json& j, ItemKind kind) {
    if (!j.is_array() || j.empty()) {
        throw SchemaError("pattern must be a non-empty array");
    }
    std::vector<Item> items;
    for (const auto& element : j) {
        items.push_back(item_from_json(element, kind));
    }
    return Pattern(std::move(items));
}

Json to_json(const BehaviorSequence& seq) {
    Json j;
    j["subject_id"] = seq.subject_id;
    j["window"] = Json::array({format_timestamp(seq.window.start), format_timestamp(seq.window.end)});
    j["label"] = seq.label.display;
    j["target"] = seq.label.target;
    j["item_kind"] = to_string(seq.item_kind);
    j["items"] = Json::array();
    for (const auto& item : seq.items) {
        j["items"].push_back(to_json(item));
    }
    j["weight"] = seq.weight;
    if (!seq.stamps.empty()) {
        Json stamps = Json::array();
        for (const auto& s : seq.stamps) {
            Json stamp{{"t", format_timestamp(s.time)}, {"price", s.price}, {"volume", s.volume}};
            if (!s.security.empty()) {
                stamp["security"] = s.security;
            }
            stamps.push_back(std::move(stamp));
        }
        j["stamps"] = std::move(stamps);
    }
    if (seq.debt) {
        j["debt"] = {{"amount", seq.debt->amount}, {"duration_days", seq.debt->duration_days}};
    }
    return j;
}

BehaviorSequence sequence_from_json(const Json& j) {
    try {
        if (!j.is_object()) {
            throw SchemaError("record must be a JSON object");
        }
        BehaviorSequence seq;
        seq.subject_id = j.at("subject_id").get<std::string>();
        const auto& window = j.at("window");
        if (!window.is_array() || window.size() != 2) {
            throw SchemaError("window must be [start, end]");
        }
        seq.window = {timestamp_from(window[0]), timestamp_from(window[1])};
        seq.label.display = j.at("label").get<std::string>();
        seq.label.target = j.at("target").get<bool>();
        auto kind = item_kind_from_string(j.at("item_kind").get<std::string>());
        if (!kind) {
            throw SchemaError("unknown item_kind");
        }
        seq.item_kind = *kind;
        for (const auto& element : j.at("items")) {
            seq.items.push_back(item_from_json(element, seq.item_kind));
        }
        if (auto it = j.find("weight"); it != j.end()) {
            seq.weight = it->get<std::uint64_t>();
        }
        if (auto it = j.find("stamps"); it != j.end()) {
            for (const auto& s : *it) {
                seq.stamps.push_back({timestamp_from(s.at("t")), s.at("price").get<double>(),
                                      s.at("volume").get<std::int64_t>(), s.value("security", std::string())});
            }
        }
        if (auto it = j.find("debt"); it != j.end()) {
            seq.debt = DebtLedger{it->at("amount").get<double>(), it->at("duration_days").get<std::int64_t>()};
        }
        validate(seq);
        return seq;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid behavior record: ") + e.what());
    } catch (const InputError& e) {
        throw SchemaError(std::string("invalid behavior record: ") + e.what());
    }
}

Json to_json(const BehaviorVector& v) {
    Json j;
    j["s"] = v.subject_id;
    put_optional(j, "o", v.object_id);
    if (!v.context.empty()) {
        j["e"] = v.context;
    }
    put_optional(j, "g", v.goal);
    put_optional(j, "b", v.belief);
    j["a"] = v.action;
    put_optional(j, "l", v.plan);
    if (v.impact) {
        j["f"] = impact_to_json(*v.impact);
    }
    if (!v.constraints.empty()) {
        j["c"] = v.constraints;
    }
    j["t"] = format_timestamp(v.time);
    put_optional(j, "w", v.place);
    put_optional(j, "u", v.status);
    if (!v.associates.empty()) {
        j["m"] = v.associates;
    }
    return j;
}

BehaviorVector behavior_vector_from_json(const Json& j) {
    try {
        BehaviorVector v;
        v.subject_id = j.at("s").get<std::string>();
        v.object_id = optional_string(j, "o");
        if (auto it = j.find("e"); it != j.end()) {
            v.context = it->get<std::map<std::string, std::string>>();
        }
        v.goal = optional_string(j, "g");
        v.belief = optional_string(j, "b");
        v.action = j.at("a").get<std::string>();
        v.plan = optional_string(j, "l");
        if (auto it = j.find("f"); it != j.end()) {
            v.impact = impact_from_json(*it);
        }
        if (auto it = j.find("c"); it != j.end()) {
            v.constraints = it->get<std::vector<std::string>>();
        }
        v.time = timestamp_from(j.at("t"));
        v.place = optional_string(j, "w");
        v.status = optional_string(j, "u");
        if (auto it = j.find("m"); it != j.end()) {
            v.associates = it->get<std::vector<std::string>>();
        }
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid behavior vector: ") + e.what());
    }
}

void write_jsonl(std::ostream& out, const Dataset& data) {
    for (const auto& seq : data) {
        out << to_json(seq).dump() << '\n';
    }
}

Dataset read_jsonl(std::istream& in) {
    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            data.push_back(sequence_from_json(Json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const SchemaError& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return data;
}

void canonical_sort(Dataset& data) {
    std::stable_sort(data.begin(), data.end(), [](const BehaviorSequence& a, const BehaviorSequence& b) {
        if (a.subject_id != b.subject_id) {
            return a.subject_id < b.subject_id;
        }
        return a.window.start < b.window.start;
    });
}

}  // namespace behaviorlab
