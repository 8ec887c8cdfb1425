#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "behaviorlab/time.hpp"

namespace behaviorlab {

// ---------------------------------------------------------------------------
// Items
// ---------------------------------------------------------------------------

enum class ItemKind : std::uint8_t { activity_code, microstructure_vector, demographic_item };

enum class OrderSize : std::int8_t { S, M, L };
enum class Side : std::int8_t { B, S };
/// Binned share of the ordered volume that traded.
enum class FillLevel : std::int8_t { L, M, H };

/// Discretized order lifecycle: size, side, fill level, status, follow-up.
///
/// status: 1 done, 0 active at window close, -1 withdrawn/expired.
/// associate: +1 next order of the account is on the opposite side, -1 same
/// side, 0 no next order inside the association window.
struct MicrostructureVector {
    OrderSize order_size = OrderSize::S;
    Side action = Side::B;
    FillLevel trade_probability = FillLevel::L;
    std::int8_t status = 0;
    std::int8_t associate = 0;

    auto operator<=>(const MicrostructureVector&) const = default;
};

struct ActivityCode {
    std::string code;
    auto operator<=>(const ActivityCode&) const = default;
};

/// "attribute=value" token of a demographic record.
struct DemographicItem {
    std::string token;
    auto operator<=>(const DemographicItem&) const = default;
};

/// Alternative index matches ItemKind.
using Item = std::variant<ActivityCode, MicrostructureVector, DemographicItem>;

inline ItemKind kind_of(const Item& item) noexcept { return static_cast<ItemKind>(item.index()); }

std::string to_string(ItemKind kind);
std::optional<ItemKind> item_kind_from_string(const std::string& text);
std::string to_string(const Item& item);
std::string to_string(const MicrostructureVector& v);

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// Non-empty ordered list of items of one kind. Demographic patterns are
/// itemsets and are kept sorted and duplicate-free.
class Pattern {
public:
    explicit Pattern(std::vector<Item> items);

    const std::vector<Item>& items() const noexcept { return items_; }
    ItemKind kind() const noexcept { return kind_of(items_.front()); }
    std::size_t size() const noexcept { return items_.size(); }

    auto operator<=>(const Pattern&) const = default;

private:
    std::vector<Item> items_;
};

std::string to_string(const Pattern& p);

/// p followed by q.
Pattern concat(const Pattern& p, const Pattern& q);

// ---------------------------------------------------------------------------
// Labels and sequences
// ---------------------------------------------------------------------------

struct TargetLabel {
    bool target = false;
    std::string display;

    static TargetLabel debt() { return {true, "DET"}; }
    static TargetLabel no_debt() { return {false, "NDT"}; }

    auto operator<=>(const TargetLabel&) const = default;
};

struct DebtLedger {
    double amount = 0.0;
    std::int64_t duration_days = 0;

    auto operator<=>(const DebtLedger&) const = default;
};

/// Source order behind one microstructure vector (used for VWAP/AR).
struct OrderStamp {
    Timestamp time{};
    double price = 0.0;
    std::int64_t volume = 0;
    std::string security;

    auto operator<=>(const OrderStamp&) const = default;
};

struct BehaviorSequence {
    std::string subject_id;
    TimeWindow window;
    TargetLabel label;
    ItemKind item_kind = ItemKind::activity_code;
    std::vector<Item> items;
    std::uint64_t weight = 1;
    std::vector<OrderStamp> stamps;   // empty, or one per item
    std::optional<DebtLedger> debt;

    bool operator==(const BehaviorSequence&) const = default;
};

using Dataset = std::vector<BehaviorSequence>;

/// Throws InputError when a sequence breaks its invariants.
void validate(const BehaviorSequence& seq);

/// Ordered (non-contiguous) subsequence test; set inclusion for demographic
/// itemsets. With `contiguous`, matched indices must be consecutive.
/// Throws InputError on item kind mismatch.
bool contains(const BehaviorSequence& seq, const Pattern& p, bool contiguous = false);
bool contains(const std::vector<Item>& items, const Pattern& p, bool contiguous = false);

// ---------------------------------------------------------------------------
// Full behavior vector
// ---------------------------------------------------------------------------

using Impact = std::variant<double, std::string>;

/// One behavior instance with all thirteen attributes. Only subject, action
/// and time are mandatory.
struct BehaviorVector {
    std::string subject_id;
    std::optional<std::string> object_id;
    std::map<std::string, std::string> context;
    std::optional<std::string> goal;
    std::optional<std::string> belief;
    std::string action;
    std::optional<std::string> plan;
    std::optional<Impact> impact;
    std::vector<std::string> constraints;
    Timestamp time{};
    std::optional<std::string> place;
    std::optional<std::string> status;
    std::vector<std::string> associates;

    bool operator==(const BehaviorVector&) const = default;
};

/// The subject/object/action/impact/time restriction.
struct SimplifiedVector {
    std::string subject_id;
    std::optional<std::string> object_id;
    std::string action;
    std::optional<Impact> impact;
    Timestamp time{};

    bool operator==(const SimplifiedVector&) const = default;
};

SimplifiedVector project_simplified(const BehaviorVector& v);
BehaviorVector embed(const SimplifiedVector& v);

}  // namespace behaviorlab
