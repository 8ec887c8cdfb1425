#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "behaviorlab/behavior_model.hpp"

namespace behaviorlab {

enum class Profile : std::uint8_t { uniform, planted_exception, planted_reversal, debt_cohort };

std::optional<Profile> profile_from_string(const std::string& text);
std::string to_string(Profile p);

struct GeneratorConfig {
    Profile profile = Profile::uniform;
    std::uint64_t seed = 0;
    // orderbook profiles
    std::size_t benchmark_days = 20;
    std::size_t sequences_per_day = 500;
    std::size_t planted_sequences = 50;  // target-day sequences carrying the planted pair
    double rate_ratio = 10.0;            // target rate / benchmark rate
    // person profiles
    std::size_t persons = 10000;
    double debt_rate = 0.2;
};

/// Throws InputError on zero sizes or a ratio that leaves no benchmark plants.
void validate(const GeneratorConfig& cfg);

/// The two vectors planted by planted-exception, in order.
MicrostructureVector planted_first();
MicrostructureVector planted_second();

/// File name → contents. Always includes truth.json and run.cfg; the CSV set
/// depends on the profile. Identical config gives identical bytes.
std::map<std::string, std::string> generate(const GeneratorConfig& cfg);

/// generate() written into `dir` (created if missing). Returns the file names.
std::vector<std::string> generate_to(const GeneratorConfig& cfg, const std::string& dir);

}  // namespace behaviorlab
