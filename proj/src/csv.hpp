#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <boost/tokenizer.hpp>

#include "behaviorlab/error.hpp"

namespace behaviorlab::detail {

/// Header-addressed CSV reader. Fields may be double-quoted, with backslash
/// escapes inside quotes. Line numbers count the header as line 1. A file
/// with no lines at all reads as zero records.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string name, const std::vector<std::string>& required,
              const std::vector<std::string>& optional = {})
        : in_(in), name_(std::move(name)) {
        std::string line;
        if (!next_line(line)) {
            return;  // an empty file holds no records
        }
        header_ = split(line);
        for (std::size_t i = 0; i < header_.size(); ++i) {
            index_[header_[i]] = i;
        }
        for (const auto& col : required) {
            if (!index_.count(col)) {
                throw ParseError(name_, 1, col, "required column missing from header");
            }
        }
        for (const auto& col : header_) {
            bool known = false;
            for (const auto& r : required) {
                known = known || r == col;
            }
            for (const auto& o : optional) {
                known = known || o == col;
            }
            if (!known) {
                throw ParseError(name_, 1, col, "unexpected column");
            }
        }
    }

    /// Advances to the next non-blank row; false at end of input.
    bool next() {
        std::string line;
        if (header_.empty() || !next_line(line)) {
            return false;
        }
        fields_ = split(line);
        if (fields_.size() != header_.size()) {
            throw ParseError(name_, line_, "", "expected " + std::to_string(header_.size()) + " fields, found " +
                                                   std::to_string(fields_.size()));
        }
        return true;
    }

    bool has(const std::string& col) const { return index_.count(col) > 0; }
    std::size_t line() const noexcept { return line_; }
    const std::string& name() const noexcept { return name_; }

    const std::string& text(const std::string& col) const { return fields_.at(index_.at(col)); }

    const std::string& non_empty(const std::string& col) const {
        const auto& v = text(col);
        if (v.empty()) {
            fail(col, "empty value");
        }
        return v;
    }

    std::int64_t integer(const std::string& col) const {
        const auto& v = text(col);
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
            fail(col, "not an integer: '" + v + "'");
        }
        return out;
    }

    double decimal(const std::string& col) const {
        const auto& v = text(col);
        double out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
            fail(col, "not a number: '" + v + "'");
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& col, const std::string& what) const {
        throw ParseError(name_, line_, col, what);
    }

private:
    bool next_line(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.find_first_not_of(" \t") != std::string::npos) {
                return true;
            }
        }
        return false;
    }

    std::vector<std::string> split(const std::string& line) const {
        using Sep = boost::escaped_list_separator<char>;
        std::vector<std::string> out;
        try {
            boost::tokenizer<Sep> tok(line, Sep('\\', ',', '"'));
            for (const auto& field : tok) {
                const auto first = field.find_first_not_of(" \t");
                const auto last = field.find_last_not_of(" \t");
                out.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
            }
        } catch (const boost::escaped_list_error& e) {
            throw ParseError(name_, line_, "", std::string("malformed CSV: ") + e.what());
        }
        return out;
    }

    std::istream& in_;
    std::string name_;
    std::size_t line_ = 0;
    std::vector<std::string> header_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::string> fields_;
};

}  // namespace behaviorlab::detail
