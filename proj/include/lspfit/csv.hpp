// SPDX-License-Identifier: Apache-2.0
//
// Minimal strict CSV support: comma-separated, UTF-8, "." decimal, optional
// RFC-4180 double-quoting for fields containing commas or quotes. Records
// are single-line (embedded newlines are not part of any schema here), which
// keeps diagnostics line-addressable.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lspfit/core.hpp"

namespace lspfit::csv {

/// Split one record into fields. Throws SchemaError on unterminated quotes.
inline std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            cur += c;
            ++i;
        } else if (c == '"' && cur.empty()) {
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            ++i;
        } else {
            cur += c;
            ++i;
        }
    }
    if (quoted)
        throw SchemaError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

/// Quote a field only when it needs it.
inline std::string encode_field(std::string_view field) {
    const bool needs = field.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string encode_record(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += encode_field(fields[i]);
    }
    return out;
}

/// Locale-independent double parse of the full field.
inline std::optional<double> parse_double(std::string_view s) noexcept {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        const int len = std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (len <= 0) break;
        if (auto back = parse_double(std::string_view(buf, static_cast<std::size_t>(len)));
            back && *back == v)
            return std::string(buf, static_cast<std::size_t>(len));
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// FNV-1a 64-bit over raw bytes; used for dataset checksums.
inline std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lspfit::csv
