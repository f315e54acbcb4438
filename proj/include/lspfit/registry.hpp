// SPDX-License-Identifier: Apache-2.0
//
// Measurement-campaign registry: who measured which parameters, in which
// scenario, at which frequency and bandwidth. Loaded from a CSV with schema
//   source,kind,scenario,freq_ghz,bandwidth_mhz,parameters,references
// where `parameters` and `references` are ';'-joined lists, freq_ghz is a
// real or an inclusive range "lo-hi", and bandwidth_mhz is a positive real,
// NA (not provided) or CW (continuous wave).

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lspfit/csv.hpp"
#include "lspfit/fitting.hpp"

namespace lspfit {

/// Frequency coverage of a campaign row: a single carrier or a swept range.
struct CampaignFreq {
    double lo_ghz = 0.0;
    double hi_ghz = 0.0;  // == lo_ghz for a single carrier

    bool is_range() const noexcept { return hi_ghz > lo_ghz; }
    bool overlaps(double qlo, double qhi) const noexcept { return lo_ghz <= qhi && hi_ghz >= qlo; }

    std::string str() const {
        if (!is_range()) return csv::format_double(lo_ghz);
        return csv::format_double(lo_ghz) + "-" + csv::format_double(hi_ghz);
    }
};

/// Bandwidth column: a real value in MHz, or the NA / CW markers preserved
/// verbatim from the source tables.
struct Bandwidth {
    enum class Tag : std::uint8_t { Value, NA, CW };
    Tag tag = Tag::NA;
    double mhz = 0.0;  // meaningful only when tag == Value

    std::string str() const {
        switch (tag) {
            case Tag::NA: return "NA";
            case Tag::CW: return "CW";
            case Tag::Value: return csv::format_double(mhz);
        }
        return "?";
    }
};

struct CampaignRecord {
    std::string source;
    SourceType kind = SourceType::Meas;
    Scenario scenario = Scenario::UMi;
    CampaignFreq freq;
    Bandwidth bandwidth;
    std::vector<ParameterKind> reported;
    std::vector<std::string> references;

    bool reports(const ParameterKind& p) const {
        for (const ParameterKind& q : reported)
            if (q == p) return true;
        return false;
    }
};

struct RegistryFilter {
    std::optional<Scenario> scenario;
    std::optional<ParameterKind> parameter;
    std::optional<SourceType> kind;
    std::optional<std::pair<double, double>> freq_range_ghz;  // inclusive
    std::optional<std::string> source;                        // substring match
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            if (i > start) out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline CampaignFreq parse_campaign_freq(std::string_view tok, std::size_t line_no) {
    auto fail = [&]() -> SchemaError {
        return SchemaError("line " + std::to_string(line_no) +
                           ": freq_ghz must be a positive real or 'lo-hi' range, got '" +
                           std::string(tok) + "'");
    };
    // A '-' after the first character separates a range (leading '-' would be
    // a negative frequency, which is invalid anyway).
    const auto dash = tok.find('-', 1);
    if (dash == std::string_view::npos) {
        const auto v = csv::parse_double(tok);
        if (!v || !(*v > 0.0)) throw fail();
        return CampaignFreq{*v, *v};
    }
    const auto lo = csv::parse_double(tok.substr(0, dash));
    const auto hi = csv::parse_double(tok.substr(dash + 1));
    if (!lo || !hi || !(*lo > 0.0) || !(*hi > *lo)) throw fail();
    return CampaignFreq{*lo, *hi};
}

}  // namespace detail

/// Load a campaign registry CSV. Schema problems raise SchemaError with the
/// offending line number.
inline std::vector<CampaignRecord> registry_load_stream(std::istream& in) {
    static const std::vector<std::string> expected_header = {
        "source", "kind", "scenario", "freq_ghz", "bandwidth_mhz", "parameters", "references"};

    std::vector<CampaignRecord> records;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw SchemaError("registry: empty file, header required");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (csv::split_record(line, line_no) != expected_header)
        throw SchemaError(
            "registry: header mismatch; expected "
            "'source,kind,scenario,freq_ghz,bandwidth_mhz,parameters,references'");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = csv::split_record(line, line_no);
        if (f.size() != expected_header.size())
            throw SchemaError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                              std::to_string(f.size()));

        CampaignRecord rec;
        rec.source = f[0];
        if (rec.source.empty())
            throw SchemaError("line " + std::to_string(line_no) + ": source must be non-empty");

        const auto kind = try_parse_source_type(f[1]);
        if (!kind)
            throw SchemaError("line " + std::to_string(line_no) +
                              ": kind must be Meas or RT, got '" + f[1] + "'");
        rec.kind = *kind;

        const auto sc = try_parse_scenario(f[2]);
        if (!sc)
            throw SchemaError("line " + std::to_string(line_no) + ": unknown scenario '" + f[2] +
                              "'");
        rec.scenario = *sc;

        rec.freq = detail::parse_campaign_freq(f[3], line_no);

        if (f[4] == "NA") {
            rec.bandwidth = Bandwidth{Bandwidth::Tag::NA, 0.0};
        } else if (f[4] == "CW") {
            rec.bandwidth = Bandwidth{Bandwidth::Tag::CW, 0.0};
        } else {
            const auto bw = csv::parse_double(f[4]);
            if (!bw || !(*bw > 0.0))
                throw SchemaError("line " + std::to_string(line_no) +
                                  ": bandwidth_mhz must be a positive real, NA or CW, got '" +
                                  f[4] + "'");
            rec.bandwidth = Bandwidth{Bandwidth::Tag::Value, *bw};
        }

        for (const std::string& tok : detail::split_list(f[5], ';')) {
            const auto p = try_parse_parameter(tok);
            if (!p)
                throw SchemaError("line " + std::to_string(line_no) +
                                  ": unknown parameter token '" + tok + "'");
            rec.reported.push_back(*p);
        }
        if (rec.reported.empty())
            throw SchemaError("line " + std::to_string(line_no) +
                              ": parameters must list at least one reported parameter");

        rec.references = detail::split_list(f[6], ';');
        records.push_back(std::move(rec));
    }
    return records;
}

inline std::vector<CampaignRecord> registry_load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("registry: cannot open '" + path.string() + "'");
    return registry_load_stream(in);
}

/// Records matching every supplied filter field. Frequency filtering is by
/// interval overlap, so a CW carrier matches any query range containing it.
inline std::vector<CampaignRecord> registry_query(std::span<const CampaignRecord> records,
                                                  const RegistryFilter& filter) {
    if (filter.freq_range_ghz && !(filter.freq_range_ghz->first <= filter.freq_range_ghz->second))
        throw DomainError("registry query: freq range requires lo <= hi");
    std::vector<CampaignRecord> out;
    for (const CampaignRecord& r : records) {
        if (filter.scenario && r.scenario != *filter.scenario) continue;
        if (filter.parameter && !r.reports(*filter.parameter)) continue;
        if (filter.kind && r.kind != *filter.kind) continue;
        if (filter.freq_range_ghz &&
            !r.freq.overlaps(filter.freq_range_ghz->first, filter.freq_range_ghz->second))
            continue;
        if (filter.source && r.source.find(*filter.source) == std::string::npos) continue;
        out.push_back(r);
    }
    return out;
}

}  // namespace lspfit
