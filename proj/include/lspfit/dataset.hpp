// SPDX-License-Identifier: Apache-2.0
//
// Dataset ingestion: the workbook sheet-name grammar, the flat CSV rendering
// of the per-sheet statistic tables, manifest/checksum bookkeeping and
// plausibility validation.
//
// StatPoint CSV schema (header is bit-exact):
//   sheet,condition,source,source_type,release,freq_ghz,bandwidth_mhz,value,weight
// with condition in {LOS,NLOS}, source_type in {Meas,RT}, release in
// {Rel14,Rel19}, bandwidth_mhz a positive real or NA or CW, weight a
// non-negative real or empty (defaults to 1).

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lspfit/csv.hpp"
#include "lspfit/fitting.hpp"
#include "lspfit/model_db.hpp"

namespace lspfit {

// ---------------------------------------------------------------------------
// Sheet-name grammar: Scenario_Statistic_Parameter, plus three special sheets
// ---------------------------------------------------------------------------

struct SheetTriple {
    Scenario scenario = Scenario::UMi;
    StatisticKind statistic = StatisticKind::Mean;
    ParameterKind parameter;

    friend bool operator==(const SheetTriple&, const SheetTriple&) = default;
};

enum class SpecialSheet : std::uint8_t { References, NumClusters, PlywoodPenLoss };

struct SheetName {
    std::string raw;
    std::variant<SheetTriple, SpecialSheet> parsed;

    bool is_special() const noexcept { return std::holds_alternative<SpecialSheet>(parsed); }
    const SheetTriple& triple() const { return std::get<SheetTriple>(parsed); }
};

struct SheetNameError : Error {
    enum class Kind { Malformed, UnknownScenario, UnknownStatistic, UnknownParameter };
    Kind kind;
    SheetNameError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

namespace detail {

// Parameter tokens that may appear in a sheet name (sheet spelling).
inline std::optional<ParameterKind> sheet_parameter(std::string_view tok) noexcept {
    using Code = ParameterKind::Code;
    if (tok == "DS") return ParameterKind(Code::DS);
    if (tok == "ASD") return ParameterKind(Code::ASD);
    if (tok == "ASA") return ParameterKind(Code::ASA);
    if (tok == "ZSA") return ParameterKind(Code::ZSA);
    if (tok == "ZSD") return ParameterKind(Code::ZSD);
    if (tok == "Cluster_ASD") return ParameterKind(Code::ClusterASD);
    return std::nullopt;
}

inline std::string_view sheet_parameter_token(const ParameterKind& p) {
    if (p.code() == ParameterKind::Code::ClusterASD) return "Cluster_ASD";
    return ParameterKind::code_name(p.code());
}

}  // namespace detail

/// Parse a workbook sheet name. Case-sensitive and exact.
inline SheetName parse_sheet_name(std::string_view raw) {
    SheetName out;
    out.raw = std::string(raw);
    if (raw == "List of References") {
        out.parsed = SpecialSheet::References;
        return out;
    }
    if (raw == "#cluster") {
        out.parsed = SpecialSheet::NumClusters;
        return out;
    }
    if (raw == "Plywood_Pen_Loss") {
        out.parsed = SpecialSheet::PlywoodPenLoss;
        return out;
    }

    const auto first = raw.find('_');
    if (first == std::string_view::npos)
        throw SheetNameError(SheetNameError::Kind::Malformed,
                             "sheet name '" + out.raw + "': expected Scenario_Statistic_Parameter");
    const auto second = raw.find('_', first + 1);
    if (second == std::string_view::npos)
        throw SheetNameError(SheetNameError::Kind::Malformed,
                             "sheet name '" + out.raw + "': expected Scenario_Statistic_Parameter");

    const std::string_view sc_tok = raw.substr(0, first);
    const std::string_view st_tok = raw.substr(first + 1, second - first - 1);
    const std::string_view pm_tok = raw.substr(second + 1);

    const auto sc = try_parse_scenario(sc_tok);
    if (!sc)
        throw SheetNameError(SheetNameError::Kind::UnknownScenario,
                             "sheet name '" + out.raw + "': unknown scenario token '" +
                                 std::string(sc_tok) + "'");
    const auto st = try_parse_statistic(st_tok);
    if (!st)
        throw SheetNameError(SheetNameError::Kind::UnknownStatistic,
                             "sheet name '" + out.raw + "': unknown statistic token '" +
                                 std::string(st_tok) + "'");
    const auto pm = detail::sheet_parameter(pm_tok);
    if (!pm)
        throw SheetNameError(SheetNameError::Kind::UnknownParameter,
                             "sheet name '" + out.raw + "': unknown parameter token '" +
                                 std::string(pm_tok) + "'");
    out.parsed = SheetTriple{*sc, *st, *pm};
    return out;
}

inline std::string format_sheet_name(const SheetName& s) {
    if (s.is_special()) {
        switch (std::get<SpecialSheet>(s.parsed)) {
            case SpecialSheet::References: return "List of References";
            case SpecialSheet::NumClusters: return "#cluster";
            case SpecialSheet::PlywoodPenLoss: return "Plywood_Pen_Loss";
        }
    }
    const SheetTriple& t = s.triple();
    std::string out(to_string(t.scenario));
    out += '_';
    out += to_string(t.statistic);
    out += '_';
    out += detail::sheet_parameter_token(t.parameter);
    return out;
}

/// The 29 sheets of the source workbook, in workbook order.
inline const std::vector<std::string>& workbook_sheet_inventory() {
    static const std::vector<std::string> names = {
        "List of References",
        "UMi_Mean_DS", "UMi_Std_DS", "UMi_Mean_ASA", "UMi_Std_ASA",
        "UMa_Mean_DS", "UMa_Std_DS", "UMa_Mean_ASD", "UMa_Std_ASD",
        "UMa_Mean_ASA", "UMa_Std_ASA", "UMa_Mean_ZSA", "UMa_Std_ZSA",
        "UMi_Mean_ASD", "UMi_Std_ASD", "UMi_Mean_ZSA", "UMi_Std_ZSA",
        "#cluster", "Plywood_Pen_Loss",
        "SMa_Mean_DS", "SMa_Std_DS", "SMa_Mean_ASA", "SMa_Std_ASA",
        "SMa_Mean_ZSA", "SMa_Std_ZSA", "SMa_Mean_ASD", "SMa_Std_ASD",
        "SMa_Mean_Cluster_ASD", "UMa_Mean_Cluster_ASD",
    };
    return names;
}

// ---------------------------------------------------------------------------
// Ingest
// ---------------------------------------------------------------------------

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not row-bound
    std::string message;
};

struct SheetStats {
    std::size_t rows = 0;
    std::optional<SheetTriple> binding;  // empty for special sheets
};

struct DatasetManifest {
    std::map<std::string, SheetStats> sheets;
    std::string checksum;  // fnv1a64 over the raw file bytes
};

struct IngestOptions {
    bool strict = false;
};

struct IngestResult {
    std::vector<StatPoint> points;
    DatasetManifest manifest;
    std::vector<Diagnostic> diagnostics;
};

/// Per-row ingest failure promoted to an exception in strict mode.
struct RowError : Error {
    using Error::Error;
};

namespace detail {

inline const std::vector<std::string>& statpoint_header() {
    static const std::vector<std::string> h = {"sheet",    "condition",     "source",
                                               "source_type", "release",    "freq_ghz",
                                               "bandwidth_mhz", "value",    "weight"};
    return h;
}

// Binding of one sheet for StatPoint purposes. Triple sheets bind naturally;
// the plywood sheet binds to the canonical plywood quantity. References and
// #cluster rows carry no scenario and cannot become StatPoints.
inline std::optional<SheetTriple> statpoint_binding(const SheetName& sheet) {
    if (!sheet.is_special()) return sheet.triple();
    if (std::get<SpecialSheet>(sheet.parsed) == SpecialSheet::PlywoodPenLoss) {
        const ModelKey k = ModelDb::plywood_key();
        return SheetTriple{k.scenario, k.statistic, k.parameter};
    }
    return std::nullopt;
}

}  // namespace detail

/// Ingest a StatPoint CSV stream. Malformed rows produce line-numbered
/// diagnostics and are skipped; strict mode turns any diagnostic into a
/// RowError. Header problems are SchemaError regardless of mode.
inline IngestResult ingest_stream(std::istream& in, const IngestOptions& options = {}) {
    IngestResult out;
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out.manifest.checksum = csv::fnv1a64_hex(raw);

    std::istringstream lines(raw);
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(lines, line)) throw SchemaError("dataset: empty file, header required");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = csv::split_record(line, line_no);
    if (header != detail::statpoint_header()) {
        throw SchemaError(
            "dataset: header mismatch; expected "
            "'sheet,condition,source,source_type,release,freq_ghz,bandwidth_mhz,value,weight'");
    }

    auto diag = [&](std::size_t ln, std::string msg) {
        if (options.strict)
            throw RowError("line " + std::to_string(ln) + ": " + msg);
        out.diagnostics.push_back(Diagnostic{ln, std::move(msg)});
    };

    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = csv::split_record(line, line_no);
        if (fields.size() != detail::statpoint_header().size()) {
            diag(line_no, "expected 9 fields, got " + std::to_string(fields.size()));
            continue;
        }

        SheetName sheet;
        try {
            sheet = parse_sheet_name(fields[0]);
        } catch (const SheetNameError& e) {
            diag(line_no, e.what());
            continue;
        }
        auto& stats = out.manifest.sheets[sheet.raw];
        stats.binding = detail::statpoint_binding(sheet);

        if (!stats.binding) {
            diag(line_no, "sheet '" + sheet.raw + "' has no Scenario_Statistic_Parameter binding");
            continue;
        }

        const auto cond = try_parse_condition(fields[1]);
        if (!cond) {
            diag(line_no, "condition must be LOS or NLOS, got '" + fields[1] + "'");
            continue;
        }
        if (fields[2].empty()) {
            diag(line_no, "source must be non-empty");
            continue;
        }
        const auto stype = try_parse_source_type(fields[3]);
        if (!stype) {
            diag(line_no, "source_type must be Meas or RT, got '" + fields[3] + "'");
            continue;
        }
        const auto rel = try_parse_release(fields[4]);
        if (!rel) {
            diag(line_no, "release must be Rel14 or Rel19, got '" + fields[4] + "'");
            continue;
        }
        const auto freq = csv::parse_double(fields[5]);
        if (!freq || !std::isfinite(*freq) || *freq <= 0.0) {
            diag(line_no, "freq_ghz must be > 0");
            continue;
        }
        const std::string& bw = fields[6];
        if (bw != "NA" && bw != "CW") {
            const auto bwv = csv::parse_double(bw);
            if (!bwv || !std::isfinite(*bwv) || *bwv <= 0.0) {
                diag(line_no, "bandwidth_mhz must be a positive real, NA or CW, got '" + bw + "'");
                continue;
            }
        }
        const auto value = csv::parse_double(fields[7]);
        if (!value || !std::isfinite(*value)) {
            diag(line_no, "value must be a finite real, got '" + fields[7] + "'");
            continue;
        }
        double weight = 1.0;
        if (!fields[8].empty()) {
            const auto w = csv::parse_double(fields[8]);
            if (!w || !std::isfinite(*w) || *w < 0.0) {
                diag(line_no, "weight must be >= 0 or empty, got '" + fields[8] + "'");
                continue;
            }
            weight = *w;
        }

        StatPoint p;
        p.scenario = stats.binding->scenario;
        p.condition = *cond;
        p.parameter = stats.binding->parameter;
        p.statistic = stats.binding->statistic;
        p.freq_ghz = *freq;
        p.value = *value;
        p.weight = weight;
        p.source = fields[2];
        p.source_type = *stype;
        p.release = *rel;
        p.source_line = line_no;
        out.points.push_back(std::move(p));
        ++stats.rows;
    }
    return out;
}

inline IngestResult ingest(const std::filesystem::path& path, const IngestOptions& options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("dataset: cannot open '" + path.string() + "'");
    return ingest_stream(in, options);
}

// ---------------------------------------------------------------------------
// Plausibility validation (warnings, not errors)
// ---------------------------------------------------------------------------

/// Flags duplicate (source, scenario, condition, parameter, statistic, f)
/// tuples, negative std values, lgDS means outside [-9, -5] and angular
/// lg-spread means outside [-1, 3].
inline std::vector<Diagnostic> validate(std::span<const StatPoint> points) {
    std::vector<Diagnostic> warnings;
    std::map<std::string, std::size_t> seen;  // tuple key -> first line
    for (const StatPoint& p : points) {
        std::string k = p.source;
        k += '|';
        k += to_string(p.scenario);
        k += '|';
        k += to_string(p.condition);
        k += '|';
        k += p.parameter.str();
        k += '|';
        k += to_string(p.statistic);
        k += '|';
        k += csv::format_double(p.freq_ghz);
        auto [it, inserted] = seen.emplace(std::move(k), p.source_line);
        if (!inserted) {
            warnings.push_back(Diagnostic{
                p.source_line,
                "duplicate point (source=" + p.source + ", " + std::string(to_string(p.scenario)) +
                    ", f=" + csv::format_double(p.freq_ghz) + "): lines " +
                    std::to_string(it->second) + " and " + std::to_string(p.source_line)});
        }
        if (p.statistic == StatisticKind::Std && p.value < 0.0)
            warnings.push_back(Diagnostic{p.source_line, "std value is negative"});
        if (p.statistic == StatisticKind::Mean &&
            p.parameter.code() == ParameterKind::Code::DS &&
            (p.value < -9.0 || p.value > -5.0))
            warnings.push_back(
                Diagnostic{p.source_line, "mean lgDS outside plausible band [-9, -5]"});
        if (p.statistic == StatisticKind::Mean && p.parameter.is_angular() &&
            (p.value < -1.0 || p.value > 3.0))
            warnings.push_back(Diagnostic{
                p.source_line, "mean lg angular spread outside plausible band [-1, 3]"});
    }
    return warnings;
}

}  // namespace lspfit
