// SPDX-License-Identifier: Apache-2.0
//
// Synthetic example dataset: statistic points placed exactly on the encoded
// model lines at realistic campaign frequencies. It exercises the full
// ingest -> refit pipeline (a refit over it reproduces every non-legacy
// model coefficient) without claiming to be measured data.
//
// Construction per quantity:
//   - Rel-19-only entries emit Rel19-tagged points on their line at 6-24 GHz
//     campaign frequencies, with weight 0 so the weighted combined fits of
//     the same quantity ignore them.
//   - Combined entries emit Rel14-tagged, weight-1 points on their line
//     across 0.5-100 GHz; the release filter keeps them out of Rel-19 fits.
//   - SMa and plywood entries have a single fit family and emit plain
//     weight-1 points.

#pragma once

#include <string>
#include <vector>

#include "lspfit/dataset.hpp"
#include "lspfit/fitting.hpp"
#include "lspfit/model_db.hpp"

namespace lspfit::synthetic {

/// One dataset row: a StatPoint plus the bandwidth column, which is schema
/// metadata the StatPoint itself does not keep.
struct Row {
    StatPoint point;
    std::string bandwidth_mhz;
};

namespace detail {

struct SourceSlot {
    double freq_ghz;
    const char* source;
    const char* bandwidth_mhz;
    SourceType type;
};

// Campaign-style frequency slots for Rel-19-band points. Two model lines
// cross zero inside 6-24 GHz, so their slots stop short of the crossing to
// keep the example data plausible.
inline std::vector<SourceSlot> rel19_slots(const ModelKey& key) {
    static const std::vector<SourceSlot> all = {
        {6.75, "Sharp, NYU, Nokia", "1000", SourceType::Meas},
        {9.0, "ZTE", "NA", SourceType::RT},
        {10.1, "Keysight", "500", SourceType::Meas},
        {13.0, "BUPT, Spark", "400", SourceType::Meas},
        {16.95, "Sharp, NYU, Nokia", "1000", SourceType::Meas},
        {24.0, "Huawei", "400", SourceType::Meas},
    };
    const bool umi_nlos_std_asd = key.scenario == Scenario::UMi &&
                                  key.condition == Condition::NLOS &&
                                  key.parameter == ParameterKind(ParameterKind::Code::ASD) &&
                                  key.statistic == StatisticKind::Std;
    const bool uma_los_std_zsa = key.scenario == Scenario::UMa &&
                                 key.condition == Condition::LOS &&
                                 key.parameter == ParameterKind(ParameterKind::Code::ZSA) &&
                                 key.statistic == StatisticKind::Std;
    if (umi_nlos_std_asd)
        return {all[0], all[1], all[2], all[3], all[4]};
    if (uma_los_std_zsa)
        return {{6.75, "Sharp, NYU, Nokia", "1000", SourceType::Meas},
                {8.0, "AT&T", "400", SourceType::Meas},
                {10.1, "Keysight", "500", SourceType::Meas},
                {13.0, "BUPT, Spark", "400", SourceType::Meas},
                {15.0, "Sony", "100", SourceType::Meas}};
    return all;
}

inline const std::vector<SourceSlot>& rel14_slots() {
    static const std::vector<SourceSlot> slots = {
        {0.5, "Samsung", "100", SourceType::Meas},
        {2.01, "Ericsson", "CW", SourceType::Meas},
        {5.02, "Ericsson", "CW", SourceType::Meas},
        {10.29, "Ericsson", "CW", SourceType::Meas},
        {28.0, "Nokia", "0.02", SourceType::Meas},
        {37.0, "Ericsson", "CW", SourceType::Meas},
        {60.0, "Qualcomm", "CW", SourceType::Meas},
        {100.0, "Apple", "NA", SourceType::RT},
    };
    return slots;
}

inline const std::vector<SourceSlot>& sma_slots() {
    static const std::vector<SourceSlot> slots = {
        {0.87, "Ericsson", "CW", SourceType::Meas},
        {7.0, "AT&T", "400", SourceType::Meas},
        {8.0, "Apple", "NA", SourceType::RT},
        {15.0, "AT&T", "400", SourceType::Meas},
        {24.0, "Sony", "100", SourceType::Meas},
    };
    return slots;
}

inline const std::vector<SourceSlot>& plywood_slots() {
    static const std::vector<SourceSlot> slots = {
        {0.5, "Qualcomm", "CW", SourceType::Meas},
        {3.4, "Qualcomm", "CW", SourceType::Meas},
        {6.75, "Sharp, NYU", "1000", SourceType::Meas},
        {13.0, "Qualcomm", "CW", SourceType::Meas},
        {16.95, "Sharp, NYU", "1000", SourceType::Meas},
        {28.0, "Nokia", "0.02", SourceType::Meas},
        {30.0, "Apple", "NA", SourceType::Meas},
    };
    return slots;
}

}  // namespace detail

/// Rows for one model, exactly on its line.
inline std::vector<Row> rows_for_model(const ParamModel& m) {
    std::vector<Row> out;
    auto emit = [&](const detail::SourceSlot& slot, Release release, double weight) {
        Row r;
        r.point.scenario = m.key.scenario;
        r.point.condition = m.key.condition;
        r.point.parameter = m.key.parameter;
        r.point.statistic = m.key.statistic;
        r.point.freq_ghz = slot.freq_ghz;
        r.point.value = m.form.eval(slot.freq_ghz);
        r.point.weight = weight;
        r.point.source = slot.source;
        r.point.source_type = slot.type;
        r.point.release = release;
        r.bandwidth_mhz = slot.bandwidth_mhz;
        out.push_back(std::move(r));
    };

    if (m.key.parameter.is_pen_loss()) {
        for (const auto& s : detail::plywood_slots())
            emit(s, s.freq_ghz < 6.0 ? Release::Rel14 : Release::Rel19, 1.0);
    } else if (m.key.scenario == Scenario::SMa) {
        for (const auto& s : detail::sma_slots())
            emit(s, s.freq_ghz < 6.0 ? Release::Rel14 : Release::Rel19, 1.0);
    } else if (m.key.set == ModelSet::Rel19Only) {
        for (const auto& s : detail::rel19_slots(m.key)) emit(s, Release::Rel19, 0.0);
        // One Rel19-tagged point past every fit range, deliberately off the
        // line: range filtering alone must drop it from every fit.
        const detail::SourceSlot far{110.0, "Ericsson", "CW", SourceType::Meas};
        emit(far, Release::Rel19, 0.0);
        out.back().point.value =
            m.form.eval(far.freq_ghz) + (m.key.statistic == StatisticKind::Std ? 1.5 : -0.5);
    } else if (m.key.set == ModelSet::CombinedWLS) {
        for (const auto& s : detail::rel14_slots()) emit(s, Release::Rel14, 1.0);
    }
    return out;
}

/// The full synthetic dataset for every non-legacy model in the database,
/// plus a few cluster-ASD rows that exercise sheets without encoded models.
inline std::vector<Row> rows(const ModelDb& db = ModelDb::builtin()) {
    std::vector<Row> out;
    for (const ParamModel& m : db.models()) {
        if (m.method == FitMethod::Encoded) continue;
        auto rs = rows_for_model(m);
        out.insert(out.end(), rs.begin(), rs.end());
    }

    auto cluster_row = [&](Scenario sc, Condition c, double f, const char* src, const char* bw,
                           double value) {
        Row r;
        r.point.scenario = sc;
        r.point.condition = c;
        r.point.parameter = ParameterKind(ParameterKind::Code::ClusterASD);
        r.point.statistic = StatisticKind::Mean;
        r.point.freq_ghz = f;
        r.point.value = value;
        r.point.weight = 1.0;
        r.point.source = src;
        r.point.source_type = SourceType::Meas;
        r.point.release = Release::Rel19;
        r.bandwidth_mhz = bw;
        out.push_back(std::move(r));
    };
    cluster_row(Scenario::UMa, Condition::LOS, 13.0, "BUPT, Spark", "400", 0.42);
    cluster_row(Scenario::UMa, Condition::NLOS, 3.5, "Ericsson", "100", 0.35);
    cluster_row(Scenario::SMa, Condition::LOS, 3.4, "Ericsson", "80", 0.40);
    cluster_row(Scenario::SMa, Condition::NLOS, 3.4, "Ericsson", "80", 0.33);
    return out;
}

inline std::vector<StatPoint> points(const ModelDb& db = ModelDb::builtin()) {
    auto rs = rows(db);
    std::vector<StatPoint> out;
    out.reserve(rs.size());
    for (Row& r : rs) out.push_back(std::move(r.point));
    return out;
}

inline std::string sheet_for(const StatPoint& p) {
    if (p.parameter.is_pen_loss()) return "Plywood_Pen_Loss";
    SheetName s;
    s.parsed = SheetTriple{p.scenario, p.statistic, p.parameter};
    return format_sheet_name(s);
}

/// Render rows as a StatPoint CSV document (header included).
inline std::string to_csv(std::span<const Row> dataset_rows) {
    std::string out =
        "sheet,condition,source,source_type,release,freq_ghz,bandwidth_mhz,value,weight\n";
    for (const Row& r : dataset_rows) {
        const StatPoint& p = r.point;
        std::vector<std::string> f(9);
        f[0] = sheet_for(p);
        f[1] = std::string(to_string(p.condition));
        f[2] = p.source;
        f[3] = std::string(to_string(p.source_type));
        f[4] = std::string(to_string(p.release));
        f[5] = csv::format_double(p.freq_ghz);
        f[6] = r.bandwidth_mhz;
        f[7] = csv::format_double(p.value);
        f[8] = csv::format_double(p.weight);
        out += csv::encode_record(f);
        out += '\n';
    }
    return out;
}

}  // namespace lspfit::synthetic
