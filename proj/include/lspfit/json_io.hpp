// SPDX-License-Identifier: Apache-2.0
//
// JSON export/import of the model database. One object per model:
//   {"scenario", "condition", "parameter", "statistic", "set", "basis",
//    "slope", "intercept", "fit_lo_ghz", "fit_hi_ghz", "method"}
// Field names and the basis tokens are wire format; do not change.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lspfit/model_db.hpp"

namespace lspfit {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson model_to_json(const ParamModel& m) {
    OrderedJson j;
    j["scenario"] = to_string(m.key.scenario);
    j["condition"] = to_string(m.key.condition);
    j["parameter"] = m.key.parameter.str();
    j["statistic"] = to_string(m.key.statistic);
    j["set"] = to_string(m.key.set);
    j["basis"] = to_string(m.form.basis);
    j["slope"] = m.form.slope;
    j["intercept"] = m.form.intercept;
    j["fit_lo_ghz"] = m.fit_range_ghz.lo_ghz;
    j["fit_hi_ghz"] = m.fit_range_ghz.hi_ghz;
    j["method"] = to_string(m.method);
    return j;
}

inline ParamModel model_from_json(const OrderedJson& j) {
    auto field = [&](const char* name) -> const OrderedJson& {
        auto it = j.find(name);
        if (it == j.end()) throw SchemaError(std::string("model json: missing field '") + name + "'");
        return *it;
    };
    auto str = [&](const char* name) { return field(name).template get<std::string>(); };
    auto num = [&](const char* name) {
        const OrderedJson& v = field(name);
        if (!v.is_number()) throw SchemaError(std::string("model json: field '") + name + "' must be a number");
        return v.template get<double>();
    };

    ParamModel m{
        ModelKey{parse_scenario(str("scenario")), parse_condition(str("condition")),
                 parse_parameter(str("parameter")), parse_statistic(str("statistic")),
                 parse_model_set(str("set"))},
        ModelForm::checked(parse_basis(str("basis")), num("slope"), num("intercept")),
        FreqRange::checked(num("fit_lo_ghz"), num("fit_hi_ghz")),
        parse_method(str("method")),
    };
    return m;
}

inline OrderedJson models_to_json(std::span<const ParamModel> models) {
    OrderedJson arr = OrderedJson::array();
    for (const ParamModel& m : models) arr.push_back(model_to_json(m));
    return arr;
}

inline std::vector<ParamModel> models_from_json(const OrderedJson& arr) {
    if (!arr.is_array()) throw SchemaError("model json: expected an array of model objects");
    std::vector<ParamModel> out;
    out.reserve(arr.size());
    for (const OrderedJson& j : arr) out.push_back(model_from_json(j));
    return out;
}

}  // namespace lspfit
