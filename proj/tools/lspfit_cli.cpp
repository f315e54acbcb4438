// SPDX-License-Identifier: Apache-2.0
//
// lspfit command-line front end.
//
// Subcommands: ingest, validate, fit, eval, compare, sample, plot-data,
// registry, export, import, gen-synthetic. All JSON output is line-delimited
// with stable field order; numbers print with 6 significant digits. Exit
// codes: 0 success, 2 input/schema error, 3 degenerate fit, 4 lookup miss.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lspfit/dataset.hpp"
#include "lspfit/fitting.hpp"
#include "lspfit/json_io.hpp"
#include "lspfit/model_db.hpp"
#include "lspfit/registry.hpp"
#include "lspfit/sampling.hpp"
#include "lspfit/synthetic.hpp"

namespace {

using namespace lspfit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNotFound = 4;

// 6 significant digits, C locale.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string json_str(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 50;
    bool log_spaced = true;
    bool set = false;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    g.set = true;
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ':') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 4) throw DomainError("grid: expected <lo:hi:n:{log,lin}>");
    const auto lo = csv::parse_double(parts[0]);
    const auto hi = csv::parse_double(parts[1]);
    const auto n = csv::parse_double(parts[2]);
    if (!lo || !hi || !n || !(*lo > 0.0) || !(*hi > *lo) || *n < 2 ||
        *n != static_cast<double>(static_cast<std::size_t>(*n)))
        throw DomainError("grid: requires 0 < lo < hi and integer n >= 2");
    g.lo = *lo;
    g.hi = *hi;
    g.count = static_cast<std::size_t>(*n);
    if (parts[3] == "log") {
        g.log_spaced = true;
    } else if (parts[3] == "lin") {
        g.log_spaced = false;
    } else {
        throw DomainError("grid: spacing must be log or lin");
    }
    return g;
}

// Grid frequencies, snapped to their 6-significant-digit printed form so that
// plot rows and eval calls at the printed frequency agree exactly.
std::vector<double> grid_freqs(const GridSpec& g) {
    std::vector<double> out;
    out.reserve(g.count);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(g.count - 1);
        const double f = g.log_spaced ? std::exp(std::log(g.lo) + t * (std::log(g.hi) - std::log(g.lo)))
                                      : g.lo + t * (g.hi - g.lo);
        out.push_back(*csv::parse_double(num(f)));
    }
    return out;
}

// --scenario/--condition/--param/--stat/--set option bundle.
struct KeyFlags {
    std::string scenario;
    std::string condition;
    std::string param;
    std::string stat;
    std::vector<std::string> sets;

    void add_to(CLI::App* cmd, bool with_stat = true, int max_sets = 1) {
        cmd->add_option("--scenario", scenario, "Scenario (UMi|UMa|SMa|RMa|InH|InF)");
        cmd->add_option("--condition", condition, "Link condition (LOS|NLOS)");
        cmd->add_option("--param", param, "Parameter (DS|ASD|ASA|ZSA|plywood|...)");
        if (with_stat) cmd->add_option("--stat", stat, "Statistic (Mean|Std)");
        cmd->add_option("--set", sets, "Model set (legacy|rel19|combined)")
            ->expected(1, max_sets);
    }

    ParameterKind parameter() const {
        if (param == "plywood") return ParameterKind::pen_loss("plywood");
        return parse_parameter(param);
    }

    // Full key; pen-loss parameters fall back to the canonical plywood
    // address for any omitted field.
    ModelKey key(std::string_view which_set) const {
        if (param.empty()) throw DomainError("--param is required");
        const ParameterKind p = parameter();
        ModelKey k = p.is_pen_loss() ? ModelDb::plywood_key()
                                     : ModelKey{Scenario::UMi, Condition::LOS, p,
                                                StatisticKind::Mean, ModelSet::CombinedWLS};
        k.parameter = p;
        if (!p.is_pen_loss()) {
            if (scenario.empty() || condition.empty() || stat.empty() || which_set.empty())
                throw DomainError("--scenario, --condition, --stat and --set are required");
        }
        if (!scenario.empty()) k.scenario = parse_scenario(scenario);
        if (!condition.empty()) k.condition = parse_condition(condition);
        if (!stat.empty()) k.statistic = parse_statistic(stat);
        if (!which_set.empty()) k.set = parse_model_set(which_set);
        return k;
    }
};

std::ostream& open_output(std::ofstream& file, const std::string& out_dir,
                          const std::string& filename) {
    if (out_dir.empty()) return std::cout;
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / filename;
    file.open(path);
    if (!file) throw IoError("cannot open output file '" + path.string() + "'");
    return file;
}

std::string diag_line(const Diagnostic& d) {
    return "{\"line\": " + std::to_string(d.line) + ", \"message\": " + json_str(d.message) + "}";
}

// ---------------------------------------------------------------------------
// ingest / validate
// ---------------------------------------------------------------------------

std::string manifest_json(const DatasetManifest& m) {
    std::string out = "{\"checksum\": " + json_str(m.checksum) + ", \"sheets\": {";
    bool first = true;
    for (const auto& [name, stats] : m.sheets) {
        if (!first) out += ", ";
        first = false;
        out += json_str(name) + ": {\"rows\": " + std::to_string(stats.rows);
        if (stats.binding) {
            out += ", \"scenario\": " + json_str(to_string(stats.binding->scenario));
            out += ", \"statistic\": " + json_str(to_string(stats.binding->statistic));
            out += ", \"parameter\": " + json_str(stats.binding->parameter.str());
        }
        out += "}";
    }
    out += "}}";
    return out;
}

int cmd_ingest(const std::string& dataset, bool strict, const std::string& out_dir) {
    const IngestResult r = ingest(dataset, IngestOptions{strict});
    for (const Diagnostic& d : r.diagnostics) std::cerr << diag_line(d) << "\n";
    std::ofstream file;
    std::ostream& os = open_output(file, out_dir, "manifest.json");
    os << manifest_json(r.manifest) << "\n";
    return r.diagnostics.empty() ? kExitOk : kExitInput;
}

int cmd_validate(const std::string& dataset, bool strict) {
    const IngestResult r = ingest(dataset, IngestOptions{strict});
    for (const Diagnostic& d : r.diagnostics) std::cerr << diag_line(d) << "\n";
    const auto warnings = validate(r.points);
    for (const Diagnostic& w : warnings) std::cout << diag_line(w) << "\n";
    std::cerr << "validated " << r.points.size() << " points, " << warnings.size()
              << " warning(s)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

std::string key_fields_json(const ModelKey& k) {
    std::string out = "\"scenario\": " + json_str(to_string(k.scenario));
    out += ", \"condition\": " + json_str(to_string(k.condition));
    out += ", \"parameter\": " + json_str(k.parameter.str());
    out += ", \"statistic\": " + json_str(to_string(k.statistic));
    out += ", \"set\": " + json_str(to_string(k.set));
    return out;
}

int cmd_fit(const std::string& dataset, bool strict, const std::string& out_dir,
            const KeyFlags& flags) {
    const IngestResult r = ingest(dataset, IngestOptions{strict});
    for (const Diagnostic& d : r.diagnostics) std::cerr << diag_line(d) << "\n";

    auto plan = default_refit_plan(ModelDb::builtin());
    // Narrow the plan by whichever selector fields were supplied.
    std::erase_if(plan, [&](const PlanEntry& e) {
        if (!flags.scenario.empty() && e.key.scenario != parse_scenario(flags.scenario))
            return true;
        if (!flags.condition.empty() && e.key.condition != parse_condition(flags.condition))
            return true;
        if (!flags.param.empty() && !(e.key.parameter == flags.parameter())) return true;
        if (!flags.stat.empty() && e.key.statistic != parse_statistic(flags.stat)) return true;
        if (!flags.sets.empty() && e.key.set != parse_model_set(flags.sets.front())) return true;
        return false;
    });
    if (plan.empty()) {
        std::cerr << "warning: plan selector matched no models\n";
        return kExitOk;
    }

    const auto outcomes = refit_catalog(r.points, plan);
    std::ofstream file;
    std::ostream& os = open_output(file, out_dir, "fit_report.jsonl");
    bool any_error = false;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const RefitOutcome& o = outcomes[i];
        const FitSpec& spec = plan[i].spec;
        std::string line = "{" + key_fields_json(o.key);
        if (o.result) {
            const FitResult& fr = *o.result;
            line += ", \"basis\": " + json_str(to_string(fr.form.basis));
            line += ", \"slope\": " + num(fr.form.slope);
            line += ", \"intercept\": " + num(fr.form.intercept);
            line += ", \"fit_lo_ghz\": " + num(spec.range_ghz.lo_ghz);
            line += ", \"fit_hi_ghz\": " + num(spec.range_ghz.hi_ghz);
            line += ", \"method\": " + json_str(to_string(spec.method));
            line += ", \"n_points\": " + std::to_string(fr.n_points);
            line += ", \"rmse\": " + num(fr.rmse);
        } else {
            any_error = true;
            line += ", \"error\": " + json_str(std::string(to_string(*o.error)));
            line += ", \"message\": " + json_str(o.error_message);
        }
        line += "}";
        os << line << "\n";
    }
    return any_error ? kExitDegenerate : kExitOk;
}

// ---------------------------------------------------------------------------
// eval / compare / sample
// ---------------------------------------------------------------------------

EvalResult eval_key(const ModelKey& key, FreqGHz f) {
    const ParamModel& m = ModelDb::builtin().lookup(key);
    if (key.parameter.is_pen_loss()) return plywood_loss(f);  // enforces the 100 GHz ceiling
    return evaluate(m, f);
}

int cmd_eval(const KeyFlags& flags, double freq) {
    const ModelKey key = flags.key(flags.sets.empty() ? "" : flags.sets.front());
    const EvalResult r = eval_key(key, FreqGHz(freq));
    std::cout << "{\"value\": " << num(r.lg.value)
              << ", \"extrapolated\": " << (r.extrapolated ? "true" : "false")
              << ", \"unit\": " << json_str(to_string(r.lg.unit)) << "}\n";
    return kExitOk;
}

int cmd_compare(const KeyFlags& flags, const std::string& grid_text) {
    if (flags.sets.size() != 2)
        throw DomainError("compare: pass --set twice (e.g. --set combined --set legacy)");
    const ModelKey key_a = flags.key(flags.sets[0]);
    const ModelKey key_b = flags.key(flags.sets[1]);

    const ModelDb& db = ModelDb::builtin();
    GridSpec grid;
    if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
    } else {
        const FreqRange r = db.lookup(key_a).fit_range_ghz;
        grid.lo = r.lo_ghz;
        grid.hi = r.hi_ghz;
    }
    std::vector<FreqGHz> freqs;
    for (double f : grid_freqs(grid)) freqs.emplace_back(f);
    for (const CompareRow& row : db.compare(key_a, key_b, freqs)) {
        std::cout << "{\"f\": " << num(row.f_ghz) << ", \"y_a\": " << num(row.y_a)
                  << ", \"y_b\": " << num(row.y_b) << ", \"delta\": " << num(row.delta) << "}\n";
    }
    return kExitOk;
}

int cmd_sample(const KeyFlags& flags, double freq, std::size_t n, std::uint64_t seed) {
    const std::string set = flags.sets.empty() ? "" : flags.sets.front();
    KeyFlags with_stat = flags;
    with_stat.stat = "Mean";  // the statistic pair is implied
    ModelKey mean_key = with_stat.key(set);
    mean_key.statistic = StatisticKind::Mean;
    ModelKey std_key = mean_key;
    std_key.statistic = StatisticKind::Std;

    const ModelDb& db = ModelDb::builtin();
    const SampleResult r =
        sample_lsp(db.lookup(mean_key), db.lookup(std_key), FreqGHz(freq), n, seed);

    std::cout << "{\"mu\": " << num(r.mu) << ", \"sigma\": " << num(r.sigma)
              << ", \"sigma_clamped\": " << (r.sigma_clamped ? "true" : "false")
              << ", \"unit\": " << json_str(to_string(r.unit)) << ", \"samples\": [";
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << num(r.values[i]);
    }
    std::cout << "]}\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// plot-data
// ---------------------------------------------------------------------------

int cmd_plot_data(const KeyFlags& flags, const std::string& dataset,
                  const std::string& grid_text, const std::string& out_dir) {
    const ModelKey key = flags.key(flags.sets.empty() ? "" : flags.sets.front());
    const ModelDb& db = ModelDb::builtin();
    const ParamModel& model = db.lookup(key);

    GridSpec grid;
    if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
    } else {
        grid.lo = model.fit_range_ghz.lo_ghz;
        grid.hi = model.fit_range_ghz.hi_ghz;
    }

    std::string name = "plot_" + key.str() + ".csv";
    for (char& c : name)
        if (c == '/' || c == '(' || c == ')') c = '_';

    std::ofstream file;
    std::ostream& os = open_output(file, out_dir, name);
    os << "series,x,y\n";

    if (!dataset.empty()) {
        const IngestResult r = ingest(dataset, IngestOptions{false});
        for (const StatPoint& p : r.points) {
            if (p.scenario != key.scenario || p.condition != key.condition ||
                !(p.parameter == key.parameter) || p.statistic != key.statistic)
                continue;
            os << (p.source_type == SourceType::Meas ? "scatter_meas" : "scatter_rt") << ","
               << num(p.freq_ghz) << "," << num(p.value) << "\n";
        }
    }

    const ParamModel* legacy = nullptr;
    if (key.set != ModelSet::Legacy38901) {
        ModelKey leg_key = key;
        leg_key.set = ModelSet::Legacy38901;
        legacy = db.try_lookup(leg_key);
    }
    for (double f : grid_freqs(grid)) os << "fit," << num(f) << "," << num(model.form.eval(f)) << "\n";
    if (legacy)
        for (double f : grid_freqs(grid))
            os << "legacy," << num(f) << "," << num(legacy->form.eval(f)) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

int cmd_registry(const std::string& registry_file, const KeyFlags& flags,
                 const std::string& kind, const std::string& source,
                 const std::string& freq_range) {
    const auto records = registry_load(registry_file);
    RegistryFilter filter;
    if (!flags.scenario.empty()) filter.scenario = parse_scenario(flags.scenario);
    if (!flags.param.empty()) filter.parameter = flags.parameter();
    if (!kind.empty()) {
        const auto k = try_parse_source_type(kind);
        if (!k) throw DomainError("--kind must be Meas or RT");
        filter.kind = k;
    }
    if (!source.empty()) filter.source = source;
    if (!freq_range.empty()) {
        const auto colon = freq_range.find(':');
        if (colon == std::string::npos)
            throw DomainError("--freq-range: expected <lo:hi> in GHz");
        const auto lo = csv::parse_double(freq_range.substr(0, colon));
        const auto hi = csv::parse_double(freq_range.substr(colon + 1));
        if (!lo || !hi) throw DomainError("--freq-range: expected <lo:hi> in GHz");
        filter.freq_range_ghz = {*lo, *hi};
    }

    for (const CampaignRecord& r : registry_query(records, filter)) {
        std::string line = "{\"source\": " + json_str(r.source);
        line += ", \"kind\": " + json_str(to_string(r.kind));
        line += ", \"scenario\": " + json_str(to_string(r.scenario));
        line += ", \"freq_ghz\": " + json_str(r.freq.str());
        line += ", \"bandwidth_mhz\": " + json_str(r.bandwidth.str());
        line += ", \"parameters\": [";
        for (std::size_t i = 0; i < r.reported.size(); ++i) {
            if (i) line += ", ";
            line += json_str(r.reported[i].str());
        }
        line += "], \"references\": [";
        for (std::size_t i = 0; i < r.references.size(); ++i) {
            if (i) line += ", ";
            line += json_str(r.references[i]);
        }
        line += "]}";
        std::cout << line << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// export / import / gen-synthetic
// ---------------------------------------------------------------------------

int cmd_export(const std::string& out_dir) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_dir, "models.json");
    os << models_to_json(ModelDb::builtin().models()).dump(2) << "\n";
    return kExitOk;
}

int cmd_import(const std::string& models_file) {
    std::ifstream in(models_file);
    if (!in) throw IoError("cannot open '" + models_file + "'");
    OrderedJson j;
    try {
        j = OrderedJson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("model json: ") + e.what());
    }
    const ModelDb db(models_from_json(j));
    std::cout << "{\"models\": " << db.size() << "}\n";
    return kExitOk;
}

int cmd_gen_synthetic(const std::string& out_dir) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_dir, "rel19_synthetic_dataset.csv");
    os << synthetic::to_csv(synthetic::rows());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-scale-parameter channel model database and fitting toolkit"};
    app.require_subcommand(1);

    std::string dataset, registry_file, out_dir, grid_text, kind, source, freq_range, models_file;
    bool strict = false;
    double freq = 0.0;
    std::size_t n_samples = 1;
    std::uint64_t seed = 0;

    auto* c_ingest = app.add_subcommand("ingest", "Ingest a dataset CSV and print its manifest");
    c_ingest->add_option("--dataset", dataset, "StatPoint CSV path")->required();
    c_ingest->add_flag("--strict", strict, "Fail on the first malformed row");
    c_ingest->add_option("--out", out_dir, "Output directory (default stdout)");

    auto* c_validate = app.add_subcommand("validate", "Ingest plus plausibility warnings");
    c_validate->add_option("--dataset", dataset, "StatPoint CSV path")->required();
    c_validate->add_flag("--strict", strict, "Fail on the first malformed row");

    KeyFlags fit_flags;
    auto* c_fit = app.add_subcommand("fit", "Refit model entries from a dataset");
    c_fit->add_option("--dataset", dataset, "StatPoint CSV path")->required();
    c_fit->add_flag("--strict", strict, "Fail on the first malformed row");
    c_fit->add_option("--out", out_dir, "Output directory (default stdout)");
    fit_flags.add_to(c_fit);

    KeyFlags eval_flags;
    auto* c_eval = app.add_subcommand("eval", "Evaluate one model at one frequency");
    eval_flags.add_to(c_eval);
    c_eval->add_option("--freq", freq, "Frequency in GHz")->required();

    KeyFlags cmp_flags;
    auto* c_compare = app.add_subcommand("compare", "Tabulate two sets of the same quantity");
    cmp_flags.add_to(c_compare, true, 2);
    c_compare->add_option("--grid", grid_text, "Frequency grid <lo:hi:n:{log,lin}>");

    KeyFlags sample_flags;
    auto* c_sample = app.add_subcommand("sample", "Seeded lognormal draws of a quantity");
    sample_flags.add_to(c_sample, false);
    c_sample->add_option("--freq", freq, "Frequency in GHz")->required();
    c_sample->add_option("--n", n_samples, "Number of draws")->required();
    c_sample->add_option("--seed", seed, "RNG seed");

    KeyFlags plot_flags;
    auto* c_plot = app.add_subcommand("plot-data", "Emit series,x,y CSV for one model");
    plot_flags.add_to(c_plot);
    c_plot->add_option("--dataset", dataset, "Optional dataset for scatter series");
    c_plot->add_option("--grid", grid_text, "Frequency grid <lo:hi:n:{log,lin}>");
    c_plot->add_option("--out", out_dir, "Output directory (default stdout)");

    KeyFlags reg_flags;
    auto* c_registry = app.add_subcommand("registry", "Query the measurement-campaign registry");
    c_registry->add_option("--registry", registry_file, "Registry CSV path")->required();
    c_registry->add_option("--scenario", reg_flags.scenario, "Scenario filter");
    c_registry->add_option("--param", reg_flags.param, "Reported-parameter filter");
    c_registry->add_option("--kind", kind, "Meas or RT");
    c_registry->add_option("--source", source, "Source substring filter");
    c_registry->add_option("--freq-range", freq_range, "Overlap filter <lo:hi> in GHz");

    auto* c_export = app.add_subcommand("export", "Export the model database as JSON");
    c_export->add_option("--out", out_dir, "Output directory (default stdout)");

    auto* c_import = app.add_subcommand("import", "Validate a model database JSON file");
    c_import->add_option("--models", models_file, "Model JSON path")->required();

    auto* c_gen = app.add_subcommand("gen-synthetic", "Write the synthetic example dataset");
    c_gen->add_option("--out", out_dir, "Output directory (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (c_ingest->parsed()) return cmd_ingest(dataset, strict, out_dir);
        if (c_validate->parsed()) return cmd_validate(dataset, strict);
        if (c_fit->parsed()) return cmd_fit(dataset, strict, out_dir, fit_flags);
        if (c_eval->parsed()) return cmd_eval(eval_flags, freq);
        if (c_compare->parsed()) return cmd_compare(cmp_flags, grid_text);
        if (c_sample->parsed()) return cmd_sample(sample_flags, freq, n_samples, seed);
        if (c_plot->parsed()) return cmd_plot_data(plot_flags, dataset, grid_text, out_dir);
        if (c_registry->parsed())
            return cmd_registry(registry_file, reg_flags, kind, source, freq_range);
        if (c_export->parsed()) return cmd_export(out_dir);
        if (c_import->parsed()) return cmd_import(models_file);
        if (c_gen->parsed()) return cmd_gen_synthetic(out_dir);
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotFound;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
