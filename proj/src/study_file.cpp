#include "arcstudy/study_file.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "arcstudy/checksum.hpp"
#include "arcstudy/errors.hpp"
#include "arcstudy/version.hpp"

namespace arcstudy {

namespace {

using nlohmann::json;

std::string at(const std::string& section, std::size_t i) {
    return section + "[" + std::to_string(i) + "]";
}

const json& require_member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw ModelError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ModelError(path + "." + key, "missing required field");
    return *it;
}

double require_number(const json& obj, const std::string& path, const char* key) {
    const json& v = require_member(obj, path, key);
    if (!v.is_number()) throw ModelError(path + "." + key, "expected a number");
    return v.get<double>();
}

std::string require_string(const json& obj, const std::string& path, const char* key) {
    const json& v = require_member(obj, path, key);
    if (!v.is_string()) throw ModelError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double optional_number(const json& obj, const std::string& path, const char* key, double dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ModelError(path + "." + key, "expected a number");
    return v.get<double>();
}

std::string optional_string(const json& obj, const std::string& path, const char* key,
                            const std::string& dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ModelError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

bool optional_bool(const json& obj, const std::string& path, const char* key, bool dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ModelError(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

const json& require_array(const json& doc, const char* key) {
    const json& v = require_member(doc, "document", key);
    if (!v.is_array()) throw ModelError(key, "expected an array");
    return v;
}

std::vector<std::string> string_list(const json& obj, const std::string& path, const char* key) {
    const json& v = require_member(obj, path, key);
    if (!v.is_array()) throw ModelError(path + "." + key, "expected an array of strings");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string())
            throw ModelError(at(path + "." + key, i), "expected a string");
        out.push_back(v[i].get<std::string>());
    }
    return out;
}

bool close(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-9 * std::max(scale, 1.0);
}

// Semantic pass: every violation becomes one diagnostic; nothing stops at the first hit.
void check_semantics(const NetworkModel& model, std::vector<Diagnostic>& out) {
    auto diag = [&](std::string path, std::string rule, std::string message) {
        out.push_back({std::move(path), std::move(rule), std::move(message)});
    };

    std::unordered_map<std::string, const Bus*> bus_by_id;
    {
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < model.buses.size(); ++i) {
            const Bus& b = model.buses[i];
            if (!seen.insert(b.id).second)
                diag(at("buses", i) + ".id", "unique_id", "duplicate bus id '" + b.id + "'");
            else
                bus_by_id.emplace(b.id, &b);
            if (!(b.nominal_voltage_v > 0))
                diag(at("buses", i) + ".nominal_voltage_v", "positive",
                     "nominal voltage must be positive");
        }
    }

    std::unordered_map<std::string, const SourceSpec*> source_by_id;
    for (std::size_t i = 0; i < model.sources.size(); ++i) {
        const SourceSpec& s = model.sources[i];
        const std::string base = at("sources", i);
        if (source_by_id.count(s.id))
            diag(base + ".id", "unique_id", "duplicate source id '" + s.id + "'");
        else
            source_by_id.emplace(s.id, &s);
        if (!(s.rated_voltage_v > 0))
            diag(base + ".rated_voltage_v", "positive", "rated voltage must be positive");
        if (!(s.max_current_a > 0))
            diag(base + ".max_current_a", "positive", "maximum current must be positive");
        if (!(s.safety_factor >= 1.0))
            diag(base + ".safety_factor", "range", "safety factor must be at least 1");
        if (s.x_over_r && *s.x_over_r < 0)
            diag(base + ".x_over_r", "range", "X/R must not be negative");
        auto bus = bus_by_id.find(s.bus_id);
        if (bus == bus_by_id.end())
            diag(base + ".bus_id", "reference", "unknown bus '" + s.bus_id + "'");
        else if (!close(s.rated_voltage_v, bus->second->nominal_voltage_v))
            diag(base + ".rated_voltage_v", "consistency",
                 "source rated voltage does not match bus '" + s.bus_id + "' nominal voltage");
    }

    std::unordered_set<std::string> transformer_ids;
    for (std::size_t i = 0; i < model.transformers.size(); ++i) {
        const TransformerSpec& t = model.transformers[i];
        const std::string base = at("transformers", i);
        if (!transformer_ids.insert(t.id).second)
            diag(base + ".id", "unique_id", "duplicate transformer id '" + t.id + "'");
        if (!(t.rated_power_va > 0))
            diag(base + ".rated_power_kva", "positive", "rated power must be positive");
        if (!(t.impedance_pct > 0 && t.impedance_pct < 100))
            diag(base + ".impedance_pct", "range",
                 "nameplate impedance must be between 0 and 100 percent");
        if (!(t.x_over_r > 0))
            diag(base + ".x_over_r", "positive", "X/R must be positive");
        struct End {
            const char* field;
            const std::string* bus_id;
            double voltage;
        };
        for (const End& e : {End{"primary", &t.primary_bus_id, t.primary_voltage_v},
                             End{"secondary", &t.secondary_bus_id, t.secondary_voltage_v}}) {
            if (!(e.voltage > 0))
                diag(base + "." + e.field + "_voltage_v", "positive",
                     "winding voltage must be positive");
            auto bus = bus_by_id.find(*e.bus_id);
            if (bus == bus_by_id.end())
                diag(base + "." + e.field + "_bus_id", "reference",
                     "unknown bus '" + *e.bus_id + "'");
            else if (!close(e.voltage, bus->second->nominal_voltage_v))
                diag(base + "." + e.field + "_voltage_v", "consistency",
                     std::string(e.field) + " voltage does not match bus '" + *e.bus_id +
                         "' nominal voltage");
        }
    }

    std::unordered_set<std::string> line_ids;
    for (std::size_t i = 0; i < model.lines.size(); ++i) {
        const LineSpec& l = model.lines[i];
        const std::string base = at("lines", i);
        if (!line_ids.insert(l.id).second)
            diag(base + ".id", "unique_id", "duplicate line id '" + l.id + "'");
        if (l.length_m < 0) diag(base + ".length_m", "range", "length must not be negative");
        if (l.resistance_ohm < 0)
            diag(base + ".resistance_ohm", "range", "resistance must not be negative");
        if (l.reactance_ohm < 0)
            diag(base + ".reactance_ohm", "range", "reactance must not be negative");
        auto from = bus_by_id.find(l.from_bus_id);
        auto to = bus_by_id.find(l.to_bus_id);
        if (from == bus_by_id.end())
            diag(base + ".from_bus_id", "reference", "unknown bus '" + l.from_bus_id + "'");
        if (to == bus_by_id.end())
            diag(base + ".to_bus_id", "reference", "unknown bus '" + l.to_bus_id + "'");
        if (from != bus_by_id.end() && to != bus_by_id.end() &&
            !close(from->second->nominal_voltage_v, to->second->nominal_voltage_v))
            diag(base, "consistency", "line endpoints '" + l.from_bus_id + "' and '" +
                                          l.to_bus_id + "' sit at different voltage levels");
    }

    // Undirected element graph; identical for every topology.
    std::unordered_map<std::string, std::vector<std::string>> adjacency;
    for (const LineSpec& l : model.lines) {
        adjacency[l.from_bus_id].push_back(l.to_bus_id);
        adjacency[l.to_bus_id].push_back(l.from_bus_id);
    }
    for (const TransformerSpec& t : model.transformers) {
        adjacency[t.primary_bus_id].push_back(t.secondary_bus_id);
        adjacency[t.secondary_bus_id].push_back(t.primary_bus_id);
    }

    std::unordered_set<std::string> topology_names;
    for (std::size_t i = 0; i < model.topologies.size(); ++i) {
        const Topology& t = model.topologies[i];
        const std::string base = at("topologies", i);
        if (!topology_names.insert(t.name).second)
            diag(base + ".name", "unique_id", "duplicate topology name '" + t.name + "'");
        if (t.active_source_ids.empty())
            diag(base + ".active_source_ids", "range", "topology has no active source");

        std::vector<const SourceSpec*> slacks;
        bool references_ok = true;
        std::unordered_set<std::string> activated;
        for (std::size_t j = 0; j < t.active_source_ids.size(); ++j) {
            const std::string& id = t.active_source_ids[j];
            if (!activated.insert(id).second)
                diag(at(base + ".active_source_ids", j), "unique_id",
                     "source '" + id + "' activated twice");
            auto source = source_by_id.find(id);
            if (source == source_by_id.end()) {
                diag(at(base + ".active_source_ids", j), "reference",
                     "unknown source '" + id + "'");
                references_ok = false;
            } else if (source->second->kind == SourceKind::thevenin_voltage) {
                slacks.push_back(source->second);
            }
        }
        if (references_ok && !t.active_source_ids.empty() && slacks.size() != 1)
            diag(base + ".active_source_ids", "one_slack",
                 "topology must activate exactly one thevenin_voltage source, found " +
                     std::to_string(slacks.size()));

        // Reachability from the slack bus over the element graph.
        if (slacks.size() == 1 && bus_by_id.count(slacks.front()->bus_id)) {
            std::unordered_set<std::string> reached{slacks.front()->bus_id};
            std::queue<std::string> frontier;
            frontier.push(slacks.front()->bus_id);
            while (!frontier.empty()) {
                const std::string node = frontier.front();
                frontier.pop();
                auto it = adjacency.find(node);
                if (it == adjacency.end()) continue;
                for (const std::string& next : it->second)
                    if (reached.insert(next).second) frontier.push(next);
            }
            std::string unreachable;
            for (const Bus& b : model.buses)
                if (!reached.count(b.id)) unreachable += (unreachable.empty() ? "" : ", ") + b.id;
            if (!unreachable.empty())
                diag(base, "connected",
                     "buses not reachable from slack bus '" + slacks.front()->bus_id +
                         "': " + unreachable);
        }
    }
}

}  // namespace

NetworkModel load_model(const json& document) {
    NetworkModel model;
    model.system_frequency_hz =
        optional_number(document, "document", "system_frequency_hz", 60.0);
    if (!(model.system_frequency_hz > 0))
        throw ModelError("document.system_frequency_hz", "system frequency must be positive");

    const json& buses = require_array(document, "buses");
    for (std::size_t i = 0; i < buses.size(); ++i) {
        const std::string base = at("buses", i);
        Bus b;
        b.id = require_string(buses[i], base, "id");
        b.nominal_voltage_v = require_number(buses[i], base, "nominal_voltage_v");
        b.description = optional_string(buses[i], base, "description", "");
        b.analysis = optional_bool(buses[i], base, "analysis", true);
        b.tag = optional_string(buses[i], base, "tag", b.id);
        model.buses.push_back(std::move(b));
    }

    const json& sources = require_array(document, "sources");
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const std::string base = at("sources", i);
        SourceSpec s;
        s.id = require_string(sources[i], base, "id");
        s.bus_id = require_string(sources[i], base, "bus_id");
        const std::string kind = require_string(sources[i], base, "kind");
        if (kind == "thevenin_voltage")
            s.kind = SourceKind::thevenin_voltage;
        else if (kind == "current_limited")
            s.kind = SourceKind::current_limited;
        else
            throw ModelError(base + ".kind",
                             "expected thevenin_voltage or current_limited, got '" + kind + "'");
        s.rated_voltage_v = require_number(sources[i], base, "rated_voltage_v");
        s.max_current_a = require_number(sources[i], base, "max_current_a");
        s.safety_factor = optional_number(sources[i], base, "safety_factor", 1.0);
        s.effective_fault_current_a = s.max_current_a * s.safety_factor;
        if (sources[i].contains("x_over_r"))
            s.x_over_r = require_number(sources[i], base, "x_over_r");
        model.sources.push_back(std::move(s));
    }

    const json& transformers = require_array(document, "transformers");
    for (std::size_t i = 0; i < transformers.size(); ++i) {
        const std::string base = at("transformers", i);
        TransformerSpec t;
        t.id = require_string(transformers[i], base, "id");
        t.primary_bus_id = require_string(transformers[i], base, "primary_bus_id");
        t.secondary_bus_id = require_string(transformers[i], base, "secondary_bus_id");
        t.rated_power_va = require_number(transformers[i], base, "rated_power_kva") * 1000.0;
        t.primary_voltage_v = require_number(transformers[i], base, "primary_voltage_v");
        t.secondary_voltage_v = require_number(transformers[i], base, "secondary_voltage_v");
        t.impedance_pct = require_number(transformers[i], base, "impedance_pct");
        t.x_over_r = require_number(transformers[i], base, "x_over_r");
        model.transformers.push_back(std::move(t));
    }

    const json& lines = require_array(document, "lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string base = at("lines", i);
        LineSpec l;
        l.id = require_string(lines[i], base, "id");
        l.from_bus_id = require_string(lines[i], base, "from_bus_id");
        l.to_bus_id = require_string(lines[i], base, "to_bus_id");
        l.length_m = require_number(lines[i], base, "length_m");
        l.cable_type = optional_string(lines[i], base, "cable_type", "");
        l.resistance_ohm = require_number(lines[i], base, "resistance_ohm");
        l.reactance_ohm = optional_number(lines[i], base, "reactance_ohm", 0.0);
        model.lines.push_back(std::move(l));
    }

    const json& topologies = require_array(document, "topologies");
    for (std::size_t i = 0; i < topologies.size(); ++i) {
        const std::string base = at("topologies", i);
        Topology t;
        t.name = require_string(topologies[i], base, "name");
        t.active_source_ids = string_list(topologies[i], base, "active_source_ids");
        t.notes = optional_string(topologies[i], base, "notes", "");
        model.topologies.push_back(std::move(t));
    }

    std::vector<Diagnostic> diagnostics;
    check_semantics(model, diagnostics);
    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    return model;
}

ArcFlashDefaults load_defaults(const json& document) {
    const json& section = require_member(document, "document", "arcflash_defaults");
    const std::string base = "arcflash_defaults";
    ArcFlashDefaults d;
    d.electrode_config =
        electrode_config_from_string(require_string(section, base, "electrode_config"));
    d.gap_mm = require_number(section, base, "gap_mm");
    d.working_distance_mm = require_number(section, base, "working_distance_mm");
    d.arc_duration_cycles = require_number(section, base, "arc_duration_cycles");
    d.ess = require_number(section, base, "ess");
    for (const char* field : {"gap_mm", "working_distance_mm", "arc_duration_cycles", "ess"})
        if (!(require_number(section, base, field) > 0))
            throw ModelError(base + "." + field, "value must be positive");

    std::vector<Diagnostic> diagnostics;
    const json& categories = require_member(section, base, "ppe_categories");
    if (!categories.is_array())
        throw ModelError(base + ".ppe_categories", "expected an array");
    std::set<int> levels;
    double previous_rating = 0.0;
    for (std::size_t i = 0; i < categories.size(); ++i) {
        const std::string cbase = at(base + ".ppe_categories", i);
        PpeCategoryConfig c;
        c.level = static_cast<int>(require_number(categories[i], cbase, "level"));
        c.min_clothing_rating_cal =
            require_number(categories[i], cbase, "min_clothing_rating_cal");
        c.required = string_list(categories[i], cbase, "required");
        c.additional = string_list(categories[i], cbase, "additional");
        if (!levels.insert(c.level).second)
            diagnostics.push_back({cbase + ".level", "unique_id",
                                   "duplicate PPE category level " + std::to_string(c.level)});
        if (c.min_clothing_rating_cal <= previous_rating)
            diagnostics.push_back({cbase + ".min_clothing_rating_cal", "ascending",
                                   "clothing ratings must increase strictly"});
        previous_rating = c.min_clothing_rating_cal;
        d.classifier.categories.push_back(std::move(c));
    }

    const json& rows = require_member(section, base, "approach_boundaries");
    if (!rows.is_array())
        throw ModelError(base + ".approach_boundaries", "expected an array");
    std::set<double> voltages;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rbase = at(base + ".approach_boundaries", i);
        ApproachBoundaries row;
        row.nominal_voltage_v = require_number(rows[i], rbase, "nominal_voltage_v");
        row.limited_m = require_number(rows[i], rbase, "limited_m");
        row.restricted_m = require_number(rows[i], rbase, "restricted_m");
        if (!voltages.insert(row.nominal_voltage_v).second)
            diagnostics.push_back({rbase + ".nominal_voltage_v", "unique_id",
                                   "duplicate approach-boundary voltage"});
        d.classifier.approach_rows.push_back(row);
    }

    const json& roster = require_member(section, base, "label_roster");
    d.classifier.roster.arc_rated = string_list(roster, base + ".label_roster", "arc_rated");
    d.classifier.roster.additional = string_list(roster, base + ".label_roster", "additional");

    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    return d;
}

StudyDocument load_study(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open study file '" + file.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read study file '" + file.string() + "'");
    const std::string bytes = buffer.str();

    json document;
    try {
        document = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ModelError(file.string(), std::string("not parseable: ") + e.what());
    }

    StudyDocument study;
    study.checksum_hex = crc32_hex(bytes);
    const double version = require_number(document, "document", "schema_version");
    study.schema_version = static_cast<int>(version);
    if (study.schema_version != study_schema_version)
        throw ModelError("document.schema_version",
                         "unsupported schema version " + std::to_string(study.schema_version) +
                             "; this build reads version " +
                             std::to_string(study_schema_version));
    study.title = optional_string(document, "document", "title", "");
    study.model = load_model(document);
    study.defaults = load_defaults(document);
    return study;
}

}  // namespace arcstudy
