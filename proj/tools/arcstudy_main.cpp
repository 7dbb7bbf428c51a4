#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "arcstudy/errors.hpp"
#include "arcstudy/fault.hpp"
#include "arcstudy/ieee1584.hpp"
#include "arcstudy/label.hpp"
#include "arcstudy/ppe.hpp"
#include "arcstudy/report.hpp"
#include "arcstudy/study_file.hpp"
#include "arcstudy/version.hpp"

namespace fs = std::filesystem;
using namespace arcstudy;

namespace {

struct Options {
    std::string study;
    std::string out = "out";
    std::string topology;
    std::string bus;
    std::string formats = "txt,svg,json,csv,md";
    std::string summation = "magnitude";
    std::string coefficients;
    bool strict = false;
    bool per_topology = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--study", o.study, "study file")->required();
    cmd->add_option("--out", o.out, "output directory (default out)");
    cmd->add_option("--topology", o.topology, "restrict to one topology");
    cmd->add_option("--bus", o.bus, "restrict to one bus");
    cmd->add_option("--format", o.formats,
                    "comma-separated output formats from txt,svg,json,csv,md");
    cmd->add_option("--summation", o.summation, "contribution summation: magnitude|phasor");
    cmd->add_option("--coefficients", o.coefficients,
                    "coefficient data file (default: built-in copy)");
}

Summation summation_rule(const std::string& name) {
    if (name == "magnitude") return Summation::magnitude;
    if (name == "phasor") return Summation::phasor;
    throw ModelError("--summation", "expected magnitude or phasor, got '" + name + "'");
}

std::set<std::string> parse_formats(const std::string& list) {
    static const std::set<std::string> known{"txt", "svg", "json", "csv", "md"};
    std::set<std::string> out;
    std::stringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        if (!known.count(token))
            throw ModelError("--format", "unknown format '" + token + "'");
        out.insert(token);
    }
    if (out.empty()) throw ModelError("--format", "no formats selected");
    return out;
}

CoefficientTable resolve_coefficients(const Options& o) {
    if (o.coefficients.empty()) return embedded_coefficients();
    return load_coefficients(o.coefficients);
}

std::vector<const Bus*> select_buses(const NetworkModel& model, const std::string& filter) {
    std::vector<const Bus*> all = model.analysis_buses();
    if (filter.empty()) return all;
    if (!model.find_bus(filter)) throw ModelError("--bus", "unknown bus '" + filter + "'");
    std::vector<const Bus*> out;
    for (const Bus* b : all)
        if (b->id == filter) out.push_back(b);
    return out;
}

std::vector<const Topology*> select_topologies(const NetworkModel& model,
                                               const std::string& filter) {
    std::vector<const Topology*> out;
    for (const Topology& t : model.topologies)
        if (filter.empty() || t.name == filter) out.push_back(&t);
    if (!filter.empty() && out.empty())
        throw ModelError("--topology", "unknown topology '" + filter + "'");
    return out;
}

// Study matrix over the selected pairs; per-pair failures are aggregated like
// run_study_matrix so one bad pair does not hide the others.
std::vector<FaultStudyResult> compute_matrix(const NetworkModel& model,
                                             const std::vector<const Bus*>& buses,
                                             const std::vector<const Topology*>& topologies,
                                             Summation rule) {
    if (buses.empty()) throw ModelError("--bus", "no buses selected");
    if (buses.size() == model.analysis_buses().size() &&
        topologies.size() == model.topologies.size())
        return run_study_matrix(model, rule);
    std::vector<FaultStudyResult> results;
    std::vector<std::string> failures;
    for (const Bus* bus : buses) {
        for (const Topology* topology : topologies) {
            try {
                results.push_back(bolted_fault_current(model, *topology, *bus, rule));
            } catch (const Error& e) {
                failures.push_back("(" + bus->id + ", " + topology->name + "): " + e.what());
            }
        }
    }
    if (!failures.empty()) {
        std::string message = std::to_string(failures.size()) + " pair(s) failed:";
        for (const std::string& f : failures) message += "\n  " + f;
        throw ComputeError("study_matrix", message);
    }
    return results;
}

struct BusHazard {
    const Bus* bus = nullptr;
    FaultStudyResult basis;
    HazardResult hazard;
    PpeCategory category;
    ApproachBoundaries approaches;
};

HazardResult hazard_for(const Bus& bus, double i_bf_a, const StudyDocument& study,
                        const CoefficientTable& coefficients) {
    ArcFlashParams params;
    params.open_circuit_voltage_kv = bus.nominal_voltage_v / 1000.0;
    params.gap_mm = study.defaults.gap_mm;
    params.working_distance_mm = study.defaults.working_distance_mm;
    params.arc_duration_ms =
        cycles_to_ms(study.defaults.arc_duration_cycles, study.model.system_frequency_hz);
    params.ess = study.defaults.ess;
    params.electrode_config = study.defaults.electrode_config;
    return compute_hazard(i_bf_a / 1000.0, params, coefficients);
}

std::vector<BusHazard> compute_bus_hazards(const StudyDocument& study,
                                           const CoefficientTable& coefficients,
                                           const std::vector<const Bus*>& buses,
                                           const std::vector<FaultStudyResult>& matrix) {
    const std::map<std::string, FaultStudyResult> worst = worst_case_per_bus(matrix);
    std::vector<BusHazard> out;
    out.reserve(buses.size());
    for (const Bus* bus : buses) {
        BusHazard bh;
        bh.bus = bus;
        bh.basis = worst.at(bus->id);
        bh.hazard = hazard_for(*bus, bh.basis.total_current_a, study, coefficients);
        bh.category = ppe_category(bh.hazard.incident_energy_cal_cm2, study.defaults.classifier);
        bh.approaches = approach_boundaries(bus->nominal_voltage_v, study.defaults.classifier);
        out.push_back(std::move(bh));
    }
    return out;
}

std::vector<HazardRow> hazard_rows(const StudyDocument& study,
                                   const CoefficientTable& coefficients,
                                   const std::vector<BusHazard>& hazards,
                                   const std::vector<FaultStudyResult>& matrix,
                                   bool per_topology) {
    std::vector<HazardRow> rows;
    if (!per_topology) {
        for (const BusHazard& bh : hazards)
            rows.push_back({bh.bus->id, bh.bus->tag, bh.bus->nominal_voltage_v,
                            bh.basis.topology_name, bh.basis.total_current_a, bh.hazard,
                            bh.category});
        return rows;
    }
    for (const BusHazard& bh : hazards) {
        for (const FaultStudyResult& r : matrix) {
            if (r.bus_id != bh.bus->id) continue;
            HazardResult hazard = hazard_for(*bh.bus, r.total_current_a, study, coefficients);
            PpeCategory category =
                ppe_category(hazard.incident_energy_cal_cm2, study.defaults.classifier);
            rows.push_back({bh.bus->id, bh.bus->tag, bh.bus->nominal_voltage_v, r.topology_name,
                            r.total_current_a, hazard, category});
        }
    }
    return rows;
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
    try {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
            out << bytes;
            out.flush();
            if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        }
        fs::rename(tmp, path);
    } catch (const fs::filesystem_error& e) {
        throw IoError(std::string("filesystem error: ") + e.what());
    }
}

void write_labels(const StudyDocument& study, const std::vector<BusHazard>& hazards,
                  const std::set<std::string>& formats, const fs::path& out_dir) {
    const std::set<std::string> label_formats{"txt", "svg", "json"};
    bool any = false;
    for (const std::string& f : label_formats) any = any || formats.count(f);
    if (!any) throw ModelError("--format", "no label formats selected (txt, svg, json)");
    for (const BusHazard& bh : hazards) {
        const LabelSpec spec =
            build_label(*bh.bus, bh.hazard, bh.category, bh.approaches,
                        study.defaults.working_distance_mm, study.defaults.classifier.roster);
        const fs::path base = out_dir / "labels" / spec.equipment_id;
        if (formats.count("txt"))
            write_file_atomic(fs::path(base) += ".txt", render_label(spec, LabelFormat::text));
        if (formats.count("svg"))
            write_file_atomic(fs::path(base) += ".svg", render_label(spec, LabelFormat::svg));
        if (formats.count("json"))
            write_file_atomic(fs::path(base) += ".json", render_label(spec, LabelFormat::json));
        std::cerr << "label " << spec.equipment_id << " written\n";
    }
}

void write_report(const StudyReport& report, const std::set<std::string>& formats,
                  const fs::path& out_dir) {
    if (!formats.count("csv") && !formats.count("md"))
        throw ModelError("--format", "no report formats selected (csv, md)");
    if (formats.count("csv"))
        write_file_atomic(out_dir / "report.csv", render_report(report, ReportFormat::csv));
    if (formats.count("md"))
        write_file_atomic(out_dir / "report.md", render_report(report, ReportFormat::markdown));
    std::cerr << "report written to " << out_dir.string() << "\n";
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Advisory summary on the error stream; returns the advisory count for --strict.
std::size_t summarize_advisories(const std::vector<BusHazard>& hazards) {
    std::size_t count = 0;
    for (const BusHazard& bh : hazards) {
        for (const Advisory& a : bh.hazard.advisories) {
            std::cerr << "advisory [" << bh.bus->id << "] " << a.message << "\n";
            ++count;
        }
    }
    if (count)
        std::cerr << count << " advisories; they are printed on the labels and in the report\n";
    return count;
}

std::string category_text(const PpeCategory& c) {
    return c.level ? std::to_string(*c.level) : "Beyond";
}

int run_validate(const Options& o) {
    const StudyDocument study = load_study(o.study);
    std::printf("model valid: %zu sources, %zu topologies, %zu buses\n",
                study.model.sources.size(), study.model.topologies.size(),
                study.model.analysis_buses().size());
    return 0;
}

int run_shortcircuit(const Options& o) {
    const StudyDocument study = load_study(o.study);
    const CoefficientTable coefficients = resolve_coefficients(o);
    const std::vector<const Bus*> buses = select_buses(study.model, o.bus);
    const std::vector<const Topology*> topologies = select_topologies(study.model, o.topology);
    const std::vector<FaultStudyResult> matrix =
        compute_matrix(study.model, buses, topologies, summation_rule(o.summation));

    StudyReport report = build_report(study, {}, matrix, coefficients);
    report.generated_at = now_utc();
    // Not a hazard run: drop the (empty) arc-flash sections, keep the Table-IV shapes.
    report.tables.erase(report.tables.begin(), report.tables.begin() + 2);
    write_report(report, parse_formats(o.formats), o.out);

    const std::map<std::string, FaultStudyResult> worst = worst_case_per_bus(matrix);
    for (const Bus* bus : buses) {
        const FaultStudyResult& r = worst.at(bus->id);
        std::printf("%s: %.2f A (%s)\n", bus->id.c_str(), r.total_current_a,
                    r.topology_name.c_str());
    }
    return 0;
}

int run_hazard_pipeline(const Options& o, bool with_labels, bool with_report) {
    const StudyDocument study = load_study(o.study);
    const CoefficientTable coefficients = resolve_coefficients(o);
    const std::set<std::string> formats = parse_formats(o.formats);
    const std::vector<const Bus*> buses = select_buses(study.model, o.bus);
    const std::vector<const Topology*> topologies = select_topologies(study.model, o.topology);
    const std::vector<FaultStudyResult> matrix =
        compute_matrix(study.model, buses, topologies, summation_rule(o.summation));
    const std::vector<BusHazard> hazards = compute_bus_hazards(study, coefficients, buses, matrix);

    if (with_labels) write_labels(study, hazards, formats, o.out);
    if (with_report) {
        const std::vector<HazardRow> rows =
            hazard_rows(study, coefficients, hazards, matrix, o.per_topology);
        StudyReport report = build_report(study, rows, matrix, coefficients);
        report.generated_at = now_utc();
        write_report(report, formats, o.out);
    }

    for (const BusHazard& bh : hazards)
        std::printf("%s %.0f V %s I_bf=%.2f kA I_arc=%.2f kA E=%.1f cal/cm2 AFB=%.2f m PPE %s\n",
                    bh.bus->id.c_str(), bh.bus->nominal_voltage_v,
                    bh.basis.topology_name.c_str(), bh.basis.total_current_a / 1000.0,
                    bh.hazard.i_arc_ka, bh.hazard.incident_energy_cal_cm2,
                    bh.hazard.afb_mm / 1000.0, category_text(bh.category).c_str());

    const std::size_t advisories = summarize_advisories(hazards);
    if (o.strict && advisories) {
        std::cerr << "--strict: advisories promoted to failure\n";
        return 2;
    }
    return 0;
}

int run_version(const Options& o) {
    const CoefficientTable coefficients = resolve_coefficients(o);
    std::printf("arcstudy %s\n", engine_version);
    std::printf("coefficients: %s (crc32 %s)\n", coefficients.version.c_str(),
                coefficients.checksum_hex.c_str());
    std::printf("study schema: %d\n", study_schema_version);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"facility short-circuit and arc-flash study engine"};
    app.require_subcommand(1);

    Options validate_opts, shortcircuit_opts, arcflash_opts, labels_opts, report_opts,
        version_opts;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a study file");
    validate->add_option("file", validate_opts.study, "study file");
    validate->add_option("--study", validate_opts.study, "study file");

    CLI::App* shortcircuit =
        app.add_subcommand("shortcircuit", "bolted-fault study matrix and report");
    add_common(shortcircuit, shortcircuit_opts);

    CLI::App* arcflash =
        app.add_subcommand("arcflash", "full study: labels and report from worst-case currents");
    add_common(arcflash, arcflash_opts);
    arcflash->add_flag("--strict", arcflash_opts.strict, "treat advisories as errors");
    arcflash->add_flag("--per-topology", arcflash_opts.per_topology,
                       "hazard rows for every topology, not just the worst case");

    CLI::App* labels = app.add_subcommand("labels", "write equipment labels only");
    add_common(labels, labels_opts);
    labels->add_flag("--strict", labels_opts.strict, "treat advisories as errors");

    CLI::App* report = app.add_subcommand("report", "write the study report only");
    add_common(report, report_opts);
    report->add_flag("--strict", report_opts.strict, "treat advisories as errors");
    report->add_flag("--per-topology", report_opts.per_topology,
                     "hazard rows for every topology, not just the worst case");

    CLI::App* version = app.add_subcommand("version", "print engine and data versions");
    version->add_option("--coefficients", version_opts.coefficients, "coefficient data file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            if (validate_opts.study.empty())
                throw ModelError("validate", "a study file argument is required");
            return run_validate(validate_opts);
        }
        if (shortcircuit->parsed()) return run_shortcircuit(shortcircuit_opts);
        if (arcflash->parsed()) return run_hazard_pipeline(arcflash_opts, true, true);
        if (labels->parsed()) return run_hazard_pipeline(labels_opts, true, false);
        if (report->parsed()) return run_hazard_pipeline(report_opts, false, true);
        if (version->parsed()) return run_version(version_opts);
    } catch (const ValidationError& e) {
        for (const Diagnostic& d : e.diagnostics())
            std::printf("%s: [%s] %s\n", d.path.c_str(), d.rule.c_str(), d.message.c_str());
        std::cerr << e.diagnostics().size() << " violation(s)\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
