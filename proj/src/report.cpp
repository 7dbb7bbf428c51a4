#include "arcstudy/report.hpp"

#include <cmath>
#include <cstdio>

#include "arcstudy/errors.hpp"
#include "arcstudy/version.hpp"

namespace arcstudy {

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

std::string full(double value) { return fmt("%.9g", value); }

std::string bus_tag(const NetworkModel& model, const std::string& bus_id) {
    const Bus* bus = model.find_bus(bus_id);
    return bus ? bus->tag : bus_id;
}

std::string joined_advisories(const HazardResult& hazard) {
    std::string out;
    for (const Advisory& a : hazard.advisories) out += (out.empty() ? "" : "; ") + a.message;
    return out;
}

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string md_cell(const std::string& cell) {
    std::string out;
    for (char c : cell) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out.empty() ? " " : out;
}

std::string render_csv(const StudyReport& report) {
    std::string out;
    out += "# " + report.title + "\n";
    out += "# study_checksum_crc32: " + report.study_checksum_hex + "\n";
    out += "# coefficients: " + report.coefficient_version + " (crc32 " +
           report.coefficient_checksum_hex + ")\n";
    out += "# engine: " + report.engine_version + "\n";
    for (const ReportTable& table : report.tables) {
        out += "\n## " + table.title + "\n";
        std::string header;
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            header += (i ? "," : "") + csv_cell(table.columns[i]);
        out += header + "\n";
        for (const auto& row : table.rows) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + csv_cell(row[i]);
            out += line + "\n";
        }
    }
    return out;
}

std::string render_markdown(const StudyReport& report) {
    std::string out;
    out += "# " + report.title + "\n\n";
    out += "- study checksum (crc32): " + report.study_checksum_hex + "\n";
    out += "- coefficients: " + report.coefficient_version + " (crc32 " +
           report.coefficient_checksum_hex + ")\n";
    out += "- engine: " + report.engine_version + "\n";
    for (const ReportTable& table : report.tables) {
        out += "\n## " + table.title + "\n\n";
        std::string header = "|", rule = "|";
        for (const std::string& column : table.columns) {
            header += " " + md_cell(column) + " |";
            rule += " --- |";
        }
        out += header + "\n" + rule + "\n";
        for (const auto& row : table.rows) {
            std::string line = "|";
            for (const std::string& cell : row) line += " " + md_cell(cell) + " |";
            out += line + "\n";
        }
    }
    return out;
}

}  // namespace

StudyReport build_report(const StudyDocument& study, const std::vector<HazardRow>& hazards,
                         const std::vector<FaultStudyResult>& short_circuit,
                         const CoefficientTable& coefficients) {
    StudyReport report;
    report.title = study.title.empty() ? "Arc Flash Study" : study.title;
    report.study_checksum_hex = study.checksum_hex;
    report.coefficient_version = coefficients.version;
    report.coefficient_checksum_hex = coefficients.checksum_hex;
    report.engine_version = engine_version;

    ReportTable display;
    display.title = "Arc Flash Results";
    display.columns = {"Bus",         "Voltage (V)", "Topology",      "I_bf (kA)",
                       "I_arc (kA)",  "E (cal/cm2)", "AFB (cm)",      "PPE Category"};
    for (const HazardRow& row : hazards) {
        display.rows.push_back({row.bus_tag, fmt("%.0f", row.nominal_voltage_v),
                                row.topology_name, fmt("%.2f", row.i_bf_a / 1000.0),
                                fmt("%.2f", row.hazard.i_arc_ka),
                                fmt("%.1f", row.hazard.incident_energy_cal_cm2),
                                fmt("%.0f", std::round(row.hazard.afb_mm / 10.0)),
                                row.category.level ? std::to_string(*row.category.level)
                                                   : "Beyond"});
    }
    report.tables.push_back(std::move(display));

    ReportTable precise;
    precise.title = "Arc Flash Results (full precision)";
    precise.columns = {"Bus",        "Voltage (V)",  "Topology", "I_bf (A)",
                       "I_arc_600 (kA)", "I_arc (kA)", "CF",       "E (J/cm2)",
                       "E (cal/cm2)",    "AFB (mm)",   "Advisories"};
    for (const HazardRow& row : hazards) {
        precise.rows.push_back(
            {row.bus_tag, full(row.nominal_voltage_v), row.topology_name, full(row.i_bf_a),
             full(row.hazard.i_arc_600_ka), full(row.hazard.i_arc_ka), full(row.hazard.cf),
             full(row.hazard.incident_energy_j_cm2), full(row.hazard.incident_energy_cal_cm2),
             full(row.hazard.afb_mm), joined_advisories(row.hazard)});
    }
    report.tables.push_back(std::move(precise));

    ReportTable faults;
    faults.title = "Short Circuit Results";
    faults.columns = {"Bus", "Voltage (V)", "Topology", "I_bf (A)", "I_bf (kA)"};
    for (const FaultStudyResult& r : short_circuit) {
        faults.rows.push_back({bus_tag(study.model, r.bus_id), fmt("%.0f", r.fault_voltage_v),
                               r.topology_name, full(r.total_current_a),
                               fmt("%.2f", r.total_current_a / 1000.0)});
    }
    report.tables.push_back(std::move(faults));

    ReportTable contributions;
    contributions.title = "Source Contributions";
    contributions.columns = {"Bus", "Topology", "Source", "Contribution (A)", "Limited"};
    for (const FaultStudyResult& r : short_circuit) {
        for (const SourceContribution& c : r.contributions) {
            contributions.rows.push_back({bus_tag(study.model, r.bus_id), r.topology_name,
                                          c.source_id, full(c.current_a),
                                          c.limited ? "yes" : "no"});
        }
    }
    report.tables.push_back(std::move(contributions));
    return report;
}

std::string render_report(const StudyReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::csv: return render_csv(report);
        case ReportFormat::markdown: return render_markdown(report);
    }
    throw ComputeError("render_report", "unknown report format");
}

}  // namespace arcstudy
