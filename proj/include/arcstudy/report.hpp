#pragma once

#include <string>
#include <vector>

#include "arcstudy/fault.hpp"
#include "arcstudy/ieee1584.hpp"
#include "arcstudy/ppe.hpp"
#include "arcstudy/study_file.hpp"

namespace arcstudy {

/** @brief One hazard row of the report: a bus, the bolted-fault basis, and the chain output. */
struct HazardRow {
    std::string bus_id;
    std::string bus_tag;
    double nominal_voltage_v = 0.0;
    std::string topology_name;  // topology the basis current came from
    double i_bf_a = 0.0;
    HazardResult hazard;
    PpeCategory category;
};

/** @brief Table content already projected to cell strings, so every output format
 *         carries identical numeric content. */
struct ReportTable {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/** @brief Study-wide report. generated_at is carried for the progress stream only and
 *         never rendered, keeping output bytes identical across runs. */
struct StudyReport {
    std::string title;
    std::string study_checksum_hex;
    std::string coefficient_version;
    std::string coefficient_checksum_hex;
    std::string engine_version;
    std::string generated_at;
    std::vector<ReportTable> tables;
};

enum class ReportFormat { csv, markdown };

/** @brief Assemble the report tables: arc-flash rows (display precision and full
 *         precision) and short-circuit rows with per-source contributions. */
StudyReport build_report(const StudyDocument& study, const std::vector<HazardRow>& hazards,
                         const std::vector<FaultStudyResult>& short_circuit,
                         const CoefficientTable& coefficients);

/** @brief Render the report deterministically as csv or markdown. */
std::string render_report(const StudyReport& report, ReportFormat format);

}  // namespace arcstudy
