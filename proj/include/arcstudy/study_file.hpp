#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "arcstudy/ieee1584.hpp"
#include "arcstudy/model.hpp"
#include "arcstudy/ppe.hpp"

namespace arcstudy {

/** @brief Defaults applied to every hazard computation in a study. */
struct ArcFlashDefaults {
    ElectrodeConfig electrode_config = ElectrodeConfig::VCB;
    double gap_mm = 0.0;
    double working_distance_mm = 0.0;
    double arc_duration_cycles = 0.0;
    double ess = 0.0;
    ClassifierConfig classifier;
};

/** @brief A parsed and validated study file: network model plus study-wide defaults. */
struct StudyDocument {
    int schema_version = 0;
    std::string title;
    NetworkModel model;
    ArcFlashDefaults defaults;
    std::string checksum_hex;  // CRC32 of the file bytes as read
};

/** @brief Build a validated NetworkModel from the study document's network sections.
 *         Schema violations throw ModelError with a path into the document; semantic
 *         violations are collected and thrown together as ValidationError. */
NetworkModel load_model(const nlohmann::json& document);

/** @brief Parse arcflash_defaults, including the classifier and label configuration. */
ArcFlashDefaults load_defaults(const nlohmann::json& document);

/** @brief Read, checksum, parse, and validate a .study file. */
StudyDocument load_study(const std::filesystem::path& file);

}  // namespace arcstudy
