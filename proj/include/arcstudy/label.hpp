#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcstudy/ieee1584.hpp"
#include "arcstudy/model.hpp"
#include "arcstudy/ppe.hpp"

namespace arcstudy {

/** @brief One checkbox row of the label's PPE roster. */
struct CheckboxState {
    std::string item;
    bool checked = false;
};

/** @brief Complete field set of the equipment warning label. Numeric fields hold full
 *         precision; renderers apply the documented display rounding. */
struct LabelSpec {
    std::string equipment_id;
    double nominal_voltage_v = 0.0;
    double incident_energy_cal_cm2 = 0.0;
    double arc_flash_boundary_m = 0.0;
    double working_distance_m = 0.0;
    double limited_approach_m = 0.0;
    double restricted_approach_m = 0.0;
    std::optional<int> ppe_category;          // empty when beyond category
    double clothing_rating_cal = 0.0;         // 0 when beyond category
    std::vector<CheckboxState> arc_rated_boxes;
    std::vector<CheckboxState> additional_boxes;
    std::vector<std::string> advisories;
};

enum class LabelFormat { text, svg, json };

/** @brief Assemble the label fields for one bus from its hazard, classification, and
 *         approach-boundary results plus the configured checkbox roster. */
LabelSpec build_label(const Bus& bus, const HazardResult& hazard, const PpeCategory& category,
                      const ApproachBoundaries& approaches, double working_distance_mm,
                      const LabelRoster& roster);

/** @brief Render a label deterministically. text mirrors the printed warning label row
 *         for row; svg is a self-contained printable document; json is the machine
 *         readable spec and round-trips through label_from_json. */
std::string render_label(const LabelSpec& spec, LabelFormat format);

/** @brief Parse a json-format label back into an equal LabelSpec. */
LabelSpec label_from_json(const std::string& bytes);

bool operator==(const CheckboxState& a, const CheckboxState& b);
bool operator==(const LabelSpec& a, const LabelSpec& b);

}  // namespace arcstudy
