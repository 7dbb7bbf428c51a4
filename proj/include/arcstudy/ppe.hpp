#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arcstudy {

/** @brief NFPA 70E PPE class. level is empty when the exposure exceeds every
 *         configured clothing rating (beyond category). */
struct PpeCategory {
    std::optional<int> level;               // 1..4; nullopt = beyond category
    double min_clothing_rating_cal = 0.0;   // 0 when beyond
    std::vector<std::string> required_items;
    std::vector<std::string> additional_items;
    double skin_injury_threshold_cal = 1.2; // informational note carried onto labels
};

inline bool beyond_category(const PpeCategory& c) { return !c.level.has_value(); }

/** @brief Shock-protection distances keyed to nominal voltage. */
struct ApproachBoundaries {
    double nominal_voltage_v = 0.0;
    double limited_m = 0.0;
    double restricted_m = 0.0;
};

/** @brief One configured PPE category row (clothing tables are data, not code). */
struct PpeCategoryConfig {
    int level = 0;
    double min_clothing_rating_cal = 0.0;
    std::vector<std::string> required;
    std::vector<std::string> additional;
};

/** @brief Checkbox roster printed on every label, in label layout order. */
struct LabelRoster {
    std::vector<std::string> arc_rated;
    std::vector<std::string> additional;
};

/** @brief Classifier configuration from the study file's arcflash_defaults section. */
struct ClassifierConfig {
    std::vector<PpeCategoryConfig> categories;       // ascending by rating
    std::vector<ApproachBoundaries> approach_rows;
    LabelRoster roster;
};

/** @brief Smallest configured category whose clothing rating covers the exposure
 *         (inclusive at the threshold); beyond category when none does. */
PpeCategory ppe_category(double e_cal_cm2, const ClassifierConfig& config);

/** @brief Approach-boundary table lookup. Missing voltages raise ComputeError,
 *         never a silent default. */
ApproachBoundaries approach_boundaries(double nominal_voltage_v, const ClassifierConfig& config);

/** @brief The (required, additional) clothing lists of a category 1..4.
 *         Beyond-category exposures have no clothing list and raise ComputeError. */
std::pair<std::vector<std::string>, std::vector<std::string>>
clothing_lists(const PpeCategory& category);

}  // namespace arcstudy
