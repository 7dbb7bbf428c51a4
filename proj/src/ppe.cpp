#include "arcstudy/ppe.hpp"

#include <cmath>
#include <cstdio>

#include "arcstudy/errors.hpp"

namespace arcstudy {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

PpeCategory ppe_category(double e_cal_cm2, const ClassifierConfig& config) {
    if (e_cal_cm2 < 0.0)
        throw ComputeError("ppe_category",
                           "incident energy must be non-negative, got " + fmt(e_cal_cm2));
    if (config.categories.empty())
        throw ComputeError("ppe_category", "no PPE categories configured");
    const PpeCategoryConfig* best = nullptr;
    for (const PpeCategoryConfig& c : config.categories) {
        if (c.min_clothing_rating_cal >= e_cal_cm2 &&
            (!best || c.min_clothing_rating_cal < best->min_clothing_rating_cal))
            best = &c;
    }
    PpeCategory out;
    if (best) {
        out.level = best->level;
        out.min_clothing_rating_cal = best->min_clothing_rating_cal;
        out.required_items = best->required;
        out.additional_items = best->additional;
    }
    return out;
}

ApproachBoundaries approach_boundaries(double nominal_voltage_v, const ClassifierConfig& config) {
    for (const ApproachBoundaries& row : config.approach_rows)
        if (row.nominal_voltage_v == nominal_voltage_v) return row;
    throw ComputeError("approach_boundaries",
                       "boundary data missing for nominal voltage " + fmt(nominal_voltage_v) +
                           " V; add a row to arcflash_defaults.approach_boundaries");
}

std::pair<std::vector<std::string>, std::vector<std::string>>
clothing_lists(const PpeCategory& category) {
    if (beyond_category(category))
        throw ComputeError("clothing_lists",
                           "no clothing list exists above the highest configured category");
    return {category.required_items, category.additional_items};
}

}  // namespace arcstudy
