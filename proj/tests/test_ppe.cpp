#include "doctest.h"

#include <string>
#include <vector>

#include "arcstudy/errors.hpp"
#include "arcstudy/ppe.hpp"

using namespace arcstudy;

namespace {

ClassifierConfig nfpa_config() {
    ClassifierConfig c;
    c.categories = {
        {1, 4.0,
         {"Face shield", "Long-sleeve shirt", "Pants"},
         {"Leather footwear", "Hearing protection", "Heavy duty leather gloves"}},
        {2, 8.0,
         {"Face shield", "Long-sleeve shirt", "Pants", "Balaclava"},
         {"Leather footwear", "Hearing protection", "Heavy duty leather gloves"}},
        {3, 25.0,
         {"Flash suit jacket", "Flash suit pants", "Flash suit hood", "Gloves"},
         {"Leather footwear", "Hard hat", "Hearing protection"}},
        {4, 40.0,
         {"Flash suit jacket", "Flash suit pants", "Flash suit hood", "Gloves"},
         {"Leather footwear", "Hard hat", "Hearing protection"}},
    };
    c.approach_rows = {{480.0, 1.0, 0.3}, {208.0, 1.0, 0.3}};
    c.roster.arc_rated = {"Face shield", "Long-sleeve shirt", "Pants"};
    c.roster.additional = {"Leather footwear", "Hearing protection"};
    return c;
}

}  // namespace

TEST_CASE("category selection picks the smallest covering clothing rating") {
    const ClassifierConfig cfg = nfpa_config();
    CHECK(ppe_category(3.6, cfg).level == 1);
    CHECK(ppe_category(3.8, cfg).level == 1);
    CHECK(ppe_category(0.5, cfg).level == 1);
    CHECK(ppe_category(0.0, cfg).level == 1);
    CHECK(ppe_category(8.0, cfg).level == 2);
    CHECK(ppe_category(25.0, cfg).level == 3);
    CHECK(ppe_category(40.0, cfg).level == 4);
}

TEST_CASE("threshold is inclusive and the next category starts just above it") {
    const ClassifierConfig cfg = nfpa_config();
    const PpeCategory at = ppe_category(4.0, cfg);
    CHECK(at.level == 1);
    CHECK(at.min_clothing_rating_cal == 4.0);
    const PpeCategory above = ppe_category(4.0001, cfg);
    CHECK(above.level == 2);
    CHECK(above.min_clothing_rating_cal == 8.0);
}

TEST_CASE("exposure above every rating is beyond category") {
    const ClassifierConfig cfg = nfpa_config();
    const PpeCategory beyond = ppe_category(40.01, cfg);
    CHECK(beyond_category(beyond));
    CHECK_FALSE(beyond.level.has_value());
    CHECK(beyond.min_clothing_rating_cal == 0.0);
    CHECK(beyond.required_items.empty());
    CHECK(beyond.additional_items.empty());
    CHECK_THROWS_AS(clothing_lists(beyond), ComputeError);
}

TEST_CASE("category level never decreases as exposure grows") {
    const ClassifierConfig cfg = nfpa_config();
    int previous = 0;
    for (double e = 0.0; e <= 45.0; e += 0.05) {
        const PpeCategory c = ppe_category(e, cfg);
        const int level = c.level.value_or(5);
        CHECK(level >= previous);
        previous = level;
    }
}

TEST_CASE("selection order does not depend on configuration order") {
    ClassifierConfig cfg = nfpa_config();
    std::swap(cfg.categories[0], cfg.categories[3]);
    CHECK(ppe_category(3.6, cfg).level == 1);
    CHECK(ppe_category(30.0, cfg).level == 4);
}

TEST_CASE("invalid classifier inputs are rejected") {
    const ClassifierConfig cfg = nfpa_config();
    CHECK_THROWS_AS(ppe_category(-0.1, cfg), ComputeError);
    CHECK_THROWS_AS(ppe_category(3.6, ClassifierConfig{}), ComputeError);
}

TEST_CASE("clothing lists come straight from the selected category") {
    const ClassifierConfig cfg = nfpa_config();
    const auto [required, additional] = clothing_lists(ppe_category(3.6, cfg));
    CHECK(required == std::vector<std::string>{"Face shield", "Long-sleeve shirt", "Pants"});
    CHECK(additional == std::vector<std::string>{"Leather footwear", "Hearing protection",
                                                 "Heavy duty leather gloves"});
}

TEST_CASE("skin injury threshold rides along as the 1.2 cal note") {
    const ClassifierConfig cfg = nfpa_config();
    CHECK(ppe_category(0.5, cfg).skin_injury_threshold_cal == 1.2);
    CHECK(ppe_category(50.0, cfg).skin_injury_threshold_cal == 1.2);
}

TEST_CASE("approach boundaries are an exact-voltage lookup") {
    const ClassifierConfig cfg = nfpa_config();
    const ApproachBoundaries lv = approach_boundaries(480.0, cfg);
    CHECK(lv.limited_m == 1.0);
    CHECK(lv.restricted_m == 0.3);
    const ApproachBoundaries lv208 = approach_boundaries(208.0, cfg);
    CHECK(lv208.limited_m == 1.0);
    CHECK(lv208.restricted_m == 0.3);
    CHECK_THROWS_WITH_AS(approach_boundaries(13800.0, cfg), doctest::Contains("13800"),
                         ComputeError);
}
