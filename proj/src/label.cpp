#include "arcstudy/label.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "arcstudy/errors.hpp"

namespace arcstudy {

namespace {

// Text layout column widths; the full line is 76 characters between the border pipes.
constexpr int inner_width = 72;
constexpr int field_name_left = 22, field_value_left = 8;
constexpr int field_name_right = 25, field_value_right = 10;
constexpr int box_col1 = 21, box_col2 = 13, box_col3 = 34;

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

// Fixed decimals with trailing zeros trimmed: 1.00 -> "1", 0.30 -> "0.3".
std::string trimmed(double value) {
    std::string s = fmt("%.2f", value);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string pad(std::string s, int width) {
    if (static_cast<int>(s.size()) < width) s.append(width - s.size(), ' ');
    return s;
}

std::string centered(const std::string& s, int width) {
    const int total = width - static_cast<int>(s.size());
    if (total <= 0) return s;
    return std::string(total / 2, ' ') + s + std::string(total - total / 2, ' ');
}

std::string checkbox(const CheckboxState& box) {
    return std::string(box.checked ? "[X] " : "[ ] ") + box.item;
}

const CheckboxState* box_at(const std::vector<CheckboxState>& boxes, std::size_t i) {
    return i < boxes.size() ? &boxes[i] : nullptr;
}

std::string render_text(const LabelSpec& spec) {
    const std::string border = "+" + std::string(inner_width + 2, '-') + "+";
    auto full_row = [&](const std::string& text) {
        return "| " + pad(text, inner_width) + " |\n";
    };
    auto field_row = [&](const std::string& ln, const std::string& lv, const std::string& rn,
                         const std::string& rv) {
        const std::string left = pad(ln, field_name_left) + "  " + pad(lv, field_value_left);
        std::string right;
        if (rn.empty())
            right = pad(rv, field_name_right + 2 + field_value_right);
        else
            right = pad(rn, field_name_right) + "  " + pad(rv, field_value_right);
        return "| " + left + " | " + right + " |\n";
    };
    auto box_row = [&](const std::string& a, const std::string& b, const std::string& c) {
        return "| " + pad(a, box_col1) + "  " + pad(b, box_col2) + "  " + pad(c, box_col3) +
               " |\n";
    };

    std::string category_value, clothing_name, clothing_value;
    if (spec.ppe_category) {
        category_value = std::to_string(*spec.ppe_category);
        clothing_name = "Arc Rating of Clothing";
        clothing_value = trimmed(spec.clothing_rating_cal) + " cal/cm2";
    }

    std::string out;
    out += border + "\n";
    out += "| " + centered("! WARNING", inner_width) + " |\n";
    out += "| " + centered("Arc Flash and Shock Hazard", inner_width) + " |\n";
    out += border + "\n";
    out += field_row("Nominal System Voltage", fmt("%.0f V", spec.nominal_voltage_v),
                     "Incident Energy (cal/cm2)", fmt("%.1f", spec.incident_energy_cal_cm2));
    out += field_row("Arc Flash Boundary", fmt("%.2f m", spec.arc_flash_boundary_m),
                     "Working Distance", fmt("%.2f m", spec.working_distance_m));
    out += field_row("Limited Approach", trimmed(spec.limited_approach_m) + " m", "OR", "");
    if (spec.ppe_category) {
        out += field_row("Restricted Approach", trimmed(spec.restricted_approach_m) + " m",
                         "PPE Hazard Category", category_value);
        out += field_row("", "", clothing_name, clothing_value);
    } else {
        out += field_row("Restricted Approach", trimmed(spec.restricted_approach_m) + " m", "",
                         "DANGER - no PPE category");
        out += field_row("", "", "", "Do not work energized");
    }
    out += border + "\n";
    out += "| " + pad("Arc-rated PPE:", box_col1 + 2 + box_col2) + "  " +
           pad("Additional PPE:", box_col3) + " |\n";
    const std::size_t half = (spec.arc_rated_boxes.size() + 1) / 2;
    const std::size_t rows = std::max(half, spec.additional_boxes.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const CheckboxState* a = box_at(spec.arc_rated_boxes, i);
        const CheckboxState* b = box_at(spec.arc_rated_boxes, i + half);
        const CheckboxState* c = box_at(spec.additional_boxes, i);
        out += box_row(a ? checkbox(*a) : "", b ? checkbox(*b) : "", c ? checkbox(*c) : "");
    }
    out += border + "\n";
    for (const std::string& advisory : spec.advisories) out += full_row("ADVISORY: " + advisory);
    if (!spec.advisories.empty()) out += border + "\n";
    out += full_row("Equipment ID: " + spec.equipment_id);
    out += border + "\n";
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Geometry is fixed 4:3 (400 x 300 units) for adhesive label stock; constants below are
// the documented layout grid.
std::string render_svg(const LabelSpec& spec) {
    constexpr int width = 400, height = 300;
    constexpr int header_h = 40;
    constexpr int field_y0 = 86, field_dy = 16;
    constexpr int name_x_left = 12, value_x_left = 150, name_x_right = 204, value_x_right = 388;
    constexpr int box_y0 = 196, box_dy = 15;
    constexpr int col_x[3] = {12, 142, 268};

    const bool beyond = !spec.ppe_category.has_value();
    std::string svg;
    auto line = [&](const std::string& s) { svg += s + "\n"; };
    auto text = [&](int x, int y, const char* cls, const std::string& anchor,
                    const std::string& content) {
        line("  <text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" class=\"" + cls + "\"" +
             (anchor.empty() ? "" : " text-anchor=\"" + anchor + "\"") + ">" +
             xml_escape(content) + "</text>");
    };

    line("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\">");
    line("  <style>");
    line("    .head { font: bold 22px sans-serif; fill: #000; }");
    line("    .sub { font: bold 14px sans-serif; fill: #000; }");
    line("    .name { font: 10px sans-serif; fill: #000; }");
    line("    .value { font: bold 10px sans-serif; fill: #000; }");
    line("    .item { font: 9px sans-serif; fill: #000; }");
    line("    .advisory { font: italic 8px sans-serif; fill: #b00; }");
    line("  </style>");
    line("  <rect x=\"1\" y=\"1\" width=\"398\" height=\"298\" fill=\"#fff\" stroke=\"#000\" "
         "stroke-width=\"2\"/>");
    line("  <rect x=\"1\" y=\"1\" width=\"398\" height=\"" + std::to_string(header_h) +
         "\" fill=\"" + (beyond ? "#d22" : "#f80") + "\" stroke=\"#000\" stroke-width=\"2\"/>");
    text(width / 2, 29, "head", "middle",
         beyond ? "⚠ DANGER" : "⚠ WARNING");
    text(width / 2, 60, "sub", "middle", "Arc Flash and Shock Hazard");
    line("  <line x1=\"1\" y1=\"70\" x2=\"399\" y2=\"70\" stroke=\"#000\"/>");

    struct Field {
        std::string name, value;
    };
    const Field left[5] = {
        {"Nominal System Voltage", fmt("%.0f V", spec.nominal_voltage_v)},
        {"Arc Flash Boundary", fmt("%.2f m", spec.arc_flash_boundary_m)},
        {"Limited Approach", trimmed(spec.limited_approach_m) + " m"},
        {"Restricted Approach", trimmed(spec.restricted_approach_m) + " m"},
        {"", ""}};
    Field right[5] = {{"Incident Energy (cal/cm²)", fmt("%.1f", spec.incident_energy_cal_cm2)},
                      {"Working Distance", fmt("%.2f m", spec.working_distance_m)},
                      {"OR", ""},
                      {"PPE Hazard Category", ""},
                      {"Arc Rating of Clothing", ""}};
    if (spec.ppe_category) {
        right[3].value = std::to_string(*spec.ppe_category);
        right[4].value = trimmed(spec.clothing_rating_cal) + " cal/cm²";
    } else {
        right[3].value = "DANGER - no PPE category";
        right[4].value = "Do not work energized";
    }
    for (int i = 0; i < 5; ++i) {
        const int y = field_y0 + i * field_dy;
        if (!left[i].name.empty()) {
            text(name_x_left, y, "name", "", left[i].name);
            text(value_x_left, y, "value", "end", left[i].value);
        }
        if (!right[i].name.empty()) {
            text(name_x_right, y, "name", "", right[i].name);
            if (!right[i].value.empty()) text(value_x_right, y, "value", "end", right[i].value);
        }
    }
    line("  <line x1=\"1\" y1=\"172\" x2=\"399\" y2=\"172\" stroke=\"#000\"/>");

    text(col_x[0], 186, "value", "", "Arc-rated PPE:");
    text(col_x[2], 186, "value", "", "Additional PPE:");
    const std::size_t half = (spec.arc_rated_boxes.size() + 1) / 2;
    const std::size_t rows = std::max(half, spec.additional_boxes.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const int y = box_y0 + static_cast<int>(i) * box_dy;
        const CheckboxState* cells[3] = {box_at(spec.arc_rated_boxes, i),
                                         box_at(spec.arc_rated_boxes, i + half),
                                         box_at(spec.additional_boxes, i)};
        for (int c = 0; c < 3; ++c) {
            if (!cells[c]) continue;
            line("  <rect x=\"" + std::to_string(col_x[c]) + "\" y=\"" + std::to_string(y - 7) +
                 "\" width=\"8\" height=\"8\" fill=\"" + (cells[c]->checked ? "#000" : "#fff") +
                 "\" stroke=\"#000\"/>");
            text(col_x[c] + 12, y, "item", "", cells[c]->item);
        }
    }

    if (!spec.advisories.empty()) {
        std::string joined;
        for (const std::string& a : spec.advisories)
            joined += (joined.empty() ? "" : "; ") + a;
        text(12, 284, "advisory", "", "ADVISORY: " + joined);
    }
    line("  <line x1=\"1\" y1=\"288\" x2=\"399\" y2=\"288\" stroke=\"#000\"/>");
    text(12, 297, "value", "", "Equipment ID: " + spec.equipment_id);
    line("</svg>");
    return svg;
}

nlohmann::ordered_json boxes_to_json(const std::vector<CheckboxState>& boxes) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckboxState& b : boxes) arr.push_back({{"item", b.item}, {"checked", b.checked}});
    return arr;
}

std::string render_json(const LabelSpec& spec) {
    nlohmann::ordered_json j;
    j["equipment_id"] = spec.equipment_id;
    j["nominal_voltage_v"] = spec.nominal_voltage_v;
    j["incident_energy_cal_cm2"] = spec.incident_energy_cal_cm2;
    j["arc_flash_boundary_m"] = spec.arc_flash_boundary_m;
    j["working_distance_m"] = spec.working_distance_m;
    j["limited_approach_m"] = spec.limited_approach_m;
    j["restricted_approach_m"] = spec.restricted_approach_m;
    if (spec.ppe_category)
        j["ppe_category"] = *spec.ppe_category;
    else
        j["ppe_category"] = nullptr;
    j["clothing_rating_cal"] = spec.clothing_rating_cal;
    j["arc_rated"] = boxes_to_json(spec.arc_rated_boxes);
    j["additional"] = boxes_to_json(spec.additional_boxes);
    j["advisories"] = spec.advisories;
    return j.dump(2) + "\n";
}

std::vector<CheckboxState> boxes_from_json(const nlohmann::json& arr, const char* key) {
    std::vector<CheckboxState> out;
    for (const auto& e : arr.at(key)) {
        CheckboxState b;
        b.item = e.at("item").get<std::string>();
        b.checked = e.at("checked").get<bool>();
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

LabelSpec build_label(const Bus& bus, const HazardResult& hazard, const PpeCategory& category,
                      const ApproachBoundaries& approaches, double working_distance_mm,
                      const LabelRoster& roster) {
    LabelSpec spec;
    spec.equipment_id = bus.id;
    spec.nominal_voltage_v = bus.nominal_voltage_v;
    spec.incident_energy_cal_cm2 = hazard.incident_energy_cal_cm2;
    spec.arc_flash_boundary_m = hazard.afb_mm / 1000.0;
    spec.working_distance_m = working_distance_mm / 1000.0;
    spec.limited_approach_m = approaches.limited_m;
    spec.restricted_approach_m = approaches.restricted_m;
    spec.ppe_category = category.level;
    spec.clothing_rating_cal = category.min_clothing_rating_cal;
    auto mark = [](const std::vector<std::string>& roster_items,
                   const std::vector<std::string>& worn) {
        std::vector<CheckboxState> boxes;
        boxes.reserve(roster_items.size());
        for (const std::string& item : roster_items)
            boxes.push_back(
                {item, std::find(worn.begin(), worn.end(), item) != worn.end()});
        return boxes;
    };
    const std::vector<std::string> none;
    spec.arc_rated_boxes =
        mark(roster.arc_rated, category.level ? category.required_items : none);
    spec.additional_boxes =
        mark(roster.additional, category.level ? category.additional_items : none);
    for (const Advisory& a : hazard.advisories) spec.advisories.push_back(a.message);
    return spec;
}

std::string render_label(const LabelSpec& spec, LabelFormat format) {
    switch (format) {
        case LabelFormat::text: return render_text(spec);
        case LabelFormat::svg: return render_svg(spec);
        case LabelFormat::json: return render_json(spec);
    }
    throw ComputeError("render_label", "unknown label format");
}

LabelSpec label_from_json(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError("label", std::string("not parseable: ") + e.what());
    }
    try {
        LabelSpec spec;
        spec.equipment_id = j.at("equipment_id").get<std::string>();
        spec.nominal_voltage_v = j.at("nominal_voltage_v").get<double>();
        spec.incident_energy_cal_cm2 = j.at("incident_energy_cal_cm2").get<double>();
        spec.arc_flash_boundary_m = j.at("arc_flash_boundary_m").get<double>();
        spec.working_distance_m = j.at("working_distance_m").get<double>();
        spec.limited_approach_m = j.at("limited_approach_m").get<double>();
        spec.restricted_approach_m = j.at("restricted_approach_m").get<double>();
        if (!j.at("ppe_category").is_null()) spec.ppe_category = j.at("ppe_category").get<int>();
        spec.clothing_rating_cal = j.at("clothing_rating_cal").get<double>();
        spec.arc_rated_boxes = boxes_from_json(j, "arc_rated");
        spec.additional_boxes = boxes_from_json(j, "additional");
        spec.advisories = j.at("advisories").get<std::vector<std::string>>();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError("label", std::string("not a label document: ") + e.what());
    }
}

bool operator==(const CheckboxState& a, const CheckboxState& b) {
    return a.item == b.item && a.checked == b.checked;
}

bool operator==(const LabelSpec& a, const LabelSpec& b) {
    return a.equipment_id == b.equipment_id && a.nominal_voltage_v == b.nominal_voltage_v &&
           a.incident_energy_cal_cm2 == b.incident_energy_cal_cm2 &&
           a.arc_flash_boundary_m == b.arc_flash_boundary_m &&
           a.working_distance_m == b.working_distance_m &&
           a.limited_approach_m == b.limited_approach_m &&
           a.restricted_approach_m == b.restricted_approach_m &&
           a.ppe_category == b.ppe_category && a.clothing_rating_cal == b.clothing_rating_cal &&
           a.arc_rated_boxes == b.arc_rated_boxes && a.additional_boxes == b.additional_boxes &&
           a.advisories == b.advisories;
}

}  // namespace arcstudy
