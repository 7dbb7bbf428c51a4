#include "arcstudy/ieee1584.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "arcstudy/checksum.hpp"
#include "arcstudy/errors.hpp"

namespace arcstudy {

namespace {

using nlohmann::json;

// Validity ranges of the 2018 model for the 208..600 V class.
constexpr double ibf_min_ka = 0.5;
constexpr double ibf_max_ka = 106.0;
constexpr double gap_min_mm = 6.35;
constexpr double gap_max_mm = 76.2;
constexpr double distance_min_mm = 305.0;
constexpr double voc_min_kv = 0.208;
constexpr double voc_max_kv = 0.6;
constexpr double sustainability_note_kv = 0.240;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Shared denominator of the Eq. (4)/(5) ratio term: I_bf times the Eq. (2) polynomial.
double energy_denominator(double ibf, const EnergyCoefficients& c) {
    return c.k4 * std::pow(ibf, 7) + c.k5 * std::pow(ibf, 6) + c.k6 * std::pow(ibf, 5) +
           c.k7 * std::pow(ibf, 4) + c.k8 * std::pow(ibf, 3) + c.k9 * std::pow(ibf, 2) +
           c.k10 * ibf;
}

// Eq. (4)/(5) exponent without the k12 distance term.
double energy_exponent_base(double i_arc, double i_arc_600, double ibf, double gap, double cf,
                            const EnergyCoefficients& c) {
    return c.k1 + c.k2 * std::log10(gap) + c.k3 * i_arc_600 / energy_denominator(ibf, c) +
           c.k11 * std::log10(ibf) + c.k13 * std::log10(i_arc) + std::log10(1.0 / cf);
}

const ArcCoefficients& arc_coeffs(const CoefficientTable& table, ElectrodeConfig config,
                                  const char* stage) {
    auto it = table.arcing.find(config);
    if (it == table.arcing.end())
        throw ComputeError(stage, "no arcing-current coefficients for electrode config " +
                                      to_string(config));
    return it->second;
}

const EnergyCoefficients& energy_coeffs(const CoefficientTable& table, ElectrodeConfig config,
                                        const char* stage) {
    auto it = table.energy.find(config);
    if (it == table.energy.end())
        throw ComputeError(stage, "no incident-energy coefficients for electrode config " +
                                      to_string(config));
    return it->second;
}

}  // namespace

std::string to_string(ElectrodeConfig config) {
    switch (config) {
        case ElectrodeConfig::VCB: return "VCB";
        case ElectrodeConfig::VCBB: return "VCBB";
        case ElectrodeConfig::VOA: return "VOA";
        case ElectrodeConfig::HCB: return "HCB";
        case ElectrodeConfig::HOA: return "HOA";
    }
    return "VCB";
}

ElectrodeConfig electrode_config_from_string(const std::string& name) {
    if (name == "VCB") return ElectrodeConfig::VCB;
    if (name == "VCBB") return ElectrodeConfig::VCBB;
    if (name == "VOA") return ElectrodeConfig::VOA;
    if (name == "HCB") return ElectrodeConfig::HCB;
    if (name == "HOA") return ElectrodeConfig::HOA;
    throw ModelError("electrode_config", "unknown electrode configuration '" + name + "'");
}

bool CoefficientTable::complete_for(ElectrodeConfig config) const {
    return arcing.count(config) && energy.count(config) && box.count(config);
}

std::string canonical_coefficient_text(const CoefficientTable& table) {
    // One line per record, configs in enum order, equations alphabetical. The file's
    // checksum_crc32 field is the CRC32 of exactly these bytes.
    std::ostringstream out;
    for (ElectrodeConfig config : {ElectrodeConfig::VCB, ElectrodeConfig::VCBB,
                                   ElectrodeConfig::VOA, ElectrodeConfig::HCB,
                                   ElectrodeConfig::HOA}) {
        if (auto it = table.arcing.find(config); it != table.arcing.end()) {
            const ArcCoefficients& c = it->second;
            const double k[] = {c.k1, c.k2, c.k3, c.k4, c.k5, c.k6, c.k7, c.k8, c.k9, c.k10};
            out << to_string(config) << " arcing_current_600";
            for (int i = 0; i < 10; ++i) out << " k" << i + 1 << "=" << fmt(k[i]);
            out << "\n";
        }
        if (auto it = table.box.find(config); it != table.box.end()) {
            const BoxCoefficients& c = it->second;
            out << to_string(config) << " box_correction b1=" << fmt(c.b1) << " b2=" << fmt(c.b2)
                << " b3=" << fmt(c.b3) << "\n";
        }
        if (auto it = table.energy.find(config); it != table.energy.end()) {
            const EnergyCoefficients& c = it->second;
            const double k[] = {c.k1, c.k2, c.k3,  c.k4,  c.k5,  c.k6, c.k7,
                                c.k8, c.k9, c.k10, c.k11, c.k12, c.k13};
            out << to_string(config) << " incident_energy";
            for (int i = 0; i < 13; ++i) out << " k" << i + 1 << "=" << fmt(k[i]);
            out << "\n";
        }
    }
    return out.str();
}

namespace {

CoefficientTable parse_coefficients(const std::string& bytes, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ModelError(origin, std::string("coefficient file is not valid JSON: ") + e.what());
    }
    CoefficientTable table;
    try {
        table.version = doc.at("version").get<std::string>();
        table.checksum_hex = doc.at("checksum_crc32").get<std::string>();
        for (const json& rec : doc.at("records")) {
            const ElectrodeConfig config =
                electrode_config_from_string(rec.at("electrode_config").get<std::string>());
            const std::string equation = rec.at("equation").get<std::string>();
            const json& v = rec.at("values");
            if (equation == "arcing_current_600") {
                ArcCoefficients c;
                c.k1 = v.at("k1"); c.k2 = v.at("k2"); c.k3 = v.at("k3"); c.k4 = v.at("k4");
                c.k5 = v.at("k5"); c.k6 = v.at("k6"); c.k7 = v.at("k7"); c.k8 = v.at("k8");
                c.k9 = v.at("k9"); c.k10 = v.at("k10");
                table.arcing[config] = c;
            } else if (equation == "incident_energy") {
                EnergyCoefficients c;
                c.k1 = v.at("k1"); c.k2 = v.at("k2"); c.k3 = v.at("k3"); c.k4 = v.at("k4");
                c.k5 = v.at("k5"); c.k6 = v.at("k6"); c.k7 = v.at("k7"); c.k8 = v.at("k8");
                c.k9 = v.at("k9"); c.k10 = v.at("k10"); c.k11 = v.at("k11");
                c.k12 = v.at("k12"); c.k13 = v.at("k13");
                table.energy[config] = c;
            } else if (equation == "box_correction") {
                BoxCoefficients c;
                c.b1 = v.at("b1"); c.b2 = v.at("b2"); c.b3 = v.at("b3");
                table.box[config] = c;
            } else {
                throw ModelError(origin, "unknown equation '" + equation + "' in coefficient file");
            }
        }
    } catch (const json::exception& e) {
        throw ModelError(origin, std::string("coefficient file schema violation: ") + e.what());
    }
    const std::string expected = crc32_hex(canonical_coefficient_text(table));
    if (expected != table.checksum_hex)
        throw ModelError(origin + "/checksum_crc32",
                         "coefficient data failed verification: file declares " +
                             table.checksum_hex + " but the records hash to " + expected +
                             "; refusing to compute with unverified coefficients");
    return table;
}

}  // namespace

CoefficientTable load_coefficients(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw IoError("cannot read coefficient file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coefficients(buf.str(), file.string());
}

// Definition of the embedded copy lives in the build-generated embedded_coefficients.cpp.
const char* embedded_coefficient_json();

const CoefficientTable& embedded_coefficients() {
    static const CoefficientTable table =
        parse_coefficients(embedded_coefficient_json(), "<embedded>");
    return table;
}

double correction_factor(double ess, ElectrodeConfig config, const CoefficientTable& table) {
    if (ess <= 0.0)
        throw ComputeError("correction_factor", "ess must be positive, got " + fmt(ess));
    auto it = table.box.find(config);
    if (it == table.box.end())
        throw ComputeError("correction_factor",
                           "no box-correction coefficients for electrode config " +
                               to_string(config));
    const BoxCoefficients& b = it->second;
    return b.b1 * ess * ess + b.b2 * ess + b.b3;
}

double arcing_current_600(double i_bf_ka, double gap_mm, ElectrodeConfig config,
                          const CoefficientTable& table) {
    if (i_bf_ka <= 0.0 || gap_mm <= 0.0)
        throw ComputeError("arcing_current_600", "inputs must be positive, got I_bf=" +
                                                     fmt(i_bf_ka) + " kA, G=" + fmt(gap_mm) + " mm");
    const ArcCoefficients& c = arc_coeffs(table, config, "arcing_current_600");
    const double poly = c.k4 * std::pow(i_bf_ka, 6) + c.k5 * std::pow(i_bf_ka, 5) +
                        c.k6 * std::pow(i_bf_ka, 4) + c.k7 * std::pow(i_bf_ka, 3) +
                        c.k8 * std::pow(i_bf_ka, 2) + c.k9 * i_bf_ka + c.k10;
    return std::pow(10.0, c.k1 + c.k2 * std::log10(i_bf_ka) + c.k3 * std::log10(gap_mm)) * poly;
}

double arcing_current_le600(double i_arc_600_ka, double i_bf_ka, double voc_kv) {
    if (i_arc_600_ka <= 0.0 || i_bf_ka <= 0.0)
        throw ComputeError("arcing_current_le600", "currents must be positive, got I_arc_600=" +
                                                       fmt(i_arc_600_ka) + ", I_bf=" + fmt(i_bf_ka));
    if (voc_kv <= 0.0 || voc_kv > voc_max_kv)
        throw ComputeError("arcing_current_le600",
                           "Voc must be in (0, 0.6] kV, got " + fmt(voc_kv));
    const double ratio = 0.6 / voc_kv;
    const double radicand =
        ratio * ratio * (1.0 / (i_arc_600_ka * i_arc_600_ka) -
                         (0.36 - voc_kv * voc_kv) / (0.36 * i_bf_ka * i_bf_ka));
    if (radicand <= 0.0)
        throw ComputeError("arcing_current_le600",
                           "negative radicand for I_arc_600=" + fmt(i_arc_600_ka) + " kA, I_bf=" +
                               fmt(i_bf_ka) + " kA, Voc=" + fmt(voc_kv) +
                               " kV; inputs are outside the model's domain");
    return 1.0 / std::sqrt(radicand);
}

double incident_energy_le600(double i_arc_ka, double i_arc_600_ka, double i_bf_ka, double gap_mm,
                             double d_mm, double t_ms, double cf, ElectrodeConfig config,
                             const CoefficientTable& table) {
    if (gap_mm <= 0.0 || d_mm <= 0.0 || cf <= 0.0)
        throw ComputeError("incident_energy_le600", "G, D and CF must be positive, got G=" +
                                                        fmt(gap_mm) + ", D=" + fmt(d_mm) +
                                                        ", CF=" + fmt(cf));
    if (t_ms < 0.0)
        throw ComputeError("incident_energy_le600", "arc duration must be non-negative, got " +
                                                        fmt(t_ms) + " ms");
    if (t_ms == 0.0) return 0.0;
    const EnergyCoefficients& c = energy_coeffs(table, config, "incident_energy_le600");
    const double exponent = energy_exponent_base(i_arc_ka, i_arc_600_ka, i_bf_ka, gap_mm, cf, c) +
                            c.k12 * std::log10(d_mm);
    return 12.552 / 50.0 * t_ms * std::pow(10.0, exponent);
}

double arc_flash_boundary_le600(double i_arc_ka, double i_arc_600_ka, double i_bf_ka,
                                double gap_mm, double t_ms, double cf, ElectrodeConfig config,
                                const CoefficientTable& table) {
    if (gap_mm <= 0.0 || cf <= 0.0)
        throw ComputeError("arc_flash_boundary_le600",
                           "G and CF must be positive, got G=" + fmt(gap_mm) + ", CF=" + fmt(cf));
    if (t_ms <= 0.0)
        throw ComputeError("arc_flash_boundary_le600",
                           "boundary is undefined for arc duration " + fmt(t_ms) + " ms");
    const EnergyCoefficients& c = energy_coeffs(table, config, "arc_flash_boundary_le600");
    const double numerator =
        energy_exponent_base(i_arc_ka, i_arc_600_ka, i_bf_ka, gap_mm, cf, c) -
        std::log10(20.0 / t_ms);
    return std::pow(10.0, numerator / -c.k12);
}

double cycles_to_ms(double cycles, double frequency_hz) {
    if (frequency_hz <= 0.0)
        throw ComputeError("cycles_to_ms", "frequency must be positive, got " + fmt(frequency_hz));
    if (cycles < 0.0)
        throw ComputeError("cycles_to_ms", "cycle count must be non-negative, got " + fmt(cycles));
    return 1000.0 * cycles / frequency_hz;
}

HazardResult compute_hazard(double i_bf_ka, const ArcFlashParams& params,
                            const CoefficientTable& table) {
    if (!table.complete_for(params.electrode_config))
        throw ComputeError("compute_hazard", "electrode config " +
                                                 to_string(params.electrode_config) +
                                                 " has no complete coefficient set");
    HazardResult result;
    if (params.open_circuit_voltage_kv < sustainability_note_kv)
        result.advisories.push_back(
            {AdvisoryKind::low_voltage,
             "open-circuit voltage " + fmt(params.open_circuit_voltage_kv) +
                 " kV is below the 240 V arc-sustainability note of IEEE 1584-2018; results "
                 "follow the 600 V class equations"});
    if (i_bf_ka < ibf_min_ka || i_bf_ka > ibf_max_ka)
        result.advisories.push_back({AdvisoryKind::out_of_range,
                                     "bolted fault current " + fmt(i_bf_ka) +
                                         " kA is outside the model range 0.5..106 kA"});
    if (params.gap_mm < gap_min_mm || params.gap_mm > gap_max_mm)
        result.advisories.push_back({AdvisoryKind::out_of_range,
                                     "gap " + fmt(params.gap_mm) +
                                         " mm is outside the model range 6.35..76.2 mm"});
    if (params.working_distance_mm < distance_min_mm)
        result.advisories.push_back({AdvisoryKind::out_of_range,
                                     "working distance " + fmt(params.working_distance_mm) +
                                         " mm is below the model minimum 305 mm"});
    if (params.open_circuit_voltage_kv < voc_min_kv)
        result.advisories.push_back({AdvisoryKind::out_of_range,
                                     "open-circuit voltage " + fmt(params.open_circuit_voltage_kv) +
                                         " kV is below the model minimum 0.208 kV"});

    result.cf = correction_factor(params.ess, params.electrode_config, table);
    result.i_arc_600_ka = arcing_current_600(i_bf_ka, params.gap_mm, params.electrode_config, table);
    result.i_arc_ka =
        arcing_current_le600(result.i_arc_600_ka, i_bf_ka, params.open_circuit_voltage_kv);
    result.incident_energy_j_cm2 =
        incident_energy_le600(result.i_arc_ka, result.i_arc_600_ka, i_bf_ka, params.gap_mm,
                              params.working_distance_mm, params.arc_duration_ms, result.cf,
                              params.electrode_config, table);
    result.incident_energy_cal_cm2 = result.incident_energy_j_cm2 / joules_per_calorie;
    result.afb_mm =
        arc_flash_boundary_le600(result.i_arc_ka, result.i_arc_600_ka, i_bf_ka, params.gap_mm,
                                 params.arc_duration_ms, result.cf, params.electrode_config, table);
    return result;
}

}  // namespace arcstudy
