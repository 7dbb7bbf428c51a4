#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arcstudy {

/** @brief IEEE 1584-2018 electrode configuration classes. */
enum class ElectrodeConfig { VCB, VCBB, VOA, HCB, HOA };

std::string to_string(ElectrodeConfig config);
ElectrodeConfig electrode_config_from_string(const std::string& name);

/** @brief Eq. (2) coefficient record (IEEE 1584-2018 Table 1 row). */
struct ArcCoefficients {
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k6 = 0, k7 = 0, k8 = 0, k9 = 0, k10 = 0;
};

/** @brief Eq. (4)/(5) coefficient record (IEEE 1584-2018 Table 3 row, 600 V class). */
struct EnergyCoefficients {
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k6 = 0, k7 = 0, k8 = 0, k9 = 0, k10 = 0;
    double k11 = 0, k12 = 0, k13 = 0;
};

/** @brief Eq. (1) enclosure-correction coefficient record (IEEE 1584-2018 Table 7 row). */
struct BoxCoefficients {
    double b1 = 0, b2 = 0, b3 = 0;
};

/** @brief Versioned coefficient data, one record per (electrode config, equation).
 *         Loaded from the checksummed data file; computation refuses configs
 *         without a complete record set. */
struct CoefficientTable {
    std::string version;
    std::string checksum_hex;
    std::map<ElectrodeConfig, ArcCoefficients> arcing;
    std::map<ElectrodeConfig, EnergyCoefficients> energy;
    std::map<ElectrodeConfig, BoxCoefficients> box;

    bool complete_for(ElectrodeConfig config) const;
};

/** @brief Canonical one-line-per-record serialization whose CRC32 is the table checksum. */
std::string canonical_coefficient_text(const CoefficientTable& table);

/** @brief Parse and verify a coefficient data file. Throws ModelError when the embedded
 *         checksum does not match the canonical serialization of the parsed values. */
CoefficientTable load_coefficients(const std::filesystem::path& file);

/** @brief Built-in copy of data/arcflash_coefficients.json, checksum-verified on access. */
const CoefficientTable& embedded_coefficients();

/** @brief Study parameters for the <= 600 V equation chain. */
struct ArcFlashParams {
    double open_circuit_voltage_kv = 0.0;  // Voc, at most 0.6
    double gap_mm = 0.0;                   // G
    double working_distance_mm = 0.0;      // D
    double arc_duration_ms = 0.0;          // T
    double ess = 0.0;                      // equivalent enclosure size, standard's equation input
    ElectrodeConfig electrode_config = ElectrodeConfig::VCB;
};

enum class AdvisoryKind { low_voltage, out_of_range };

/** @brief Non-fatal condition attached to a result; labels and reports must surface these. */
struct Advisory {
    AdvisoryKind kind = AdvisoryKind::out_of_range;
    std::string message;
};

/** @brief Full equation-chain output. Energies are kept in both unit views,
 *         cal = J / 4.184 exactly. */
struct HazardResult {
    double i_arc_600_ka = 0.0;
    double i_arc_ka = 0.0;
    double incident_energy_j_cm2 = 0.0;
    double incident_energy_cal_cm2 = 0.0;
    double afb_mm = 0.0;
    double cf = 0.0;
    std::optional<double> i_arc_min_ka;  // reduced arcing-current variation, not computed here
    std::vector<Advisory> advisories;
};

inline constexpr double joules_per_calorie = 4.184;

/** @brief Eq. (1): CF = b1 * ess^2 + b2 * ess + b3. */
double correction_factor(double ess, ElectrodeConfig config, const CoefficientTable& table);

/** @brief Eq. (2): arcing current at 600 V open circuit, currents in kA, gap in mm. */
double arcing_current_600(double i_bf_ka, double gap_mm, ElectrodeConfig config,
                          const CoefficientTable& table);

/** @brief Eq. (3): interpolate the 600 V arcing current down to Voc (kV).
 *         Collapses to i_arc_600 exactly at Voc = 0.6. */
double arcing_current_le600(double i_arc_600_ka, double i_bf_ka, double voc_kv);

/** @brief Eq. (4): incident energy in J/cm^2 at working distance d_mm over t_ms. */
double incident_energy_le600(double i_arc_ka, double i_arc_600_ka, double i_bf_ka,
                             double gap_mm, double d_mm, double t_ms, double cf,
                             ElectrodeConfig config, const CoefficientTable& table);

/** @brief Eq. (5): distance in mm at which incident energy equals 5 J/cm^2. */
double arc_flash_boundary_le600(double i_arc_ka, double i_arc_600_ka, double i_bf_ka,
                                double gap_mm, double t_ms, double cf,
                                ElectrodeConfig config, const CoefficientTable& table);

/** @brief Arc duration conversion: 1000 * cycles / frequency. */
double cycles_to_ms(double cycles, double frequency_hz);

/** @brief Run the full chain CF -> Eq. (2) -> Eq. (3) -> Eq. (4) -> Eq. (5) and collect
 *         advisories (low voltage below 240 V, inputs outside the model's validity range).
 *         Stage failures rethrow as ComputeError named after the failing stage. */
HazardResult compute_hazard(double i_bf_ka, const ArcFlashParams& params,
                            const CoefficientTable& table);

}  // namespace arcstudy
