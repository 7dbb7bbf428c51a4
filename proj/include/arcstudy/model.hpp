#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace arcstudy {

/** @brief Node of the one-line diagram. Non-analysis buses provide connectivity only. */
struct Bus {
    std::string id;
    double nominal_voltage_v = 0.0;  // line-to-line RMS
    std::string description;
    bool analysis = true;            // study subject (fault matrix, hazard, label)
    std::string tag;                 // display name for reports; defaults to id
};

enum class SourceKind { thevenin_voltage, current_limited };

/** @brief Fault-current source. Thevenin sources are slack candidates; current-limited
 *         sources are inverter-based injections capped at their effective fault current. */
struct SourceSpec {
    std::string id;
    std::string bus_id;
    SourceKind kind = SourceKind::thevenin_voltage;
    double rated_voltage_v = 0.0;        // line-to-line RMS
    double max_current_a = 0.0;          // datasheet maximum
    double safety_factor = 1.0;
    double effective_fault_current_a = 0.0;  // max_current_a * safety_factor, exact product
    std::optional<double> x_over_r;      // thevenin R/X split; absent means pure reactance
};

/** @brief Two-winding transformer described by nameplate values. */
struct TransformerSpec {
    std::string id;
    std::string primary_bus_id;
    std::string secondary_bus_id;
    double rated_power_va = 0.0;
    double primary_voltage_v = 0.0;
    double secondary_voltage_v = 0.0;
    double impedance_pct = 0.0;  // nameplate IZ
    double x_over_r = 0.0;
};

/** @brief Cable run between two buses of the same voltage level. Resistance dominated;
 *         the reactance field exists for completeness and defaults to zero. */
struct LineSpec {
    std::string id;
    std::string from_bus_id;
    std::string to_bus_id;
    double length_m = 0.0;
    std::string cable_type;
    double resistance_ohm = 0.0;  // total, per phase
    double reactance_ohm = 0.0;
};

/** @brief Operating configuration selecting the active sources. Exactly one active
 *         thevenin source acts as the slack. */
struct Topology {
    std::string name;
    std::vector<std::string> active_source_ids;
    std::string notes;
};

/** @brief Immutable, validated one-line diagram. Safe for concurrent read. */
struct NetworkModel {
    std::vector<Bus> buses;
    std::vector<SourceSpec> sources;
    std::vector<TransformerSpec> transformers;
    std::vector<LineSpec> lines;
    std::vector<Topology> topologies;
    double system_frequency_hz = 60.0;

    const Bus* find_bus(const std::string& id) const;
    const SourceSpec* find_source(const std::string& id) const;
    const Topology* find_topology(const std::string& name) const;
    std::vector<const Bus*> analysis_buses() const;
};

enum class TransformerSide { primary, secondary };

/** @brief Nameplate-to-ohm conversion on the chosen winding:
 *         Zbase = V_side^2 / S, |Z| = (IZ/100) * Zbase, R = |Z| / sqrt(1 + (X/R)^2). */
std::complex<double> transformer_impedance(const TransformerSpec& t, TransformerSide side);

/** @brief Refer an impedance across an ideal voltage ratio: z * (to_voltage / from_voltage)^2. */
std::complex<double> reflect_impedance(std::complex<double> z, double from_voltage_v, double to_voltage_v);

/** @brief Internal impedance of a thevenin source sized to deliver its effective fault
 *         current at its terminals: |Z| = V / (sqrt(3) * I_eff). The R/X split follows
 *         x_over_r when set, otherwise the impedance is purely reactive. */
std::complex<double> source_thevenin_impedance(const SourceSpec& s);

}  // namespace arcstudy
