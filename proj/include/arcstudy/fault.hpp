#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "arcstudy/model.hpp"

namespace arcstudy {

enum class Summation { magnitude, phasor };

/** @brief One source's share of a bolted fault, at the fault-bus voltage level. */
struct SourceContribution {
    std::string source_id;
    double current_a = 0.0;
    std::complex<double> path_impedance_ohm;  // referred to fault-bus voltage
    bool limited = false;                     // capped at the effective fault current
};

/** @brief Bolted three-phase fault at one bus under one topology. */
struct FaultStudyResult {
    std::string bus_id;
    std::string topology_name;
    double fault_voltage_v = 0.0;
    std::vector<SourceContribution> contributions;  // sorted by descending current
    double total_current_a = 0.0;
};

/** @brief Series impedance of the unique path from one active source to the fault bus,
 *         referred to the fault-bus voltage. Thevenin paths include the source's
 *         internal impedance; current-limited paths are the network part only. */
struct ReducedPath {
    std::string source_id;
    std::complex<double> impedance_ohm;
};

/** @brief Walk the radial network from each active source to the fault bus, reflecting
 *         every element across intervening voltage levels. Rejects unreachable fault
 *         buses and non-radial (meshed) paths. */
std::vector<ReducedPath> build_reduced_network(const NetworkModel& model,
                                               const Topology& topology,
                                               const Bus& fault_bus);

/** @brief Superpose per-source contributions at the fault bus. Thevenin sources deliver
 *         V / (sqrt(3) * |Z_path|); current-limited sources deliver at most their
 *         effective fault current reflected to the fault voltage. */
FaultStudyResult bolted_fault_current(const NetworkModel& model, const Topology& topology,
                                      const Bus& fault_bus,
                                      Summation rule = Summation::magnitude);

/** @brief One result per (analysis bus x topology), in declaration order. */
std::vector<FaultStudyResult> run_study_matrix(const NetworkModel& model,
                                               Summation rule = Summation::magnitude);

/** @brief Highest-total result per bus; ties keep the earlier topology. */
std::map<std::string, FaultStudyResult> worst_case_per_bus(
    const std::vector<FaultStudyResult>& results);

}  // namespace arcstudy
