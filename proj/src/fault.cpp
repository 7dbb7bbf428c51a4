#include "arcstudy/fault.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "arcstudy/errors.hpp"

namespace arcstudy {

namespace {

constexpr double sqrt3 = 1.7320508075688772;

// Network element on the walk, with the voltage level its impedance is quoted at.
struct Edge {
    const Bus* other;
    std::complex<double> z;
    double quote_voltage_v;
};

using Adjacency = std::unordered_map<const Bus*, std::vector<Edge>>;

Adjacency build_adjacency(const NetworkModel& model) {
    Adjacency adj;
    auto bus = [&](const std::string& id, const char* what) {
        const Bus* b = model.find_bus(id);
        if (!b)
            throw ComputeError("build_reduced_network",
                               std::string(what) + " references unknown bus '" + id + "'");
        return b;
    };
    for (const LineSpec& line : model.lines) {
        const Bus* from = bus(line.from_bus_id, "line");
        const Bus* to = bus(line.to_bus_id, "line");
        const std::complex<double> z{line.resistance_ohm, line.reactance_ohm};
        adj[from].push_back({to, z, from->nominal_voltage_v});
        adj[to].push_back({from, z, from->nominal_voltage_v});
    }
    for (const TransformerSpec& t : model.transformers) {
        const Bus* primary = bus(t.primary_bus_id, "transformer");
        const Bus* secondary = bus(t.secondary_bus_id, "transformer");
        const std::complex<double> z = transformer_impedance(t, TransformerSide::secondary);
        adj[primary].push_back({secondary, z, t.secondary_voltage_v});
        adj[secondary].push_back({primary, z, t.secondary_voltage_v});
    }
    return adj;
}

// Series impedance start -> target referred to the target bus voltage. Every element is
// reflected by (V_target / V_quote)^2, which composes correctly across the voltage
// levels of a radial network whose transformer ratios match the bus nominals.
std::complex<double> walk_path(const Adjacency& adj, const Bus* start, const Bus* target) {
    struct Frame {
        const Bus* node;
        const Bus* parent;
        std::complex<double> acc;
    };
    const double vt = target->nominal_voltage_v;
    std::vector<Frame> stack{{start, nullptr, {0.0, 0.0}}};
    std::unordered_set<const Bus*> visited{start};
    std::complex<double> found{};
    bool reached = false;
    while (!stack.empty()) {
        Frame frame = stack.back();
        stack.pop_back();
        if (frame.node == target) {
            if (reached)
                throw ComputeError("build_reduced_network",
                                   "multiple paths from bus '" + start->id + "' to bus '" +
                                       target->id + "'; the network is not radial");
            reached = true;
            found = frame.acc;
            continue;
        }
        auto it = adj.find(frame.node);
        if (it == adj.end()) continue;
        for (const Edge& edge : it->second) {
            if (edge.other == frame.parent) continue;
            if (!visited.insert(edge.other).second)
                throw ComputeError("build_reduced_network",
                                   "cycle through bus '" + edge.other->id +
                                       "'; the network is not radial");
            const double ratio = vt / edge.quote_voltage_v;
            stack.push_back({edge.other, frame.node, frame.acc + edge.z * (ratio * ratio)});
        }
    }
    if (!reached)
        throw ComputeError("build_reduced_network", "bus '" + target->id +
                                                        "' is unreachable from bus '" +
                                                        start->id + "'");
    return found;
}

}  // namespace

std::vector<ReducedPath> build_reduced_network(const NetworkModel& model,
                                               const Topology& topology, const Bus& fault_bus) {
    const Adjacency adj = build_adjacency(model);
    std::vector<ReducedPath> paths;
    paths.reserve(topology.active_source_ids.size());
    for (const std::string& source_id : topology.active_source_ids) {
        const SourceSpec* source = model.find_source(source_id);
        if (!source)
            throw ComputeError("build_reduced_network", "topology '" + topology.name +
                                                            "' references unknown source '" +
                                                            source_id + "'");
        const Bus* source_bus = model.find_bus(source->bus_id);
        if (!source_bus)
            throw ComputeError("build_reduced_network", "source '" + source_id +
                                                            "' references unknown bus '" +
                                                            source->bus_id + "'");
        std::complex<double> z = walk_path(adj, source_bus, &fault_bus);
        if (source->kind == SourceKind::thevenin_voltage)
            z += reflect_impedance(source_thevenin_impedance(*source), source->rated_voltage_v,
                                   fault_bus.nominal_voltage_v);
        paths.push_back({source_id, z});
    }
    return paths;
}

FaultStudyResult bolted_fault_current(const NetworkModel& model, const Topology& topology,
                                      const Bus& fault_bus, Summation rule) {
    const std::vector<ReducedPath> paths = build_reduced_network(model, topology, fault_bus);
    const double vf = fault_bus.nominal_voltage_v;

    FaultStudyResult result;
    result.bus_id = fault_bus.id;
    result.topology_name = topology.name;
    result.fault_voltage_v = vf;

    std::complex<double> phasor_total{};
    double magnitude_total = 0.0;
    for (const ReducedPath& path : paths) {
        const SourceSpec& source = *model.find_source(path.source_id);
        SourceContribution contribution;
        contribution.source_id = path.source_id;
        contribution.path_impedance_ohm = path.impedance_ohm;

        const double zmag = std::abs(path.impedance_ohm);
        std::complex<double> phasor;
        if (source.kind == SourceKind::thevenin_voltage) {
            contribution.current_a = vf / (sqrt3 * zmag);
            phasor = vf / sqrt3 / path.impedance_ohm;
        } else {
            const double cap = source.effective_fault_current_a * source.rated_voltage_v / vf;
            const double ideal =
                zmag > 0.0 ? vf / (sqrt3 * zmag) : std::numeric_limits<double>::infinity();
            if (cap <= ideal) {
                contribution.current_a = cap;
                contribution.limited = true;
                // Injection taken in phase with the fault-bus voltage reference.
                phasor = {cap, 0.0};
            } else {
                contribution.current_a = ideal;
                phasor = vf / sqrt3 / path.impedance_ohm;
            }
        }
        magnitude_total += contribution.current_a;
        phasor_total += phasor;
        result.contributions.push_back(std::move(contribution));
    }
    std::stable_sort(result.contributions.begin(), result.contributions.end(),
                     [](const SourceContribution& a, const SourceContribution& b) {
                         return a.current_a > b.current_a;
                     });
    result.total_current_a =
        rule == Summation::magnitude ? magnitude_total : std::abs(phasor_total);
    return result;
}

std::vector<FaultStudyResult> run_study_matrix(const NetworkModel& model, Summation rule) {
    std::vector<FaultStudyResult> results;
    std::vector<std::string> failures;
    for (const Bus* bus : model.analysis_buses()) {
        for (const Topology& topology : model.topologies) {
            try {
                results.push_back(bolted_fault_current(model, topology, *bus, rule));
            } catch (const Error& e) {
                failures.push_back("(" + bus->id + ", " + topology.name + "): " + e.what());
            }
        }
    }
    if (!failures.empty()) {
        std::string message = std::to_string(failures.size()) + " pair(s) failed:";
        for (const std::string& f : failures) message += "\n  " + f;
        throw ComputeError("run_study_matrix", message);
    }
    return results;
}

std::map<std::string, FaultStudyResult> worst_case_per_bus(
    const std::vector<FaultStudyResult>& results) {
    if (results.empty())
        throw ComputeError("worst_case_per_bus", "no fault study results to reduce");
    std::map<std::string, FaultStudyResult> worst;
    for (const FaultStudyResult& r : results) {
        auto [it, inserted] = worst.try_emplace(r.bus_id, r);
        if (!inserted && r.total_current_a > it->second.total_current_a) it->second = r;
    }
    return worst;
}

}  // namespace arcstudy
