#include "arcstudy/model.hpp"

#include <cmath>

#include "arcstudy/errors.hpp"

namespace arcstudy {

const Bus* NetworkModel::find_bus(const std::string& id) const {
    for (const Bus& b : buses)
        if (b.id == id) return &b;
    return nullptr;
}

const SourceSpec* NetworkModel::find_source(const std::string& id) const {
    for (const SourceSpec& s : sources)
        if (s.id == id) return &s;
    return nullptr;
}

const Topology* NetworkModel::find_topology(const std::string& name) const {
    for (const Topology& t : topologies)
        if (t.name == name) return &t;
    return nullptr;
}

std::vector<const Bus*> NetworkModel::analysis_buses() const {
    std::vector<const Bus*> out;
    for (const Bus& b : buses)
        if (b.analysis) out.push_back(&b);
    return out;
}

std::complex<double> transformer_impedance(const TransformerSpec& t, TransformerSide side) {
    const double v = side == TransformerSide::primary ? t.primary_voltage_v : t.secondary_voltage_v;
    const double zbase = v * v / t.rated_power_va;
    const double zmag = t.impedance_pct / 100.0 * zbase;
    const double r = zmag / std::sqrt(1.0 + t.x_over_r * t.x_over_r);
    return {r, r * t.x_over_r};
}

std::complex<double> reflect_impedance(std::complex<double> z, double from_voltage_v,
                                       double to_voltage_v) {
    if (from_voltage_v <= 0.0 || to_voltage_v <= 0.0)
        throw ComputeError("reflect_impedance",
                           "voltages must be positive, got " + std::to_string(from_voltage_v) +
                               " and " + std::to_string(to_voltage_v));
    const double ratio = to_voltage_v / from_voltage_v;
    return z * (ratio * ratio);
}

std::complex<double> source_thevenin_impedance(const SourceSpec& s) {
    if (s.kind != SourceKind::thevenin_voltage)
        throw ComputeError("source_thevenin_impedance",
                           "source '" + s.id + "' is current limited and has no thevenin impedance");
    const double zmag = s.rated_voltage_v / (std::sqrt(3.0) * s.effective_fault_current_a);
    if (!s.x_over_r.has_value())
        return {0.0, zmag};
    const double xr = *s.x_over_r;
    const double r = zmag / std::sqrt(1.0 + xr * xr);
    return {r, r * xr};
}

}  // namespace arcstudy
