#include "spdc/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include "spdc/rng.hpp"

namespace spdc {

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::Homogeneous: return "homogeneous";
        case Geometry::TrivialMode: return "trivial";
        case Geometry::SSH: return "ssh";
    }
    return "?";
}

Geometry geometry_from_string(const std::string& name) {
    if (name == "homogeneous") return Geometry::Homogeneous;
    if (name == "trivial") return Geometry::TrivialMode;
    if (name == "ssh") return Geometry::SSH;
    throw std::invalid_argument("unknown geometry '" + name +
                                "' (expected homogeneous|trivial|ssh)");
}

void LatticeSpec::validate() const {
    if (n_guides < 1 || n_guides % 2 == 0)
        throw std::invalid_argument("n_guides must be a positive odd integer");
    if (!(mean_coupling > 0.0) || !std::isfinite(mean_coupling))
        throw std::invalid_argument("mean_coupling must be > 0");
    if (dimerization < 0.0 || dimerization >= 1.0)
        throw std::invalid_argument("dimerization must lie in [0, 1)");
    if (!std::isfinite(defect_detune))
        throw std::invalid_argument("defect_detune must be finite");
    if (!(pump_ratio > 0.0) || !std::isfinite(pump_ratio))
        throw std::invalid_argument("pump_ratio must be > 0");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("length must be > 0");
    if (!(spdc_gain > 0.0) || !std::isfinite(spdc_gain))
        throw std::invalid_argument("spdc_gain must be > 0");
}

namespace {

// SSH coupling sequence with the dimerization defect at the center: both
// couplings touching the central guide are weak C(1-K), then strong/weak
// alternate outward, mirror-symmetric about the center.
std::vector<double> ssh_couplings(int n, double c, double k) {
    const int center = (n - 1) / 2;
    std::vector<double> out(static_cast<std::size_t>(n - 1));
    for (int b = 0; b < n - 1; ++b) {
        const int dist = b < center ? center - b : b - center + 1;
        const bool weak = (dist % 2) == 1;
        out[static_cast<std::size_t>(b)] = weak ? c * (1.0 - k) : c * (1.0 + k);
    }
    return out;
}

} // namespace

Lattice build_lattice(const LatticeSpec& spec, std::string* warning) {
    spec.validate();
    const int n = spec.n_guides;

    Lattice lat;
    lat.length = spec.length;
    lat.spdc_gain = spec.spdc_gain;
    lat.pump_ratio = spec.pump_ratio;
    lat.mean_coupling = spec.mean_coupling;
    lat.detunings.assign(static_cast<std::size_t>(n), 0.0);

    switch (spec.geometry) {
        case Geometry::Homogeneous:
            lat.couplings_spdc.assign(static_cast<std::size_t>(n - 1), spec.mean_coupling);
            break;
        case Geometry::TrivialMode:
            lat.couplings_spdc.assign(static_cast<std::size_t>(n - 1), spec.mean_coupling);
            lat.detunings[static_cast<std::size_t>(spec.center())] = spec.defect_detune;
            break;
        case Geometry::SSH:
            if (spec.dimerization == 0.0 && warning)
                *warning = "ssh geometry with dimerization = 0 degenerates to a homogeneous array";
            lat.couplings_spdc = ssh_couplings(n, spec.mean_coupling, spec.dimerization);
            break;
    }

    lat.couplings_pump.resize(lat.couplings_spdc.size());
    for (std::size_t i = 0; i < lat.couplings_spdc.size(); ++i)
        lat.couplings_pump[i] = spec.pump_ratio * lat.couplings_spdc[i];
    return lat;
}

Lattice apply_disorder(const Lattice& nominal, const DisorderSpec& dis) {
    if (dis.strength < 0.0 || dis.strength >= 1.0)
        throw std::invalid_argument("disorder strength must lie in [0, 1)");
    if (dis.diagonal_strength < 0.0)
        throw std::invalid_argument("diagonal disorder strength must be >= 0");

    Lattice lat = nominal;
    SplitMix64 stream(substream_seed(dis.master_seed, dis.realization_index));

    // Coupling draws first, ascending bond index.
    for (std::size_t k = 0; k < lat.couplings_spdc.size(); ++k) {
        const double u = stream.next_symmetric(dis.strength);
        lat.couplings_spdc[k] = nominal.couplings_spdc[k] * (1.0 + u);
        lat.couplings_pump[k] = lat.pump_ratio * lat.couplings_spdc[k];
    }

    // Optional on-site disorder, drawn after so the coupling stream prefix is
    // unchanged when the knob is off.
    if (dis.diagonal_strength > 0.0) {
        for (std::size_t s = 0; s < lat.detunings.size(); ++s)
            lat.detunings[s] += lat.mean_coupling * stream.next_symmetric(dis.diagonal_strength);
    }
    return lat;
}

} // namespace spdc
