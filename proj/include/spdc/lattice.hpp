#ifndef SPDC_LATTICE_HPP
#define SPDC_LATTICE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spdc {

enum class Geometry { Homogeneous, TrivialMode, SSH };

const char* to_string(Geometry g);
Geometry geometry_from_string(const std::string& name); // throws std::invalid_argument

// Geometry parameters of a waveguide array. Couplings are evanescent tunnel
// rates in mm^-1; lengths in mm.
struct LatticeSpec {
    Geometry geometry = Geometry::Homogeneous;
    int n_guides = 13;          // N, odd so a central guide exists
    double mean_coupling = 2.5; // C [1/mm]
    double dimerization = 0.0;  // K in [0,1), SSH only
    double defect_detune = 0.0; // delta [1/mm], TrivialMode only
    double pump_ratio = 0.2;    // alpha = C_p / C
    double length = 2.0;        // L [mm]
    double spdc_gain = 1.0;     // gamma [1/mm], amplitude scale of the source

    int center() const { return (n_guides - 1) / 2; }
    void validate() const; // throws std::invalid_argument
};

// A concrete realization: nearest-neighbour couplings plus per-guide
// detunings (diagonal of both coupling Hamiltonians). Pump couplings are
// alpha * SPDC couplings exactly, also after disorder.
struct Lattice {
    std::vector<double> couplings_spdc; // N-1 entries [1/mm]
    std::vector<double> couplings_pump; // N-1 entries, = pump_ratio * couplings_spdc
    std::vector<double> detunings;      // N entries [1/mm]
    double length = 0.0;                // L [mm]
    double spdc_gain = 0.0;             // gamma [1/mm]
    double pump_ratio = 0.0;            // alpha
    double mean_coupling = 0.0;         // nominal C, used for scales and grid defaults

    int size() const { return static_cast<int>(detunings.size()); }
    int center() const { return (size() - 1) / 2; }
};

// Multiplicative coupling disorder of relative strength Delta: each SPDC
// coupling is scaled by (1 + u), u uniform on [-Delta, +Delta], drawn from the
// substream keyed by (master_seed, realization_index). diagonal_strength is an
// experimental on-site disorder knob (off by default): detunings receive
// additive shifts uniform on [-d, +d] * mean_coupling, drawn after the
// coupling draws so enabling it never perturbs them.
struct DisorderSpec {
    double strength = 0.0; // Delta in [0,1)
    std::uint64_t master_seed = 0;
    std::uint64_t realization_index = 0;
    double diagonal_strength = 0.0;
};

// Construct the nominal (disorder-free) lattice. If `warning` is non-null it
// receives a message for degenerate parameter choices (SSH with K = 0).
Lattice build_lattice(const LatticeSpec& spec, std::string* warning = nullptr);

Lattice apply_disorder(const Lattice& nominal, const DisorderSpec& dis);

} // namespace spdc

#endif
