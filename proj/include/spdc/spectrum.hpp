#ifndef SPDC_SPECTRUM_HPP
#define SPDC_SPECTRUM_HPP

#include <string>
#include <vector>

#include "spdc/dynamics.hpp"
#include "spdc/lattice.hpp"

namespace spdc {

// Sampling grid for the single-waveguide phase mismatch dbeta0 [1/mm].
struct SpectrumGrid {
    std::vector<double> points; // strictly ascending

    static SpectrumGrid uniform(double lo, double hi, int n_points);
    // [-6C, +6C] with 481 points: covers every supermode resonance
    // nu_q - mu_s - mu_i with margin at the disorder levels of interest.
    static SpectrumGrid default_for(double mean_coupling);

    int size() const { return static_cast<int>(points.size()); }
    void validate() const; // throws std::invalid_argument
};

enum class SolverKind { ClosedForm, Ode };

const char* to_string(SolverKind s);
SolverKind solver_from_string(const std::string& name);

// SPDC resonance spectrum I(dbeta0) = |Psi_cc(L)|^2, normalized to unit
// trapezoidal area. peak_detune refines the argmax by fitting a parabola
// through the maximum sample and its two neighbours.
struct Spectrum {
    SpectrumGrid grid;
    std::vector<double> intensity;
    double peak_detune = 0.0;
    double raw_scale = 0.0;        // area before normalization
    bool peak_on_boundary = false; // maximum sits on the first/last grid point
};

// Normalize a raw intensity sample set over `grid` into a Spectrum.
Spectrum make_spectrum(const SpectrumGrid& grid, std::vector<double> raw_intensity);

Spectrum resonance_spectrum(const Lattice& lat, const SpectrumGrid& grid, SolverKind solver,
                            const Rk4Options& opt = {});

// Linear detune-to-frequency dispersion dbeta0 = a (w_p - w_p0) around the
// reference pump wavelength lambda0.
struct WavelengthMap {
    double dispersion_ps_per_mm = 3.0; // a [ps/mm]
    double lambda0_nm = 775.0;

    void validate() const;
};

// Wavelength offset from lambda0 for a given detune; negative slope since
// lambda decreases with frequency.
double detune_to_wavelength_nm(double dbeta0, const WavelengthMap& map);

// Peak shift of `s` against `reference`, in nm. Grids must be identical.
double peak_shift_nm(const Spectrum& s, const Spectrum& reference, const WavelengthMap& map);

// Bhattacharyya coefficient of the two unit-area spectra (trapezoidal rule):
// 1 iff identical, 0 for disjoint supports. Grids must be identical.
double spectral_overlap(const Spectrum& s1, const Spectrum& s2);

double trapezoid_area(const std::vector<double>& x, const std::vector<double>& y);

} // namespace spdc

#endif
