#include "spdc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spdc/supermodes.hpp"

namespace spdc {

SpectrumGrid SpectrumGrid::uniform(double lo, double hi, int n_points) {
    if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
    if (!(hi > lo)) throw std::invalid_argument("grid range must be nonempty");
    SpectrumGrid g;
    g.points.resize(static_cast<std::size_t>(n_points));
    const double h = (hi - lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) g.points[static_cast<std::size_t>(i)] = lo + i * h;
    g.points.back() = hi;
    return g;
}

SpectrumGrid SpectrumGrid::default_for(double mean_coupling) {
    return uniform(-6.0 * mean_coupling, 6.0 * mean_coupling, 481);
}

void SpectrumGrid::validate() const {
    if (points.size() < 3) throw std::invalid_argument("grid needs at least 3 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("grid points must be strictly ascending");
}

const char* to_string(SolverKind s) {
    return s == SolverKind::ClosedForm ? "closed" : "ode";
}

SolverKind solver_from_string(const std::string& name) {
    if (name == "closed") return SolverKind::ClosedForm;
    if (name == "ode") return SolverKind::Ode;
    throw std::invalid_argument("unknown solver '" + name + "' (expected closed|ode)");
}

double trapezoid_area(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
    double area = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return area;
}

namespace {

// Vertex of the parabola through (x_{i-1}, y_{i-1}), (x_i, y_i), (x_{i+1}, y_{i+1});
// spacing may be nonuniform. Falls back to x_i when the points are collinear.
double parabolic_vertex(const std::vector<double>& x, const std::vector<double>& y,
                        std::size_t i) {
    const double u = x[i - 1] - x[i];
    const double w = x[i + 1] - x[i];
    const double d1 = y[i - 1] - y[i];
    const double d2 = y[i + 1] - y[i];
    const double denom = 2.0 * (d1 * w - d2 * u);
    if (denom == 0.0) return x[i];
    double v = x[i] - (d2 * u * u - d1 * w * w) / denom;
    return std::clamp(v, x[i - 1], x[i + 1]);
}

} // namespace

Spectrum make_spectrum(const SpectrumGrid& grid, std::vector<double> raw_intensity) {
    grid.validate();
    if (raw_intensity.size() != grid.points.size())
        throw std::invalid_argument("intensity/grid size mismatch");

    Spectrum s;
    s.grid = grid;
    s.raw_scale = trapezoid_area(grid.points, raw_intensity);
    if (!(s.raw_scale > 0.0))
        throw std::invalid_argument("cannot normalize an all-zero spectrum");
    s.intensity = std::move(raw_intensity);
    for (double& v : s.intensity) v /= s.raw_scale;

    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(s.intensity.begin(), s.intensity.end()) - s.intensity.begin());
    if (imax == 0 || imax + 1 == s.intensity.size()) {
        s.peak_on_boundary = true;
        s.peak_detune = grid.points[imax];
    } else {
        s.peak_detune = parabolic_vertex(grid.points, s.intensity, imax);
    }
    return s;
}

Spectrum resonance_spectrum(const Lattice& lat, const SpectrumGrid& grid, SolverKind solver,
                            const Rk4Options& opt) {
    grid.validate();
    const int c = lat.center();
    std::vector<double> raw(grid.points.size());

    if (solver == SolverKind::ClosedForm) {
        const ClosedFormSolver cf(lat);
        for (std::size_t i = 0; i < grid.points.size(); ++i)
            raw[i] = std::norm(cf.central_amplitude(grid.points[i]));
    } else {
        for (std::size_t i = 0; i < grid.points.size(); ++i) {
            const BiphotonState st = integrate_biphoton(lat, grid.points[i], opt);
            raw[i] = std::norm(st.psi(c, c));
        }
    }
    return make_spectrum(grid, std::move(raw));
}

void WavelengthMap::validate() const {
    if (dispersion_ps_per_mm == 0.0 || !std::isfinite(dispersion_ps_per_mm))
        throw std::invalid_argument("dispersion slope must be nonzero");
    if (!(lambda0_nm > 0.0)) throw std::invalid_argument("lambda0 must be > 0");
}

double detune_to_wavelength_nm(double dbeta0, const WavelengthMap& map) {
    // dw = dbeta0 / a; dlambda = -lambda0^2 dw / (2 pi c).
    constexpr double kSpeedOfLight_m_per_s = 299792458.0;
    const double domega_per_s = dbeta0 / (map.dispersion_ps_per_mm * 1e-12); // [rad/s]
    const double lambda0_m = map.lambda0_nm * 1e-9;
    const double dlambda_m =
        -lambda0_m * lambda0_m * domega_per_s / (2.0 * M_PI * kSpeedOfLight_m_per_s);
    return dlambda_m * 1e9;
}

namespace {

void require_same_grid(const SpectrumGrid& a, const SpectrumGrid& b) {
    if (a.points != b.points) throw std::invalid_argument("spectra use different grids");
}

} // namespace

double peak_shift_nm(const Spectrum& s, const Spectrum& reference, const WavelengthMap& map) {
    map.validate();
    require_same_grid(s.grid, reference.grid);
    return detune_to_wavelength_nm(s.peak_detune - reference.peak_detune, map);
}

double spectral_overlap(const Spectrum& s1, const Spectrum& s2) {
    require_same_grid(s1.grid, s2.grid);
    std::vector<double> g(s1.intensity.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::sqrt(s1.intensity[i] * s2.intensity[i]);
    return trapezoid_area(s1.grid.points, g);
}

} // namespace spdc
