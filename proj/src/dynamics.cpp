#include "spdc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spdc {

namespace {

using cplx = std::complex<double>;

// Gershgorin bound on the spectral radius of a symmetric tridiagonal matrix.
double gershgorin_bound(const std::vector<double>& c, const std::vector<double>& det) {
    const int n = static_cast<int>(det.size());
    double g = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::abs(det[i]);
        if (i > 0) row += std::abs(c[static_cast<std::size_t>(i - 1)]);
        if (i + 1 < n) row += std::abs(c[static_cast<std::size_t>(i)]);
        g = std::max(g, row);
    }
    return g;
}

inline cplx times_i(cplx t) { return {-t.imag(), t.real()}; }

// dA/dz = i H_p A with H_p tridiagonal (off-diagonals cp, diagonal det).
struct PumpSystem {
    int n;
    const double* cp;
    const double* det;

    void operator()(double /*z*/, const cplx* a, cplx* da) const {
        for (int i = 0; i < n; ++i) {
            cplx t = det[i] * a[i];
            if (i > 0) t += cp[i - 1] * a[i - 1];
            if (i + 1 < n) t += cp[i] * a[i + 1];
            da[i] = times_i(t);
        }
    }
};

// Joint state [A | Psi(column-major)]:
//   dA/dz   = i H_p A
//   dPsi/dz = i (H_s Psi + Psi H_s) + gain * diag(A_n e^{-i dbeta0 z})
struct JointSystem {
    int n;
    const double* cs;
    const double* cp;
    const double* det;
    double gain;
    double dbeta0;

    void operator()(double z, const cplx* y, cplx* dy) const {
        PumpSystem{n, cp, det}(z, y, dy);

        const cplx src = gain * std::exp(cplx(0.0, -dbeta0 * z));
        const cplx* psi = y + n;
        cplx* dpsi = dy + n;
        for (int m = 0; m < n; ++m) {
            const cplx* col = psi + static_cast<std::ptrdiff_t>(m) * n;
            cplx* dcol = dpsi + static_cast<std::ptrdiff_t>(m) * n;
            const double cl = m > 0 ? cs[m - 1] : 0.0;
            const double cr = m + 1 < n ? cs[m] : 0.0;
            const double dm = det[m];
            for (int i = 0; i < n; ++i) {
                cplx t = (det[i] + dm) * col[i];
                if (i > 0) t += cs[i - 1] * col[i - 1];
                if (i + 1 < n) t += cs[i] * col[i + 1];
                if (m > 0) t += cl * col[i - n];
                if (m + 1 < n) t += cr * col[i + n];
                dcol[i] = times_i(t);
            }
            dcol[m] += src * y[m];
        }
    }
};

struct Rk4Workspace {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    explicit Rk4Workspace(std::size_t m) : k1(m), k2(m), k3(m), k4(m), tmp(m) {}
};

template <class Rhs>
void rk4_integrate(const Rhs& rhs, std::vector<cplx>& y, double z0, double z1, int steps,
                   Rk4Workspace& w) {
    const double h = (z1 - z0) / steps;
    const std::size_t m = y.size();
    for (int s = 0; s < steps; ++s) {
        const double z = z0 + s * h;
        rhs(z, y.data(), w.k1.data());
        for (std::size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k1[i];
        rhs(z + 0.5 * h, w.tmp.data(), w.k2.data());
        for (std::size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k2[i];
        rhs(z + 0.5 * h, w.tmp.data(), w.k3.data());
        for (std::size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + h * w.k3[i];
        rhs(z + h, w.tmp.data(), w.k4.data());
        for (std::size_t i = 0; i < m; ++i)
            y[i] += (h / 6.0) * (w.k1[i] + 2.0 * (w.k2[i] + w.k3[i]) + w.k4[i]);
    }
}

double pump_norm(const std::vector<cplx>& y, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::norm(y[i]);
    return s;
}

int step_count_for(double omega, double length, const Rk4Options& opt) {
    const double wanted = opt.steps_per_rad * omega * length;
    return std::max(opt.min_steps, static_cast<int>(std::ceil(wanted)));
}

} // namespace

int rk4_step_count(const Lattice& lat, double dbeta0, const Rk4Options& opt) {
    const double gs = gershgorin_bound(lat.couplings_spdc, lat.detunings);
    const double gp = gershgorin_bound(lat.couplings_pump, lat.detunings);
    // Fastest phases: biphoton eigenpairs up to 2*gs, the source at gp + |dbeta0|.
    const double omega = 2.0 * gs + gp + std::abs(dbeta0);
    return step_count_for(omega, lat.length, opt);
}

std::vector<PumpField> propagate_pump(const Lattice& lat, std::span<const double> z_samples,
                                      const Rk4Options& opt) {
    const int n = lat.size();
    if (n < 1) throw std::invalid_argument("empty lattice");
    for (std::size_t j = 0; j < z_samples.size(); ++j) {
        if (z_samples[j] < 0.0 || z_samples[j] > lat.length)
            throw std::invalid_argument("z sample outside [0, L]");
        if (j > 0 && z_samples[j] < z_samples[j - 1])
            throw std::invalid_argument("z samples must be ascending");
    }

    const double gp = gershgorin_bound(lat.couplings_pump, lat.detunings);
    const int total_steps = step_count_for(gp, lat.length, opt);
    const double h_target = lat.length / total_steps;

    std::vector<cplx> y(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    y[static_cast<std::size_t>(lat.center())] = 1.0;
    Rk4Workspace w(y.size());
    const PumpSystem sys{n, lat.couplings_pump.data(), lat.detunings.data()};

    std::vector<PumpField> out;
    out.reserve(z_samples.size());
    double z_cur = 0.0;
    for (double zj : z_samples) {
        if (zj > z_cur) {
            const int seg = std::max(1, static_cast<int>(std::ceil((zj - z_cur) / h_target - 1e-12)));
            rk4_integrate(sys, y, z_cur, zj, seg, w);
            z_cur = zj;
        }
        const double drift = std::abs(pump_norm(y, n) - 1.0);
        if (drift > opt.norm_tol)
            throw NumericalError("pump norm drift " + std::to_string(drift) +
                                 " exceeds tolerance; decrease the step size");
        PumpField f;
        f.amplitudes = Eigen::Map<const Eigen::VectorXcd>(y.data(), n);
        f.z = zj;
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

std::vector<cplx> integrate_joint(const Lattice& lat, double dbeta0, int steps) {
    const int n = lat.size();
    std::vector<cplx> y(static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * n,
                        cplx(0.0, 0.0));
    y[static_cast<std::size_t>(lat.center())] = 1.0;
    Rk4Workspace w(y.size());
    const JointSystem sys{n,
                          lat.couplings_spdc.data(),
                          lat.couplings_pump.data(),
                          lat.detunings.data(),
                          lat.spdc_gain,
                          dbeta0};
    rk4_integrate(sys, y, 0.0, lat.length, steps, w);
    return y;
}

} // namespace

BiphotonState integrate_biphoton(const Lattice& lat, double dbeta0, const Rk4Options& opt) {
    const int n = lat.size();
    if (n < 1) throw std::invalid_argument("empty lattice");

    const int steps = rk4_step_count(lat, dbeta0, opt);
    std::vector<cplx> y = integrate_joint(lat, dbeta0, steps);

    const double drift = std::abs(pump_norm(y, n) - 1.0);
    if (drift > opt.norm_tol)
        throw NumericalError("pump norm drift " + std::to_string(drift) +
                             " exceeds tolerance; decrease the step size");

    if (opt.step_doubling_check) {
        const std::vector<cplx> y2 = integrate_joint(lat, dbeta0, 2 * steps);
        const std::size_t cc = static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(lat.center()) * n + lat.center();
        const double a = std::abs(y[cc]);
        const double b = std::abs(y2[cc]);
        if (std::abs(a - b) > opt.check_tol * std::max(b, 1e-300))
            throw NumericalError("step-doubling check failed: |Psi_cc| moved by " +
                                 std::to_string(std::abs(a - b)));
    }

    BiphotonState st;
    st.psi = Eigen::Map<const Eigen::MatrixXcd>(y.data() + n, n, n);
    st.z = lat.length;
    return st;
}

} // namespace spdc
