#include "spdc/supermodes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spdc {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

SupermodeBasis eigendecompose(const Lattice& lat, FieldKind field) {
    const int n = lat.size();
    const std::vector<double>& c =
        field == FieldKind::Spdc ? lat.couplings_spdc : lat.couplings_pump;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = lat.detunings[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = c[static_cast<std::size_t>(i)];
        h(i + 1, i) = c[static_cast<std::size_t>(i)];
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecomposition failed to converge");

    SupermodeBasis basis;
    basis.eigenvalues = solver.eigenvalues(); // ascending
    basis.eigenvectors = solver.eigenvectors();

    // Sign convention: largest-magnitude entry positive (first such entry on ties).
    for (int m = 0; m < n; ++m) {
        int imax = 0;
        double vmax = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = std::abs(basis.eigenvectors(i, m));
            if (a > vmax) {
                vmax = a;
                imax = i;
            }
        }
        if (basis.eigenvectors(imax, m) < 0.0) basis.eigenvectors.col(m) *= -1.0;
    }
    return basis;
}

OverlapTensor overlap_tensor(const SupermodeBasis& pump, const SupermodeBasis& spdc) {
    const int n = spdc.size();
    if (pump.size() != n) throw std::invalid_argument("pump/SPDC basis dimension mismatch");

    OverlapTensor t;
    t.n = n;
    t.gamma.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    const Eigen::MatrixXd& w = pump.eigenvectors;
    const Eigen::MatrixXd& v = spdc.eigenvectors;
    for (int q = 0; q < n; ++q) {
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += w(i, q) * v(i, a) * v(i, b);
                t.gamma[static_cast<std::size_t>((q * n + a) * n + b)] = s;
                t.gamma[static_cast<std::size_t>((q * n + b) * n + a)] = s;
            }
        }
    }
    const int center = (n - 1) / 2;
    t.pump_weights = w.row(center).transpose();
    return t;
}

double odd_sublattice_weight(const Eigen::VectorXd& mode) {
    double s = 0.0;
    for (int i = 1; i < mode.size(); i += 2) s += mode(i) * mode(i);
    return s;
}

double participation_ratio(const Eigen::VectorXd& mode) {
    double q = 0.0;
    for (int i = 0; i < mode.size(); ++i) q += std::pow(mode(i), 4);
    return 1.0 / q;
}

int localized_mode_index(const SupermodeBasis& basis, const Lattice& lat) {
    const int n = basis.size();
    const int center = lat.center();
    const double d_center = lat.detunings[static_cast<std::size_t>(center)];

    if (d_center > 0.0) return n - 1;  // defect mode pushed above the band
    if (d_center < 0.0) return 0;

    // Zero-diagonal case: candidates near zero, chiral ones preferred.
    int best = 0;
    double best_abs = std::abs(basis.eigenvalues(0));
    for (int m = 1; m < n; ++m) {
        const double a = std::abs(basis.eigenvalues(m));
        if (a < best_abs) {
            best_abs = a;
            best = m;
        }
    }
    for (int m = 0; m < n; ++m) {
        if (std::abs(basis.eigenvalues(m)) <= best_abs * (1.0 + 1e-9) + 1e-12 &&
            odd_sublattice_weight(basis.eigenvectors.col(m)) < 1e-6)
            return m;
    }
    return best;
}

ModeDiagnostics mode_diagnostics(const SupermodeBasis& basis, const Lattice& lat) {
    const int n = basis.size();
    const int center = lat.center();
    ModeDiagnostics d;
    d.mode_index = localized_mode_index(basis, lat);
    d.mode_eigenvalue = basis.eigenvalues(d.mode_index);

    const Eigen::VectorXd v = basis.eigenvectors.col(d.mode_index);
    d.participation_ratio = participation_ratio(v);
    d.central_overlap = v(center) * v(center);
    d.odd_sublattice_weight = odd_sublattice_weight(v);

    if (center + 2 < n && std::abs(v(center)) > 0.0)
        d.localization_ratio = std::abs(v(center + 2)) / std::abs(v(center));

    double gap = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
        if (m == d.mode_index) continue;
        gap = std::min(gap, std::abs(basis.eigenvalues(m) - d.mode_eigenvalue));
    }
    d.gap = n > 1 ? gap : 0.0;
    return d;
}

ClosedFormSolver::ClosedFormSolver(const Lattice& lat)
    : n_(lat.size()),
      center_(lat.center()),
      length_(lat.length),
      gain_(lat.spdc_gain),
      spdc_(eigendecompose(lat, FieldKind::Spdc)),
      pump_(eigendecompose(lat, FieldKind::Pump)),
      gamma_(overlap_tensor(pump_, spdc_)) {
    const Eigen::VectorXd& mu = spdc_.eigenvalues;
    const Eigen::VectorXd& nu = pump_.eigenvalues;
    const Eigen::MatrixXd& v = spdc_.eigenvectors;

    phase_ab_.resize(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            phase_ab_(a, b) = std::exp(std::complex<double>(0.0, (mu(a) + mu(b)) * length_));

    // Central-guide fast path: fold the back-transform V_ca V_cb into the
    // coefficients; (a, b) symmetry halves the term count.
    cen_coeff_.reserve(static_cast<std::size_t>(n_) * n_ * (n_ + 1) / 2);
    cen_freq_.reserve(cen_coeff_.size());
    for (int q = 0; q < n_; ++q) {
        const double wq = gamma_.pump_weights(q);
        for (int a = 0; a < n_; ++a) {
            for (int b = a; b < n_; ++b) {
                const double mult = b == a ? 1.0 : 2.0;
                const double coeff = mult * wq * gamma_.at(q, a, b) * v(center_, a) * v(center_, b);
                cen_coeff_.push_back(coeff * phase_ab_(a, b));
                cen_freq_.push_back(nu(q) - mu(a) - mu(b));
            }
        }
    }
}

std::complex<double> ClosedFormSolver::central_amplitude(double dbeta0) const {
    const double half_l = 0.5 * length_;
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t k = 0; k < cen_coeff_.size(); ++k) {
        const double theta = cen_freq_[k] - dbeta0;
        const double x = theta * half_l;
        sum += cen_coeff_[k] * (sinc(x) * std::exp(std::complex<double>(0.0, x)));
    }
    return gain_ * length_ * sum;
}

BiphotonState ClosedFormSolver::biphoton(double dbeta0) const {
    const Eigen::VectorXd& mu = spdc_.eigenvalues;
    const Eigen::VectorXd& nu = pump_.eigenvalues;
    const double half_l = 0.5 * length_;

    Eigen::MatrixXcd psi_hat = Eigen::MatrixXcd::Zero(n_, n_);
    for (int a = 0; a < n_; ++a) {
        for (int b = a; b < n_; ++b) {
            std::complex<double> s(0.0, 0.0);
            for (int q = 0; q < n_; ++q) {
                const double theta = nu(q) - dbeta0 - mu(a) - mu(b);
                const double x = theta * half_l;
                s += gamma_.pump_weights(q) * gamma_.at(q, a, b) *
                     (sinc(x) * std::exp(std::complex<double>(0.0, x)));
            }
            s *= gain_ * length_ * phase_ab_(a, b);
            psi_hat(a, b) = s;
            psi_hat(b, a) = s;
        }
    }

    BiphotonState st;
    st.psi = spdc_.eigenvectors * psi_hat * spdc_.eigenvectors.transpose();
    st.z = length_;
    return st;
}

BiphotonState closed_form_biphoton(const Lattice& lat, double dbeta0) {
    return ClosedFormSolver(lat).biphoton(dbeta0);
}

} // namespace spdc
