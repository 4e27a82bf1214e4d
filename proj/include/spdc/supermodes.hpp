#ifndef SPDC_SUPERMODES_HPP
#define SPDC_SUPERMODES_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spdc/dynamics.hpp"
#include "spdc/lattice.hpp"

namespace spdc {

enum class FieldKind { Spdc, Pump };

// Lattice eigenmodes of one of the two coupling Hamiltonians. Eigenvalues are
// the supermode propagation-constant offsets [1/mm], sorted ascending;
// eigenvector columns are orthonormal with the largest-magnitude entry made
// positive so all downstream quantities are deterministic.
struct SupermodeBasis {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

SupermodeBasis eigendecompose(const Lattice& lat, FieldKind field);

// Three-mode overlaps Gamma[q][ms][mi] = sum_n W_{n,q} V_{n,ms} V_{n,mi}
// (W = pump eigenvectors, V = SPDC eigenvectors), plus the projection of the
// central-guide pump injection onto the pump supermodes, W_{c,q}.
struct OverlapTensor {
    int n = 0;
    std::vector<double> gamma; // flattened (q * n + ms) * n + mi
    Eigen::VectorXd pump_weights;

    double at(int q, int ms, int mi) const {
        return gamma[static_cast<std::size_t>((q * n + ms) * n + mi)];
    }
};

OverlapTensor overlap_tensor(const SupermodeBasis& pump, const SupermodeBasis& spdc);

// Weight of a normalized mode on the odd-index sublattice (site indices
// 1, 3, 5, ... from the left edge). Exactly zero for the zero mode of any
// odd-N lattice with zero diagonal.
double odd_sublattice_weight(const Eigen::VectorXd& mode);

// 1 / sum v^4: roughly the number of sites the mode occupies.
double participation_ratio(const Eigen::VectorXd& mode);

// Index of the localized mode: for lattices with a detuned central guide the
// eigenvalue pushed out of the band (largest for delta > 0), otherwise the
// mode nearest zero, preferring chiral candidates (odd-sublattice weight
// < 1e-6) when near-degenerate bulk modes cluster around zero.
int localized_mode_index(const SupermodeBasis& basis, const Lattice& lat);

struct ModeDiagnostics {
    int mode_index = -1;
    double mode_eigenvalue = 0.0;     // [1/mm]
    double localization_ratio = 0.0;  // |v_{c+2}| / |v_c|, amplitude decay per unit cell
    double participation_ratio = 0.0;
    double central_overlap = 0.0;     // |v_c|^2
    double odd_sublattice_weight = 0.0;
    double gap = 0.0;                 // distance to the nearest other eigenvalue [1/mm]
};

ModeDiagnostics mode_diagnostics(const SupermodeBasis& basis, const Lattice& lat);

// Exact solver: integrates the propagation equations in the supermode basis,
// where each (pump, signal, idler) combination contributes
//   gamma*L * W_{c,q} * Gamma[q][a][b] * e^{i(mu_a+mu_b)L} * e^{i theta L/2} sinc(theta L/2),
// theta = nu_q - dbeta0 - mu_a - mu_b. The eigendecomposition and overlap
// tensor are precomputed once per lattice and reused across detunes.
class ClosedFormSolver {
  public:
    explicit ClosedFormSolver(const Lattice& lat);

    BiphotonState biphoton(double dbeta0) const;            // full Psi(L)
    std::complex<double> central_amplitude(double dbeta0) const; // Psi_cc(L)

    const SupermodeBasis& spdc_basis() const { return spdc_; }
    const SupermodeBasis& pump_basis() const { return pump_; }
    const OverlapTensor& overlaps() const { return gamma_; }

  private:
    int n_ = 0;
    int center_ = 0;
    double length_ = 0.0;
    double gain_ = 0.0;
    SupermodeBasis spdc_;
    SupermodeBasis pump_;
    OverlapTensor gamma_;
    Eigen::MatrixXcd phase_ab_;                  // e^{i (mu_a + mu_b) L}
    std::vector<std::complex<double>> cen_coeff_; // per-(q,a<=b) weight for Psi_cc
    std::vector<double> cen_freq_;                // nu_q - mu_a - mu_b
};

BiphotonState closed_form_biphoton(const Lattice& lat, double dbeta0);

// sin(x)/x with the removable singularity filled in.
double sinc(double x);

} // namespace spdc

#endif
