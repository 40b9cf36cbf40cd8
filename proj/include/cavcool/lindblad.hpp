#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Truncated-Fock Liouvillians for one or two emitters coupled to a cavity,
// steady-state solvers (direct null-space and time evolution) and observable
// extraction. Model construction and observable extraction are pure;
// independent solves run in parallel without shared mutable state.
namespace cavcool::lindblad {

using complexd = std::complex<double>;
using SparseC = Eigen::SparseMatrix<complexd>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

struct HilbertSpec {
    int n_cutoff = 2;    // photon truncation N (Fock states 0..N)
    int n_emitters = 1;  // 1 or 2

    int dim() const { return (n_cutoff + 1) * (1 << n_emitters); }
};

struct JumpChannel {
    SparseC op;
    double rate = 0.0;
    std::string label;
};

struct LindbladModel {
    HilbertSpec space;
    SparseC hamiltonian;              // rad/s, frame rotating at omega_c
    std::vector<JumpChannel> jumps;   // rates >= 0

    // cached basis operators
    SparseC a;                        // cavity annihilation
    std::vector<SparseC> sigma_minus; // per emitter
};

/// Raw single-emitter ingredients (rotating frame: only the detuning enters).
struct SingleEmitterSpec {
    double delta = 0.0;       // omega_qd - omega_c
    double g = 0.0;           // transverse coupling
    double g_par = 0.0;       // longitudinal coupling, used only when enabled
    bool include_g_par = false;
    double kappa = 0.0;
    double n_bath = 0.0;
    double gamma_up = 0.0;     // emitter bath absorption
    double gamma_down = 0.0;   // emitter bath emission
    double gamma_phi = 0.0;
};

struct TwoEmitterSpec {
    double delta1 = 0.0, delta2 = 0.0;
    double g1 = 0.0, g2 = 0.0;
    double lambda = 0.0;       // flip-flop exchange
    double kappa = 0.0;
    double n_bath = 0.0;
    double gamma_up1 = 0.0, gamma_down1 = 0.0, gamma_phi1 = 0.0;
    double gamma_up2 = 0.0, gamma_down2 = 0.0, gamma_phi2 = 0.0;
};

LindbladModel build_single_emitter(const SingleEmitterSpec& spec, int n_cutoff);
LindbladModel build_two_emitter(const TwoEmitterSpec& spec, int n_cutoff);

/// Appends reset dissipators Gamma_up = gamma_1_res r1, Gamma_down =
/// gamma_1_res (1 - r1) and (gamma_phi_res/2) D[sigma_z] on one emitter.
void add_reset_channel(LindbladModel& model, double gamma_1_res,
                       double gamma_phi_res, double r1, int emitter = 0);

/// Action of the Liouvillian on a density matrix (no vectorization).
MatrixC apply_liouvillian(const LindbladModel& model, const MatrixC& rho);

/// Sparse vectorized Liouvillian, column-major convention
/// vec(A rho B) = (B^T kron A) vec(rho).
SparseC vectorized_liouvillian(const LindbladModel& model);

struct Observables {
    double n = 0.0;
    std::vector<double> p_e;
    double purity = 0.0;
    double trace = 0.0;
    double min_eigenvalue = 0.0;
};

Observables observables(const LindbladModel& model, const MatrixC& rho);

enum class SteadyMethod { null_space, time_evolution };

struct SteadyOptions {
    SteadyMethod method = SteadyMethod::null_space;
    double tol = 1e-10;           // residual / drift tolerance
    double max_time_factor = 1e7; // time-evolution horizon in slowest-rate units
};

struct SteadyDensity {
    MatrixC rho;
    double residual = 0.0;        // ||L(rho)||_F / max jump rate
    Observables obs;
};

/// Steady state of the model. null_space solves L(rho) = 0 with the trace
/// constraint (dense vectorized solve for dim <= 64, sparse LU above);
/// time_evolution integrates adaptively until the tracked observables drift
/// less than tol over three consecutive windows of the slowest rate.
SteadyDensity steady_state(const LindbladModel& model, const SteadyOptions& opts = {});

/// Time evolution rho(t0 + t) by adaptive RK45 on the vectorized state.
MatrixC evolve(const LindbladModel& model, const MatrixC& rho0, double time,
               double rel_tol = 1e-9);

struct CutoffError : std::runtime_error {
    std::vector<double> history;
    explicit CutoffError(const std::string& what, std::vector<double> hist)
        : std::runtime_error(what), history(std::move(hist)) {}
};

struct CutoffResult {
    int n_converged = 0;
    double value = 0.0;
    std::vector<double> history;
};

/// Smallest cutoff N with successive relative change of the observable below
/// rel_tol. Throws CutoffError (drift sequence attached) past the ceiling.
CutoffResult converge_cutoff(const std::function<double(int)>& observable_at,
                             double rel_tol = 1e-4, int n_start = 4,
                             int n_step = 2, int n_ceiling = 60);

} // namespace cavcool::lindblad
