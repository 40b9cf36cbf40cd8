#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>

// Two-spin (double-quantum-dot) layer: exchange + Dzyaloshinskii-Moriya
// Hamiltonian, its closed-form diagonalization in the singlet/triplet basis,
// thermal states, and the reduction to the single- and two-emitter reservoir
// statistics (r1, r2) consumed by the steady-state solvers.
//
// Basis conventions:
//   S/T ordering      {|T+>, |T0>, |T->, |S0>}
//   product ordering  {|uu>, |ud>, |du>, |dd>}   (dot A first, dot B second)
//   |down> is the *excited* state of a dot; reproducing the refrigeration
//   regime therefore requires the sign of the Zeeman input that places
//   |down> above |up> (delta < 0 in the S/T matrix below).
namespace cavcool::pairstate {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using complexd = std::complex<double>;

enum class GammaTensorMode { none, dm_residual };

struct SpinPairParams {
    double J = 0.0;             // isotropic exchange, rad/s
    Vec3 D = Vec3::Zero();      // DM vector, rad/s
    GammaTensorMode gamma_mode = GammaTensorMode::none;
    Vec3 B = Vec3::Zero();      // laboratory field, tesla
    double g_star = 2.0;        // effective g-factor
};

struct NanowireExchange {
    double J = 0.0;             // J0_bare cos^2(zeta)
    Vec3 D = Vec3::Zero();      // J0_bare sin(2 zeta) v_hat
    Mat3 gamma = Mat3::Zero();  // J0_bare sin^2(zeta) (2 v v^T - I)
};

struct RotatedFrame {
    double J0_eff = 0.0;        // sqrt(J^2 + |D|^2), rad/s
    double alpha = 0.0;         // cos(alpha) = J/J0_eff, sin(alpha) = |D|/J0_eff
    Vec3 n_hat = Vec3::UnitZ(); // DM axis
    Mat3 gamma_dm = Mat3::Zero();  // (J0_eff - J) n n^T residual
    Vec3 B1 = Vec3::Zero();     // R(n,+alpha) B, tesla
    Vec3 B2 = Vec3::Zero();     // R(n,-alpha) B
    Vec3 B_avg = Vec3::Zero();
    Vec3 B_diff = Vec3::Zero(); // (B1 - B2)/2 = sin(alpha) (n x B)
    double delta = 0.0;         // rad/s
    double k = 0.0;             // rad/s
    double beta_y = 0.0;        // transverse inhomogeneity fraction in [0,1]
};

struct EigenSystem {
    double J0 = 0.0, delta = 0.0, k = 0.0;
    // lambdas[0] = J0/4 (T0 sector), lambdas[1..3] = remaining branches, ascending.
    std::array<double, 4> lambdas{};
    Mat4c vectors = Mat4c::Zero();   // columns, same order as lambdas, S/T basis
    // Cubic-branch coefficients for the closed-form thermal state; index j
    // follows lambdas[1..3]. Invalid (unused) when dense_fallback is set.
    std::array<complexd, 3> A{};
    std::array<complexd, 3> B{};
    std::array<double, 3> norm{};
    double p = 0.0, q = 0.0;         // depressed-cubic intermediates
    bool dense_fallback = false;
};

struct PairState {
    Mat4c rho_st = Mat4c::Zero();    // S/T ordering
    double temperature = 0.0;        // K
};

enum class StatsVariant { one_dot, two_dot };

struct ReservoirStats {
    double r1 = 0.0;            // prepared excited-transition weight
    double r2 = 0.0;            // prepared ground-transition weight
    StatsVariant variant = StatsVariant::one_dot;
    double T_set = 0.0;         // preparation temperature, K
    double omega_qd = 0.0;      // transition angular frequency, rad/s
};

struct MixingAngle {
    double theta = 0.0;         // atan2(2 t_c, eps)
    double omega_qd = 0.0;      // sqrt(eps^2 + 4 t_c^2), rad/s
    double g_perp = 0.0;        // g0 sin(theta)
    double g_par = 0.0;         // g0 cos(theta)
};

/// Rodrigues rotation matrix about unit axis n by angle a.
Mat3 rodrigues(const Vec3& n_hat, double angle);

/// Antisymmetric coupling matrix M with s1.M.s2 = D.(s1 x s2).
Mat3 dm_coupling_matrix(const Vec3& D);

/// Nanowire geometry map: zeta = 2 d / x_so.
NanowireExchange nanowire_exchange_map(double J0_bare, double d, double x_so,
                                       const Vec3& v_hat);

/// DM-axis rotation: returns J0_eff, alpha, n_hat and the symmetric residual
/// (J0_eff - J) n n^T. The pair rotation that removes the antisymmetric part
/// splits the angle evenly between the two spins, so the matrix identity is
///   R(n,+a/2) (J I + [D]x) R(n,-a/2)^T + gamma_dm = J0_eff I.
RotatedFrame shekhtman_rotate(double J, const Vec3& D);

/// Local effective fields B1 = R(n,+alpha) B, B2 = R(n,-alpha) B.
void local_fields(RotatedFrame& frame, const Vec3& B);

/// S/T parameters from the local fields. y_eff defaults to the direction of
/// the transverse (to z) part of B_diff, signed so k >= 0.
void st_parameters(RotatedFrame& frame, double g_star,
                   const std::optional<Vec3>& y_eff = std::nullopt);

/// Full microscopic chain: rotate, map fields, project (delta, k).
RotatedFrame rotated_frame(const SpinPairParams& params);

/// Minimal S/T Hamiltonian:
///   diag(J0/4 + delta, J0/4, J0/4 - delta, -3 J0/4)
///   with -i k coupling S0 to T+ and T-.
Mat4c build_st_hamiltonian(double J0, double delta, double k);

/// Closed-form eigensystem: T0 branch at J0/4 plus the trigonometric cubic
/// for the {T+, T-, S0} block. Falls back to dense diagonalization (flagged)
/// near degenerate branch denominators.
EigenSystem eigensystem_cubic(double J0, double delta, double k);

/// Thermal state of the minimal model at temperature T. Uses the closed-form
/// matrix elements built from the branch coefficients when available, the
/// generic Gibbs sum over stored eigenvectors otherwise. Boltzmann weights
/// are taken relative to the ground eigenvalue.
PairState thermal_state(const EigenSystem& es, double temperature);

/// Thermal state of an arbitrary 4x4 Hermitian pair Hamiltonian (S/T basis).
PairState thermal_state_of(const Mat4c& hamiltonian, double temperature);

/// Two-emitter flip-flop Hamiltonian in the S/T basis:
///   (omega_j/2) sigma_z^(j) Zeeman terms plus lambda flip-flop exchange,
/// i.e. diag(-w_avg, +lambda, +w_avg, -lambda) with the frequency mismatch
/// (omega1 - omega2)/2 coupling T0 and S0.
Mat4c flip_flop_hamiltonian(double omega1, double omega2, double lambda);

/// Fixed unitary mapping S/T coordinates to product coordinates.
Mat4c st_to_product_unitary();

/// rho_prod = U rho_ST U^dagger.
Mat4c to_product_basis(const Mat4c& rho_st);

enum class Dot { A, B };

/// Partial trace of a product-basis density matrix onto one dot.
Mat2c reduce_dot(const Mat4c& rho_prod, Dot which);

/// p_e = Tr[(I - sigma.w)/2 rho] for a unit quantization axis w.
double excitation_probability(const Mat2c& rho_dot, const Vec3& w_hat);

/// Reservoir statistics of a prepared pair state.
///   one_dot: r1 = p_{A,e} along w1, r2 = 1 - r1.
///   two_dot: bright-channel weights r1 = <S+_B S-_B>, r2 = <S-_B S+_B>
///            (= rho33 + rho22 and rho11 + rho22 for coherence-free states);
///            the pair need not sum to 1.
ReservoirStats reservoir_stats(const PairState& ps, StatsVariant variant,
                               const Vec3& w1_hat = Vec3::UnitZ(),
                               double omega_qd = 0.0);

/// Charge-sector mixing angle and the transverse/longitudinal couplings.
MixingAngle mixing_angle(double eps, double t_c, double g0);

} // namespace cavcool::pairstate
