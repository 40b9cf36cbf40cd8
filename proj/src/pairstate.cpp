#include "cavcool/pairstate.hpp"
#include "cavcool/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavcool::pairstate {

namespace {

constexpr complexd I{0.0, 1.0};

void require_unit(const Vec3& v, const char* name) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(name) + " must be a unit vector");
}

} // namespace

Mat3 rodrigues(const Vec3& n_hat, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 nx;
    nx << 0.0, -n_hat.z(), n_hat.y(),
          n_hat.z(), 0.0, -n_hat.x(),
          -n_hat.y(), n_hat.x(), 0.0;
    return c * Mat3::Identity() + s * nx + (1.0 - c) * n_hat * n_hat.transpose();
}

Mat3 dm_coupling_matrix(const Vec3& D) {
    // M_ij = eps_ijk D_k, so s1.M.s2 = D.(s1 x s2); transpose of the
    // conventional cross-product matrix.
    Mat3 m;
    m << 0.0, D.z(), -D.y(),
         -D.z(), 0.0, D.x(),
         D.y(), -D.x(), 0.0;
    return m;
}

NanowireExchange nanowire_exchange_map(double J0_bare, double d, double x_so,
                                       const Vec3& v_hat) {
    if (x_so <= 0.0) throw std::invalid_argument("spin-orbit length must be positive");
    require_unit(v_hat, "dm axis v");
    const double zeta = 2.0 * d / x_so;
    const double c = std::cos(zeta), s2 = std::sin(2.0 * zeta);
    NanowireExchange out;
    out.J = J0_bare * c * c;
    out.D = J0_bare * s2 * v_hat;
    const double s = std::sin(zeta);
    out.gamma = J0_bare * s * s * (2.0 * v_hat * v_hat.transpose() - Mat3::Identity());
    return out;
}

RotatedFrame shekhtman_rotate(double J, const Vec3& D) {
    const double Dn = D.norm();
    const double J0 = std::hypot(J, Dn);
    if (J0 == 0.0) throw std::domain_error("degenerate exchange: J and D both zero");
    RotatedFrame frame;
    frame.J0_eff = J0;
    frame.alpha = std::atan2(Dn, J);
    if (Dn > 0.0) {
        frame.n_hat = D / Dn;
        frame.gamma_dm = (J0 - J) * frame.n_hat * frame.n_hat.transpose();
    } else {
        frame.n_hat = Vec3::UnitZ();
        frame.gamma_dm.setZero();
    }
    return frame;
}

void local_fields(RotatedFrame& frame, const Vec3& B) {
    const Mat3 r_plus = rodrigues(frame.n_hat, frame.alpha);
    const Mat3 r_minus = rodrigues(frame.n_hat, -frame.alpha);
    frame.B1 = r_plus * B;
    frame.B2 = r_minus * B;
    frame.B_avg = 0.5 * (frame.B1 + frame.B2);
    frame.B_diff = 0.5 * (frame.B1 - frame.B2);
}

void st_parameters(RotatedFrame& frame, double g_star,
                   const std::optional<Vec3>& y_eff) {
    const double scale = g_star * constants::mu_bohr / constants::hbar;
    frame.delta = scale * frame.B_avg.z();
    Vec3 y;
    if (y_eff) {
        y = *y_eff;
        require_unit(y, "y_eff");
    } else {
        Vec3 transverse = frame.B_diff - frame.B_diff.z() * Vec3::UnitZ();
        const double tn = transverse.norm();
        if (tn < 1e-300) {
            frame.k = 0.0;
            frame.beta_y = 0.0;
            return;
        }
        y = transverse / tn;  // aligned with B_diff, so k >= 0
    }
    frame.k = scale * frame.B_diff.dot(y) / std::sqrt(2.0);
    const double delta_z = std::sqrt(frame.delta * frame.delta + 2.0 * frame.k * frame.k);
    frame.beta_y = delta_z > 0.0 ? std::sqrt(2.0) * std::abs(frame.k) / delta_z : 0.0;
}

RotatedFrame rotated_frame(const SpinPairParams& params) {
    RotatedFrame frame = shekhtman_rotate(params.J, params.D);
    if (params.gamma_mode == GammaTensorMode::none) frame.gamma_dm.setZero();
    local_fields(frame, params.B);
    st_parameters(frame, params.g_star);
    return frame;
}

Mat4c build_st_hamiltonian(double J0, double delta, double k) {
    if (!std::isfinite(J0) || !std::isfinite(delta) || !std::isfinite(k))
        throw std::invalid_argument("non-finite S/T Hamiltonian parameters");
    Mat4c h = Mat4c::Zero();
    h(0, 0) = J0 / 4.0 + delta;
    h(1, 1) = J0 / 4.0;
    h(2, 2) = J0 / 4.0 - delta;
    h(3, 3) = -3.0 * J0 / 4.0;
    h(0, 3) = -I * k;
    h(2, 3) = -I * k;
    h(3, 0) = I * k;
    h(3, 2) = I * k;
    return h;
}

namespace {

// Dense path used near branch degeneracies and for k = 0; keeps the
// T0 eigenpair in slot 0, remaining eigenvalues ascending.
EigenSystem dense_eigensystem(double J0, double delta, double k) {
    EigenSystem es;
    es.J0 = J0;
    es.delta = delta;
    es.k = k;
    es.dense_fallback = true;
    Eigen::SelfAdjointEigenSolver<Mat4c> solver(build_st_hamiltonian(J0, delta, k));
    // locate the T0 vector (unit weight on basis index 1)
    int t0 = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        const double w = std::norm(solver.eigenvectors()(1, i));
        if (w > best) { best = w; t0 = i; }
    }
    es.lambdas[0] = solver.eigenvalues()(t0);
    es.vectors.col(0) = solver.eigenvectors().col(t0);
    int slot = 1;
    for (int i = 0; i < 4; ++i) {
        if (i == t0) continue;
        es.lambdas[slot] = solver.eigenvalues()(i);
        es.vectors.col(slot) = solver.eigenvectors().col(i);
        ++slot;
    }
    return es;
}

} // namespace

EigenSystem eigensystem_cubic(double J0, double delta, double k) {
    const double scale = std::max({std::abs(J0), std::abs(delta), std::abs(k)});
    if (!std::isfinite(scale)) throw std::invalid_argument("non-finite eigensystem input");
    if (scale == 0.0) {
        EigenSystem es;
        es.vectors = Mat4c::Identity();
        es.vectors.col(0).swap(es.vectors.col(1));  // T0 slot first
        es.norm = {1.0, 1.0, 1.0};
        return es;
    }
    if (std::abs(k) <= 1e-14 * scale)
        return dense_eigensystem(J0, delta, k);

    EigenSystem es;
    es.J0 = J0;
    es.delta = delta;
    es.k = k;
    es.lambdas[0] = J0 / 4.0;
    es.vectors(1, 0) = 1.0;

    es.p = -(J0 * J0 / 3.0 + delta * delta + 2.0 * k * k);
    es.q = 2.0 * J0 * J0 * J0 / 27.0 - 2.0 * J0 * delta * delta / 3.0 +
           2.0 * J0 * k * k / 3.0;
    const double m = 2.0 * std::sqrt(-es.p / 3.0);
    double arg = 1.5 * es.q / es.p * std::sqrt(-3.0 / es.p);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phase = std::acos(arg) / 3.0;

    std::array<double, 3> roots;
    for (int j = 0; j < 3; ++j)
        roots[j] = -J0 / 12.0 + m * std::cos(phase - constants::two_pi * j / 3.0);
    std::sort(roots.begin(), roots.end());

    for (int j = 0; j < 3; ++j) {
        const double den_plus = J0 / 4.0 + delta - roots[j];
        const double den_minus = J0 / 4.0 - delta - roots[j];
        if (std::abs(den_plus) < 1e-9 * scale || std::abs(den_minus) < 1e-9 * scale)
            return dense_eigensystem(J0, delta, k);
        es.lambdas[j + 1] = roots[j];
        es.A[j] = I * k / den_plus;
        es.B[j] = I * k / den_minus;
        es.norm[j] = std::sqrt(1.0 + std::norm(es.A[j]) + std::norm(es.B[j]));
        es.vectors(0, j + 1) = es.A[j] / es.norm[j];
        es.vectors(2, j + 1) = es.B[j] / es.norm[j];
        es.vectors(3, j + 1) = 1.0 / es.norm[j];
    }
    return es;
}

namespace {

std::array<double, 4> shifted_weights(const std::array<double, 4>& lambdas,
                                      double temperature) {
    if (!(temperature > 0.0)) throw std::domain_error("temperature must be positive");
    std::array<double, 4> w{};
    if (std::isinf(temperature)) {
        w.fill(1.0);
        return w;
    }
    const double ground = *std::min_element(lambdas.begin(), lambdas.end());
    for (int i = 0; i < 4; ++i)
        w[i] = std::exp(-constants::boltzmann_exponent(lambdas[i] - ground, temperature));
    return w;
}

} // namespace

PairState thermal_state(const EigenSystem& es, double temperature) {
    const auto w = shifted_weights(es.lambdas, temperature);
    double Z = w[0] + w[1] + w[2] + w[3];
    PairState ps;
    ps.temperature = temperature;
    if (es.dense_fallback) {
        for (int i = 0; i < 4; ++i)
            ps.rho_st += (w[i] / Z) * es.vectors.col(i) * es.vectors.col(i).adjoint();
        return ps;
    }
    // closed-form matrix elements from the branch coefficients
    Mat4c& r = ps.rho_st;
    r(1, 1) = w[0];
    for (int j = 0; j < 3; ++j) {
        const double wn = w[j + 1] / (es.norm[j] * es.norm[j]);
        r(0, 0) += wn * std::norm(es.A[j]);
        r(2, 2) += wn * std::norm(es.B[j]);
        r(3, 3) += wn;
        r(0, 2) += wn * es.A[j] * std::conj(es.B[j]);
        r(0, 3) += wn * es.A[j];
        r(2, 3) += wn * es.B[j];
    }
    r(2, 0) = std::conj(r(0, 2));
    r(3, 0) = std::conj(r(0, 3));
    r(3, 2) = std::conj(r(2, 3));
    r /= Z;
    return ps;
}

PairState thermal_state_of(const Mat4c& hamiltonian, double temperature) {
    Eigen::SelfAdjointEigenSolver<Mat4c> solver(hamiltonian);
    std::array<double, 4> lambdas;
    for (int i = 0; i < 4; ++i) lambdas[i] = solver.eigenvalues()(i);
    const auto w = shifted_weights(lambdas, temperature);
    const double Z = w[0] + w[1] + w[2] + w[3];
    PairState ps;
    ps.temperature = temperature;
    for (int i = 0; i < 4; ++i)
        ps.rho_st +=
            (w[i] / Z) * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
    return ps;
}

Mat4c flip_flop_hamiltonian(double omega1, double omega2, double lambda) {
    const double w_avg = 0.5 * (omega1 + omega2);
    const double d = 0.5 * (omega1 - omega2);
    Mat4c h = Mat4c::Zero();
    h(0, 0) = -w_avg;        // |T+> = both dots in the ground state
    h(1, 1) = lambda;        // bright combination
    h(2, 2) = w_avg;         // both excited
    h(3, 3) = -lambda;       // dark combination
    h(1, 3) = -d;            // mismatch tilts the central block
    h(3, 1) = -d;
    return h;
}

Mat4c st_to_product_unitary() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4c u = Mat4c::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = s;
    u(1, 3) = s;
    u(2, 1) = s;
    u(2, 3) = -s;
    u(3, 2) = 1.0;
    return u;
}

Mat4c to_product_basis(const Mat4c& rho_st) {
    static const Mat4c u = st_to_product_unitary();
    return u * rho_st * u.adjoint();
}

Mat2c reduce_dot(const Mat4c& rp, Dot which) {
    Mat2c r;
    if (which == Dot::A) {
        r << rp(0, 0) + rp(1, 1), rp(0, 2) + rp(1, 3),
             rp(2, 0) + rp(3, 1), rp(2, 2) + rp(3, 3);
    } else {
        r << rp(0, 0) + rp(2, 2), rp(0, 1) + rp(2, 3),
             rp(1, 0) + rp(3, 2), rp(1, 1) + rp(3, 3);
    }
    return r;
}

double excitation_probability(const Mat2c& rho_dot, const Vec3& w_hat) {
    require_unit(w_hat, "w_hat");
    Mat2c sw;
    sw << w_hat.z(), complexd(w_hat.x(), -w_hat.y()),
          complexd(w_hat.x(), w_hat.y()), -w_hat.z();
    const double p = 0.5 * std::real((rho_dot - sw * rho_dot).trace());
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::runtime_error("excitation probability outside [0,1]");
    return std::clamp(p, 0.0, 1.0);
}

ReservoirStats reservoir_stats(const PairState& ps, StatsVariant variant,
                               const Vec3& w1_hat, double omega_qd) {
    ReservoirStats stats;
    stats.variant = variant;
    stats.T_set = ps.temperature;
    stats.omega_qd = omega_qd;
    const Mat4c rp = to_product_basis(ps.rho_st);
    if (variant == StatsVariant::one_dot) {
        stats.r1 = excitation_probability(reduce_dot(rp, Dot::A), w1_hat);
        stats.r2 = 1.0 - stats.r1;
        return stats;
    }
    // bright-channel emission/absorption weights <S+_B S-_B>, <S-_B S+_B>
    const double cross = std::real(rp(1, 2));
    stats.r1 = 0.5 * std::real(rp(1, 1) + rp(2, 2)) + std::real(rp(3, 3)) + cross;
    stats.r2 = std::real(rp(0, 0)) + 0.5 * std::real(rp(1, 1) + rp(2, 2)) + cross;
    const double tr = std::real(rp.trace());
    // r1 + r2 = tr + 2 Re<ud|rho|du> by construction
    const double expected = tr + 2.0 * cross;
    if (std::abs(stats.r1 + stats.r2 - expected) > 1e-12)
        throw std::runtime_error("two-dot statistics failed internal consistency");
    stats.r1 = std::max(stats.r1, 0.0);
    stats.r2 = std::max(stats.r2, 0.0);
    return stats;
}

MixingAngle mixing_angle(double eps, double t_c, double g0) {
    if (eps == 0.0 && t_c == 0.0)
        throw std::domain_error("mixing angle undefined at eps = t_c = 0");
    MixingAngle m;
    m.theta = std::atan2(2.0 * t_c, eps);
    m.omega_qd = std::hypot(eps, 2.0 * t_c);
    m.g_perp = g0 * std::sin(m.theta);
    m.g_par = g0 * std::cos(m.theta);
    return m;
}

} // namespace cavcool::pairstate
