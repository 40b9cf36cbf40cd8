#include "cavcool/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cavcool::lindblad {

namespace {

constexpr complexd I{0.0, 1.0};

SparseC sparse_identity(int n) {
    SparseC id(n, n);
    id.setIdentity();
    return id;
}

SparseC kron(const SparseC& a, const SparseC& b) {
    SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<complexd>> trips;
    trips.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SparseC::InnerIterator ita(a, ka); ita; ++ita)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SparseC::InnerIterator itb(b, kb); itb; ++itb)
                    trips.emplace_back(ita.row() * b.rows() + itb.row(),
                                       ita.col() * b.cols() + itb.col(),
                                       ita.value() * itb.value());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SparseC destroy(int n_cutoff) {
    SparseC a(n_cutoff + 1, n_cutoff + 1);
    std::vector<Eigen::Triplet<complexd>> trips;
    for (int k = 1; k <= n_cutoff; ++k)
        trips.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

SparseC sigma_minus_2x2() {
    SparseC s(2, 2);
    s.insert(0, 1) = 1.0;  // |g><e|, basis {g, e}
    s.makeCompressed();
    return s;
}

SparseC sigma_z_2x2() {
    SparseC s(2, 2);
    s.insert(0, 0) = -1.0;
    s.insert(1, 1) = 1.0;
    s.makeCompressed();
    return s;
}

// embeds a single-emitter 2x2 operator at position `which` of `n_emitters`
SparseC embed_emitter(const SparseC& op2, int n_cutoff, int n_emitters, int which) {
    SparseC acc = sparse_identity(n_cutoff + 1);
    for (int j = 0; j < n_emitters; ++j)
        acc = kron(acc, j == which ? op2 : sparse_identity(2));
    return acc;
}

void check_rates_nonneg(const std::vector<double>& rates) {
    for (double r : rates)
        if (r < 0.0) throw std::invalid_argument("lindblad: negative jump rate");
}

double rate_scale(const LindbladModel& model) {
    double scale = 0.0;
    for (const auto& j : model.jumps) scale = std::max(scale, j.rate);
    for (int k = 0; k < model.hamiltonian.outerSize(); ++k)
        for (SparseC::InnerIterator it(model.hamiltonian, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    return scale > 0.0 ? scale : 1.0;
}

} // namespace

LindbladModel build_single_emitter(const SingleEmitterSpec& spec, int n_cutoff) {
    if (n_cutoff < 2) throw std::invalid_argument("photon cutoff must be >= 2");
    check_rates_nonneg({spec.kappa, spec.n_bath, spec.gamma_up, spec.gamma_down,
                        spec.gamma_phi});
    LindbladModel m;
    m.space = {n_cutoff, 1};
    m.a = kron(destroy(n_cutoff), sparse_identity(2));
    m.sigma_minus = {embed_emitter(sigma_minus_2x2(), n_cutoff, 1, 0)};

    const SparseC& a = m.a;
    const SparseC& sm = m.sigma_minus[0];
    const SparseC sp = SparseC(sm.adjoint());
    const SparseC sz = embed_emitter(sigma_z_2x2(), n_cutoff, 1, 0);

    SparseC h = spec.delta * SparseC(sp * sm) +
                spec.g * SparseC(SparseC(a * sp) + SparseC(SparseC(a.adjoint()) * sm));
    if (spec.include_g_par && spec.g_par != 0.0) {
        // non-secular in the rotating frame; retained only on request
        h = h + spec.g_par * SparseC(SparseC(a + SparseC(a.adjoint())) * sz);
    }
    m.hamiltonian = h;

    m.jumps.push_back({a, spec.kappa * (spec.n_bath + 1.0), "cavity_down"});
    m.jumps.push_back({SparseC(a.adjoint()), spec.kappa * spec.n_bath, "cavity_up"});
    m.jumps.push_back({sm, spec.gamma_down, "emitter_down"});
    m.jumps.push_back({sp, spec.gamma_up, "emitter_up"});
    m.jumps.push_back({sz, 0.5 * spec.gamma_phi, "emitter_dephase"});
    return m;
}

LindbladModel build_two_emitter(const TwoEmitterSpec& spec, int n_cutoff) {
    if (n_cutoff < 2) throw std::invalid_argument("photon cutoff must be >= 2");
    check_rates_nonneg({spec.kappa, spec.n_bath, spec.gamma_up1, spec.gamma_down1,
                        spec.gamma_phi1, spec.gamma_up2, spec.gamma_down2,
                        spec.gamma_phi2});
    LindbladModel m;
    m.space = {n_cutoff, 2};
    m.a = kron(destroy(n_cutoff), sparse_identity(4));
    m.sigma_minus = {embed_emitter(sigma_minus_2x2(), n_cutoff, 2, 0),
                     embed_emitter(sigma_minus_2x2(), n_cutoff, 2, 1)};

    const SparseC& a = m.a;
    const SparseC adag = SparseC(a.adjoint());
    const SparseC& sm1 = m.sigma_minus[0];
    const SparseC& sm2 = m.sigma_minus[1];
    const SparseC sp1 = SparseC(sm1.adjoint());
    const SparseC sp2 = SparseC(sm2.adjoint());

    SparseC h = spec.delta1 * SparseC(sp1 * sm1) + spec.delta2 * SparseC(sp2 * sm2) +
                spec.g1 * SparseC(SparseC(a * sp1) + SparseC(adag * sm1)) +
                spec.g2 * SparseC(SparseC(a * sp2) + SparseC(adag * sm2)) +
                spec.lambda * SparseC(SparseC(sp1 * sm2) + SparseC(sm1 * sp2));
    m.hamiltonian = h;

    m.jumps.push_back({a, spec.kappa * (spec.n_bath + 1.0), "cavity_down"});
    m.jumps.push_back({adag, spec.kappa * spec.n_bath, "cavity_up"});
    m.jumps.push_back({sm1, spec.gamma_down1, "emitter1_down"});
    m.jumps.push_back({sp1, spec.gamma_up1, "emitter1_up"});
    m.jumps.push_back({embed_emitter(sigma_z_2x2(), n_cutoff, 2, 0),
                       0.5 * spec.gamma_phi1, "emitter1_dephase"});
    m.jumps.push_back({sm2, spec.gamma_down2, "emitter2_down"});
    m.jumps.push_back({sp2, spec.gamma_up2, "emitter2_up"});
    m.jumps.push_back({embed_emitter(sigma_z_2x2(), n_cutoff, 2, 1),
                       0.5 * spec.gamma_phi2, "emitter2_dephase"});
    return m;
}

void add_reset_channel(LindbladModel& model, double gamma_1_res,
                       double gamma_phi_res, double r1, int emitter) {
    if (r1 < 0.0 || r1 > 1.0)
        throw std::invalid_argument("add_reset_channel: r1 must be in [0, 1]");
    if (gamma_1_res < 0.0 || gamma_phi_res < 0.0)
        throw std::invalid_argument("add_reset_channel: rates must be >= 0");
    if (emitter < 0 || emitter >= static_cast<int>(model.sigma_minus.size()))
        throw std::invalid_argument("add_reset_channel: no such emitter");
    const SparseC& sm = model.sigma_minus[emitter];
    model.jumps.push_back({sm, gamma_1_res * (1.0 - r1), "reset_down"});
    model.jumps.push_back({SparseC(sm.adjoint()), gamma_1_res * r1, "reset_up"});
    if (gamma_phi_res > 0.0) {
        const int which = emitter;
        model.jumps.push_back({embed_emitter(sigma_z_2x2(), model.space.n_cutoff,
                                             model.space.n_emitters, which),
                               0.5 * gamma_phi_res, "reset_dephase"});
    }
}

MatrixC apply_liouvillian(const LindbladModel& model, const MatrixC& rho) {
    const MatrixC h = MatrixC(model.hamiltonian);
    MatrixC out = -I * (h * rho - rho * h);
    for (const auto& j : model.jumps) {
        if (j.rate == 0.0) continue;
        const MatrixC l = MatrixC(j.op);
        const MatrixC ldl = l.adjoint() * l;
        out += j.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

SparseC vectorized_liouvillian(const LindbladModel& model) {
    const int d = model.space.dim();
    const SparseC id = sparse_identity(d);
    SparseC L = SparseC(-I * (kron(id, model.hamiltonian) -
                              kron(SparseC(model.hamiltonian.transpose()), id)));
    for (const auto& j : model.jumps) {
        if (j.rate == 0.0) continue;
        const SparseC ldl = SparseC(SparseC(j.op.adjoint()) * j.op);
        L = L + j.rate * SparseC(kron(SparseC(j.op.conjugate()), j.op) -
                                 0.5 * kron(id, ldl) -
                                 0.5 * kron(SparseC(ldl.transpose()), id));
    }
    L.makeCompressed();
    return L;
}

Observables observables(const LindbladModel& model, const MatrixC& rho) {
    if (rho.rows() != model.space.dim() || rho.cols() != model.space.dim())
        throw std::invalid_argument("observables: dimension mismatch");
    Observables obs;
    obs.trace = std::real(rho.trace());
    obs.n = std::real((MatrixC(model.a.adjoint() * MatrixC(model.a)) * rho).trace());
    for (const auto& sm : model.sigma_minus) {
        const MatrixC proj = MatrixC(sm.adjoint()) * MatrixC(sm);
        obs.p_e.push_back(std::real((proj * rho).trace()));
    }
    obs.purity = std::real((rho * rho).trace());
    Eigen::SelfAdjointEigenSolver<MatrixC> es(0.5 * (rho + rho.adjoint()));
    obs.min_eigenvalue = es.eigenvalues().minCoeff();
    return obs;
}

namespace {

VectorC vec(const MatrixC& m) {
    return Eigen::Map<const VectorC>(m.data(), m.size());
}

MatrixC unvec(const VectorC& v, int d) {
    return Eigen::Map<const MatrixC>(v.data(), d, d);
}

MatrixC hermitize_normalize(MatrixC rho) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = std::real(rho.trace());
    if (std::abs(tr) < 1e-300)
        throw std::runtime_error("steady_state: traceless solution");
    return rho / tr;
}

// Dormand-Prince 5(4) step on v' = L v; returns 5th-order value and the
// embedded error estimate.
void dopri_step(const SparseC& L, const VectorC& v, double h, VectorC& out,
                double& err_norm) {
    const VectorC k1 = L * v;
    const VectorC k2 = L * VectorC(v + h * (1.0 / 5.0) * k1);
    const VectorC k3 = L * VectorC(v + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const VectorC k4 =
        L * VectorC(v + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    const VectorC k5 =
        L * VectorC(v + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                             64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const VectorC k6 =
        L * VectorC(v + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                             46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                             5103.0 / 18656.0 * k5));
    out = v + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                   2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    const VectorC k7 = L * out;
    const VectorC v4 = v + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                                393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                                187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
    err_norm = (out - v4).norm();
}

void integrate(const SparseC& L, VectorC& v, double time, double rel_tol,
               double rate) {
    if (time <= 0.0) return;
    double t = 0.0;
    double h = std::min(time, 0.1 / rate);
    int rejects = 0;
    while (t < time) {
        h = std::min(h, time - t);
        VectorC next;
        double err;
        dopri_step(L, v, h, next, err);
        const double tol = rel_tol * std::max(1.0, v.norm());
        if (err <= tol || h <= 1e-16 / rate) {
            v = std::move(next);
            t += h;
            const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            rejects = 0;
        } else {
            h *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
            if (++rejects > 60)
                throw std::runtime_error("lindblad: time integration failed to advance");
        }
    }
}

} // namespace

MatrixC evolve(const LindbladModel& model, const MatrixC& rho0, double time,
               double rel_tol) {
    const SparseC L = vectorized_liouvillian(model);
    VectorC v = vec(rho0);
    integrate(L, v, time, rel_tol, rate_scale(model));
    return unvec(v, model.space.dim());
}

SteadyDensity steady_state(const LindbladModel& model, const SteadyOptions& opts) {
    double max_rate = 0.0, min_rate = std::numeric_limits<double>::infinity();
    for (const auto& j : model.jumps)
        if (j.rate > 0.0) {
            max_rate = std::max(max_rate, j.rate);
            min_rate = std::min(min_rate, j.rate);
        }
    if (max_rate == 0.0)
        throw std::domain_error("steady_state: model has no dissipative channel");

    const int d = model.space.dim();
    const SparseC L = vectorized_liouvillian(model);
    MatrixC rho;

    if (opts.method == SteadyMethod::null_space) {
        // solve (L + e_r t^T) x = e_r, t the trace functional; the steady
        // vector is the unique solution up to normalization
        std::vector<int> anchor_rows = {0, d * d - 1};
        bool solved = false;
        for (int r : anchor_rows) {
            SparseC M = L;
            std::vector<Eigen::Triplet<complexd>> trips;
            trips.reserve(d);
            for (int i = 0; i < d; ++i) trips.emplace_back(r, i * (d + 1), 1.0);
            SparseC anchor(d * d, d * d);
            anchor.setFromTriplets(trips.begin(), trips.end());
            M = M + anchor;
            M.makeCompressed();
            Eigen::SparseLU<SparseC> lu(M);
            if (lu.info() != Eigen::Success) continue;
            VectorC rhs = VectorC::Zero(d * d);
            rhs(r) = 1.0;
            VectorC x = lu.solve(rhs);
            if (lu.info() != Eigen::Success) continue;
            rho = unvec(x, d);
            solved = true;
            break;
        }
        if (!solved) throw std::runtime_error("steady_state: null-space solve failed");
    } else {
        // adaptive evolution from the vacuum/ground product state until the
        // tracked observables drift less than drift tolerance over three
        // consecutive windows of the slowest dissipative timescale
        VectorC v = VectorC::Zero(d * d);
        v(0) = 1.0;
        const double window = 0.1 / min_rate;
        const double drift_tol = std::max(opts.tol, 1e-6);
        const int max_windows =
            static_cast<int>(std::min(1e9, 10.0 * opts.max_time_factor));
        Observables prev;
        bool have_prev = false;
        int calm = 0;
        bool done = false;
        for (int w = 0; w < max_windows && !done; ++w) {
            integrate(L, v, window, 1e-10, max_rate);
            const Observables now = observables(model, unvec(v, d));
            if (have_prev) {
                double drift = std::abs(now.n - prev.n);
                for (size_t j = 0; j < now.p_e.size(); ++j)
                    drift = std::max(drift, std::abs(now.p_e[j] - prev.p_e[j]));
                calm = drift < drift_tol ? calm + 1 : 0;
                if (calm >= 3) done = true;
            }
            prev = now;
            have_prev = true;
        }
        if (!done)
            throw std::runtime_error("steady_state: time evolution did not converge");
        rho = unvec(v, d);
    }

    SteadyDensity out;
    out.rho = hermitize_normalize(rho);
    out.residual = apply_liouvillian(model, out.rho).norm() / max_rate;
    out.obs = observables(model, out.rho);
    return out;
}

CutoffResult converge_cutoff(const std::function<double(int)>& observable_at,
                             double rel_tol, int n_start, int n_step,
                             int n_ceiling) {
    CutoffResult res;
    double prev = observable_at(n_start);
    res.history.push_back(prev);
    for (int n = n_start + n_step; n <= n_ceiling; n += n_step) {
        const double value = observable_at(n);
        res.history.push_back(value);
        const double change = std::abs(value - prev) / std::max(std::abs(value), 1e-12);
        if (change < rel_tol) {
            res.n_converged = n;
            res.value = value;
            return res;
        }
        prev = value;
    }
    throw CutoffError("converge_cutoff: ceiling reached without convergence",
                      res.history);
}

} // namespace cavcool::lindblad
