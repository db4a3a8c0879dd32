#include <degenwave/spectral.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace degenwave {

namespace {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;
using NaturalLLT =
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                         Eigen::NaturalOrdering<int>>;

struct EnergyFactors {
    Eigen::SparseMatrix<double> Ls;  // S = Ls Ls^T, natural ordering
    Eigen::SparseMatrix<double> Lm;  // M = Lm Lm^T
    Eigen::VectorXd d;               // Lm^{-1} e_b
    int b = 0;
    double damp = 0.0;
};

EnergyFactors energy_factors(const OperatorMatrices& m) {
    const Eigen::SparseMatrix<double> S = m.stiffness_with_boundary();
    NaturalLLT llt_s(S);
    NaturalLLT llt_m(m.M);
    if (llt_s.info() != Eigen::Success || llt_m.info() != Eigen::Success)
        throw std::runtime_error("spectral: energy Gram factorization failed");

    EnergyFactors f;
    f.Ls = llt_s.matrixL();
    f.Lm = llt_m.matrixL();
    f.b = m.dof_map.boundary();
    f.damp = m.damp;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(S.rows());
    e(f.b) = 1.0;
    f.d = f.Lm.triangularView<Eigen::Lower>().solve(e);
    return f;
}

Eigen::MatrixXd dense_generator(const EnergyFactors& f) {
    const int n = static_cast<int>(f.Ls.rows());
    Eigen::MatrixXd W = Eigen::MatrixXd(f.Ls);
    f.Lm.triangularView<Eigen::Lower>().solveInPlace(W);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n) = W.transpose();
    A.bottomLeftCorner(n, n) = -W;
    A.bottomRightCorner(n, n).noalias() -= f.damp * f.d * f.d.transpose();
    return A;
}

// factorization of T_omega = S - omega^2 M + i omega damp e_b e_b^T shared
// by the B and B^H solves of one frequency
class OmegaSolver {
  public:
    OmegaSolver(const OperatorMatrices& m, const EnergyFactors& f,
                double omega)
        : omega_(omega),
          n_(static_cast<int>(f.Ls.rows())),
          b_(f.b),
          damp_(f.damp) {
        ls_ = f.Ls.cast<Complex>();
        lst_ = Eigen::SparseMatrix<double>(f.Ls.transpose()).cast<Complex>();
        lm_ = f.Lm.cast<Complex>();
        lmt_ = Eigen::SparseMatrix<double>(f.Lm.transpose()).cast<Complex>();
        mass_ = m.M.cast<Complex>();

        SparseC T = (m.stiffness_with_boundary() - omega * omega * m.M)
                        .cast<Complex>();
        T.coeffRef(b_, b_) += Complex(0.0, omega * damp_);
        T.makeCompressed();
        lu_.compute(T);
        if (lu_.info() != Eigen::Success)
            throw std::runtime_error(
                "resolvent: frequency-shifted factorization failed");
    }

    // B^{-1} y with B = i omega - A~ in energy coordinates
    Eigen::VectorXcd solve(const Eigen::VectorXcd& y) const {
        const Complex iw(0.0, omega_);
        const Eigen::VectorXcd tp =
            lst_.triangularView<Eigen::Upper>().solve(y.head(n_).eval());
        const Eigen::VectorXcd tq =
            lmt_.triangularView<Eigen::Upper>().solve(y.tail(n_).eval());

        Eigen::VectorXcd rhs = mass_ * tq + iw * (mass_ * tp).eval();
        rhs(b_) += damp_ * tp(b_);
        const Eigen::VectorXcd up = lu_.solve(rhs);
        const Eigen::VectorXcd uq = iw * up - tp;

        Eigen::VectorXcd out(2 * n_);
        out.head(n_) = lst_ * up;
        out.tail(n_) = lmt_ * uq;
        return out;
    }

    // B^{-H} y; T_omega^H = conj(T_omega), so one factorization serves both
    Eigen::VectorXcd solve_adjoint(const Eigen::VectorXcd& y) const {
        const Complex iw(0.0, omega_);
        const Eigen::VectorXcd wp = ls_ * y.head(n_);
        const Eigen::VectorXcd wq = lm_ * y.tail(n_);

        const Eigen::VectorXcd r = wp - iw * wq;
        const Eigen::VectorXcd yy = lu_.solve(r.conjugate()).conjugate();

        const Eigen::VectorXcd vq = mass_ * yy;
        Eigen::VectorXcd vp = -wq - iw * vq;
        vp(b_) += damp_ * yy(b_);

        Eigen::VectorXcd out(2 * n_);
        out.head(n_) = ls_.triangularView<Eigen::Lower>().solve(vp);
        out.tail(n_) = lm_.triangularView<Eigen::Lower>().solve(vq);
        return out;
    }

  private:
    double omega_;
    int n_;
    int b_;
    double damp_;
    SparseC ls_, lst_, lm_, lmt_, mass_;
    Eigen::SparseLU<SparseC> lu_;
};

int worker_count(int jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 4;
    if (const char* env = std::getenv("DEGENWAVE_THREADS")) {
        const int requested = std::atoi(env);
        if (requested > 0) hw = requested;
    }
    return std::max(1, std::min(hw, jobs));
}

}  // namespace

SpectrumReport spectrum(const OperatorMatrices& m, int dense_cap) {
    const int n = m.dof_map.total();
    if (2 * n > dense_cap)
        throw std::invalid_argument(
            "spectrum: first-order system size " + std::to_string(2 * n) +
            " exceeds the dense cap " + std::to_string(dense_cap) +
            "; lower n or raise the cap");

    const EnergyFactors f = energy_factors(m);
    const Eigen::MatrixXd A = dense_generator(f);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectrum: dense eigensolve failed");

    const Eigen::VectorXcd vals = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();
    const Eigen::VectorXcd dc = f.d.cast<Complex>();

    struct Entry {
        Complex certified;
        Complex raw;
        double trace;
    };
    std::vector<Entry> entries(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) {
        const auto x = vecs.col(i);
        const Complex z = dc.dot(x.tail(n));
        const double re = -f.damp * std::norm(z) / x.squaredNorm();
        // |z| via hypot stays positive where |z|^2 underflows; trapped
        // modes on strongly graded meshes reach traces below 1e-154
        const double tr = std::abs(z) / x.norm();
        entries[static_cast<std::size_t>(i)] = {Complex(re, vals(i).imag()),
                                                vals(i), tr};
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.certified.imag() != b.certified.imag())
            return a.certified.imag() < b.certified.imag();
        return a.certified.real() < b.certified.real();
    });

    SpectrumReport report;
    report.eigenvalues.reserve(entries.size());
    report.raw_eigenvalues.reserve(entries.size());
    report.boundary_trace.reserve(entries.size());
    double max_re = -std::numeric_limits<double>::infinity();
    double min_tr = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        report.eigenvalues.push_back(e.certified);
        report.raw_eigenvalues.push_back(e.raw);
        report.boundary_trace.push_back(e.trace);
        max_re = std::max(max_re, e.certified.real());
        min_tr = std::min(min_tr, e.trace);
    }
    report.max_real_part = max_re;
    report.min_boundary_trace = min_tr;
    return report;
}

ResolventSample resolvent_norm(const OperatorMatrices& m, double omega) {
    const EnergyFactors f = energy_factors(m);
    const OmegaSolver solver(m, f, omega);
    const int n2 = 2 * static_cast<int>(f.Ls.rows());

    std::uint64_t bits = 0;
    std::memcpy(&bits, &omega, sizeof(bits));
    std::mt19937_64 gen(bits ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd x(n2);
    for (int i = 0; i < n2; ++i) x(i) = Complex(dist(gen), dist(gen));
    x.normalize();

    // power iteration on (B^H B)^{-1}; the Rayleigh quotient is exactly
    // ||B^{-H} x||^2 and increases monotonically to 1/sigma_min^2
    double rho = 0.0, rho_prev = 0.0;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
        const Eigen::VectorXcd w = solver.solve_adjoint(x);
        rho = w.squaredNorm();
        if (!std::isfinite(rho) || rho > 1e200) {
            return {omega, std::numeric_limits<double>::infinity(), true,
                    true};
        }
        const Eigen::VectorXcd v = solver.solve(w);
        const double nv = v.norm();
        if (nv == 0.0 || !std::isfinite(nv))
            return {omega, std::numeric_limits<double>::infinity(), true,
                    true};
        x = v / nv;
        if (it >= 3 && std::abs(rho - rho_prev) <= 1e-8 * rho) {
            converged = true;
            break;
        }
        rho_prev = rho;
    }

    double norm = std::sqrt(rho);
    if (!converged && n2 <= 1500) {
        const Eigen::MatrixXcd B =
            Complex(0.0, omega) *
                Eigen::MatrixXcd::Identity(n2, n2) -
            dense_generator(f).cast<Complex>();
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(B);
        const double sigma = svd.singularValues().minCoeff();
        if (sigma == 0.0)
            return {omega, std::numeric_limits<double>::infinity(), true,
                    true};
        norm = 1.0 / sigma;
        converged = true;
    }

    return {omega, norm, norm > 1e12, converged};
}

Eigen::VectorXcd resolvent_apply(const OperatorMatrices& m, double omega,
                                 const Eigen::VectorXcd& rhs) {
    const EnergyFactors f = energy_factors(m);
    return OmegaSolver(m, f, omega).solve(rhs);
}

Eigen::VectorXcd resolvent_apply_adjoint(const OperatorMatrices& m,
                                         double omega,
                                         const Eigen::VectorXcd& rhs) {
    const EnergyFactors f = energy_factors(m);
    return OmegaSolver(m, f, omega).solve_adjoint(rhs);
}

Eigen::MatrixXd dense_energy_generator(const OperatorMatrices& m) {
    return dense_generator(energy_factors(m));
}

std::vector<ResolventSample> resolvent_sweep(const OperatorMatrices& m,
                                             double omega_min,
                                             double omega_max, int samples) {
    if (!(omega_min > 0.0) || !(omega_max >= omega_min))
        throw std::invalid_argument(
            "resolvent_sweep: need 0 < omega_min <= omega_max");
    if (samples < 1)
        throw std::invalid_argument("resolvent_sweep: samples must be >= 1");

    const double cap = mesh_frequency_cap(m);
    if (omega_max > cap) {
        std::cerr << "resolvent_sweep: omega_max " << omega_max
                  << " above the mesh frequency cap " << cap
                  << ", truncating\n";
        omega_max = cap;
        if (omega_min > omega_max)
            throw std::invalid_argument(
                "resolvent_sweep: window empty after truncation at the mesh "
                "frequency cap");
    }

    std::vector<double> omegas(static_cast<std::size_t>(samples));
    if (samples == 1) {
        omegas[0] = omega_min;
    } else {
        const double ratio = omega_max / omega_min;
        for (int k = 0; k < samples; ++k)
            omegas[static_cast<std::size_t>(k)] =
                omega_min *
                std::pow(ratio, static_cast<double>(k) / (samples - 1));
    }

    std::vector<ResolventSample> out(static_cast<std::size_t>(samples));
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= samples) return;
            try {
                out[static_cast<std::size_t>(i)] =
                    resolvent_norm(m, omegas[static_cast<std::size_t>(i)]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int nw = worker_count(samples);
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

double mesh_frequency_cap(const OperatorMatrices& m) {
    const double h_min = std::min(m.mesh.left.h_min(), m.mesh.right.h_min());
    return M_PI / (10.0 * h_min);
}

double resolved_band_limit(const OperatorMatrices& m) {
    // per-cell mean of the coefficient recovered from the stiffness
    // off-diagonal: K(i,i+1) = -W_c/h_c^2, mean alpha = W_c/h_c
    const auto& dm = m.dof_map;
    double limit = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < dm.total(); ++i) {
        const double k = -m.K.coeff(i, i + 1);
        if (k <= 0.0) continue;
        const double h = dm.dof_position(m.mesh, i + 1) -
                         dm.dof_position(m.mesh, i);
        limit = std::min(limit, (M_PI / 10.0) * std::sqrt(k / h));
    }
    return limit;
}

}  // namespace degenwave
