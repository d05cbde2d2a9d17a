// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file openquantum.hpp
 * @brief Finite-dimensional density matrices under unitary groups and GKSL semigroups.
 *
 *     d rho/dt = L rho = -i[H, rho] + sum_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho})
 *
 * lindblad_evolve applies e^{L t} for t >= 0 through the n^2 x n^2
 * superoperator in column-stacking order, vec(A X B) = (B^T (x) A) vec(X).
 * von_neumann_evolve applies e^{-iHt} rho e^{iHt} for any real t.
 */

#pragma once

#include <gamowkit/core.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace gamowkit {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxOpenDim = 16;
inline constexpr double kDensityInputTol = 1e-12;
inline constexpr double kDensityEvolvedTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

namespace detail {

[[nodiscard]] inline double hermiticity_deviation(const CMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

[[nodiscard]] inline bool all_finite(const CMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_finite(m(i, j))) return false;
    return true;
}

inline void require_square(const CMatrix& m, const char* what) {
    require(m.rows() == m.cols() && m.rows() >= 1, ErrorKind::InvalidModel, std::string(what) + " must be square",
            {{"rows", std::to_string(m.rows())}, {"cols", std::to_string(m.cols())}});
    require(m.rows() <= kMaxOpenDim, ErrorKind::InvalidModel, std::string(what) + " exceeds the dimension cap",
            {{"dim", std::to_string(m.rows())}, {"max", std::to_string(kMaxOpenDim)}});
    require(all_finite(m), ErrorKind::InvalidModel, std::string(what) + " has non-finite entries");
}

}  // namespace detail

/**
 * Hermitian, unit-trace, positive semidefinite n x n matrix, n <= 16.
 * Eigenvalues down to -1e-10 are accepted as round-off.
 */
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix rho, double tol = kDensityInputTol) : DensityMatrix(std::move(rho), tol, false) {}

    /// Pure state |psi><psi| / <psi|psi>.
    static DensityMatrix pure(const CVector& psi) {
        const double n2 = psi.squaredNorm();
        detail::require(n2 > 0.0 && std::isfinite(n2), ErrorKind::InvalidModel, "state vector must be non-zero");
        return DensityMatrix(psi * psi.adjoint() / n2);
    }

    /// |k><k| in dimension n.
    static DensityMatrix basis(int n, int k) {
        detail::require(n >= 1 && k >= 0 && k < n, ErrorKind::InvalidModel, "basis index out of range",
                        {{"dim", std::to_string(n)}, {"index", std::to_string(k)}});
        CMatrix m = CMatrix::Zero(n, n);
        m(k, k) = 1.0;
        return DensityMatrix(std::move(m));
    }

    /// Wraps the output of an evolution; violations there are invariant failures.
    static DensityMatrix evolved(CMatrix rho) { return DensityMatrix(std::move(rho), kDensityEvolvedTol, true); }

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return rho_; }
    [[nodiscard]] Complex operator()(int i, int j) const { return rho_(i, j); }
    [[nodiscard]] Complex trace() const { return rho_.trace(); }
    [[nodiscard]] double purity() const { return (rho_ * rho_).trace().real(); }
    [[nodiscard]] double min_eigenvalue() const { return eigenvalues().minCoeff(); }

    /// Ascending eigenvalues of the Hermitian part.
    [[nodiscard]] Eigen::VectorXd eigenvalues() const {
        const CMatrix herm = 0.5 * (rho_ + rho_.adjoint());
        return Eigen::SelfAdjointEigenSolver<CMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues();
    }

    friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) { return a.rho_ == b.rho_; }

private:
    DensityMatrix(CMatrix rho, double tol, bool evolved) : rho_(std::move(rho)) {
        detail::require_square(rho_, "density matrix");
        const ErrorKind kind = evolved ? ErrorKind::InvariantViolation : ErrorKind::InvalidModel;
        const double herm = detail::hermiticity_deviation(rho_);
        detail::require(herm <= tol, kind, "density matrix is not Hermitian", {{"deviation", detail::num(herm)}});
        const double tr = std::abs(rho_.trace() - Complex(1.0, 0.0));
        detail::require(tr <= tol, kind, "density matrix trace is not 1", {{"deviation", detail::num(tr)}});
        const double lo = min_eigenvalue();
        detail::require(lo >= kEigenvalueFloor, ErrorKind::InvariantViolation, "density matrix is not positive",
                        {{"min_eigenvalue", detail::num(lo)}});
    }

    CMatrix rho_;
};

struct JumpOperator {
    CMatrix matrix;
    double rate = 1.0;
};

/// H and jump operators with their rates folded in (L_k = sqrt(rate) A_k).
class LiouvillianGenerator {
public:
    LiouvillianGenerator(CMatrix h, const std::vector<JumpOperator>& jumps = {}) : h_(std::move(h)) {
        detail::require_square(h_, "Hamiltonian");
        const double herm = detail::hermiticity_deviation(h_);
        detail::require(herm <= kDensityInputTol, ErrorKind::InvalidModel, "Hamiltonian is not Hermitian",
                        {{"deviation", detail::num(herm)}});
        for (const auto& j : jumps) {
            detail::require_square(j.matrix, "jump operator");
            detail::require(j.matrix.rows() == h_.rows(), ErrorKind::InvalidModel,
                            "jump operator dimension does not match H",
                            {{"jump", std::to_string(j.matrix.rows())}, {"h", std::to_string(h_.rows())}});
            detail::require(std::isfinite(j.rate) && j.rate >= 0.0, ErrorKind::InvalidModel,
                            "jump rate must be non-negative", {{"rate", detail::num(j.rate)}});
            jumps_.push_back(std::sqrt(j.rate) * j.matrix);
            raw_.push_back(j);
        }
    }

    /// H = omega |e><e|, L = sqrt(gamma) |g><e| with |g> = |0>, |e> = |1>.
    static LiouvillianGenerator amplitude_damping(double gamma, double omega = 0.0) {
        CMatrix h = CMatrix::Zero(2, 2);
        h(1, 1) = omega;
        CMatrix a = CMatrix::Zero(2, 2);
        a(0, 1) = 1.0;
        return LiouvillianGenerator(h, {{a, gamma}});
    }

    /// H = (omega/2) sigma_z, L = sqrt(gamma/2) sigma_z.
    static LiouvillianGenerator pure_dephasing(double gamma, double omega = 0.0) {
        CMatrix z = CMatrix::Zero(2, 2);
        z(0, 0) = 1.0;
        z(1, 1) = -1.0;
        return LiouvillianGenerator(0.5 * omega * z, {{z, 0.5 * gamma}});
    }

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(h_.rows()); }
    [[nodiscard]] const CMatrix& hamiltonian() const noexcept { return h_; }
    [[nodiscard]] const std::vector<CMatrix>& jumps() const noexcept { return jumps_; }
    /// Jump operators as supplied, before folding in the rates.
    [[nodiscard]] const std::vector<JumpOperator>& raw_jumps() const noexcept { return raw_; }
    [[nodiscard]] bool dissipative() const noexcept { return !jumps_.empty(); }

private:
    CMatrix h_;
    std::vector<CMatrix> jumps_;
    std::vector<JumpOperator> raw_;
};

/// -i[H, rho] + sum_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho}).
[[nodiscard]] inline CMatrix liouvillian_apply(const LiouvillianGenerator& g, const CMatrix& rho) {
    detail::require(rho.rows() == g.dim() && rho.cols() == g.dim(), ErrorKind::InvalidModel,
                    "state dimension does not match the generator",
                    {{"state", std::to_string(rho.rows())}, {"generator", std::to_string(g.dim())}});
    const Complex i(0.0, 1.0);
    const CMatrix& h = g.hamiltonian();
    CMatrix out = -i * (h * rho - rho * h);
    for (const auto& l : g.jumps()) {
        const CMatrix ldl = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return out;
}

[[nodiscard]] inline CMatrix liouvillian_apply(const LiouvillianGenerator& g, const DensityMatrix& rho) {
    return liouvillian_apply(g, rho.matrix());
}

namespace detail {

[[nodiscard]] inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

[[nodiscard]] inline CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

[[nodiscard]] inline CMatrix unvec(const CVector& v, int n) { return Eigen::Map<const CMatrix>(v.data(), n, n); }

}  // namespace detail

/// n^2 x n^2 matrix S with vec(L rho) = S vec(rho), column stacking.
[[nodiscard]] inline CMatrix superoperator(const LiouvillianGenerator& g) {
    const int n = g.dim();
    const CMatrix id = CMatrix::Identity(n, n);
    const Complex i(0.0, 1.0);
    const CMatrix& h = g.hamiltonian();
    CMatrix s = -i * (detail::kron(id, h) - detail::kron(h.transpose(), id));
    for (const auto& l : g.jumps()) {
        const CMatrix ldl = l.adjoint() * l;
        s += detail::kron(l.conjugate(), l) - 0.5 * (detail::kron(id, ldl) + detail::kron(ldl.transpose(), id));
    }
    return s;
}

/**
 * e^A by Pade-13 scaling and squaring (Higham 2005). Throws NonConvergence
 * if the result is not finite.
 */
[[nodiscard]] inline CMatrix expm(const CMatrix& a) {
    detail::require(a.rows() == a.cols(), ErrorKind::InvalidModel, "matrix exponential needs a square matrix");
    detail::require(detail::all_finite(a), ErrorKind::InvalidModel, "matrix exponential input is not finite");
    static constexpr double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                     1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                     670442572800.0,      33522128640.0,       1323241920.0,
                                     40840800.0,          960960.0,            16380.0,
                                     182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const CMatrix x = a / std::ldexp(1.0, s);
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix x2 = x * x;
    const CMatrix x4 = x2 * x2;
    const CMatrix x6 = x4 * x2;
    const CMatrix u =
        x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const CMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
    CMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    detail::require(detail::all_finite(r), ErrorKind::NonConvergence, "matrix exponential overflowed",
                    {{"norm", detail::num(norm1)}, {"squarings", std::to_string(s)}});
    return r;
}

namespace detail {

inline void require_lindblad_time(const LiouvillianGenerator& g, double t) {
    if (g.dissipative() && !(t >= 0.0))
        throw ToolkitError(ErrorKind::SemigroupDomain, "dissipative evolution is defined for t >= 0 only",
                           {{"t", num(t)}});
    require(std::isfinite(t), ErrorKind::InvalidModel, "time must be finite", {{"t", num(t)}});
}

inline void require_state_dim(const LiouvillianGenerator& g, const DensityMatrix& rho) {
    require(rho.dim() == g.dim(), ErrorKind::InvalidModel, "state dimension does not match the generator",
            {{"state", std::to_string(rho.dim())}, {"generator", std::to_string(g.dim())}});
}

}  // namespace detail

/// Lambda(t) = e^{L t} as an n^2 x n^2 matrix.
[[nodiscard]] inline CMatrix lindblad_propagator(const LiouvillianGenerator& g, double t) {
    detail::require_lindblad_time(g, t);
    return expm(superoperator(g) * t);
}

/// rho(t) = e^{L t} rho0. Negative t is allowed only without jumps.
[[nodiscard]] inline DensityMatrix lindblad_evolve(const LiouvillianGenerator& g, const DensityMatrix& rho0, double t) {
    detail::require_state_dim(g, rho0);
    if (t == 0.0) return rho0;
    const CMatrix p = lindblad_propagator(g, t);
    return DensityMatrix::evolved(detail::unvec(p * detail::vec(rho0.matrix()), g.dim()));
}

/// rho(t) = U rho0 U^+, U = e^{-iHt}, for any real t.
[[nodiscard]] inline DensityMatrix von_neumann_evolve(const CMatrix& h, const DensityMatrix& rho0, double t) {
    detail::require_square(h, "Hamiltonian");
    const double herm = detail::hermiticity_deviation(h);
    detail::require(herm <= kDensityInputTol, ErrorKind::InvalidModel, "Hamiltonian is not Hermitian",
                    {{"deviation", detail::num(herm)}});
    detail::require(h.rows() == rho0.dim(), ErrorKind::InvalidModel, "state dimension does not match H");
    detail::require(std::isfinite(t), ErrorKind::InvalidModel, "time must be finite", {{"t", detail::num(t)}});
    if (t == 0.0) return rho0;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const auto& lam = eig.eigenvalues();
    CVector phase(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) phase(k) = std::exp(Complex(0.0, -lam(k) * t));
    const CMatrix u = eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
    return DensityMatrix::evolved(u * rho0.matrix() * u.adjoint());
}

/// max |Lambda(t2) Lambda(t1) rho0 - Lambda(t1 + t2) rho0|.
[[nodiscard]] inline double semigroup_compose_check(const LiouvillianGenerator& g, const DensityMatrix& rho0,
                                                    double t1, double t2) {
    detail::require_lindblad_time(g, t1);
    detail::require_lindblad_time(g, t2);
    const DensityMatrix step = lindblad_evolve(g, lindblad_evolve(g, rho0, t1), t2);
    const DensityMatrix once = lindblad_evolve(g, rho0, t1 + t2);
    return (step.matrix() - once.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace gamowkit
