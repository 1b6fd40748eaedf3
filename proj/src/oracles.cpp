#include "qnetcap/oracles.hpp"

#include <cmath>
#include <sstream>

#include "qnetcap/errors.hpp"

namespace qnetcap::oracles {

namespace {

constexpr double kTraceTolerance = 1e-12;
constexpr double kEigenFloor = 1e-14;

Eigen::Matrix4cd kron(const Matrix2c& a, const Matrix2c& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Matrix2c partial_trace_reference(const Matrix4c& rho) {
    Matrix2c out = Matrix2c::Zero();
    for (int a = 0; a < 2; ++a) out += rho.block<2, 2>(2 * a, 2 * a);
    return out;
}

Matrix2c partial_trace_output(const Matrix4c& rho) {
    Matrix2c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

}  // namespace

template <typename Matrix>
double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda < -1e-10) throw DomainError("density matrix is not positive semidefinite");
        if (lambda > kEigenFloor) s -= lambda * std::log2(lambda);
    }
    return s;
}

template double von_neumann_entropy<Matrix2c>(const Matrix2c&);
template double von_neumann_entropy<Matrix4c>(const Matrix4c&);

QubitChannel::QubitChannel(std::vector<Matrix2c> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw KrausError("a channel needs at least one Kraus operator");
    Matrix2c sum = Matrix2c::Zero();
    for (const auto& k : kraus_) sum += k.adjoint() * k;
    const double deviation = (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff();
    if (deviation > kTraceTolerance) {
        std::ostringstream msg;
        msg << "Kraus operators are not trace preserving (deviation " << deviation << ")";
        throw KrausError(msg.str());
    }
}

QubitChannel QubitChannel::identity() { return QubitChannel({Matrix2c::Identity()}); }

QubitChannel QubitChannel::amplitude_damping(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("damping probability must lie in [0, 1]");
    Matrix2c k0 = Matrix2c::Zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    Matrix2c k1 = Matrix2c::Zero();
    k1(0, 1) = std::sqrt(p);
    return QubitChannel({k0, k1});
}

QubitChannel QubitChannel::dephasing(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("dephasing probability must lie in [0, 1]");
    Matrix2c z = Matrix2c::Zero();
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return QubitChannel({std::sqrt(1.0 - p) * Matrix2c::Identity(), std::sqrt(p) * z});
}

Matrix2c QubitChannel::apply(const Matrix2c& rho) const {
    Matrix2c out = Matrix2c::Zero();
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

QubitChannel QubitChannel::then(const QubitChannel& next) const {
    std::vector<Matrix2c> product;
    product.reserve(kraus_.size() * next.kraus_.size());
    for (const auto& b : next.kraus_)
        for (const auto& a : kraus_) product.push_back(b * a);
    return QubitChannel(std::move(product));
}

ChoiMatrix::ChoiMatrix(const Matrix4c& rho) : rho_(rho) {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kTraceTolerance) {
        throw DomainError("Choi matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - 1.0) > kTraceTolerance) {
        throw DomainError("Choi matrix does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kTraceTolerance) {
        throw DomainError("Choi matrix is not positive semidefinite");
    }
}

Matrix2c ChoiMatrix::output_marginal() const { return partial_trace_reference(rho_); }

Matrix2c ChoiMatrix::reference_marginal() const { return partial_trace_output(rho_); }

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix2d& v) : v_(v) {
    if (std::abs(v_(0, 1) - v_(1, 0)) > kTraceTolerance) {
        throw DomainError("covariance matrix is not symmetric");
    }
    if (!(v_(0, 0) > 0.0) || !(v_.determinant() > 0.0)) {
        throw DomainError("covariance matrix is not positive definite");
    }
    if (v_.determinant() < 0.25 - kTraceTolerance) {
        throw DomainError("covariance matrix violates the uncertainty bound det V >= 1/4");
    }
}

CovarianceMatrix CovarianceMatrix::vacuum() {
    return CovarianceMatrix(0.5 * Eigen::Matrix2d::Identity());
}

ChoiMatrix choi_of(const QubitChannel& channel) {
    Matrix4c rho = Matrix4c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Matrix2c unit = Matrix2c::Zero();
            unit(i, j) = 1.0;
            rho.block<2, 2>(2 * i, 2 * j) = 0.5 * channel.apply(unit);
        }
    }
    return ChoiMatrix(rho);
}

CoherentInformation ci_rci(const ChoiMatrix& choi) {
    const double joint = von_neumann_entropy(choi.matrix());
    return {von_neumann_entropy(choi.output_marginal()) - joint,
            von_neumann_entropy(choi.reference_marginal()) - joint};
}

double ad_rci_at_u(double p, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("input excitation must lie in [0, 1]");
    const auto channel = QubitChannel::amplitude_damping(p);

    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = std::sqrt(1.0 - u);
    psi(3) = std::sqrt(u);
    const Matrix4c input = psi * psi.adjoint();

    Matrix4c output = Matrix4c::Zero();
    for (const auto& k : channel.kraus()) {
        const Matrix4c op = kron(Matrix2c::Identity(), k);
        output += op * input * op.adjoint();
    }
    return von_neumann_entropy(partial_trace_output(output)) - von_neumann_entropy(output);
}

CovarianceMatrix gaussian_propagate(const CovarianceMatrix& v,
                                    std::span<const ThermalLoss> channels) {
    Eigen::Matrix2d current = v.matrix();
    for (const auto& ch : channels) {
        if (!(ch.tau > 0.0 && ch.tau <= 1.0) || !(ch.nbar >= 0.0)) {
            throw DomainError("thermal-loss parameters out of range");
        }
        const double eps = ch.nbar + 0.5 * std::abs(1.0 - ch.tau);
        current = ch.tau * current + eps * Eigen::Matrix2d::Identity();
    }
    return CovarianceMatrix(current);
}

}  // namespace qnetcap::oracles
