#pragma once

// Brute-force reference computations used to cross-check the closed forms:
// qubit channels at the Kraus/Choi level and single-mode Gaussian states at
// the covariance level.

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qnetcap/channels.hpp"

namespace qnetcap::oracles {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Qubit channel in Kraus form. Construction rejects sets that are not
/// trace preserving to 1e-12.
class QubitChannel {
public:
    explicit QubitChannel(std::vector<Matrix2c> kraus);

    static QubitChannel identity();
    static QubitChannel amplitude_damping(double p);
    static QubitChannel dephasing(double p);

    const std::vector<Matrix2c>& kraus() const { return kraus_; }

    Matrix2c apply(const Matrix2c& rho) const;

    /// Channel that applies `this` first, then `next`.
    QubitChannel then(const QubitChannel& next) const;

private:
    std::vector<Matrix2c> kraus_;
};

/// Two-qubit Choi state, reference system first (basis index 2a + b).
class ChoiMatrix {
public:
    explicit ChoiMatrix(const Matrix4c& rho);

    const Matrix4c& matrix() const { return rho_; }

    /// Reduced state of the channel output (traces out the reference).
    Matrix2c output_marginal() const;
    /// Reduced state of the reference (traces out the output).
    Matrix2c reference_marginal() const;

private:
    Matrix4c rho_;
};

/// Real symmetric single-mode covariance matrix, vacuum = I/2.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(const Eigen::Matrix2d& v);

    static CovarianceMatrix vacuum();

    const Eigen::Matrix2d& matrix() const { return v_; }

private:
    Eigen::Matrix2d v_;
};

struct CoherentInformation {
    double ci;   ///< S(output) - S(joint)
    double rci;  ///< S(reference) - S(joint)
};

/// (I ⊗ E)(|Φ><Φ|) with |Φ> the maximally entangled two-qubit state.
ChoiMatrix choi_of(const QubitChannel& channel);

CoherentInformation ci_rci(const ChoiMatrix& choi);

/// Reverse coherent information of AD(p) on the purification of diag(1-u, u),
/// by explicit eigendecomposition of the 4x4 output state.
double ad_rci_at_u(double p, double u);

/// Applies V -> tau V + (nbar + |1 - tau|/2) I for each channel in order.
CovarianceMatrix gaussian_propagate(const CovarianceMatrix& v, std::span<const ThermalLoss> channels);

/// Von Neumann entropy in bits; eigenvalues below 1e-14 count as zero.
template <typename Matrix>
double von_neumann_entropy(const Matrix& rho);

extern template double von_neumann_entropy<Matrix2c>(const Matrix2c&);
extern template double von_neumann_entropy<Matrix4c>(const Matrix4c&);

}  // namespace qnetcap::oracles
