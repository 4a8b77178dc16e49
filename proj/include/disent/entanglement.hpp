#pragma once

#include <Eigen/Dense>
#include <array>

namespace disent::ent {

/// Spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho);

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), h(0) = h(1) = 0.
/// x must lie in [0, 1] up to 1e-12.
double binary_entropy(double x);

/// Entanglement of formation from concurrence: h((1 + sqrt(1 - C^2)) / 2).
double entanglement_of_formation(double concurrence_value);

struct ConcurrenceReport {
    double concurrence = 0.0;            // max(0, s0 - s1 - s2 - s3), in [0, 1]
    std::array<double, 4> sqrt_eigs{};   // sqrt of eigenvalues of rho * spin_flip(rho), descending
    double eof = 0.0;                    // bits
};

/// Wootters concurrence of a two-qubit density matrix. The spectrum of the
/// non-Hermitian product rho * rho~ is obtained from the Hermitian form
/// sqrt(rho) * rho~ * sqrt(rho), which shares its eigenvalues.
ConcurrenceReport concurrence(const Eigen::Matrix4cd& rho);

}  // namespace disent::ent
