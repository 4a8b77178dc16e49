#include "disent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disent/common.hpp"

namespace disent::ent {

namespace {

Eigen::Matrix4cd sigma_yy() {
    // sigma_y (x) sigma_y is real: antidiagonal(-1, 1, 1, -1).
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}

}  // namespace

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
    static const Eigen::Matrix4cd yy = sigma_yy();
    return yy * rho.conjugate() * yy;
}

double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw std::invalid_argument("binary_entropy argument outside [0, 1]: " +
                                    std::to_string(x));
    }
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double entanglement_of_formation(double concurrence_value) {
    const double c = std::clamp(concurrence_value, 0.0, 1.0);
    return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

ConcurrenceReport concurrence(const Eigen::Matrix4cd& rho) {
    // sqrt(rho) from the spectral decomposition, clamping round-off negatives.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_solver(rho);
    if (rho_solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue solve failed on rho in concurrence");
    }
    Eigen::Vector4d lambda = rho_solver.eigenvalues();
    for (int k = 0; k < 4; ++k) lambda(k) = std::sqrt(std::max(lambda(k), 0.0));
    const Eigen::Matrix4cd sqrt_rho = rho_solver.eigenvectors() *
                                      lambda.asDiagonal().toDenseMatrix().cast<cdouble>() *
                                      rho_solver.eigenvectors().adjoint();

    // Eigenvalues of rho * rho~ equal those of the Hermitian
    // sqrt(rho) * rho~ * sqrt(rho).
    const Eigen::Matrix4cd herm = sqrt_rho * spin_flip(rho) * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue solve failed on rho*rho~ in concurrence");
    }

    ConcurrenceReport report;
    Eigen::Vector4d nu = solver.eigenvalues();
    std::array<double, 4> s{};
    for (int k = 0; k < 4; ++k) s[static_cast<std::size_t>(k)] = std::sqrt(std::max(nu(k), 0.0));
    std::sort(s.begin(), s.end(), std::greater<double>());
    report.sqrt_eigs = s;
    report.concurrence = std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
    report.eof = entanglement_of_formation(report.concurrence);
    return report;
}

}  // namespace disent::ent
