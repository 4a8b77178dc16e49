#include "disent/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "disent/common.hpp"

namespace disent::solver {

namespace {

constexpr double kDegenerateGap = 1e-9;

// Replaces the eigenvector columns [begin, end) of a degenerate cluster with
// an orthonormal basis of the same subspace chosen by computational-basis
// alignment: project each basis vector onto the cluster subspace, then
// Gram-Schmidt the projections in order of decreasing projection norm
// (ties broken by basis index).
void align_degenerate_cluster(Eigen::Matrix4cd& vectors, int begin, int end) {
    const int size = end - begin;
    const Eigen::MatrixXcd span = vectors.block(0, begin, 4, size);

    std::array<Eigen::Vector4cd, 4> projections;
    std::array<double, 4> norms{};
    for (int b = 0; b < 4; ++b) {
        const Eigen::VectorXcd coeffs = span.adjoint() * Eigen::Vector4cd::Unit(b);
        projections[static_cast<std::size_t>(b)] = span * coeffs;
        norms[static_cast<std::size_t>(b)] = projections[static_cast<std::size_t>(b)].norm();
    }
    // Near-equal projection norms count as ties and keep basis-index order.
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return norms[static_cast<std::size_t>(a)] >
               norms[static_cast<std::size_t>(b)] + 1e-12;
    });

    int accepted = 0;
    for (int b : order) {
        if (accepted == size) break;
        Eigen::Vector4cd v = projections[static_cast<std::size_t>(b)];
        for (int k = 0; k < accepted; ++k) {
            const Eigen::Vector4cd prev = vectors.col(begin + k);
            v -= prev * (prev.adjoint() * v);
        }
        const double n = v.norm();
        if (n < 1e-7) continue;  // basis vector (numerically) outside the subspace
        vectors.col(begin + accepted) = v / n;
        ++accepted;
    }
    if (accepted != size) {
        throw std::runtime_error("degenerate-cluster alignment failed to span subspace");
    }
}

void fix_phase(Eigen::Matrix4cd& vectors, int col) {
    int arg_max = 0;
    double best = -1.0;
    for (int r = 0; r < 4; ++r) {
        const double mag = std::abs(vectors(r, col));
        if (mag > best + 1e-15) {
            best = mag;
            arg_max = r;
        }
    }
    const cdouble top = vectors(arg_max, col);
    if (std::abs(top) > 0.0) {
        vectors.col(col) *= std::conj(top) / std::abs(top);
    }
}

}  // namespace

EigResult4 hermitian_eig4(const Eigen::Matrix4cd& matrix) {
    const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-8) {
        throw std::invalid_argument("matrix is not Hermitian: deviation " +
                                    std::to_string(herm_dev));
    }
    const Eigen::Matrix4cd sym = (matrix + matrix.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig4: eigenvalue solve failed");
    }

    // Eigen returns ascending order; flip to descending.
    EigResult4 result;
    for (int k = 0; k < 4; ++k) {
        result.eigenvalues(k) = solver.eigenvalues()(3 - k);
        result.eigenvectors.col(k) = solver.eigenvectors().col(3 - k);
    }

    int begin = 0;
    while (begin < 4) {
        int end = begin + 1;
        while (end < 4 &&
               result.eigenvalues(end - 1) - result.eigenvalues(end) < kDegenerateGap) {
            ++end;
        }
        if (end - begin > 1) {
            align_degenerate_cluster(result.eigenvectors, begin, end);
        }
        begin = end;
    }
    for (int k = 0; k < 4; ++k) fix_phase(result.eigenvectors, k);
    return result;
}

DisentanglingGate build_disentangling_gate(const qsim::PairDensityMatrix& rho) {
    const EigResult4 eig = hermitian_eig4(rho.m);

    DisentanglingGate gate;
    gate.i = rho.i;
    gate.j = rho.j;
    gate.eigenvalues_used = eig.eigenvalues;
    // U |phi_k> = |b_k>: row k is the conjugated eigenvector of lambda_k.
    gate.unitary = eig.eigenvectors.adjoint();

    const Eigen::Matrix4cd transformed = gate.unitary * rho.m * gate.unitary.adjoint();
    double off_diag = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r != c) off_diag = std::max(off_diag, std::abs(transformed(r, c)));
        }
    }
    if (off_diag > 1e-9) {
        std::ostringstream msg;
        msg << "disentangling gate failed to diagonalize the pair RDM: max off-diagonal "
            << off_diag;
        throw std::runtime_error(msg.str());
    }
    return gate;
}

DisentanglingGate apply_local_solver(qsim::Statevector& state, int i, int j) {
    const qsim::PairDensityMatrix rho = qsim::reduced_density_pair(state, i, j);
    DisentanglingGate gate = build_disentangling_gate(rho);
    qsim::apply_two_qubit_gate(state, i, j, gate.unitary);
    return gate;
}

std::string gate_to_json(const DisentanglingGate& gate) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            row.push_back({gate.unitary(r, c).real(), gate.unitary(r, c).imag()});
        }
        rows.push_back(row);
    }
    nlohmann::json j;
    j["pair"] = {gate.i, gate.j};
    j["unitary"] = rows;
    j["eigenvalues"] = {gate.eigenvalues_used(0), gate.eigenvalues_used(1),
                        gate.eigenvalues_used(2), gate.eigenvalues_used(3)};
    return j.dump();
}

}  // namespace disent::solver
