#pragma once

#include <Eigen/Dense>
#include <string>

#include "disent/qsim.hpp"

namespace disent::solver {

struct EigResult4 {
    Eigen::Vector4d eigenvalues;    // descending
    Eigen::Matrix4cd eigenvectors;  // orthonormal columns, aligned with eigenvalues
};

/// Spectral decomposition of a 4x4 Hermitian matrix with a deterministic
/// basis choice. Eigenvalues are returned in descending order. Within any
/// degenerate cluster (gap < 1e-9) the basis maximizes alignment with the
/// computational basis: the cluster projector is re-diagonalized by
/// orthonormalizing its projections of basis vectors, largest projection
/// first. Each eigenvector's largest-magnitude component is made real
/// positive.
EigResult4 hermitian_eig4(const Eigen::Matrix4cd& matrix);

/// The local disentangling update for one pair: rows of `unitary` are the
/// conjugated eigenvectors of the pair RDM, ordered so the eigenvector of
/// the k-th largest eigenvalue maps onto the k-th computational basis state.
struct DisentanglingGate {
    int i = 0;
    int j = 1;
    Eigen::Matrix4cd unitary;
    Eigen::Vector4d eigenvalues_used;  // descending
};

DisentanglingGate build_disentangling_gate(const qsim::PairDensityMatrix& rho);

/// Applies the disentangling gate for pair (i, j) to the full register,
/// in place. The pair's new RDM is diagonal and has zero concurrence.
DisentanglingGate apply_local_solver(qsim::Statevector& state, int i, int j);

/// Gate matrix as nested [[re, im], ...] rows for trajectory logs.
std::string gate_to_json(const DisentanglingGate& gate);

}  // namespace disent::solver
