#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "disent/common.hpp"

namespace disent::qsim {

/// Dense pure state of an L-qubit register, 2 <= L <= 8 for the tasks here
/// (single qubits are allowed as building blocks). Qubit 0 is the most
/// significant bit of the amplitude index, so basis index b carries the bit
/// of qubit q at position L-1-q.
struct Statevector {
    int num_qubits = 0;
    std::vector<cdouble> amplitudes;

    Statevector() = default;
    explicit Statevector(int n)
        : num_qubits(n), amplitudes(std::size_t{1} << n, cdouble{0.0, 0.0}) {}

    std::size_t dim() const { return amplitudes.size(); }
    double norm_sq() const;

    // Bit of qubit q in basis index b under the MSB-first convention.
    int bit(std::size_t basis_index, int qubit) const {
        return static_cast<int>((basis_index >> (num_qubits - 1 - qubit)) & 1u);
    }
};

/// 4x4 reduced density matrix of an ordered qubit pair (i, j), i < j.
/// Row/column index = 2*(bit of qubit i) + (bit of qubit j).
struct PairDensityMatrix {
    int i = 0;
    int j = 1;
    Eigen::Matrix4cd m;
};

/// Block sizes of an initial-state family, e.g. "RR-RR-RR" -> {2, 2, 2}.
struct EntanglementPattern {
    std::vector<int> blocks;

    int total_qubits() const;
    std::string label() const;
};

/// Parses a pattern label matching R+(-R+)*. Throws std::invalid_argument
/// naming the offending character position otherwise.
EntanglementPattern parse_pattern(const std::string& label);

/// Haar-uniform pure state: i.i.d. standard complex normal amplitudes,
/// normalized. num_qubits must be in [1, 8].
Statevector haar_random_state(int num_qubits, RandomSource& rng);
Statevector haar_random_state(int num_qubits, std::uint64_t seed);

/// Tensor product of independent Haar-random states, one per pattern block,
/// on consecutive qubit groups.
Statevector sample_pattern_state(const EntanglementPattern& pattern, RandomSource& rng);
Statevector sample_pattern_state(const EntanglementPattern& pattern, std::uint64_t seed);

void apply_single_qubit_gate(Statevector& state, int qubit, const Eigen::Matrix2cd& gate);

/// Applies a two-qubit unitary to qubits (i, j), identity elsewhere.
/// The gate must be unitary within 1e-10; the measured deviation is reported
/// otherwise.
void apply_two_qubit_gate(Statevector& state, int i, int j, const Eigen::Matrix4cd& gate);

PairDensityMatrix reduced_density_pair(const Statevector& state, int i, int j);
Eigen::Matrix2cd reduced_density_single(const Statevector& state, int qubit);

/// Von Neumann entropy in bits: -sum lambda_k log2 lambda_k with eigenvalues
/// below 1e-12 treated as zero; clamped to [0, log2(dim)]. The matrix must be
/// Hermitian, unit-trace and PSD within 1e-8.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// Entropy of every single-qubit marginal, in qubit order.
std::vector<double> single_qubit_entropies(const Statevector& state);

/// Debug serialization: {"num_qubits": L, "amplitudes": [[re, im], ...]}.
std::string statevector_to_json(const Statevector& state);
Statevector statevector_from_json(const std::string& text);

}  // namespace disent::qsim
