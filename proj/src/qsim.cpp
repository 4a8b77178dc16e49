#include "disent/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace disent::qsim {

namespace {

void check_qubit_range(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 8) {
        throw std::invalid_argument("num_qubits must be in [1, 8], got " +
                                    std::to_string(num_qubits));
    }
}

void check_pair(const Statevector& state, int i, int j) {
    if (!(0 <= i && i < j && j < state.num_qubits)) {
        throw std::invalid_argument("invalid qubit pair (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") for " +
                                    std::to_string(state.num_qubits) + " qubits");
    }
}

}  // namespace

double Statevector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

int EntanglementPattern::total_qubits() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0);
}

std::string EntanglementPattern::label() const {
    std::string out;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (k > 0) out += '-';
        out += std::string(static_cast<std::size_t>(blocks[k]), 'R');
    }
    return out;
}

EntanglementPattern parse_pattern(const std::string& label) {
    EntanglementPattern pattern;
    int run = 0;
    for (std::size_t pos = 0; pos < label.size(); ++pos) {
        const char c = label[pos];
        if (c == 'R') {
            ++run;
        } else if (c == '-') {
            if (run == 0) {
                throw std::invalid_argument("malformed pattern label at position " +
                                            std::to_string(pos) +
                                            ": '-' must follow at least one 'R'");
            }
            pattern.blocks.push_back(run);
            run = 0;
        } else {
            throw std::invalid_argument("malformed pattern label at position " +
                                        std::to_string(pos) + ": unexpected character '" +
                                        std::string(1, c) + "'");
        }
    }
    if (run == 0) {
        throw std::invalid_argument("malformed pattern label at position " +
                                    std::to_string(label.size()) +
                                    ": label must end with 'R'");
    }
    pattern.blocks.push_back(run);
    return pattern;
}

Statevector haar_random_state(int num_qubits, RandomSource& rng) {
    check_qubit_range(num_qubits);
    Statevector state(num_qubits);
    double norm = 0.0;
    for (auto& a : state.amplitudes) {
        a = rng.complex_gaussian();
        norm += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& a : state.amplitudes) a *= inv;
    return state;
}

Statevector haar_random_state(int num_qubits, std::uint64_t seed) {
    RandomSource rng(seed);
    return haar_random_state(num_qubits, rng);
}

Statevector sample_pattern_state(const EntanglementPattern& pattern, RandomSource& rng) {
    if (pattern.blocks.empty()) {
        throw std::invalid_argument("pattern has no blocks");
    }
    for (int b : pattern.blocks) {
        if (b < 1) throw std::invalid_argument("pattern block sizes must be >= 1");
    }
    const int total = pattern.total_qubits();
    check_qubit_range(total);

    // Kronecker product of per-block states; consecutive blocks occupy
    // consecutive qubits, which under the MSB-first convention is a plain
    // left-to-right tensor product of amplitude vectors.
    std::vector<cdouble> amps{cdouble{1.0, 0.0}};
    for (int b : pattern.blocks) {
        const Statevector block = haar_random_state(b, rng);
        std::vector<cdouble> next(amps.size() * block.dim());
        for (std::size_t x = 0; x < amps.size(); ++x) {
            for (std::size_t y = 0; y < block.dim(); ++y) {
                next[x * block.dim() + y] = amps[x] * block.amplitudes[y];
            }
        }
        amps = std::move(next);
    }
    Statevector state(total);
    state.amplitudes = std::move(amps);
    return state;
}

Statevector sample_pattern_state(const EntanglementPattern& pattern, std::uint64_t seed) {
    RandomSource rng(seed);
    return sample_pattern_state(pattern, rng);
}

void apply_single_qubit_gate(Statevector& state, int qubit, const Eigen::Matrix2cd& gate) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    const std::size_t mask = std::size_t{1} << (state.num_qubits - 1 - qubit);
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        if (idx & mask) continue;
        const cdouble a0 = state.amplitudes[idx];
        const cdouble a1 = state.amplitudes[idx | mask];
        state.amplitudes[idx] = gate(0, 0) * a0 + gate(0, 1) * a1;
        state.amplitudes[idx | mask] = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
}

void apply_two_qubit_gate(Statevector& state, int i, int j, const Eigen::Matrix4cd& gate) {
    check_pair(state, i, j);
    const double unitarity_dev =
        (gate.adjoint() * gate - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
    if (unitarity_dev > 1e-10) {
        std::ostringstream msg;
        msg << "gate is not unitary: max |U^dag U - I| = " << unitarity_dev;
        throw std::invalid_argument(msg.str());
    }

    const std::size_t mask_i = std::size_t{1} << (state.num_qubits - 1 - i);
    const std::size_t mask_j = std::size_t{1} << (state.num_qubits - 1 - j);
    for (std::size_t base = 0; base < state.dim(); ++base) {
        if (base & (mask_i | mask_j)) continue;
        const std::size_t idx[4] = {base, base | mask_j, base | mask_i,
                                    base | mask_i | mask_j};
        cdouble v[4];
        for (int k = 0; k < 4; ++k) v[k] = state.amplitudes[idx[k]];
        for (int r = 0; r < 4; ++r) {
            cdouble acc{0.0, 0.0};
            for (int c = 0; c < 4; ++c) acc += gate(r, c) * v[c];
            state.amplitudes[idx[r]] = acc;
        }
    }
}

PairDensityMatrix reduced_density_pair(const Statevector& state, int i, int j) {
    check_pair(state, i, j);
    PairDensityMatrix rho;
    rho.i = i;
    rho.j = j;
    rho.m.setZero();

    const std::size_t mask_i = std::size_t{1} << (state.num_qubits - 1 - i);
    const std::size_t mask_j = std::size_t{1} << (state.num_qubits - 1 - j);
    for (std::size_t base = 0; base < state.dim(); ++base) {
        if (base & (mask_i | mask_j)) continue;
        const std::size_t idx[4] = {base, base | mask_j, base | mask_i,
                                    base | mask_i | mask_j};
        for (int r = 0; r < 4; ++r) {
            const cdouble ar = state.amplitudes[idx[r]];
            if (ar == cdouble{0.0, 0.0}) continue;
            for (int c = 0; c < 4; ++c) {
                rho.m(r, c) += ar * std::conj(state.amplitudes[idx[c]]);
            }
        }
    }
    return rho;
}

Eigen::Matrix2cd reduced_density_single(const Statevector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    const std::size_t mask = std::size_t{1} << (state.num_qubits - 1 - qubit);
    for (std::size_t base = 0; base < state.dim(); ++base) {
        if (base & mask) continue;
        const cdouble a0 = state.amplitudes[base];
        const cdouble a1 = state.amplitudes[base | mask];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return rho;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    const auto dim = rho.rows();
    if (dim != rho.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double trace_dev = std::abs(rho.trace() - cdouble{1.0, 0.0});
    if (herm_dev > 1e-8 || trace_dev > 1e-8) {
        std::ostringstream msg;
        msg << "not a density matrix: hermiticity deviation " << herm_dev
            << ", trace deviation " << trace_dev;
        throw std::invalid_argument(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalue solve failed in von_neumann_entropy");
    }
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double lambda = solver.eigenvalues()(k);
        if (lambda < -1e-8) {
            throw std::invalid_argument("not a density matrix: eigenvalue " +
                                        std::to_string(lambda));
        }
        if (lambda < 1e-12) continue;
        entropy -= lambda * std::log2(lambda);
    }
    return std::clamp(entropy, 0.0, std::log2(static_cast<double>(dim)));
}

std::vector<double> single_qubit_entropies(const Statevector& state) {
    std::vector<double> out(static_cast<std::size_t>(state.num_qubits));
    for (int q = 0; q < state.num_qubits; ++q) {
        out[static_cast<std::size_t>(q)] = von_neumann_entropy(reduced_density_single(state, q));
    }
    return out;
}

std::string statevector_to_json(const Statevector& state) {
    nlohmann::json j;
    j["num_qubits"] = state.num_qubits;
    auto& amps = j["amplitudes"] = nlohmann::json::array();
    for (const auto& a : state.amplitudes) {
        amps.push_back({a.real(), a.imag()});
    }
    return j.dump();
}

Statevector statevector_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Statevector state(j.at("num_qubits").get<int>());
    const auto& amps = j.at("amplitudes");
    if (amps.size() != state.dim()) {
        throw std::invalid_argument("amplitude count does not match num_qubits");
    }
    for (std::size_t k = 0; k < state.dim(); ++k) {
        state.amplitudes[k] = cdouble{amps[k][0].get<double>(), amps[k][1].get<double>()};
    }
    return state;
}

}  // namespace disent::qsim
