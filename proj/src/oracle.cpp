// Copyright 2026 The stabgs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabgs/oracle.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "stabgs/errors.hpp"

namespace stabgs::oracle {

namespace {

constexpr std::size_t kMaxEnumerate = 3;
constexpr std::size_t kMaxDense = 10;

const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

uint64_t mask(const PauliOp::Words &w) { return w.empty() ? 0 : w[0]; }

double norm(const DenseState &s) {
    double sum = 0.0;
    for (const auto &a : s.amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

}  // namespace

std::vector<StabGroup> enumerate_full_groups(std::size_t n) {
    if (n == 0 || n > kMaxEnumerate) {
        throw GuardError("enumerate_full_groups supports 1 <= n <= 3");
    }
    std::vector<PauliOp> candidates;
    for (uint64_t code = 1; code < (1ULL << (2 * n)); ++code) {
        PauliOp p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p.set_letter(i, static_cast<Letter>((code >> (2 * i)) & 3));
        }
        candidates.push_back(p);
        candidates.push_back(p.negated());
    }
    std::unordered_set<std::string> seen;
    std::vector<StabGroup> full;
    std::function<void(const StabGroup &)> visit = [&](const StabGroup &g) {
        if (!seen.insert(g.serialize()).second) {
            return;
        }
        if (g.rank() == n) {
            full.push_back(g);
            return;
        }
        for (const auto &c : candidates) {
            StabGroup child = g;
            if (child.insert(c) == StabGroup::Insert::added) {
                visit(child);
            }
        }
    };
    visit(StabGroup(n));
    return full;
}

DenseState apply_pauli(const PauliOp &p, const DenseState &psi) {
    if (p.n_sites() != psi.n) {
        throw SizeError("apply_pauli: qubit count mismatch");
    }
    const uint64_t x = mask(p.x_words()), z = mask(p.z_words());
    const int base = (p.phase() + std::popcount(x & z)) & 3;
    DenseState out{psi.n, std::vector<std::complex<double>>(psi.amplitudes.size())};
    for (uint64_t b = 0; b < psi.amplitudes.size(); ++b) {
        int ph = (base + 2 * (std::popcount(z & b) & 1)) & 3;
        out.amplitudes[b ^ x] = kIPow[ph] * psi.amplitudes[b];
    }
    return out;
}

DenseState dense_from_group(const StabGroup &s) {
    const std::size_t n = s.n_sites();
    if (n > kMaxDense) {
        throw GuardError("dense states are limited to 10 qubits");
    }
    if (s.rank() != n) {
        throw NotFullRank("dense_from_group needs a full group");
    }
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t ref = 0; ref < dim; ++ref) {
        DenseState psi{n, std::vector<std::complex<double>>(dim)};
        psi.amplitudes[ref] = 1.0;
        for (const auto &g : s.generators()) {
            DenseState gp = apply_pauli(g, psi);
            for (std::size_t b = 0; b < dim; ++b) {
                psi.amplitudes[b] = 0.5 * (psi.amplitudes[b] + gp.amplitudes[b]);
            }
        }
        double nrm = norm(psi);
        if (nrm < 1e-6) {
            continue;
        }
        for (auto &a : psi.amplitudes) {
            a /= nrm;
        }
        for (const auto &g : s.generators()) {
            DenseState gp = apply_pauli(g, psi);
            for (std::size_t b = 0; b < dim; ++b) {
                if (std::abs(gp.amplitudes[b] - psi.amplitudes[b]) > 1e-10) {
                    throw Error("dense_from_group: projected state is not stabilized");
                }
            }
        }
        return psi;
    }
    throw Error("dense_from_group: every reference vector was annihilated");
}

std::complex<double> dense_pauli_expectation(const PauliOp &p, const DenseState &psi) {
    DenseState pp = apply_pauli(p, psi);
    std::complex<double> sum = 0.0;
    for (std::size_t b = 0; b < psi.amplitudes.size(); ++b) {
        sum += std::conj(psi.amplitudes[b]) * pp.amplitudes[b];
    }
    return sum;
}

double dense_expectation(const Hamiltonian &h, const DenseState &psi) {
    std::complex<double> sum = h.offset();
    for (const auto &t : h.terms()) {
        sum += t.weight * dense_pauli_expectation(t.pauli, psi);
    }
    if (std::abs(sum.imag()) > 1e-10) {
        throw Error("dense_expectation: non-real expectation value");
    }
    return sum.real();
}

std::vector<std::complex<double>> dense_matrix(const PauliOp &p) {
    const std::size_t n = p.n_sites();
    if (n > 5) {
        throw GuardError("dense_matrix is limited to 5 qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::complex<double>> m(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        DenseState e{n, std::vector<std::complex<double>>(dim)};
        e.amplitudes[col] = 1.0;
        DenseState pe = apply_pauli(p, e);
        for (std::size_t row = 0; row < dim; ++row) {
            m[row * dim + col] = pe.amplitudes[row];
        }
    }
    return m;
}

}  // namespace stabgs::oracle
