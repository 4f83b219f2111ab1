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

#ifndef STABGS_ORACLE_HPP
#define STABGS_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "stabgs/hamiltonian.hpp"
#include "stabgs/pauli.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs::oracle {

/// State vector on n <= 10 qubits; qubit i is bit i of the basis index.
struct DenseState {
    std::size_t n = 0;
    std::vector<std::complex<double>> amplitudes;
};

/// Every full stabilizer group on n <= 3 qubits, each once.
std::vector<StabGroup> enumerate_full_groups(std::size_t n);

/// The state stabilized by a full group, up to a global phase.
DenseState dense_from_group(const StabGroup &s);

/// p|psi>.
DenseState apply_pauli(const PauliOp &p, const DenseState &psi);

/// <psi|p|psi>, complex in general.
std::complex<double> dense_pauli_expectation(const PauliOp &p, const DenseState &psi);

/// <psi|H|psi>; the imaginary part is checked to vanish.
double dense_expectation(const Hamiltonian &h, const DenseState &psi);

/// Row-major 2^n x 2^n matrix of p, for n <= 5.
std::vector<std::complex<double>> dense_matrix(const PauliOp &p);

}  // namespace stabgs::oracle

#endif
