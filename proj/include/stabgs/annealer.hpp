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


#ifndef STABGS_ANNEALER_HPP
#define STABGS_ANNEALER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stabgs/hamiltonian.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs {

/// The 24 single-qubit Cliffords as words over {H, S}, shortest first and
/// then in H < S order, one word per distinct conjugation action. Index 0 is
/// the identity.
const std::array<std::vector<Gate::Kind>, 24> &single_qubit_cliffords();

/// Layers of single-qubit Cliffords separated by CNOT ladders (i -> i+1 in
/// increasing i), starting and ending with a single-qubit layer.
struct CliffordAnsatz {
    std::size_t n = 0;
    std::size_t layers = 2;
    /// (layers + 1) x n slot indices, row-major by layer.
    std::vector<uint8_t> slots;

    CliffordAnsatz() = default;
    CliffordAnsatz(std::size_t n, std::size_t layers);

    uint8_t &slot(std::size_t layer, std::size_t q) { return slots[layer * n + q]; }
    uint8_t slot(std::size_t layer, std::size_t q) const { return slots[layer * n + q]; }
    Circuit circuit() const;
};

struct Schedule {
    double t_start = 5.0;
    double t_end = 0.05;
    std::size_t steps = 2500;

    /// t_start * (t_end / t_start)^(step / (steps - 1)).
    double temperature(std::size_t step) const;
};

/// e_stab of the group of the ansatz state.
double evaluate(const CliffordAnsatz &a, const Hamiltonian &h);

/// min(exp(-dE / T), 1); at T = 0 only dE <= 0 is accepted.
double acceptance_probability(double delta_e, double temperature);

struct TracePoint {
    std::size_t step;
    double temperature;
    double energy;
    double best_energy;
};

struct AnnealOptions {
    Schedule schedule;
    std::size_t layers = 2;
    bool random_start = false;
};

struct AnnealResult {
    uint64_t seed = 0;
    double best_energy = 0.0;
    CliffordAnsatz best_ansatz;
    std::vector<TracePoint> trace;
};

/// One chain driven by SplitMix64(seed). Each step replaces a uniformly
/// chosen slot by a uniformly chosen Clifford.
AnnealResult anneal(const Hamiltonian &h, uint64_t seed, const AnnealOptions &opts = {});

/// `step,temperature,energy,best_energy`, one row per step.
std::string trace_csv(const std::vector<TracePoint> &trace);

}  // namespace stabgs

#endif
