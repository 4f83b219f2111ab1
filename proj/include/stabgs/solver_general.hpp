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

#ifndef STABGS_SOLVER_GENERAL_HPP
#define STABGS_SOLVER_GENERAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "stabgs/hamiltonian.hpp"
#include "stabgs/pauli.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs {

struct SolveResult {
    double energy = 0.0;
    StabGroup group;
    /// Signed terms of H that are members of `group`.
    PauliSet chosen_terms;
    std::string algorithm;
    std::string tie_break_note;
};

/// offset + sum_P w_P * (+1 if P in s, -1 if -P in s, 0 otherwise), summed in
/// term order.
double e_stab(const Hamiltonian &h, const StabGroup &s);

/// +P and -P for every term, in term order.
PauliSet signed_terms(const Hamiltonian &h);

/// Fills chosen_terms and recomputes the energy of `group`.
SolveResult make_result(const Hamiltonian &h, StabGroup group, std::string algorithm, std::string note);

struct GeneralOptions {
    std::size_t max_terms = 24;
    bool bound_pruning = false;
};

/// Exact minimum of e_stab over groups generated by signed terms of H.
/// Among degenerate minimizers the first one reached by the search wins; the
/// search tries terms in input order and + before -.
SolveResult solve_general(const Hamiltonian &h, const GeneralOptions &opts = {});

/// Every distinct group generated by a commuting, -I free subset of the
/// signed candidates, trivial group first.
std::vector<StabGroup> enumerate_restricted_subsets(const PauliSet &terms, std::size_t n,
                                                    std::size_t max_terms = 24);

}  // namespace stabgs

#endif
