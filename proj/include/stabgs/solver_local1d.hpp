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


#ifndef STABGS_SOLVER_LOCAL1D_HPP
#define STABGS_SOLVER_LOCAL1D_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stabgs/hamiltonian.hpp"
#include "stabgs/pauli.hpp"
#include "stabgs/solver_general.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs {

/// Automaton state at cursor m (0 <= m <= n+1). Cursor m has committed the
/// terms ending on chain sites < m - 1. Both groups live on a k-site window
/// whose index 0 is chain site m - k; window sites outside [0, n) are always
/// identity. s_proj never touches the top window site.
struct LocalStateA {
    long m = 0;
    StabGroup s_proj;
    /// Sorted term ids.
    std::vector<std::size_t> invalid_ids;
    StabGroup s_right;

    /// Byte-stable canonical key.
    std::string key() const;
    bool operator==(const LocalStateA &o) const = default;
};

/// Letter space searched for the next s_right.
enum class CandidateRule {
    /// Span of the valid truncated future terms, intersected with the products
    /// of whole future terms that fit in the window.
    span_kernel,
    /// Span of the valid truncated future terms.
    span,
    /// Groups generated by the signed truncations themselves.
    literal,
};

struct TransitionOptions {
    CandidateRule rule = CandidateRule::span_kernel;
    /// Enumerate every group in the letter space and test each rule, instead
    /// of building the successors directly. Slow; for cross-checks.
    bool reference = false;
};

struct CandidateTrace {
    StabGroup s_right;
    bool rule_2a;
    bool rule_2c;
    bool rule_2d;
};

struct Branch {
    LocalStateA state;
    double delta_e;
    /// Signed terms committed at the source cursor, on the full chain.
    PauliSet q_m;
};

LocalStateA initial_state(const Hamiltonian &h);

/// Successors of `a`. With `trace`, the reference enumeration is used and the
/// rule outcome of every candidate is recorded.
std::vector<Branch> transition(const LocalStateA &a, const Hamiltonian &h, const TransitionOptions &opts = {},
                               std::vector<CandidateTrace> *trace = nullptr);

/// A_m(Q) computed directly from a closed set of signed terms.
LocalStateA state_from_subset(const Hamiltonian &h, const PauliSet &q, long m);

struct Local1DOptions {
    CandidateRule rule = CandidateRule::span_kernel;
    bool reference = false;
    unsigned threads = 1;
};

SolveResult solve_local1d(const Hamiltonian &h, const Local1DOptions &opts = {});

struct Local1DPath {
    SolveResult result;
    /// Winning state at every cursor 0..n+1.
    std::vector<LocalStateA> states;
    /// q[m] = terms committed on the step m -> m+1.
    std::vector<PauliSet> q;
    double dp_energy = 0.0;
};

Local1DPath solve_local1d_path(const Hamiltonian &h, const Local1DOptions &opts = {});

struct SiteStats {
    long m;
    std::size_t frontier;
    double seconds;
};

/// Frontier size at every cursor and the time spent expanding it.
std::vector<SiteStats> frontier_stats(const Hamiltonian &h, const Local1DOptions &opts = {});

}  // namespace stabgs

#endif
