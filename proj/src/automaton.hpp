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

#ifndef STABGS_AUTOMATON_HPP
#define STABGS_AUTOMATON_HPP

// Local automaton states and the transition function shared by the finite and
// periodic 1D solvers. Cursors and sites are 1-based here: the window W_m of
// cursor m covers sites [m - k + 1, m], with window index j = site - (m - k + 1).
// Sites outside the chain are never touched by a term.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "stabgs/pauli.hpp"
#include "window_group.hpp"

namespace stabgs::detail {

/// A term placed on the chain. `letters` spans [first, last]; `idx` is its
/// position among the terms ending at `last`.
struct ChainTerm {
    long first;
    long last;
    PauliOp letters;
    double weight;
    uint64_t id;
    uint32_t idx;
};

using TermLookup = std::function<const std::vector<ChainTerm> &(long last)>;

/// Invalid-set keys are relative to the cursor: (last - cursor) << 20 | idx.
inline uint32_t make_key(long d, uint32_t idx) { return (static_cast<uint32_t>(d) << 20) | idx; }
inline long key_offset(uint32_t key) { return key >> 20; }
inline uint32_t key_index(uint32_t key) { return key & 0xFFFFF; }

struct WTerm {
    WPauli p;
    double weight = 0.0;
    uint64_t id = 0;
    uint32_t key = 0;
};

/// Everything a transition m -> m+1 needs to know about the Hamiltonian.
struct CursorData {
    long m = 0;
    std::vector<WTerm> pm;       // last == m, on W_m
    std::vector<WTerm> overlap;  // last in [m+1, m+k-1], first <= m; letters on sites <= m, on W_m
    std::vector<WTerm> pm1;      // last == m+1, on W_{m+1}
    std::vector<WTerm> future;   // last >= m+1, first <= m+1; truncated to W_{m+1}
    Span kernel;                 // products of terms ending at >= m+1 supported on W_{m+1}
};

/// Letters of t on sites [t.first, min(t.last, cap)] in the window whose
/// index 0 is site `origin`.
WPauli place(const ChainTerm &t, long origin, long cap);

/// K_s from K_{s+1} and the terms ending at s.
Span kernel_step(const Span &next, const std::vector<ChainTerm> &ending_at_s, long s, std::size_t k);

CursorData make_cursor(long m, std::size_t k, const TermLookup &ending_at, const Span &kernel_next);

using Keys = boost::container::small_vector<uint32_t, 8>;

struct LocalState {
    WindowGroup s_proj;
    Keys invalid;
    WindowGroup s_right;

    bool operator==(const LocalState &o) const = default;
    bool operator<(const LocalState &o) const;
    std::size_t hash() const;
};

struct LocalStateHash {
    std::size_t operator()(const LocalState &s) const { return s.hash(); }
};

struct SignedId {
    uint64_t id;
    int8_t sign;
};

struct Expansion {
    double delta_e = 0.0;
    boost::container::small_vector<SignedId, 4> q_m;
    std::vector<LocalState> next;
};

enum class Space { span_kernel, span, literal };

/// Outcome of the literal rule checks for one candidate S_right.
struct CandidateCheck {
    WindowGroup s_right;
    bool rule_2a;
    bool rule_2c;
    bool rule_2d;
};

class Expander {
  public:
    explicit Expander(std::size_t k) : k_(k) {}

    /// Successors built directly from subgroups of the shifted S_right.
    Expansion expand(const LocalState &a, const CursorData &cd);

    /// Successors by brute-force enumeration of every group in the candidate
    /// space, each checked against the rules one by one.
    Expansion expand_reference(const LocalState &a, const CursorData &cd, Space space,
                               std::vector<CandidateCheck> *checks = nullptr);

  private:
    std::size_t k_;
    long cursor_ = -1;
    struct Allowed {
        Span span;
        std::vector<uint64_t> elements;  // nonzero; for Space::literal, the generators
    };
    std::map<std::pair<int, std::vector<uint32_t>>, Allowed> space_cache_;
    std::unordered_map<WindowGroup, std::vector<WindowGroup>, std::function<std::size_t(const WindowGroup &)>>
        subgroup_cache_{16, [](const WindowGroup &g) { return g.hash(); }};

    struct Step1 {
        bool ok = true;
        Expansion ex;
        WindowGroup q_group;  // <Q_m> on W_m
        WindowGroup s_proj;   // S_proj^{m+1} on W_{m+1}
        Keys invalid;         // relative to m+1
    };
    Step1 step1(const LocalState &a, const CursorData &cd) const;
    /// Letter space allowed for S_right^{m+1}.
    const Allowed &allowed(const CursorData &cd, const Keys &invalid, Space space);
    const std::vector<WindowGroup> &subgroups(const WindowGroup &g);
    bool accept(const Step1 &s, const CursorData &cd, const WindowGroup &cand) const;
};

}  // namespace stabgs::detail

#endif
