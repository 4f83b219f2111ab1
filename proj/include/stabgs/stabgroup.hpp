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

#ifndef STABGS_STABGROUP_HPP
#define STABGS_STABGROUP_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "stabgs/pauli.hpp"

namespace stabgs {

enum class MemberSign { plus, minus, absent };

/// A stabilizer group stored as signed generators in reduced row-echelon form
/// over the 2n symplectic columns. Columns are ordered x_0 .. x_{n-1} then
/// z_0 .. z_{n-1}; every pivot column is set in exactly one generator.
///
/// The form is unique for a given signed group, so two groups are equal iff
/// `serialize()` returns the same bytes.
class StabGroup {
  public:
    enum class Insert { added, member, minus_identity, anticommutes };

    StabGroup() = default;
    /// The trivial group on n sites.
    explicit StabGroup(std::size_t n) : n_(n) {}

    /// Throws AnticommutingGenerators or MinusIdentity on inconsistent input.
    static StabGroup from_generators(const std::vector<PauliOp> &gens, std::size_t n);
    static StabGroup from_generators(const PauliSet &gens, std::size_t n);
    static StabGroup from_generators(std::initializer_list<PauliOp> gens, std::size_t n) {
        return from_generators(std::vector<PauliOp>(gens), n);
    }

    std::size_t n_sites() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<PauliOp> &generators() const { return rows_; }

    MemberSign member_sign(const PauliOp &p) const;

    /// Adds p to the generating set when it is consistent; the group is left
    /// untouched otherwise.
    Insert insert(const PauliOp &p);

    std::string serialize() const;
    std::size_t hash() const;

    bool operator==(const StabGroup &o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const StabGroup &o) const { return !(*this == o); }

  private:
    std::size_t n_ = 0;
    std::vector<PauliOp> rows_;
    std::vector<std::size_t> pivots_;

    PauliOp reduce(PauliOp p) const;
};

MemberSign member_sign(const PauliOp &p, const StabGroup &s);

/// <s, p>. Throws AnticommutingGenerators or MinusIdentity.
StabGroup extend(const StabGroup &s, const PauliOp &p);

/// Elements of s supported inside [m, l], reindexed onto l - m + 1 sites.
StabGroup project_window(const StabGroup &s, std::size_t m, std::size_t l);

/// Candidates that are members of s with exactly their own sign.
PauliSet intersect_with_set(const StabGroup &s, const PauliSet &candidates);

/// All 2^rank signed elements, identity first. Rank is capped at 20.
PauliSet enumerate_elements(const StabGroup &s);

struct Gate {
    enum class Kind { H, S, CNOT, X, Z };
    Kind kind;
    std::size_t q0;
    std::size_t q1 = 0;

    bool operator==(const Gate &o) const {
        return kind == o.kind && q0 == o.q0 && (kind != Kind::CNOT || q1 == o.q1);
    }
};

struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> gates;
};

/// p <- G p G^dagger.
void conjugate(PauliOp &p, const Gate &g);

/// Stabilizer group of C|0...0>.
StabGroup propagate_zero_state(const Circuit &c);

/// s plus, while the rank is below n, the first operator of a fixed basis of
/// its commutant that is not already a member, with sign +.
StabGroup complete_to_full(const StabGroup &s);

/// A circuit over {H, S, CNOT, X, Z} preparing the state of a full-rank
/// group from |0...0>. Throws NotFullRank.
Circuit to_clifford_circuit(const StabGroup &s);

/// `{"n": 2, "gates": [["H", 0], ["CNOT", 0, 1]]}`
std::string circuit_to_json(const Circuit &c);

}  // namespace stabgs

template <>
struct std::hash<stabgs::StabGroup> {
    std::size_t operator()(const stabgs::StabGroup &s) const { return s.hash(); }
};

#endif
