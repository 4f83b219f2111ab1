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

#ifndef STABGS_PAULI_HPP
#define STABGS_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace stabgs {

enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);

/// A Pauli operator on `n_sites` qubits in symplectic form.
///
/// The operator is i^phase times the tensor product of the per-site letters,
/// where the letter with bits (x, z) is i^(x*z) X^x Z^z. So (1, 1) decodes to
/// Y = iXZ and every letter is Hermitian on its own. Values handed out by the
/// library always have phase 0 or 2; phases 1 and 3 only show up as the raw
/// result of multiplying anticommuting operators.
class PauliOp {
  public:
    using Words = boost::container::small_vector<uint64_t, 2>;

    PauliOp() = default;
    /// The identity on n sites.
    explicit PauliOp(std::size_t n);

    static PauliOp single(std::size_t n, std::size_t site, Letter l, bool negative = false);

    std::size_t n_sites() const { return n_; }
    std::size_t num_words() const { return xs_.size(); }
    uint8_t phase() const { return phase_; }
    bool negative() const { return phase_ == 2; }

    Letter letter(std::size_t site) const;
    void set_letter(std::size_t site, Letter l);
    bool x(std::size_t site) const { return (xs_[site >> 6] >> (site & 63)) & 1; }
    bool z(std::size_t site) const { return (zs_[site >> 6] >> (site & 63)) & 1; }

    const Words &x_words() const { return xs_; }
    const Words &z_words() const { return zs_; }
    Words &x_words() { return xs_; }
    Words &z_words() { return zs_; }

    void set_phase(uint8_t p) { phase_ = p & 3; }
    PauliOp negated() const;
    /// Same letters, phase 0.
    PauliOp unsigned_op() const;

    bool is_identity_letters() const;
    /// Number of non-identity sites.
    std::size_t weight() const;
    /// -1 for the identity.
    long first_site() const;
    long last_site() const;

    /// Equality of letters only, ignoring the phase.
    bool same_letters(const PauliOp &o) const { return n_ == o.n_ && xs_ == o.xs_ && zs_ == o.zs_; }

    bool operator==(const PauliOp &o) const { return same_letters(o) && phase_ == o.phase_; }
    bool operator!=(const PauliOp &o) const { return !(*this == o); }
    /// Total order on (letters, phase); used for deterministic containers.
    bool operator<(const PauliOp &o) const;

    std::size_t hash() const;
    std::size_t letters_hash() const;

  private:
    std::size_t n_ = 0;
    uint8_t phase_ = 0;
    Words xs_;
    Words zs_;
};

/// Symplectic inner product is zero.
bool commutes(const PauliOp &a, const PauliOp &b);

/// Exact product a*b, including phases 1 and 3.
PauliOp multiply(const PauliOp &a, const PauliOp &b);

/// In-place a = a*b.
void multiply_into(PauliOp &a, const PauliOp &b);

/// Unsigned letters of p on sites [m, l], reindexed to start at 0.
PauliOp truncate(const PauliOp &p, std::size_t m, std::size_t l);

/// Like truncate but keeps the sign. Only meaningful when p is the identity
/// outside [m, l].
PauliOp restrict_signed(const PauliOp &p, std::size_t m, std::size_t l);

/// Places p (on w sites) at sites [offset, offset + w) of an n-site register.
PauliOp embed(const PauliOp &p, std::size_t n, std::size_t offset);

/// Parses `['+'|'-'] LETTER INDEX (' ' LETTER INDEX)*`, e.g. "-X0 Z1 X2".
/// An empty string or a bare sign is the identity.
PauliOp parse_pauli(std::string_view text, std::size_t n_sites);

/// Canonical text: explicit sign, ascending site order, e.g. "+X0 Z1".
/// The identity formats as "+I".
std::string format_pauli(const PauliOp &p);

/// Insertion-ordered set of signed Pauli operators.
class PauliSet {
  public:
    PauliSet() = default;
    PauliSet(std::initializer_list<PauliOp> ops);

    /// Returns false if an identical operator (letters and phase) is present.
    bool insert(const PauliOp &p);
    bool contains(const PauliOp &p) const;
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const PauliOp &operator[](std::size_t i) const { return terms_[i]; }

    std::vector<PauliOp>::const_iterator begin() const { return terms_.begin(); }
    std::vector<PauliOp>::const_iterator end() const { return terms_.end(); }
    const std::vector<PauliOp> &ops() const { return terms_; }

  private:
    struct Hasher {
        std::size_t operator()(const PauliOp &p) const { return p.hash(); }
    };
    std::vector<PauliOp> terms_;
    std::unordered_map<PauliOp, std::size_t, Hasher> index_;
};

}  // namespace stabgs

template <>
struct std::hash<stabgs::PauliOp> {
    std::size_t operator()(const stabgs::PauliOp &p) const { return p.hash(); }
};

#endif
