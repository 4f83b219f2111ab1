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

#ifndef STABGS_WINDOW_GROUP_HPP
#define STABGS_WINDOW_GROUP_HPP

// Fixed-width Pauli operators and stabilizer groups on a window of at most 32
// sites, used by the automaton solvers. Bit j of x/z is window site j.

#include <bit>
#include <cstddef>
#include <cstdint>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include "stabgs/pauli.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs::detail {

inline constexpr std::size_t kMaxWindow = 32;

/// Letters packed as x | z << 32.
inline uint64_t pack(uint32_t x, uint32_t z) { return uint64_t{x} | (uint64_t{z} << 32); }
inline uint32_t xpart(uint64_t v) { return static_cast<uint32_t>(v); }
inline uint32_t zpart(uint64_t v) { return static_cast<uint32_t>(v >> 32); }

/// Symplectic product of two packed letter vectors.
inline bool vcommutes(uint64_t a, uint64_t b) {
    return (std::popcount((xpart(a) & zpart(b)) ^ (zpart(a) & xpart(b))) & 1) == 0;
}

struct WPauli {
    uint64_t v = 0;
    uint8_t phase = 0;

    bool operator==(const WPauli &o) const = default;
    bool operator<(const WPauli &o) const { return v != o.v ? v < o.v : phase < o.phase; }
};

inline WPauli wmul(const WPauli &a, const WPauli &b) {
    const uint32_t xa = xpart(a.v), za = zpart(a.v), xb = xpart(b.v), zb = zpart(b.v);
    const uint64_t c = a.v ^ b.v;
    int ph = a.phase + b.phase + std::popcount(xa & za) + std::popcount(xb & zb) + 2 * std::popcount(za & xb) -
             std::popcount(xpart(c) & zpart(c));
    return {c, static_cast<uint8_t>(ph & 3)};
}

inline bool wcommutes(const WPauli &a, const WPauli &b) { return vcommutes(a.v, b.v); }

/// Letters of the last site (index w - 1) as a 2-bit code x | z << 1.
inline unsigned last_letter(uint64_t v, std::size_t w) {
    return ((xpart(v) >> (w - 1)) & 1) | (((zpart(v) >> (w - 1)) & 1) << 1);
}

/// Stabilizer group in reduced row-echelon form; the pivot of a row is its
/// lowest set bit of the packed vector, rows sorted by pivot.
class WindowGroup {
  public:
    using Rows = boost::container::small_vector<WPauli, 6>;

    const Rows &rows() const { return rows_; }
    std::size_t rank() const { return rows_.size(); }

    /// Multiplies p by rows until no pivot bit is left.
    WPauli reduce(WPauli p) const {
        for (const auto &r : rows_) {
            if ((p.v >> std::countr_zero(r.v)) & 1) {
                p = wmul(p, r);
            }
        }
        return p;
    }

    /// Letters of p reduced modulo the group; signs ignored.
    uint64_t reduce_letters(uint64_t v) const {
        for (const auto &r : rows_) {
            if ((v >> std::countr_zero(r.v)) & 1) {
                v ^= r.v;
            }
        }
        return v;
    }

    /// +1, -1 or 0, like member_sign.
    int sign_of(const WPauli &p) const {
        for (const auto &r : rows_) {
            if (!wcommutes(p, r)) {
                return 0;
            }
        }
        WPauli res = reduce(p);
        if (res.v != 0) {
            return 0;
        }
        return res.phase == 0 ? 1 : -1;
    }

    bool commutes_with(uint64_t v) const {
        for (const auto &r : rows_) {
            if (!vcommutes(v, r.v)) {
                return false;
            }
        }
        return true;
    }

    StabGroup::Insert insert(const WPauli &p) {
        if (!commutes_with(p.v)) {
            return StabGroup::Insert::anticommutes;
        }
        WPauli res = reduce(p);
        if (res.v == 0) {
            return res.phase == 0 ? StabGroup::Insert::member : StabGroup::Insert::minus_identity;
        }
        const int piv = std::countr_zero(res.v);
        for (auto &r : rows_) {
            if ((r.v >> piv) & 1) {
                r = wmul(r, res);
            }
        }
        auto pos = rows_.begin();
        while (pos != rows_.end() && std::countr_zero(pos->v) < piv) {
            ++pos;
        }
        rows_.insert(pos, res);
        return StabGroup::Insert::added;
    }

    /// Elements with no support on window site j, in place.
    WindowGroup without_site(std::size_t j) const {
        Rows work = rows_;
        for (uint64_t col : {pack(1u << j, 0), pack(0, 1u << j)}) {
            auto it = work.begin();
            while (it != work.end() && !(it->v & col)) {
                ++it;
            }
            if (it == work.end()) {
                continue;
            }
            WPauli piv = *it;
            work.erase(it);
            for (auto &r : work) {
                if (r.v & col) {
                    r = wmul(r, piv);
                }
            }
        }
        WindowGroup out;
        for (const auto &r : work) {
            out.insert(r);
        }
        return out;
    }

    /// Elements with no support on site 0, moved down by one site.
    WindowGroup drop_first() const { return without_site(0).shifted_down(); }

    /// Same group moved down by one site; requires site 0 to be empty.
    WindowGroup shifted_down() const {
        WindowGroup out;
        for (const auto &r : rows_) {
            out.rows_.push_back({pack(xpart(r.v) >> 1, zpart(r.v) >> 1), r.phase});
        }
        return out;
    }

    /// Same group moved up by one site; requires the top site to be empty.
    WindowGroup shifted_up() const {
        WindowGroup out;
        for (const auto &r : rows_) {
            out.rows_.push_back({pack(xpart(r.v) << 1, zpart(r.v) << 1), r.phase});
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = rows_.size();
        for (const auto &r : rows_) {
            boost::hash_combine(h, r.v);
            boost::hash_combine(h, r.phase);
        }
        return h;
    }

    bool operator==(const WindowGroup &o) const { return rows_ == o.rows_; }
    bool operator<(const WindowGroup &o) const {
        return std::lexicographical_compare(rows_.begin(), rows_.end(), o.rows_.begin(), o.rows_.end());
    }

  private:
    Rows rows_;
};

inline WPauli to_window(const PauliOp &p, std::size_t offset, std::size_t w) {
    uint32_t x = 0, z = 0;
    for (std::size_t j = 0; j < w; ++j) {
        if (p.x(offset + j)) {
            x |= 1u << j;
        }
        if (p.z(offset + j)) {
            z |= 1u << j;
        }
    }
    return {pack(x, z), p.phase()};
}

inline PauliOp from_window(const WPauli &p, std::size_t w) {
    PauliOp out(w);
    for (std::size_t j = 0; j < w; ++j) {
        bool x = (xpart(p.v) >> j) & 1, z = (zpart(p.v) >> j) & 1;
        out.set_letter(j, x ? (z ? Letter::Y : Letter::X) : (z ? Letter::Z : Letter::I));
    }
    out.set_phase(p.phase);
    return out;
}

inline StabGroup to_stabgroup(const WindowGroup &g, std::size_t w) {
    std::vector<PauliOp> gens;
    for (const auto &r : g.rows()) {
        gens.push_back(from_window(r, w));
    }
    return StabGroup::from_generators(gens, w);
}

inline WindowGroup from_stabgroup(const StabGroup &s) {
    WindowGroup g;
    for (const auto &r : s.generators()) {
        g.insert(to_window(r, 0, s.n_sites()));
    }
    return g;
}

/// GF(2) span of packed letter vectors, kept in reduced echelon form.
class Span {
  public:
    bool add(uint64_t v) {
        v = reduce(v);
        if (v == 0) {
            return false;
        }
        const int piv = std::countr_zero(v);
        for (auto &b : basis_) {
            if ((b >> piv) & 1) {
                b ^= v;
            }
        }
        basis_.push_back(v);
        return true;
    }
    uint64_t reduce(uint64_t v) const {
        for (uint64_t b : basis_) {
            if ((v >> std::countr_zero(b)) & 1) {
                v ^= b;
            }
        }
        return v;
    }
    bool contains(uint64_t v) const { return reduce(v) == 0; }
    const boost::container::small_vector<uint64_t, 12> &basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

  private:
    boost::container::small_vector<uint64_t, 12> basis_;
};

}  // namespace stabgs::detail

#endif
