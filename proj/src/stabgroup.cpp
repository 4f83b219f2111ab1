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

#include "stabgs/stabgroup.hpp"

#include <algorithm>
#include <bit>

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "stabgs/errors.hpp"

namespace stabgs {

namespace {

bool column_bit(const PauliOp &p, std::size_t n, std::size_t c) { return c < n ? p.x(c) : p.z(c - n); }

// First set column in x-then-z order, or 2n for the identity.
std::size_t pivot_column(const PauliOp &p) {
    const std::size_t n = p.n_sites();
    const auto &xs = p.x_words();
    for (std::size_t w = 0; w < xs.size(); ++w) {
        if (xs[w]) {
            return w * 64 + std::countr_zero(xs[w]);
        }
    }
    const auto &zs = p.z_words();
    for (std::size_t w = 0; w < zs.size(); ++w) {
        if (zs[w]) {
            return n + w * 64 + std::countr_zero(zs[w]);
        }
    }
    return 2 * n;
}

void require_hermitian(const PauliOp &p) {
    if (p.phase() & 1) {
        throw Error("generator " + format_pauli(p) + " is not Hermitian");
    }
}

}  // namespace

PauliOp StabGroup::reduce(PauliOp p) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (column_bit(p, n_, pivots_[i])) {
            multiply_into(p, rows_[i]);
        }
    }
    return p;
}

MemberSign StabGroup::member_sign(const PauliOp &p) const {
    if (p.n_sites() != n_) {
        throw SizeError("member_sign: operator has " + std::to_string(p.n_sites()) + " sites, group has " +
                        std::to_string(n_));
    }
    PauliOp r = reduce(p);
    if (!r.is_identity_letters()) {
        return MemberSign::absent;
    }
    // p * g_1 * ... * g_j = i^phase I with all factors commuting.
    switch (r.phase()) {
        case 0:
            return MemberSign::plus;
        case 2:
            return MemberSign::minus;
        default:
            return MemberSign::absent;
    }
}

StabGroup::Insert StabGroup::insert(const PauliOp &p) {
    if (p.n_sites() != n_) {
        throw SizeError("insert: operator has " + std::to_string(p.n_sites()) + " sites, group has " +
                        std::to_string(n_));
    }
    require_hermitian(p);
    for (const auto &g : rows_) {
        if (!commutes(g, p)) {
            return Insert::anticommutes;
        }
    }
    PauliOp r = reduce(p);
    if (r.is_identity_letters()) {
        return r.phase() == 0 ? Insert::member : Insert::minus_identity;
    }
    std::size_t c = pivot_column(r);
    for (auto &g : rows_) {
        if (column_bit(g, n_, c)) {
            multiply_into(g, r);
        }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return Insert::added;
}

StabGroup StabGroup::from_generators(const std::vector<PauliOp> &gens, std::size_t n) {
    StabGroup s(n);
    for (const auto &g : gens) {
        switch (s.insert(g)) {
            case Insert::anticommutes:
                throw AnticommutingGenerators("generator " + format_pauli(g) + " anticommutes with the group");
            case Insert::minus_identity:
                throw MinusIdentity("generators produce -I via " + format_pauli(g));
            default:
                break;
        }
    }
    return s;
}

StabGroup StabGroup::from_generators(const PauliSet &gens, std::size_t n) {
    return from_generators(gens.ops(), n);
}

std::string StabGroup::serialize() const {
    std::string out = std::to_string(n_) + ":";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += format_pauli(rows_[i]);
    }
    return out;
}

std::size_t StabGroup::hash() const {
    std::size_t h = n_;
    for (const auto &g : rows_) {
        boost::hash_combine(h, g.hash());
    }
    return h;
}

MemberSign member_sign(const PauliOp &p, const StabGroup &s) { return s.member_sign(p); }

StabGroup extend(const StabGroup &s, const PauliOp &p) {
    StabGroup r = s;
    switch (r.insert(p)) {
        case StabGroup::Insert::anticommutes:
            throw AnticommutingGenerators(format_pauli(p) + " anticommutes with the group");
        case StabGroup::Insert::minus_identity:
            throw MinusIdentity("-(" + format_pauli(p) + ") is already in the group");
        default:
            return r;
    }
}

StabGroup project_window(const StabGroup &s, std::size_t m, std::size_t l) {
    const std::size_t n = s.n_sites();
    if (m > l || l >= n) {
        throw SizeError("invalid window [" + std::to_string(m) + ", " + std::to_string(l) + "]");
    }
    // Kernel of the outside-window coordinates: eliminate every outside column
    // and keep the rows that end up supported inside the window.
    std::vector<PauliOp> active = s.generators();
    for (std::size_t c = 0; c < 2 * n && !active.empty(); ++c) {
        std::size_t site = c < n ? c : c - n;
        if (site >= m && site <= l) {
            continue;
        }
        auto it = std::find_if(active.begin(), active.end(), [&](const PauliOp &g) { return column_bit(g, n, c); });
        if (it == active.end()) {
            continue;
        }
        PauliOp piv = std::move(*it);
        active.erase(it);
        for (auto &g : active) {
            if (column_bit(g, n, c)) {
                multiply_into(g, piv);
            }
        }
    }
    std::vector<PauliOp> inside;
    inside.reserve(active.size());
    for (const auto &g : active) {
        inside.push_back(restrict_signed(g, m, l));
    }
    return StabGroup::from_generators(inside, l - m + 1);
}

PauliSet intersect_with_set(const StabGroup &s, const PauliSet &candidates) {
    PauliSet out;
    for (const auto &q : candidates) {
        if (s.member_sign(q) == MemberSign::plus) {
            out.insert(q);
        }
    }
    return out;
}

PauliSet enumerate_elements(const StabGroup &s) {
    if (s.rank() > 20) {
        throw GuardError("enumerate_elements: rank " + std::to_string(s.rank()) + " exceeds 20");
    }
    PauliSet out;
    PauliOp cur(s.n_sites());
    out.insert(cur);
    const uint64_t count = uint64_t{1} << s.rank();
    for (uint64_t i = 1; i < count; ++i) {
        multiply_into(cur, s.generators()[std::countr_zero(i)]);
        out.insert(cur);
    }
    return out;
}

void conjugate(PauliOp &p, const Gate &g) {
    const std::size_t a = g.q0;
    bool flip = false;
    switch (g.kind) {
        case Gate::Kind::H: {
            bool x = p.x(a), z = p.z(a);
            flip = x && z;
            p.set_letter(a, z ? (x ? Letter::Y : Letter::X) : (x ? Letter::Z : Letter::I));
            break;
        }
        case Gate::Kind::S: {
            bool x = p.x(a), z = p.z(a);
            flip = x && z;
            bool nz = z != x;
            p.set_letter(a, x ? (nz ? Letter::Y : Letter::X) : (nz ? Letter::Z : Letter::I));
            break;
        }
        case Gate::Kind::X:
            flip = p.z(a);
            break;
        case Gate::Kind::Z:
            flip = p.x(a);
            break;
        case Gate::Kind::CNOT: {
            const std::size_t t = g.q1;
            bool xc = p.x(a), zc = p.z(a), xt = p.x(t), zt = p.z(t);
            flip = xc && zt && (xt == zc);
            bool nxt = xt != xc;
            bool nzc = zc != zt;
            p.set_letter(a, xc ? (nzc ? Letter::Y : Letter::X) : (nzc ? Letter::Z : Letter::I));
            p.set_letter(t, nxt ? (zt ? Letter::Y : Letter::X) : (zt ? Letter::Z : Letter::I));
            break;
        }
    }
    if (flip) {
        p.set_phase(p.phase() ^ 2);
    }
}

StabGroup propagate_zero_state(const Circuit &c) {
    std::vector<PauliOp> gens;
    for (std::size_t q = 0; q < c.n; ++q) {
        gens.push_back(PauliOp::single(c.n, q, Letter::Z));
    }
    for (const auto &g : c.gates) {
        for (auto &p : gens) {
            conjugate(p, g);
        }
    }
    return StabGroup::from_generators(gens, c.n);
}

StabGroup complete_to_full(const StabGroup &s) {
    const std::size_t n = s.n_sites();
    StabGroup out = s;
    while (out.rank() < n) {
        // Rows (g_z | g_x): a row times (v_x | v_z) is the symplectic product.
        std::vector<boost::dynamic_bitset<>> rows;
        for (const auto &g : out.generators()) {
            boost::dynamic_bitset<> r(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = g.z(i);
                r[n + i] = g.x(i);
            }
            rows.push_back(std::move(r));
        }
        std::vector<std::size_t> pivot;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < 2 * n && rank < rows.size(); ++c) {
            std::size_t r = rank;
            while (r < rows.size() && !rows[r][c]) {
                ++r;
            }
            if (r == rows.size()) {
                continue;
            }
            std::swap(rows[r], rows[rank]);
            for (std::size_t o = 0; o < rows.size(); ++o) {
                if (o != rank && rows[o][c]) {
                    rows[o] ^= rows[rank];
                }
            }
            pivot.push_back(c);
            ++rank;
        }
        bool grew = false;
        for (std::size_t f = 0; f < 2 * n && !grew; ++f) {
            if (std::find(pivot.begin(), pivot.end(), f) != pivot.end()) {
                continue;
            }
            boost::dynamic_bitset<> v(2 * n);
            v[f] = true;
            for (std::size_t r = 0; r < rank; ++r) {
                if (rows[r][f]) {
                    v[pivot[r]] = true;
                }
            }
            PauliOp p(n);
            for (std::size_t i = 0; i < n; ++i) {
                const bool x = v[i], z = v[n + i];
                p.set_letter(i, x ? (z ? Letter::Y : Letter::X) : (z ? Letter::Z : Letter::I));
            }
            grew = out.insert(p) == StabGroup::Insert::added;
        }
        if (!grew) {
            throw Error("group completion failed");
        }
    }
    return out;
}

Circuit to_clifford_circuit(const StabGroup &s) {
    const std::size_t n = s.n_sites();
    if (s.rank() != n) {
        throw NotFullRank("to_clifford_circuit: rank " + std::to_string(s.rank()) + " < " + std::to_string(n));
    }
    // Find U with U s U^dagger = <Z_0, ..., Z_{n-1}> one qubit at a time; the
    // preparation circuit is then U^dagger.
    std::vector<PauliOp> rows = s.generators();
    std::vector<Gate> u;
    auto apply = [&](Gate g) {
        u.push_back(g);
        for (auto &r : rows) {
            conjugate(r, g);
        }
    };
    using K = Gate::Kind;
    for (std::size_t q = 0; q < n; ++q) {
        // rows[q..] are the unassigned generators; all are identity on qubits < q.
        std::size_t pick = n;
        for (std::size_t i = q; i < n && pick == n; ++i) {
            if (rows[i].x(q)) {
                pick = i;
            }
        }
        bool x_path = pick != n;
        for (std::size_t i = q; i < n && pick == n; ++i) {
            if (rows[i].z(q)) {
                pick = i;
            }
        }
        std::swap(rows[q], rows[pick]);
        if (x_path) {
            if (rows[q].z(q)) {
                apply({K::S, q});
            }
            for (std::size_t j = q + 1; j < n; ++j) {
                Letter l = rows[q].letter(j);
                if (l == Letter::I) {
                    continue;
                }
                if (l == Letter::Z) {
                    apply({K::H, j});
                } else if (l == Letter::Y) {
                    apply({K::S, j});
                }
                apply({K::CNOT, q, j});
            }
            apply({K::H, q});
        } else {
            for (std::size_t j = q + 1; j < n; ++j) {
                Letter l = rows[q].letter(j);
                if (l == Letter::I) {
                    continue;
                }
                if (l == Letter::X) {
                    apply({K::H, j});
                } else if (l == Letter::Y) {
                    apply({K::S, j});
                    apply({K::H, j});
                }
                apply({K::CNOT, j, q});
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i != q && rows[i].z(q)) {
                multiply_into(rows[i], rows[q]);
            }
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (rows[q].negative()) {
            apply({K::X, q});
        }
    }
    Circuit c;
    c.n = n;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
        c.gates.push_back(*it);
        if (it->kind == K::S) {
            c.gates.push_back(*it);
            c.gates.push_back(*it);
        }
    }
    if (propagate_zero_state(c) != s) {
        throw Error("to_clifford_circuit: synthesized circuit failed verification");
    }
    return c;
}

std::string circuit_to_json(const Circuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H:
                gates.push_back({"H", g.q0});
                break;
            case Gate::Kind::S:
                gates.push_back({"S", g.q0});
                break;
            case Gate::Kind::X:
                gates.push_back({"X", g.q0});
                break;
            case Gate::Kind::Z:
                gates.push_back({"Z", g.q0});
                break;
            case Gate::Kind::CNOT:
                gates.push_back({"CNOT", g.q0, g.q1});
                break;
        }
    }
    nlohmann::json j;
    j["n"] = c.n;
    j["gates"] = gates;
    return j.dump();
}

}  // namespace stabgs
