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

#include "stabgs/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>

#include <boost/container_hash/hash.hpp>

#include "stabgs/errors.hpp"

namespace stabgs {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliOp &a, const PauliOp &b) {
    if (a.n_sites() != b.n_sites()) {
        throw SizeError(
            "Pauli size mismatch: " + std::to_string(a.n_sites()) + " vs " + std::to_string(b.n_sites()));
    }
}

}  // namespace

char letter_char(Letter l) { return "IXYZ"[static_cast<int>(l)]; }

PauliOp::PauliOp(std::size_t n) : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {}

PauliOp PauliOp::single(std::size_t n, std::size_t site, Letter l, bool negative) {
    PauliOp p(n);
    p.set_letter(site, l);
    p.phase_ = negative ? 2 : 0;
    return p;
}

Letter PauliOp::letter(std::size_t site) const {
    bool bx = x(site), bz = z(site);
    if (bx) {
        return bz ? Letter::Y : Letter::X;
    }
    return bz ? Letter::Z : Letter::I;
}

void PauliOp::set_letter(std::size_t site, Letter l) {
    if (site >= n_) {
        throw SizeError("site " + std::to_string(site) + " out of range for " + std::to_string(n_) + " sites");
    }
    uint64_t bit = uint64_t{1} << (site & 63);
    std::size_t w = site >> 6;
    bool bx = l == Letter::X || l == Letter::Y;
    bool bz = l == Letter::Z || l == Letter::Y;
    xs_[w] = bx ? (xs_[w] | bit) : (xs_[w] & ~bit);
    zs_[w] = bz ? (zs_[w] | bit) : (zs_[w] & ~bit);
}

PauliOp PauliOp::negated() const {
    PauliOp r = *this;
    r.phase_ = (phase_ + 2) & 3;
    return r;
}

PauliOp PauliOp::unsigned_op() const {
    PauliOp r = *this;
    r.phase_ = 0;
    return r;
}

bool PauliOp::is_identity_letters() const {
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

std::size_t PauliOp::weight() const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        c += std::popcount(xs_[w] | zs_[w]);
    }
    return c;
}

long PauliOp::first_site() const {
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        uint64_t v = xs_[w] | zs_[w];
        if (v) {
            return static_cast<long>(w * 64 + std::countr_zero(v));
        }
    }
    return -1;
}

long PauliOp::last_site() const {
    for (std::size_t w = xs_.size(); w-- > 0;) {
        uint64_t v = xs_[w] | zs_[w];
        if (v) {
            return static_cast<long>(w * 64 + 63 - std::countl_zero(v));
        }
    }
    return -1;
}

bool PauliOp::operator<(const PauliOp &o) const {
    if (n_ != o.n_) {
        return n_ < o.n_;
    }
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        if (xs_[w] != o.xs_[w]) {
            return xs_[w] < o.xs_[w];
        }
        if (zs_[w] != o.zs_[w]) {
            return zs_[w] < o.zs_[w];
        }
    }
    return phase_ < o.phase_;
}

std::size_t PauliOp::letters_hash() const {
    std::size_t h = n_;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        boost::hash_combine(h, xs_[w]);
        boost::hash_combine(h, zs_[w]);
    }
    return h;
}

std::size_t PauliOp::hash() const {
    std::size_t h = letters_hash();
    boost::hash_combine(h, phase_);
    return h;
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    require_same_size(a, b);
    const auto &ax = a.x_words(), &az = a.z_words(), &bx = b.x_words(), &bz = b.z_words();
    int parity = 0;
    for (std::size_t w = 0; w < ax.size(); ++w) {
        parity ^= std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w])) & 1;
    }
    return parity == 0;
}

void multiply_into(PauliOp &a, const PauliOp &b) {
    require_same_size(a, b);
    auto &ax = a.x_words();
    auto &az = a.z_words();
    const auto &bx = b.x_words(), &bz = b.z_words();
    // Moving Z^za past X^xb costs (-1)^(za.xb); re-absorbing i^(x z) into the
    // product letters removes popcount(xc & zc) quarter turns.
    int acc = a.phase() + b.phase();
    for (std::size_t w = 0; w < ax.size(); ++w) {
        uint64_t xc = ax[w] ^ bx[w];
        uint64_t zc = az[w] ^ bz[w];
        acc += std::popcount(ax[w] & az[w]) + std::popcount(bx[w] & bz[w]) + 2 * std::popcount(az[w] & bx[w]) -
               std::popcount(xc & zc);
        ax[w] = xc;
        az[w] = zc;
    }
    a.set_phase(static_cast<uint8_t>(((acc % 4) + 4) % 4));
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    PauliOp r = a;
    multiply_into(r, b);
    return r;
}

PauliOp restrict_signed(const PauliOp &p, std::size_t m, std::size_t l) {
    if (m > l || l >= p.n_sites()) {
        throw SizeError("invalid window [" + std::to_string(m) + ", " + std::to_string(l) + "] for " +
                        std::to_string(p.n_sites()) + " sites");
    }
    PauliOp r(l - m + 1);
    for (std::size_t i = m; i <= l; ++i) {
        if (p.x(i) || p.z(i)) {
            r.set_letter(i - m, p.letter(i));
        }
    }
    r.set_phase(p.phase());
    return r;
}

PauliOp truncate(const PauliOp &p, std::size_t m, std::size_t l) {
    PauliOp r = restrict_signed(p, m, l);
    r.set_phase(0);
    return r;
}

PauliOp embed(const PauliOp &p, std::size_t n, std::size_t offset) {
    if (offset + p.n_sites() > n) {
        throw SizeError("embedding does not fit");
    }
    PauliOp r(n);
    for (std::size_t i = 0; i < p.n_sites(); ++i) {
        if (p.x(i) || p.z(i)) {
            r.set_letter(offset + i, p.letter(i));
        }
    }
    r.set_phase(p.phase());
    return r;
}

PauliOp parse_pauli(std::string_view text, std::size_t n_sites) {
    PauliOp p(n_sites);
    std::size_t i = 0;
    auto skip_spaces = [&] {
        while (i < text.size() && text[i] == ' ') {
            ++i;
        }
    };
    skip_spaces();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        p.set_phase(text[i] == '-' ? 2 : 0);
        ++i;
    }
    skip_spaces();
    if (i < text.size() && text[i] == 'I' && (i + 1 == text.size() || text[i + 1] == ' ')) {
        ++i;
        skip_spaces();
        if (i != text.size()) {
            throw ParseError("unexpected text after identity", i);
        }
        return p;
    }
    std::vector<bool> seen(n_sites, false);
    while (i < text.size()) {
        std::size_t tok = i;
        Letter l;
        switch (text[i]) {
            case 'X':
                l = Letter::X;
                break;
            case 'Y':
                l = Letter::Y;
                break;
            case 'Z':
                l = Letter::Z;
                break;
            default:
                throw ParseError(std::string("bad Pauli letter '") + text[i] + "'", i);
        }
        ++i;
        std::size_t site = 0;
        auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), site);
        if (ec != std::errc() || end == text.data() + i) {
            throw ParseError("expected a site index", i);
        }
        i = static_cast<std::size_t>(end - text.data());
        if (site >= n_sites) {
            throw ParseError("site index " + std::to_string(site) + " >= " + std::to_string(n_sites), tok);
        }
        if (seen[site]) {
            throw ParseError("duplicate site index " + std::to_string(site), tok);
        }
        seen[site] = true;
        p.set_letter(site, l);
        if (i < text.size() && text[i] != ' ') {
            throw ParseError("expected a space between factors", i);
        }
        skip_spaces();
    }
    return p;
}

std::string format_pauli(const PauliOp &p) {
    std::string out(1, p.phase() == 2 ? '-' : '+');
    if (p.phase() & 1) {
        out = p.phase() == 1 ? "+i" : "-i";
    }
    bool any = false;
    for (std::size_t i = 0; i < p.n_sites(); ++i) {
        Letter l = p.letter(i);
        if (l == Letter::I) {
            continue;
        }
        if (any) {
            out += ' ';
        }
        out += letter_char(l);
        out += std::to_string(i);
        any = true;
    }
    if (!any) {
        out += 'I';
    }
    return out;
}

PauliSet::PauliSet(std::initializer_list<PauliOp> ops) {
    for (const auto &p : ops) {
        insert(p);
    }
}

bool PauliSet::insert(const PauliOp &p) {
    auto [it, fresh] = index_.emplace(p, terms_.size());
    if (fresh) {
        terms_.push_back(p);
    }
    return fresh;
}

bool PauliSet::contains(const PauliOp &p) const { return index_.count(p) > 0; }

}  // namespace stabgs
