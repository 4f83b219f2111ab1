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


#include "automaton.hpp"

#include <algorithm>
#include <set>

#include <boost/container_hash/hash.hpp>

namespace stabgs::detail {

namespace {

bool has_key(const Keys &keys, uint32_t key) { return std::binary_search(keys.begin(), keys.end(), key); }

void sort_unique(Keys &keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

/// All 2^rank signed elements, identity first.
std::vector<WPauli> elements(const WindowGroup &g) {
    std::vector<WPauli> out{WPauli{}};
    for (const auto &r : g.rows()) {
        const std::size_t half = out.size();
        for (std::size_t i = 0; i < half; ++i) {
            out.push_back(wmul(out[i], r));
        }
    }
    return out;
}

/// Every element of the span, zero excluded.
std::vector<uint64_t> span_elements(const Span &s) {
    std::vector<uint64_t> out{0};
    for (uint64_t b : s.basis()) {
        const std::size_t half = out.size();
        for (std::size_t i = 0; i < half; ++i) {
            out.push_back(out[i] ^ b);
        }
    }
    out.erase(out.begin());
    return out;
}

/// Every stabilizer group generated by signed operators with the given letters.
std::vector<WindowGroup> all_groups(const std::vector<uint64_t> &letters) {
    std::vector<WindowGroup> out{WindowGroup{}};
    std::set<WindowGroup> seen{WindowGroup{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (uint64_t v : letters) {
            for (uint8_t ph : {uint8_t{0}, uint8_t{2}}) {
                WindowGroup child = out[i];
                if (child.insert({v, ph}) != StabGroup::Insert::added) {
                    continue;
                }
                if (seen.insert(child).second) {
                    out.push_back(std::move(child));
                }
            }
        }
    }
    return out;
}

}  // namespace

WPauli place(const ChainTerm &t, long origin, long cap) {
    uint32_t x = 0, z = 0;
    const long hi = std::min(t.last, cap);
    for (long s = t.first; s <= hi; ++s) {
        const long j = s - origin;
        const auto site = static_cast<std::size_t>(s - t.first);
        if (t.letters.x(site)) {
            x |= 1u << j;
        }
        if (t.letters.z(site)) {
            z |= 1u << j;
        }
    }
    return {pack(x, z), 0};
}

Span kernel_step(const Span &next, const std::vector<ChainTerm> &ending_at_s, long s, std::size_t k) {
    Span out;
    for (const auto &t : ending_at_s) {
        out.add(place(t, s - static_cast<long>(k) + 1, s).v);
    }
    std::vector<uint64_t> work(next.basis().begin(), next.basis().end());
    const auto top = static_cast<uint32_t>(1u << (k - 1));
    for (uint64_t col : {pack(top, 0), pack(0, top)}) {
        auto it = std::find_if(work.begin(), work.end(), [&](uint64_t v) { return (v & col) != 0; });
        if (it == work.end()) {
            continue;
        }
        const uint64_t piv = *it;
        work.erase(it);
        for (auto &v : work) {
            if (v & col) {
                v ^= piv;
            }
        }
    }
    for (uint64_t v : work) {
        out.add(pack(xpart(v) << 1, zpart(v) << 1));
    }
    return out;
}

CursorData make_cursor(long m, std::size_t k, const TermLookup &ending_at, const Span &kernel_next) {
    const long kk = static_cast<long>(k);
    CursorData cd;
    cd.m = m;
    const long origin = m - kk + 1;
    for (const auto &t : ending_at(m)) {
        cd.pm.push_back({place(t, origin, m), t.weight, t.id, make_key(0, t.idx)});
    }
    for (long q = m + 1; q <= m + kk - 1; ++q) {
        for (const auto &t : ending_at(q)) {
            if (t.first <= m) {
                cd.overlap.push_back({place(t, origin, m), t.weight, t.id, make_key(q - m - 1, t.idx)});
            }
        }
    }
    for (const auto &t : ending_at(m + 1)) {
        cd.pm1.push_back({place(t, origin + 1, m + 1), t.weight, t.id, make_key(0, t.idx)});
    }
    for (long q = m + 1; q <= m + kk; ++q) {
        for (const auto &t : ending_at(q)) {
            if (t.first <= m + 1) {
                cd.future.push_back({place(t, origin + 1, m + 1), t.weight, t.id, make_key(q - m - 1, t.idx)});
            }
        }
    }
    cd.kernel = kernel_next;
    return cd;
}

bool LocalState::operator<(const LocalState &o) const {
    if (!(s_proj == o.s_proj)) {
        return s_proj < o.s_proj;
    }
    if (invalid != o.invalid) {
        return std::lexicographical_compare(invalid.begin(), invalid.end(), o.invalid.begin(), o.invalid.end());
    }
    return s_right < o.s_right;
}

std::size_t LocalState::hash() const {
    std::size_t h = s_proj.hash();
    boost::hash_combine(h, s_right.hash());
    for (uint32_t key : invalid) {
        boost::hash_combine(h, key);
    }
    return h;
}

Expander::Step1 Expander::step1(const LocalState &a, const CursorData &cd) const {
    Step1 out;
    WindowGroup g = a.s_proj;
    std::vector<WPauli> qs;
    for (const auto &t : cd.pm) {
        const int sign = a.s_right.sign_of(t.p);
        if (sign == 0) {
            continue;
        }
        const WPauli q{t.p.v, static_cast<uint8_t>(sign > 0 ? 0 : 2)};
        out.ex.q_m.push_back({t.id, static_cast<int8_t>(sign)});
        out.ex.delta_e += sign * t.weight;
        out.q_group.insert(q);
        qs.push_back(q);
        const auto r = g.insert(q);
        if (r == StabGroup::Insert::anticommutes || r == StabGroup::Insert::minus_identity) {
            out.ok = false;
            return out;
        }
    }
    out.s_proj = g.drop_first();
    for (uint32_t key : a.invalid) {
        if (key_offset(key) >= 1) {
            out.invalid.push_back(key - (1u << 20));
        }
    }
    for (const auto &t : cd.overlap) {
        for (const auto &q : qs) {
            if (!wcommutes(t.p, q)) {
                out.invalid.push_back(t.key);
                break;
            }
        }
    }
    sort_unique(out.invalid);
    return out;
}

const Expander::Allowed &Expander::allowed(const CursorData &cd, const Keys &invalid, Space space) {
    if (cd.m != cursor_) {
        cursor_ = cd.m;
        space_cache_.clear();
        subgroup_cache_.clear();
    }
    auto key = std::make_pair(static_cast<int>(space), std::vector<uint32_t>(invalid.begin(), invalid.end()));
    auto it = space_cache_.find(key);
    if (it != space_cache_.end()) {
        return it->second;
    }
    Allowed out;
    std::vector<uint64_t> gens;
    for (const auto &t : cd.future) {
        if (!has_key(invalid, t.key) && t.p.v != 0) {
            out.span.add(t.p.v);
            gens.push_back(t.p.v);
        }
    }
    switch (space) {
    case Space::span:
        out.elements = span_elements(out.span);
        break;
    case Space::span_kernel: {
        Span both;
        if (out.span.dim() <= cd.kernel.dim()) {
            for (uint64_t v : span_elements(out.span)) {
                if (cd.kernel.contains(v)) {
                    out.elements.push_back(v);
                }
            }
        } else {
            for (uint64_t v : span_elements(cd.kernel)) {
                if (out.span.contains(v)) {
                    out.elements.push_back(v);
                }
            }
        }
        for (uint64_t v : out.elements) {
            both.add(v);
        }
        out.span = both;
        break;
    }
    case Space::literal:
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        out.elements = gens;
        break;
    }
    return space_cache_.emplace(std::move(key), std::move(out)).first->second;
}

const std::vector<WindowGroup> &Expander::subgroups(const WindowGroup &g) {
    auto it = subgroup_cache_.find(g);
    if (it != subgroup_cache_.end()) {
        return it->second;
    }
    std::vector<WindowGroup> out{WindowGroup{}};
    std::set<WindowGroup> seen{WindowGroup{}};
    const std::vector<WPauli> elems = elements(g);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t e = 1; e < elems.size(); ++e) {
            WindowGroup child = out[i];
            if (child.insert(elems[e]) != StabGroup::Insert::added) {
                continue;
            }
            if (seen.insert(child).second) {
                out.push_back(std::move(child));
            }
        }
    }
    return subgroup_cache_.emplace(g, std::move(out)).first->second;
}

bool Expander::accept(const Step1 &s, const CursorData &cd, const WindowGroup &cand) const {
    boost::container::small_vector<int, 8> signs;
    for (const auto &t : cd.pm1) {
        const int sc = cand.sign_of(t.p);
        if (sc != 0 && has_key(s.invalid, t.key)) {
            return false;
        }
        signs.push_back(sc);
    }
    WindowGroup joined = s.s_proj;
    for (const auto &r : cand.rows()) {
        const auto ins = joined.insert(r);
        if (ins == StabGroup::Insert::anticommutes || ins == StabGroup::Insert::minus_identity) {
            return false;
        }
    }
    for (std::size_t i = 0; i < cd.pm1.size(); ++i) {
        if (joined.sign_of(cd.pm1[i].p) != signs[i]) {
            return false;
        }
    }
    return true;
}

Expansion Expander::expand(const LocalState &a, const CursorData &cd) {
    Step1 s = step1(a, cd);
    if (!s.ok) {
        return std::move(s.ex);
    }
    const Allowed &al = allowed(cd, s.invalid, Space::span_kernel);

    WindowGroup r_v;
    for (const auto &e : elements(a.s_right.drop_first())) {
        if (e.v != 0 && al.span.contains(e.v)) {
            r_v.insert(e);
        }
    }
    std::vector<uint64_t> tops;
    for (uint64_t v : al.elements) {
        if (last_letter(v, k_) != 0) {
            tops.push_back(v);
        }
    }

    const std::size_t target = a.s_right.rank();
    std::vector<uint64_t> reps;
    std::vector<WindowGroup> cands;
    for (const auto &g0 : subgroups(r_v)) {
        WindowGroup h = s.q_group;
        const WindowGroup up = g0.shifted_up();
        for (const auto &r : up.rows()) {
            h.insert(r);
        }
        if (h.rank() != target) {
            continue;
        }
        reps.clear();
        for (uint64_t v : tops) {
            if (g0.commutes_with(v)) {
                reps.push_back(g0.reduce_letters(v));
            }
        }
        std::sort(reps.begin(), reps.end());
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

        cands.clear();
        cands.push_back(g0);
        for (uint64_t e : reps) {
            for (uint8_t ph : {uint8_t{0}, uint8_t{2}}) {
                WindowGroup c = g0;
                c.insert({e, ph});
                cands.push_back(std::move(c));
            }
        }
        for (uint64_t e1 : reps) {
            if (last_letter(e1, k_) != 1) {
                continue;
            }
            for (uint64_t e2 : reps) {
                if (last_letter(e2, k_) != 2 || !vcommutes(e1, e2)) {
                    continue;
                }
                for (uint8_t p1 : {uint8_t{0}, uint8_t{2}}) {
                    for (uint8_t p2 : {uint8_t{0}, uint8_t{2}}) {
                        WindowGroup c = g0;
                        c.insert({e1, p1});
                        c.insert({e2, p2});
                        cands.push_back(std::move(c));
                    }
                }
            }
        }
        for (auto &c : cands) {
            if (accept(s, cd, c)) {
                s.ex.next.push_back({s.s_proj, s.invalid, std::move(c)});
            }
        }
    }
    return std::move(s.ex);
}

Expansion Expander::expand_reference(const LocalState &a, const CursorData &cd, Space space,
                                     std::vector<CandidateCheck> *checks) {
    Step1 s = step1(a, cd);
    if (!s.ok) {
        return std::move(s.ex);
    }
    const Allowed &al = allowed(cd, s.invalid, space);
    for (auto &cand : all_groups(al.elements)) {
        CandidateCheck c{cand, true, true, true};

        // Q_{m+1}, its validity and its closure inside the next projection.
        boost::container::small_vector<int, 8> signs;
        WindowGroup proj_q = s.s_proj;
        for (const auto &t : cd.pm1) {
            const int sc = cand.sign_of(t.p);
            signs.push_back(sc);
            if (sc == 0) {
                continue;
            }
            if (has_key(s.invalid, t.key)) {
                c.rule_2a = false;
            }
            const auto ins = proj_q.insert({t.p.v, static_cast<uint8_t>(sc > 0 ? 0 : 2)});
            if (ins == StabGroup::Insert::anticommutes || ins == StabGroup::Insert::minus_identity) {
                c.rule_2a = false;
            }
        }
        if (c.rule_2a) {
            for (std::size_t i = 0; i < cd.pm1.size(); ++i) {
                if (proj_q.sign_of(cd.pm1[i].p) != signs[i]) {
                    c.rule_2a = false;
                }
            }
        }

        WindowGroup joined = s.s_proj;
        for (const auto &r : cand.rows()) {
            const auto ins = joined.insert(r);
            if (ins == StabGroup::Insert::anticommutes || ins == StabGroup::Insert::minus_identity) {
                c.rule_2c = false;
            }
        }
        if (c.rule_2c) {
            for (std::size_t i = 0; i < cd.pm1.size(); ++i) {
                if (joined.sign_of(cd.pm1[i].p) != signs[i]) {
                    c.rule_2c = false;
                }
            }
        }

        WindowGroup back = s.q_group;
        const WindowGroup lower = cand.without_site(k_ - 1).shifted_up();
        for (const auto &r : lower.rows()) {
            if (back.insert(r) != StabGroup::Insert::added && back.sign_of(r) != 1) {
                c.rule_2d = false;
            }
        }
        c.rule_2d = c.rule_2d && back == a.s_right;

        if (c.rule_2a && c.rule_2c && c.rule_2d) {
            s.ex.next.push_back({s.s_proj, s.invalid, cand});
        }
        if (checks) {
            checks->push_back(std::move(c));
        }
    }
    return std::move(s.ex);
}

}  // namespace stabgs::detail
