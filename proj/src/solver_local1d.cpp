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


#include "stabgs/solver_local1d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

#include "automaton.hpp"
#include "stabgs/errors.hpp"

namespace stabgs {

using namespace detail;

namespace {

/// The Hamiltonian as 1-based chain terms with the backward kernels.
struct Chain {
    const Hamiltonian *h = nullptr;
    long n = 0;
    std::size_t k = 1;
    std::vector<std::vector<ChainTerm>> by_last;           // [1, n]
    std::vector<std::pair<long, uint32_t>> where;          // id -> (last, idx)
    std::vector<Span> kernel;                              // [1, n+1]
    std::vector<ChainTerm> none;

    const std::vector<ChainTerm> &ending_at(long q) const { return q >= 1 && q <= n ? by_last[q] : none; }

    CursorData cursor(long m) const {
        return make_cursor(m, k, [this](long q) -> const std::vector<ChainTerm> & { return ending_at(q); },
                           kernel[m + 1]);
    }
};

Chain make_chain(const Hamiltonian &h) {
    Chain c;
    c.h = &h;
    c.n = static_cast<long>(h.n_sites());
    c.k = std::max<std::size_t>(h.k(), 1);
    if (c.k > kMaxWindow) {
        throw GuardError("locality " + std::to_string(c.k) + " exceeds the window limit of 32");
    }
    c.by_last.resize(c.n + 1);
    c.where.resize(h.size());
    for (long last = 1; last <= c.n; ++last) {
        const auto &ids = h.by_last_site(last - 1);
        if (ids.size() >= (1u << 20)) {
            throw GuardError("too many terms ending on one site");
        }
        for (std::size_t idx = 0; idx < ids.size(); ++idx) {
            const std::size_t id = ids[idx];
            const std::size_t first = h.q_first(id);
            c.by_last[last].push_back({static_cast<long>(first) + 1, last,
                                       truncate(h.terms()[id].pauli, first, last - 1), h.terms()[id].weight, id,
                                       static_cast<uint32_t>(idx)});
            c.where[id] = {last, static_cast<uint32_t>(idx)};
        }
    }
    c.kernel.resize(c.n + 2);
    for (long s = c.n; s >= 1; --s) {
        c.kernel[s] = kernel_step(c.kernel[s + 1], c.ending_at(s), s, c.k);
    }
    return c;
}

Space to_space(CandidateRule r) {
    switch (r) {
    case CandidateRule::span:
        return Space::span;
    case CandidateRule::literal:
        return Space::literal;
    default:
        return Space::span_kernel;
    }
}

bool use_reference(CandidateRule rule, bool reference) { return reference || rule != CandidateRule::span_kernel; }

LocalStateA to_public(const LocalState &s, long m, const Chain &c) {
    LocalStateA a;
    a.m = m;
    a.s_proj = to_stabgroup(s.s_proj, c.k);
    a.s_right = to_stabgroup(s.s_right, c.k);
    for (uint32_t key : s.invalid) {
        a.invalid_ids.push_back(c.ending_at(m + key_offset(key))[key_index(key)].id);
    }
    std::sort(a.invalid_ids.begin(), a.invalid_ids.end());
    return a;
}

LocalState to_internal(const LocalStateA &a, const Chain &c) {
    if (a.s_proj.n_sites() != c.k || a.s_right.n_sites() != c.k) {
        throw SizeError("state windows must have k sites");
    }
    LocalState s{from_stabgroup(a.s_proj), {}, from_stabgroup(a.s_right)};
    for (std::size_t id : a.invalid_ids) {
        if (id >= c.where.size()) {
            throw SizeError("invalid id out of range");
        }
        const auto [last, idx] = c.where[id];
        s.invalid.push_back(make_key(last - a.m, idx));
    }
    std::sort(s.invalid.begin(), s.invalid.end());
    return s;
}

PauliSet signed_set(const Hamiltonian &h, const boost::container::small_vector<SignedId, 4> &q) {
    PauliSet out;
    for (const auto &sid : q) {
        const PauliOp &p = h.terms()[sid.id].pauli;
        out.insert(sid.sign > 0 ? p : p.negated());
    }
    return out;
}

using QIds = boost::container::small_vector<SignedId, 4>;

struct Level {
    std::vector<LocalState> states;
    std::vector<double> e;
    std::vector<uint32_t> parent;
    std::vector<QIds> q;
};

struct Run {
    std::vector<Level> levels;
    std::vector<SiteStats> stats;
};

std::vector<Expansion> expand_level(const Level &cur, const CursorData &cd, const Local1DOptions &opts,
                                    std::vector<Expander> &workers) {
    std::vector<Expansion> out(cur.states.size());
    const bool ref = use_reference(opts.rule, opts.reference);
    const Space space = to_space(opts.rule);
    auto work = [&](std::size_t t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            out[i] = ref ? workers[t].expand_reference(cur.states[i], cd, space) : workers[t].expand(cur.states[i], cd);
        }
    };
    const std::size_t threads = std::min(workers.size(), std::max<std::size_t>(cur.states.size() / 16, 1));
    if (threads <= 1) {
        work(0, 0, cur.states.size());
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (cur.states.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(cur.states.size(), lo + chunk);
        if (lo < hi) {
            pool.emplace_back(work, t, lo, hi);
        }
    }
    for (auto &th : pool) {
        th.join();
    }
    return out;
}

Run run(const Chain &c, const Local1DOptions &opts) {
    std::size_t max_pm = 1;
    for (long m = 1; m <= c.n; ++m) {
        max_pm = std::max(max_pm, c.by_last[m].size());
    }
    const double bound = std::pow(4.0 * static_cast<double>(c.k * max_pm), 3.0 * static_cast<double>(c.k));

    std::vector<Expander> workers(std::max(opts.threads, 1u), Expander(c.k));
    Run r;
    Level start;
    start.states.push_back({});
    start.e.push_back(0.0);
    start.parent.push_back(0);
    start.q.emplace_back();
    r.levels.push_back(std::move(start));

    for (long m = 0; m <= c.n; ++m) {
        const auto t0 = std::chrono::steady_clock::now();
        const Level &cur = r.levels.back();
        const CursorData cd = c.cursor(m);
        std::vector<Expansion> exps = expand_level(cur, cd, opts, workers);

        Level next;
        std::unordered_map<LocalState, uint32_t, LocalStateHash> index;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const double e = cur.e[i] + exps[i].delta_e;
            for (auto &s : exps[i].next) {
                auto [it, fresh] = index.try_emplace(s, static_cast<uint32_t>(next.states.size()));
                if (fresh) {
                    next.states.push_back(std::move(s));
                    next.e.push_back(e);
                    next.parent.push_back(static_cast<uint32_t>(i));
                    next.q.push_back(exps[i].q_m);
                    continue;
                }
                const uint32_t j = it->second;
                if (e < next.e[j] || (e == next.e[j] && cur.states[i] < cur.states[next.parent[j]])) {
                    next.e[j] = e;
                    next.parent[j] = static_cast<uint32_t>(i);
                    next.q[j] = exps[i].q_m;
                }
            }
        }
        if (static_cast<double>(next.states.size()) > bound) {
            throw Error("frontier exceeds its theoretical bound at cursor " + std::to_string(m + 1));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.stats.push_back({m, cur.states.size(), secs});
        r.levels.push_back(std::move(next));
    }
    r.stats.push_back({c.n + 1, r.levels.back().states.size(), 0.0});
    if (r.levels.back().states.empty()) {
        throw Error("automaton has no final state");
    }
    return r;
}

}  // namespace

std::string LocalStateA::key() const {
    std::string out = std::to_string(m) + "|" + s_proj.serialize() + "|";
    for (std::size_t i = 0; i < invalid_ids.size(); ++i) {
        out += (i ? "," : "") + std::to_string(invalid_ids[i]);
    }
    return out + "|" + s_right.serialize();
}

LocalStateA initial_state(const Hamiltonian &h) {
    const std::size_t k = std::max<std::size_t>(h.k(), 1);
    return {0, StabGroup(k), {}, StabGroup(k)};
}

std::vector<Branch> transition(const LocalStateA &a, const Hamiltonian &h, const TransitionOptions &opts,
                               std::vector<CandidateTrace> *trace) {
    const Chain c = make_chain(h);
    if (a.m < 0 || a.m > c.n) {
        throw SizeError("cursor out of range");
    }
    const LocalState s = to_internal(a, c);
    const CursorData cd = c.cursor(a.m);
    Expander ex(c.k);
    std::vector<CandidateCheck> checks;
    Expansion e = trace || use_reference(opts.rule, opts.reference)
                      ? ex.expand_reference(s, cd, to_space(opts.rule), trace ? &checks : nullptr)
                      : ex.expand(s, cd);
    if (trace) {
        for (const auto &ch : checks) {
            trace->push_back({to_stabgroup(ch.s_right, c.k), ch.rule_2a, ch.rule_2c, ch.rule_2d});
        }
    }
    std::vector<Branch> out;
    const PauliSet q = signed_set(h, e.q_m);
    for (const auto &n : e.next) {
        out.push_back({to_public(n, a.m + 1, c), e.delta_e, q});
    }
    return out;
}

LocalStateA state_from_subset(const Hamiltonian &h, const PauliSet &q, long m) {
    const Chain c = make_chain(h);
    const long k = static_cast<long>(c.k);
    std::vector<PauliOp> past, future;
    std::vector<std::size_t> past_ids;
    for (const auto &p : q) {
        auto it = std::find_if(h.terms().begin(), h.terms().end(),
                               [&](const Term &t) { return t.pauli.same_letters(p); });
        if (it == h.terms().end()) {
            throw Error("operator is not a term of the Hamiltonian");
        }
        const auto id = static_cast<std::size_t>(it - h.terms().begin());
        if (c.where[id].first < m) {
            past.push_back(p);
            past_ids.push_back(id);
        } else {
            future.push_back(p);
        }
    }
    const auto n = static_cast<std::size_t>(c.n);
    auto window = [&](const std::vector<PauliOp> &gens, long hi_site) {
        // Sites are 1-based; window index 0 is site m - k + 1.
        StabGroup out(c.k);
        const long lo = std::max(m - k + 1, 1L), hi = std::min(hi_site, c.n);
        if (lo > hi) {
            return out;
        }
        const StabGroup g = StabGroup::from_generators(gens, n);
        const StabGroup projected = project_window(g, lo - 1, hi - 1);
        for (const auto &r : projected.generators()) {
            out.insert(embed(r, c.k, lo - (m - k + 1)));
        }
        return out;
    };
    LocalStateA a;
    a.m = m;
    a.s_proj = window(past, m - 1);
    a.s_right = window(future, m);
    for (long last = m; last <= m + k - 2; ++last) {
        for (const auto &t : c.ending_at(last)) {
            if (t.first > m - 1) {
                continue;
            }
            const PauliOp &p = h.terms()[t.id].pauli;
            if (std::any_of(past.begin(), past.end(), [&](const PauliOp &o) { return !commutes(o, p); })) {
                a.invalid_ids.push_back(t.id);
            }
        }
    }
    std::sort(a.invalid_ids.begin(), a.invalid_ids.end());
    return a;
}

Local1DPath solve_local1d_path(const Hamiltonian &h, const Local1DOptions &opts) {
    const Chain c = make_chain(h);
    const Run r = run(c, opts);

    const Level &last = r.levels.back();
    std::size_t best = 0;
    for (std::size_t i = 1; i < last.states.size(); ++i) {
        if (last.e[i] < last.e[best] || (last.e[i] == last.e[best] && last.states[i] < last.states[best])) {
            best = i;
        }
    }

    Local1DPath out;
    out.dp_energy = last.e[best] + h.offset();
    out.states.resize(r.levels.size());
    out.q.resize(r.levels.size() - 1);
    std::vector<PauliOp> gens;
    std::size_t idx = best;
    for (std::size_t lv = r.levels.size(); lv-- > 0;) {
        const Level &level = r.levels[lv];
        out.states[lv] = to_public(level.states[idx], static_cast<long>(lv), c);
        if (lv == 0) {
            break;
        }
        out.q[lv - 1] = signed_set(h, level.q[idx]);
        for (const auto &p : out.q[lv - 1]) {
            gens.push_back(p);
        }
        idx = level.parent[idx];
    }
    out.result = make_result(h, StabGroup::from_generators(gens, h.n_sites()), "local1d",
                             "frontier ties keep the parent with the smaller canonical state; the final state is "
                             "the smallest canonical state of minimal energy");
    double scale = 1.0 + std::abs(h.offset());
    for (const auto &t : h.terms()) {
        scale += std::abs(t.weight);
    }
    if (std::abs(out.result.energy - out.dp_energy) > 1e-9 * scale) {
        throw Error("reconstructed group energy disagrees with the automaton energy");
    }
    return out;
}

SolveResult solve_local1d(const Hamiltonian &h, const Local1DOptions &opts) {
    return solve_local1d_path(h, opts).result;
}

std::vector<SiteStats> frontier_stats(const Hamiltonian &h, const Local1DOptions &opts) {
    return run(make_chain(h), opts).stats;
}

}  // namespace stabgs
