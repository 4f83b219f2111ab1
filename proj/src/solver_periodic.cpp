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


#include "stabgs/solver_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "automaton.hpp"
#include "stabgs/errors.hpp"
#include "stabgs/solver_general.hpp"

namespace stabgs {

using namespace detail;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxNodes = 2'000'000;

long floor_mod(long a, long b) { return ((a % b) + b) % b; }

std::string signed_letters(const PauliOp &p) {
    std::string s(1, p.phase() == 2 ? '-' : '+');
    for (std::size_t i = 0; i < p.n_sites(); ++i) {
        s += letter_char(p.letter(i));
    }
    return s;
}

/// Letters of p trimmed to its support, keeping the sign; `pos` moves with it.
PlacedTerm trimmed(const PlacedTerm &t) {
    const long f = t.op.first_site();
    if (f < 0) {
        return t;
    }
    PauliOp r = restrict_signed(t.op, static_cast<std::size_t>(f), static_cast<std::size_t>(t.op.last_site()));
    return {t.pos + f, r};
}

struct Canonical {
    std::string label;
    std::size_t period;
    std::vector<PlacedTerm> terms;
};

Canonical canonicalize(const std::vector<PlacedTerm> &raw, std::size_t period, std::size_t l) {
    const long n = static_cast<long>(period);
    std::vector<std::pair<long, std::string>> entries;
    std::map<std::pair<long, std::string>, PauliOp> ops;
    for (const auto &t0 : raw) {
        const PlacedTerm t = trimmed(t0);
        const long pos = floor_mod(t.pos, n);
        auto key = std::make_pair(pos, signed_letters(t.op));
        ops.emplace(key, t.op);
        entries.push_back(std::move(key));
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

    auto shifted = [&](const std::vector<std::pair<long, std::string>> &e, long by, long mod) {
        std::vector<std::pair<long, std::string>> out;
        for (const auto &[p, s] : e) {
            out.emplace_back(floor_mod(p + by, mod), s);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    const long units = n / static_cast<long>(l);
    long prim = units;
    for (long d = 1; d < units; ++d) {
        if (units % d == 0 && shifted(entries, d * static_cast<long>(l), n) == entries) {
            prim = d;
            break;
        }
    }
    const long np = prim * static_cast<long>(l);
    const auto reduced = shifted(entries, 0, np);

    std::string best;
    std::vector<std::pair<long, std::string>> best_entries;
    for (long t = 0; t < prim; ++t) {
        const auto cand = shifted(reduced, -t * static_cast<long>(l), np);
        std::string body;
        for (const auto &[p, s] : cand) {
            body += (body.empty() ? "" : ";") + std::to_string(p) + ":" + s;
        }
        if (t == 0 || body < best) {
            best = body;
            best_entries = cand;
        }
    }
    Canonical c{std::to_string(prim) + "|" + best, static_cast<std::size_t>(np), {}};
    for (const auto &[p, s] : best_entries) {
        // Any stored operator with these letters will do; they are equal.
        for (const auto &[key, op] : ops) {
            if (key.second == s) {
                c.terms.push_back({p, op});
                break;
            }
        }
    }
    return c;
}

PauliSet placed_set(const std::vector<PlacedTerm> &terms, std::size_t width) {
    PauliSet out;
    for (const auto &t : terms) {
        out.insert(embed(t.op, width, static_cast<std::size_t>(t.pos)));
    }
    return out;
}

/// Cell terms laid out on the infinite chain. Chain sites are numbered so that
/// unit u covers sites [u*l + 1, u*l + l].
class PeriodicChain {
  public:
    PeriodicChain(const PeriodicHamiltonian1D &h) : l_(static_cast<long>(h.l)) {
        if (h.l == 0) {
            throw Error("period must be positive");
        }
        k_ = std::max<std::size_t>(h.k(), 1);
        if (k_ > kMaxWindow) {
            throw GuardError("locality exceeds the window limit of 32");
        }
        residue_.resize(h.l);
        for (std::size_t ci = 0; ci < h.cell_terms.size(); ++ci) {
            const PauliOp &p = h.cell_terms[ci].pauli;
            const long f = p.first_site(), la = p.last_site();
            cells_.push_back({f, la, truncate(p, f, la), h.cell_terms[ci].weight, 0});
            auto &list = residue_[floor_mod(la, l_)];
            cells_.back().idx = static_cast<uint32_t>(list.size());
            list.push_back(ci);
        }
        build_kernel();
    }

    std::size_t k() const { return k_; }
    long l() const { return l_; }

    const std::vector<ChainTerm> &ending_at(long q) const {
        auto it = cache_.find(q);
        if (it != cache_.end()) {
            return it->second;
        }
        std::vector<ChainTerm> out;
        for (std::size_t ci : residue_[floor_mod(q - 1, l_)]) {
            const Cell &c = cells_[ci];
            const long base = q - 1 - c.last;
            out.push_back({base + c.first + 1, q, c.letters, c.weight, ci, c.idx});
        }
        return cache_.emplace(q, std::move(out)).first->second;
    }

    CursorData cursor(long m) const {
        return make_cursor(m, k_, [this](long q) -> const std::vector<ChainTerm> & { return ending_at(q); },
                           kernel_[floor_mod(m + 1, l_)]);
    }

    /// Signed letters of cell term ci and its extent.
    PauliOp signed_cell(std::size_t ci, int sign) const {
        return sign > 0 ? cells_[ci].letters : cells_[ci].letters.negated();
    }
    long extent(std::size_t ci) const { return cells_[ci].last - cells_[ci].first; }

  private:
    struct Cell {
        long first;
        long last;
        PauliOp letters;
        double weight;
        uint32_t idx;
    };

    static std::vector<uint64_t> sorted_basis(const Span &s) {
        std::vector<uint64_t> b(s.basis().begin(), s.basis().end());
        std::sort(b.begin(), b.end());
        return b;
    }

    void build_kernel() {
        // Backward iteration from an empty right end; the spans only grow and
        // settle once a full unit repeats.
        std::vector<std::vector<uint64_t>> history;
        std::vector<Span> spans;
        Span next;
        long stable = 0;
        for (long s = 0; s > -100000; --s) {
            Span cur = kernel_step(next, ending_at(s), s, k_);
            spans.push_back(cur);
            history.push_back(sorted_basis(cur));
            const std::size_t i = history.size() - 1;
            if (i >= static_cast<std::size_t>(l_) && history[i] == history[i - static_cast<std::size_t>(l_)]) {
                if (++stable >= l_) {
                    kernel_.resize(static_cast<std::size_t>(l_));
                    for (long j = 0; j < l_; ++j) {
                        kernel_[floor_mod(s + j, l_)] = spans[i - static_cast<std::size_t>(j)];
                    }
                    return;
                }
            } else {
                stable = 0;
            }
            next = std::move(cur);
        }
        throw Error("kernel iteration did not settle");
    }

    long l_;
    std::size_t k_;
    std::vector<Cell> cells_;
    std::vector<std::vector<std::size_t>> residue_;
    std::vector<Span> kernel_;
    mutable std::map<long, std::vector<ChainTerm>> cache_;
};

using QIds = boost::container::small_vector<SignedId, 4>;

/// Step graph over (residue, state) nodes reachable from the empty state.
struct StepGraph {
    std::vector<int> residue;
    std::vector<double> delta;
    std::vector<QIds> q;
    std::vector<std::vector<uint32_t>> next;
    std::vector<LocalState> state;
};

StepGraph explore(const PeriodicChain &chain) {
    const long l = chain.l();
    std::vector<CursorData> cds;
    std::vector<Expander> expanders;
    for (long r = 0; r < l; ++r) {
        cds.push_back(chain.cursor(r));
        expanders.emplace_back(chain.k());
    }
    std::vector<std::unordered_map<LocalState, uint32_t, LocalStateHash>> index(static_cast<std::size_t>(l));
    StepGraph g;
    auto add = [&](int r, LocalState s) -> uint32_t {
        auto [it, fresh] = index[r].try_emplace(s, static_cast<uint32_t>(g.state.size()));
        if (fresh) {
            if (g.state.size() >= kMaxNodes) {
                throw GuardError("periodic automaton exceeds " + std::to_string(kMaxNodes) + " states");
            }
            g.residue.push_back(r);
            g.state.push_back(std::move(s));
            g.delta.push_back(0.0);
            g.q.emplace_back();
            g.next.emplace_back();
        }
        return it->second;
    };
    add(0, LocalState{});
    for (std::size_t i = 0; i < g.state.size(); ++i) {
        const int r = g.residue[i];
        Expansion ex = expanders[r].expand(g.state[i], cds[r]);
        const int nr = static_cast<int>(floor_mod(r + 1, l));
        std::vector<uint32_t> succ;
        for (auto &s : ex.next) {
            succ.push_back(add(nr, std::move(s)));
        }
        g.delta[i] = ex.delta_e;
        g.q[i] = ex.q_m;
        g.next[i] = std::move(succ);
    }
    return g;
}

/// dist[t][v]: least energy of a walk of t steps from `from` to v.
std::vector<std::vector<double>> forward(const StepGraph &g, uint32_t from, std::size_t steps) {
    std::vector<std::vector<double>> dist(steps + 1, std::vector<double>(g.state.size(), kInf));
    dist[0][from] = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t v = 0; v < g.state.size(); ++v) {
            if (dist[t][v] == kInf) {
                continue;
            }
            const double e = dist[t][v] + g.delta[v];
            for (uint32_t w : g.next[v]) {
                dist[t + 1][w] = std::min(dist[t + 1][w], e);
            }
        }
    }
    return dist;
}

/// back[t][v]: least energy of a walk of t steps from v to `to`.
std::vector<std::vector<double>> backward(const StepGraph &g, uint32_t to, std::size_t steps) {
    std::vector<std::vector<double>> back(steps + 1, std::vector<double>(g.state.size(), kInf));
    back[0][to] = 0.0;
    for (std::size_t t = 1; t <= steps; ++t) {
        for (std::size_t v = 0; v < g.state.size(); ++v) {
            double best = kInf;
            for (uint32_t w : g.next[v]) {
                best = std::min(best, back[t - 1][w]);
            }
            if (best != kInf) {
                back[t][v] = best + g.delta[v];
            }
        }
    }
    return back;
}

struct Found {
    std::size_t c;
    std::string label;
    std::vector<PlacedTerm> terms;
    std::size_t period;
};

}  // namespace

std::pair<std::string, std::size_t> phase_signature(const std::vector<PlacedTerm> &terms, std::size_t period,
                                                    std::size_t l) {
    if (l == 0 || period == 0 || period % l != 0) {
        throw SizeError("period must be a positive multiple of l");
    }
    Canonical c = canonicalize(terms, period, l);
    return {c.label, c.period};
}

PeriodicResult solve_periodic_1d(const PeriodicHamiltonian1D &h, const PeriodicOptions &opts) {
    if (opts.c_max == 0) {
        throw Error("c_max must be at least 1");
    }
    const PeriodicChain chain(h);
    const StepGraph g = explore(chain);
    const std::size_t l = h.l;
    const std::size_t steps = opts.c_max * l;
    double scale = 1.0;
    for (const auto &t : h.cell_terms) {
        scale += std::abs(t.weight);
    }
    const double tol = 1e-9 * scale;

    // Least closed walk through each boundary state for every c.
    std::vector<uint32_t> starts;
    for (uint32_t v = 0; v < g.state.size(); ++v) {
        if (g.residue[v] == 0) {
            starts.push_back(v);
        }
    }
    std::vector<std::vector<double>> cycle(starts.size(), std::vector<double>(opts.c_max + 1, kInf));
    double e_min = kInf;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const auto dist = forward(g, starts[i], steps);
        for (std::size_t c = 1; c <= opts.c_max; ++c) {
            cycle[i][c] = dist[c * l][starts[i]];
            if (cycle[i][c] != kInf) {
                e_min = std::min(e_min, cycle[i][c] / static_cast<double>(c * l));
            }
        }
    }
    if (e_min == kInf) {
        throw NoCycleFound("no periodic state with c <= " + std::to_string(opts.c_max) +
                           "; try a larger c_max");
    }

    // Every optimal closed walk, counted once from its smallest boundary state.
    std::map<std::string, Found> found;
    const std::size_t width_extra = chain.k() - 1;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const uint32_t a = starts[i];
        for (std::size_t c = 1; c <= opts.c_max; ++c) {
            const double target = e_min * static_cast<double>(c * l);
            if (cycle[i][c] == kInf || cycle[i][c] > target + tol) {
                continue;
            }
            const std::size_t len = c * l;
            const auto back = backward(g, a, len);
            std::vector<uint32_t> walk{a};
            std::size_t walks = 0;
            auto record = [&]() {
                std::vector<PlacedTerm> placed;
                for (std::size_t t = 0; t < len; ++t) {
                    for (const auto &sid : g.q[walk[t]]) {
                        const long pos = static_cast<long>(t) - chain.extent(sid.id);
                        placed.push_back({pos, chain.signed_cell(sid.id, sid.sign)});
                    }
                }
                Canonical cn = canonicalize(placed, len, l);
                if (!found.count(cn.label)) {
                    found.emplace(cn.label, Found{cn.period / l, cn.label, cn.terms, cn.period});
                }
            };
            auto dfs = [&](auto &&self, double acc) -> void {
                if (walks >= opts.max_walks) {
                    return;
                }
                const uint32_t v = walk.back();
                const std::size_t t = walk.size() - 1;
                if (t == len) {
                    ++walks;
                    record();
                    return;
                }
                const double e = acc + g.delta[v];
                for (uint32_t w : g.next[v]) {
                    const bool closing = t + 1 == len;
                    if ((w == a) != closing || (g.residue[w] == 0 && w < a)) {
                        continue;
                    }
                    if (e + back[len - t - 1][w] > target + tol) {
                        continue;
                    }
                    walk.push_back(w);
                    self(self, e);
                    walk.pop_back();
                }
            };
            dfs(dfs, 0.0);
        }
    }

    std::vector<PeriodicResult> all;
    for (const auto &[label, f] : found) {
        PeriodicResult r;
        r.e_per_site = e_min;
        r.supercell_c = f.c;
        r.generators_in_supercell = placed_set(f.terms, f.period + width_extra);
        r.phase_signature = label;
        all.push_back(std::move(r));
    }
    std::sort(all.begin(), all.end(), [](const PeriodicResult &x, const PeriodicResult &y) {
        return x.supercell_c != y.supercell_c ? x.supercell_c < y.supercell_c : x.phase_signature < y.phase_signature;
    });
    PeriodicResult best = all.front();
    best.degenerate = std::move(all);
    return best;
}

std::vector<std::size_t> translation_compatible_terms(const SupercellHamiltonian &h) {
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
        try {
            const PauliOp p0 = h.wrap_term(t, 0).pauli;
            bool ok = true;
            for (std::size_t c = 1; c < h.n_cells() && ok; ++c) {
                ok = commutes(p0, h.wrap_term(t, c).pauli);
            }
            if (ok) {
                keep.push_back(t);
            }
        } catch (const Error &) {
            // Not Hermitian after wrapping; it cannot be a member.
        }
    }
    return keep;
}

namespace {

/// Translates of term t with the sign of its letters product, i.e. before
/// folding any wrapping sign into the weight.
std::vector<PauliOp> orbit(const SupercellHamiltonian &h, const SupercellTerm &t) {
    SupercellHamiltonian one = h;
    one.terms = {{1.0, t.factors}};
    std::vector<PauliOp> out;
    for (std::size_t c = 0; c < h.n_cells(); ++c) {
        const Term w = one.wrap_term(0, c);
        out.push_back(w.weight < 0 ? w.pauli.negated() : w.pauli);
    }
    return out;
}

bool insert_orbit(StabGroup &g, const std::vector<PauliOp> &ops, bool negate) {
    for (const auto &p : ops) {
        const auto r = g.insert(negate ? p.negated() : p);
        if (r == StabGroup::Insert::anticommutes || r == StabGroup::Insert::minus_identity) {
            return false;
        }
    }
    return true;
}

std::string factor_text(const SupercellTerm &t) {
    std::string s;
    for (const auto &f : t.factors) {
        s += letter_char(f.letter);
        s += "(";
        for (int o : f.offset) {
            s += std::to_string(o) + ",";
        }
        s += std::to_string(f.site) + ")";
    }
    return s;
}

}  // namespace

StabGroup translation_group(const SupercellHamiltonian &h, const std::vector<SupercellTerm> &reps) {
    StabGroup g(h.n_qubits());
    for (const auto &r : reps) {
        if (!insert_orbit(g, orbit(h, r), r.weight < 0)) {
            throw AnticommutingGenerators("translates do not form a stabilizer group");
        }
    }
    return g;
}

double energy_per_site(const SupercellHamiltonian &h, const StabGroup &g) {
    return e_stab(h.wrap(), g) / static_cast<double>(h.n_qubits());
}

PeriodicResult solve_supercell_c1(const SupercellHamiltonian &h, std::size_t max_terms) {
    const Hamiltonian wrapped = h.wrap();
    const std::vector<std::size_t> keep = translation_compatible_terms(h);
    if (keep.size() > max_terms) {
        throw GuardError("supercell solve limited to " + std::to_string(max_terms) + " representative terms, got " +
                         std::to_string(keep.size()));
    }
    std::vector<std::vector<PauliOp>> orbits;
    for (std::size_t t : keep) {
        orbits.push_back(orbit(h, h.terms[t]));
    }
    const double sites = static_cast<double>(h.n_qubits());

    StabGroup best(h.n_qubits());
    double best_e = e_stab(wrapped, best);
    std::vector<StabGroup> stack{best};
    std::unordered_set<std::string> seen{best.serialize()};
    while (!stack.empty()) {
        StabGroup g = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = orbits.size(); i-- > 0;) {
            for (bool neg : {true, false}) {
                StabGroup child = g;
                if (!insert_orbit(child, orbits[i], neg) || child == g) {
                    continue;
                }
                if (!seen.insert(child.serialize()).second) {
                    continue;
                }
                stack.push_back(std::move(child));
            }
        }
        const double e = e_stab(wrapped, g);
        if (e < best_e) {
            best_e = e;
            best = g;
        }
    }

    PeriodicResult r;
    r.e_per_site = best_e / sites;
    r.supercell_c = 1;
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
        const std::vector<PauliOp> ops = orbit(h, h.terms[t]);
        for (int sign : {1, -1}) {
            const bool all = std::all_of(ops.begin(), ops.end(), [&](const PauliOp &p) {
                return best.member_sign(sign > 0 ? p : p.negated()) == MemberSign::plus;
            });
            if (all) {
                labels.push_back((sign > 0 ? "+" : "-") + factor_text(h.terms[t]));
                r.generators_in_supercell.insert(sign > 0 ? ops[0] : ops[0].negated());
            }
        }
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    r.phase_signature = "1|";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        r.phase_signature += (i ? ";" : "") + labels[i];
    }
    return r;
}

ScanResult extended_scan(const SupercellHamiltonian &h, const std::vector<std::pair<double, double>> &grid,
                         unsigned threads) {
    if (grid.empty()) {
        throw Error("empty angle grid");
    }
    if (h.sites_per_cell != 2) {
        throw SizeError("extended_scan expects two sites per cell");
    }
    ScanResult out;
    out.points.resize(grid.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto [alpha, beta] = grid[i];
            out.points[i] = {alpha, beta, solve_supercell_c1(rotate_y(h, {beta, alpha}))};
        }
    };
    const std::size_t nt = std::clamp<std::size_t>(threads, 1, grid.size());
    if (nt == 1) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (grid.size() + nt - 1) / nt;
        for (std::size_t t = 0; t < nt; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(grid.size(), lo + chunk);
            if (lo < hi) {
                pool.emplace_back(work, lo, hi);
            }
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    double scale = 1.0;
    for (const auto &t : h.terms) {
        scale += std::abs(t.weight);
    }
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        const ScanPoint &p = out.points[i], &b = out.points[out.best];
        const double de = p.result.e_per_site - b.result.e_per_site;
        if (de < -1e-12 * scale) {
            out.best = i;
        } else if (de <= 1e-12 * scale && std::make_tuple(p.alpha, p.beta, p.result.phase_signature) <
                                              std::make_tuple(b.alpha, b.beta, b.result.phase_signature)) {
            out.best = i;
        }
    }
    return out;
}

double toric_polarized_energy(double h, double alpha, int dim) {
    const SupercellHamiltonian rotated = rotate_y(toric_model(h, h, dim, dim), {alpha, alpha});
    auto x = [](int s) { return SupercellTerm{1.0, {{Letter::X, {0, 0}, s}}}; };
    return energy_per_site(rotated, translation_group(rotated, {x(0), x(1)}));
}

double toric_topological_energy(double h, int dim) {
    const SupercellHamiltonian model = toric_model(h, h, dim, dim);
    const SupercellHamiltonian bare = toric_model(0.0, 0.0, dim, dim);
    std::vector<SupercellTerm> reps;
    for (const auto &t : bare.terms) {
        reps.push_back({1.0, t.factors});
    }
    return energy_per_site(model, translation_group(model, reps));
}

ToricLineAnalysis analyze_toric_line(double alpha_step, double tol) {
    std::vector<double> alphas;
    for (std::size_t i = 0; static_cast<double>(i) * alpha_step <= std::numbers::pi / 2 + 1e-12; ++i) {
        alphas.push_back(static_cast<double>(i) * alpha_step);
    }
    auto gap = [&](double h) {
        double best = kInf;
        for (double a : alphas) {
            best = std::min(best, toric_polarized_energy(h, a));
        }
        return best - toric_topological_energy(h);
    };
    auto curvature = [&](double h) {
        const double q = std::numbers::pi / 4;
        return toric_polarized_energy(h, q + alpha_step) - 2 * toric_polarized_energy(h, q) +
               toric_polarized_energy(h, q - alpha_step);
    };
    auto bisect = [&](auto &&f, double lo, double hi) {
        const bool lo_sign = f(lo) > 0;
        if ((f(hi) > 0) == lo_sign) {
            throw Error("no sign change in the bracket");
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            ((f(mid) > 0) == lo_sign ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return {bisect(gap, 0.0, 1.0), bisect(curvature, 0.5, 3.0)};
}

}  // namespace stabgs
