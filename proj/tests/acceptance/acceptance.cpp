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


// Acceptance checks 1-9. With no arguments every check runs; otherwise only
// the listed ones. Prints one PASS/FAIL line per check and exits non-zero if
// any failed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "stabgs/annealer.hpp"
#include "stabgs/errors.hpp"
#include "stabgs/hamiltonian.hpp"
#include "stabgs/oracle.hpp"
#include "stabgs/rng.hpp"
#include "stabgs/solver_general.hpp"
#include "stabgs/solver_local1d.hpp"
#include "stabgs/solver_periodic.hpp"

using namespace stabgs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects the first few failure messages of a check.
class Report {
  public:
    void fail(const std::string &why) {
        ++failures_;
        if (failures_ <= 5) {
            msgs_ += (msgs_.empty() ? "" : "; ") + why;
        }
    }
    void note(const std::string &s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
    Outcome done() const {
        std::string d = notes_;
        if (failures_) {
            d += (d.empty() ? "" : "; ") + std::to_string(failures_) + " failure(s): " + msgs_;
        }
        return {failures_ == 0, d};
    }

  private:
    std::size_t failures_ = 0;
    std::string msgs_, notes_;
};

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

template <class F>
void parallel_for(std::size_t count, F f) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(workers(), count); ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                f(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

double scale_of(const Hamiltonian &h) {
    double s = 1.0 + std::abs(h.offset());
    for (const auto &t : h.terms()) {
        s += std::abs(t.weight);
    }
    return s;
}

/// Gaussian weights on random Paulis whose support fits k consecutive sites.
Hamiltonian random_k_local(std::size_t n, std::size_t k, SplitMix64 &rng) {
    const std::size_t terms = 1 + rng.below(3 * n);
    std::vector<Term> raw;
    for (std::size_t t = 0; t < terms; ++t) {
        const std::size_t start = rng.below(n - k + 1);
        PauliOp p(n);
        for (std::size_t i = start; i < start + k; ++i) {
            p.set_letter(i, static_cast<Letter>(rng.below(4)));
        }
        if (!p.is_identity_letters()) {
            raw.push_back({rng.normal(), p});
        }
    }
    return Hamiltonian::from_terms(n, raw);
}

double oracle_minimum(const Hamiltonian &h, const std::vector<StabGroup> &groups) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto &g : groups) {
        best = std::min(best, e_stab(h, g));
    }
    return best;
}

// 1 ---------------------------------------------------------------------------

Outcome criterion1() {
    Report r;
    SplitMix64 rng(20260101);
    std::size_t checked = 0;
    for (std::size_t n : {2, 3}) {
        const auto groups = oracle::enumerate_full_groups(n);
        for (std::size_t k : {2, 3}) {
            // k > n clips the window to the whole chain.
            for (int t = 0; t < 50; ++t) {
                const Hamiltonian h = random_k_local(n, std::min(k, n), rng);
                const double local = solve_local1d(h).energy;
                const double general = solve_general(h).energy;
                const double oracle = oracle_minimum(h, groups);
                ++checked;
                if (!(local == general && general == oracle)) {
                    r.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " local=" + fmt(local, 17) +
                           " general=" + fmt(general, 17) + " oracle=" + fmt(oracle, 17));
                }
            }
        }
    }
    r.note(std::to_string(checked) + " instances, exact equality");
    return r.done();
}

// 2 ---------------------------------------------------------------------------

Outcome criterion2() {
    Report r;
    const std::size_t want[] = {6, 60, 1080};
    std::string counts;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t got = oracle::enumerate_full_groups(n).size();
        counts += (n > 1 ? "/" : "") + std::to_string(got);
        if (got != want[n - 1]) {
            r.fail("n=" + std::to_string(n) + " gave " + std::to_string(got));
        }
    }
    r.note("counts " + counts);
    return r.done();
}

// 3 ---------------------------------------------------------------------------

Outcome criterion3() {
    Report r;
    SplitMix64 rng(33);
    std::vector<Hamiltonian> hs;
    for (int t = 0; t < 10; ++t) {
        std::vector<Term> raw;
        for (int code = 1; code < 16; ++code) {
            PauliOp p(2);
            p.set_letter(0, static_cast<Letter>(code & 3));
            p.set_letter(1, static_cast<Letter>(code >> 2));
            raw.push_back({rng.normal(), p});
        }
        hs.push_back(Hamiltonian::from_terms(2, raw));
    }
    double worst = 0.0;
    std::size_t pairs = 0;
    for (const auto &g : oracle::enumerate_full_groups(2)) {
        const auto psi = oracle::dense_from_group(g);
        for (const auto &h : hs) {
            const double d = std::abs(oracle::dense_expectation(h, psi) - e_stab(h, g));
            worst = std::max(worst, d);
            ++pairs;
            if (d > 1e-10) {
                r.fail("deviation " + fmt(d));
            }
        }
    }
    r.note(std::to_string(pairs) + " pairs, max deviation " + fmt(worst, 3));
    return r.done();
}

// 4 ---------------------------------------------------------------------------

/// Canonical signature of the terms of h that lie in the group generated by
/// the tiling of `gens` with the given period (generators placed at their
/// sites within one period).
std::string closed_signature(const PeriodicHamiltonian1D &h, std::size_t period,
                             const std::vector<std::pair<long, std::string>> &gens) {
    const std::size_t n = 18, window = 3;
    std::vector<PauliOp> tiled;
    for (std::size_t at = 0; at < n; at += period) {
        for (const auto &[pos, text] : gens) {
            const PauliOp g = parse_pauli(text, 3);
            const long last = static_cast<long>(at) + pos + g.last_site();
            if (static_cast<long>(at) + pos >= 0 && last < static_cast<long>(n)) {
                tiled.push_back(embed(restrict_signed(g, 0, static_cast<std::size_t>(g.last_site())), n,
                                      static_cast<std::size_t>(static_cast<long>(at) + pos)));
            }
        }
    }
    const StabGroup s = StabGroup::from_generators(tiled, n);
    const Hamiltonian fin = h.finite_chain(n);
    std::vector<PlacedTerm> placed;
    for (const auto &p : intersect_with_set(s, signed_terms(fin)).ops()) {
        const long f = p.first_site();
        if (f >= 6 && f < 6 + static_cast<long>(window)) {
            placed.push_back({f, restrict_signed(p, static_cast<std::size_t>(f), static_cast<std::size_t>(p.last_site()))});
        }
    }
    return phase_signature(placed, window, 1).first;
}

Outcome criterion4() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();

    const std::string cluster = closed_signature(cluster_model(0.5, 0.3), 1, {{0, "X0 Z1 X2"}});
    const std::string polarized = closed_signature(cluster_model(1.0, 1.0), 1, {{0, "-Y0"}});
    const std::string polarized_j0 = closed_signature(cluster_model(0.0, 1.0), 1, {{0, "-Y0"}});
    const std::string ferro = closed_signature(cluster_model(2.0, 0.0), 1, {{0, "Y0 Y1"}});
    const std::string tri1 =
        closed_signature(cluster_model(1.0, 0.0), 3, {{-1, "X0 Z1 X2"}, {-1, "Y0 Y1"}, {0, "Y0 Y1"}});
    const std::string tri2 =
        closed_signature(cluster_model(1.0, 0.0), 3, {{-1, "X0 Z1 X2"}, {0, "X0 Z1 X2"}, {0, "Y0 Y1"}});

    std::ostringstream out, err;
    const int code = cli::run({"sweep", "--model", "cluster", "--grid", "p1:0:2:21,p2:0:2:21", "--cmax", "6"}, out, err);
    if (code != 0) {
        r.fail("sweep exited with " + std::to_string(code) + ": " + err.str());
        return r.done();
    }
    std::istringstream csv(out.str());
    std::string line;
    std::getline(csv, line);
    std::set<std::string> bulk;
    std::size_t rows = 0;
    const double eps = 1e-9;
    while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string x; std::getline(ls, x, ',');) {
            f.push_back(x);
        }
        const double j = std::stod(f[0]), h = std::stod(f[1]), e = std::stod(f[2]);
        const std::string &sig = f[4];
        std::set<std::string> allowed;
        bool boundary = false;
        if (std::abs(h) < eps) {
            if (std::abs(j - 1.0) < eps) {
                allowed = {cluster, ferro, tri1, tri2};
                boundary = true;
            } else {
                allowed = {j < 1.0 ? cluster : ferro};
            }
        } else if (std::abs(j + h - 1.0) < eps) {
            allowed = {cluster, polarized};
            boundary = true;
        } else {
            allowed = {j + h < 1.0 ? cluster : polarized};
        }
        if (std::abs(j) < eps) {
            // Without the YY term the polarized group commits only -Y.
            if (allowed.erase(polarized)) {
                allowed.insert(polarized_j0);
            }
            boundary = true;
        }
        if (!allowed.count(sig)) {
            r.fail("(" + f[0] + "," + f[1] + ") gave " + sig);
        }
        if (!boundary) {
            bulk.insert(sig);
        }
        const double want = -std::max(1.0, j + h);
        if (std::abs(e - want) > 1e-9) {
            r.fail("(" + f[0] + "," + f[1] + ") energy " + fmt(e, 17) + " expected " + fmt(want, 17));
        }
    }
    if (rows != 441) {
        r.fail("expected 441 rows, got " + std::to_string(rows));
    }
    if (bulk != std::set<std::string>{cluster, polarized, ferro}) {
        r.fail("bulk signatures differ from the three phases (" + std::to_string(bulk.size()) + " found)");
    }

    PeriodicOptions o;
    o.c_max = 6;
    const auto tri = solve_periodic_1d(cluster_model(1.0, 0.0), o);
    std::set<std::string> degenerate;
    for (const auto &d : tri.degenerate) {
        degenerate.insert(d.phase_signature);
    }
    if (!degenerate.count(tri1) || !degenerate.count(tri2)) {
        r.fail("tricritical point misses a period-3 set");
    }
    r.note("441 points, bulk signatures {" + cluster + ", " + polarized + ", " + ferro + "}");
    r.note("tricritical: " + std::to_string(degenerate.size()) + " degenerate incl. " + tri1 + " and " + tri2);
    r.note(fmt(seconds_since(t0), 3) + " s");
    return r.done();
}

// 5 ---------------------------------------------------------------------------

Outcome criterion5() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    const double step = 1e-3;
    const auto line = analyze_toric_line(step);
    if (std::abs(line.crossing_h - 0.46) > 0.01) {
        r.fail("crossing at " + fmt(line.crossing_h));
    }
    if (std::abs(line.curvature_flip_h - std::sqrt(2.0)) > 0.01) {
        r.fail("curvature flip at " + fmt(line.curvature_flip_h));
    }

    // Closed form of the polarized branch at every alpha grid point.
    double worst = 0.0;
    std::size_t points = 0;
    const double half_pi = std::numbers::pi / 2;
    for (double h : {0.0, 0.25, line.crossing_h, 1.0, line.curvature_flip_h, 2.0}) {
        for (double a = 0.0; a <= half_pi + 1e-12; a += step) {
            const double c = std::cos(a), s = std::sin(a);
            const double closed = -0.5 * (std::pow(c, 4) + std::pow(s, 4)) - h * (c + s);
            const double d = std::abs(toric_polarized_energy(h, a) - closed);
            worst = std::max(worst, d);
            ++points;
            if (d > 1e-9) {
                r.fail("h=" + fmt(h) + " alpha=" + fmt(a) + " off by " + fmt(d));
            }
        }
    }

    // The c = 1 solver minimized over a coarse angle grid agrees with the
    // lower of the two branches.
    for (double h : {0.3, 0.6, 2.0}) {
        std::vector<std::pair<double, double>> grid;
        double pol = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 40; ++i) {
            const double a = half_pi * i / 40;
            grid.emplace_back(a, a);
            pol = std::min(pol, toric_polarized_energy(h, a));
        }
        const auto scan = extended_scan(toric_model(h, h), grid, workers());
        const double got = scan.points[scan.best].result.e_per_site;
        const double want = std::min(pol, toric_topological_energy(h));
        if (std::abs(got - want) > 1e-9) {
            r.fail("scan at h=" + fmt(h) + " gave " + fmt(got, 12) + " expected " + fmt(want, 12));
        }
    }
    r.note("crossing h=" + fmt(line.crossing_h, 5) + ", curvature flip h=" + fmt(line.curvature_flip_h, 5));
    r.note(std::to_string(points) + " grid points, max closed-form deviation " + fmt(worst, 3));
    r.note(fmt(seconds_since(t0), 3) + " s");
    return r.done();
}

// 6 ---------------------------------------------------------------------------

Outcome criterion6() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t seeds = 100;
    std::vector<double> means;
    for (std::size_t n : {4, 8, 12}) {
        std::vector<double> ratio(seeds), best(seeds), exact(seeds), scale(seeds);
        parallel_for(seeds, [&](std::size_t s) {
            const Hamiltonian h = gen_stochastic_heisenberg(n, 4, s, true);
            exact[s] = solve_local1d(h).energy;
            best[s] = anneal(h, s).best_energy;
            scale[s] = scale_of(h);
            ratio[s] = exact[s] != 0.0 ? best[s] / exact[s] : 1.0;
        });
        std::size_t hits = 0;
        for (std::size_t s = 0; s < seeds; ++s) {
            if (best[s] < exact[s] - 1e-9 * scale[s]) {
                r.fail("n=" + std::to_string(n) + " seed " + std::to_string(s) + " annealed below exact");
            }
            hits += std::abs(best[s] - exact[s]) <= 1e-9 * scale[s];
        }
        double mean = 0.0;
        for (double x : ratio) {
            mean += x;
        }
        mean /= static_cast<double>(seeds);
        means.push_back(mean);
        r.note("n=" + std::to_string(n) + ": mean ratio " + fmt(mean, 4) + ", exact " + std::to_string(hits) + "/" +
               std::to_string(seeds));
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        if (means[i] > means[i - 1]) {
            r.fail("mean ratio increased from " + fmt(means[i - 1]) + " to " + fmt(means[i]));
        }
    }
    r.note(fmt(seconds_since(t0), 3) + " s");
    return r.done();
}

// 7 ---------------------------------------------------------------------------

/// Per-site seconds, minimum over repeats.
std::vector<double> site_times(const Hamiltonian &h, int repeats) {
    std::vector<double> best;
    for (int i = 0; i < repeats; ++i) {
        const auto st = frontier_stats(h);
        if (best.empty()) {
            best.assign(st.size(), std::numeric_limits<double>::infinity());
        }
        for (std::size_t m = 0; m < st.size(); ++m) {
            best[m] = std::min(best[m], st[m].seconds);
        }
    }
    return best;
}

Outcome criterion7() {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    const uint64_t seed = 2026;

    std::vector<double> xs, ys;
    for (std::size_t n : {50, 100, 150, 200}) {
        const Hamiltonian h = gen_stochastic_heisenberg(n, 3, seed, true);
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 7; ++i) {
            const auto s = std::chrono::steady_clock::now();
            solve_local1d(h);
            best = std::min(best, seconds_since(s));
        }
        xs.push_back(static_cast<double>(n));
        ys.push_back(best);
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    if (r2 < 0.98) {
        r.fail("R^2 = " + fmt(r2));
    }

    const std::size_t n = 200, k = 3;
    const auto per = site_times(gen_stochastic_heisenberg(n, k, seed, true), 5);
    std::vector<double> interior(per.begin() + 2 * k, per.end() - 2 * k);
    std::vector<double> sorted = interior;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double flat = sorted.back() / median;
    if (flat > 2.0) {
        r.fail("interior max/median = " + fmt(flat));
    }

    std::vector<double> peak;
    for (std::size_t kk : {2, 3, 4}) {
        const auto t = site_times(gen_stochastic_heisenberg(24, kk, seed, true), 3);
        peak.push_back(*std::max_element(t.begin(), t.end()));
    }
    if (!(peak[0] < peak[1] && peak[1] < peak[2])) {
        r.fail("max single-site time not increasing in k: " + fmt(peak[0]) + ", " + fmt(peak[1]) + ", " +
               fmt(peak[2]));
    }
    r.note("R^2 " + fmt(r2, 5) + " (totals " + fmt(ys[0], 3) + ".." + fmt(ys[3], 3) + " s)");
    r.note("interior max/median " + fmt(flat, 3));
    r.note("peak site time k=2,3,4: " + fmt(peak[0], 3) + ", " + fmt(peak[1], 3) + ", " + fmt(peak[2], 3) + " s");
    r.note(fmt(seconds_since(t0), 3) + " s");
    return r.done();
}

// 8 ---------------------------------------------------------------------------

Outcome criterion8() {
    Report r;
    const std::size_t n = 3;
    auto P = [&](const char *t) { return parse_pauli(t, n); };
    const Hamiltonian h =
        Hamiltonian::from_terms(n, {{-1, P("X0")}, {-1, P("X0 X1")}, {-1, P("X1 X2")}, {-1, P("X2")}});
    if (h.k() != 2) {
        r.fail("locality " + std::to_string(h.k()));
    }
    const auto res = solve_local1d(h);
    if (res.energy != -4.0) {
        r.fail("energy " + fmt(res.energy, 17));
    }
    if (res.group != StabGroup::from_generators({P("X0"), P("X1"), P("X2")}, n)) {
        r.fail("group differs from <X0, X1, X2>");
    }

    // Instrumented transition past Q = {X0}: the state that would commit the
    // rest of the naive set {X0, X1 X2, X2} must be rejected by 2(d) alone.
    const PauliSet naive{P("X0"), P("X1 X2"), P("X2")};
    const LocalStateA a = state_from_subset(h, PauliSet{P("X0")}, 2);
    std::vector<CandidateTrace> trace;
    const auto next = transition(a, h, {}, &trace);
    const StabGroup naive_right = state_from_subset(h, naive, 3).s_right;
    auto it = std::find_if(trace.begin(), trace.end(), [&](const CandidateTrace &c) { return c.s_right == naive_right; });
    if (it == trace.end()) {
        r.fail("naive candidate not enumerated");
    } else if (!(it->rule_2a && it->rule_2c && !it->rule_2d)) {
        r.fail("naive candidate not rejected by 2(d) alone");
    }
    for (const auto &b : next) {
        if (b.state.s_right == naive_right) {
            r.fail("naive candidate survived");
        }
    }
    r.note("E = " + fmt(res.energy) + ", naive path rejected by 2(d) over " + std::to_string(trace.size()) +
           " traced candidates");
    return r.done();
}

// 9 ---------------------------------------------------------------------------

bool same_set(const PauliSet &a, const PauliSet &b) {
    auto x = a.ops(), y = b.ops();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

PauliSet signed_where(const Hamiltonian &h, const std::function<bool(std::size_t)> &pick) {
    PauliSet out;
    for (std::size_t id = 0; id < h.size(); ++id) {
        if (pick(h.q_last(id))) {
            out.insert(h.terms()[id].pauli);
            out.insert(h.terms()[id].pauli.negated());
        }
    }
    return out;
}

/// Closure of the chosen terms and the four validity conditions of every
/// committed Q_m, replayed along the winning path.
bool check_path(const Hamiltonian &h, Report &r, const std::string &name) {
    const std::size_t n = h.n_sites();
    const Local1DPath path = solve_local1d_path(h);
    PauliSet q;
    for (const auto &qm : path.q) {
        for (const auto &p : qm) {
            q.insert(p);
        }
    }
    const StabGroup g = StabGroup::from_generators(q, n);
    if (!same_set(intersect_with_set(g, signed_terms(h)), q) || !same_set(path.result.chosen_terms, q)) {
        r.fail(name + ": chosen terms not closed");
        return false;
    }
    PauliSet past;
    for (std::size_t m = 0; m < path.q.size(); ++m) {
        const PauliSet &cur = path.q[m];
        PauliSet all = past;
        for (const auto &p : cur) {
            all.insert(p);
            for (const auto &b : past) {
                if (!commutes(p, b)) {
                    r.fail(name + ": Q_m anticommutes with the past at cursor " + std::to_string(m));
                    return false;
                }
            }
        }
        StabGroup gm;
        try {
            StabGroup::from_generators(cur, n);
            gm = StabGroup::from_generators(all, n);
        } catch (const Error &) {
            r.fail(name + ": inconsistent Q_m at cursor " + std::to_string(m));
            return false;
        }
        const long site = static_cast<long>(m) - 1;
        const auto at = signed_where(h, [&](std::size_t l) { return static_cast<long>(l) == site; });
        const auto before = signed_where(h, [&](std::size_t l) { return static_cast<long>(l) < site; });
        if (!same_set(intersect_with_set(gm, at), cur) || !same_set(intersect_with_set(gm, before), past)) {
            r.fail(name + ": closure fails at cursor " + std::to_string(m));
            return false;
        }
        past = all;
    }
    return true;
}

Outcome criterion9() {
    Report r;
    std::size_t results = 0;

    std::vector<std::pair<std::string, Hamiltonian>> corpus;
    SplitMix64 rng(20260101);
    for (std::size_t n : {2, 3}) {
        for (std::size_t k : {2, 3}) {
            for (int t = 0; t < 50; ++t) {
                corpus.emplace_back("random n=" + std::to_string(n), random_k_local(n, std::min(k, n), rng));
            }
        }
    }
    SplitMix64 rng2(99);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 4 + rng2.below(7), k = 2 + rng2.below(3);
        corpus.emplace_back("random n=" + std::to_string(n) + " k=" + std::to_string(k), random_k_local(n, k, rng2));
    }
    for (std::size_t n : {6, 10, 16}) {
        for (std::size_t k : {2, 3}) {
            for (uint64_t s = 0; s < 3; ++s) {
                corpus.emplace_back("xxyyzz", gen_stochastic_heisenberg(n, k, s, true));
                corpus.emplace_back("xxyy", gen_stochastic_heisenberg(n, k, s, false));
            }
        }
    }
    {
        auto P = [](const char *t) { return parse_pauli(t, 3); };
        corpus.emplace_back("closure", Hamiltonian::from_terms(3, {{-1, P("X0")}, {-1, P("X0 X1")},
                                                                   {-1, P("X1 X2")}, {-1, P("X2")}}));
    }

    for (const auto &[name, h] : corpus) {
        check_path(h, r, name);
        ++results;
        if (h.size() <= 16) {
            const auto g = solve_general(h);
            ++results;
            if (!same_set(intersect_with_set(g.group, signed_terms(h)), g.chosen_terms)) {
                r.fail(name + ": general result not closed");
            }
            if (g.energy != solve_local1d(h).energy) {
                r.fail(name + ": solvers disagree");
            }
        }
    }

    // 2 E_i = E_+ + E_- for subgroups of enumerated full groups and a
    // commuting non-member p.
    SplitMix64 probe(7);
    std::vector<std::vector<StabGroup>> full{{}, oracle::enumerate_full_groups(1), oracle::enumerate_full_groups(2),
                                             oracle::enumerate_full_groups(3)};
    std::size_t probes = 0;
    while (probes < 200) {
        const std::size_t n = 1 + probe.below(3);
        const StabGroup &big = full[n][probe.below(full[n].size())];
        std::vector<PauliOp> keep;
        for (const auto &gen : big.generators()) {
            if (probe.below(2)) {
                keep.push_back(gen);
            }
        }
        const StabGroup s = StabGroup::from_generators(keep, n);
        PauliOp p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p.set_letter(i, static_cast<Letter>(probe.below(4)));
        }
        bool ok = !p.is_identity_letters() && member_sign(p, s) == MemberSign::absent;
        for (const auto &gen : s.generators()) {
            ok = ok && commutes(p, gen);
        }
        if (!ok) {
            continue;
        }
        std::vector<Term> raw;
        for (int t = 0; t < 6; ++t) {
            PauliOp q(n);
            for (std::size_t i = 0; i < n; ++i) {
                q.set_letter(i, static_cast<Letter>(probe.below(4)));
            }
            raw.push_back({probe.normal(), q});
        }
        raw.push_back({probe.normal(), p});
        const Hamiltonian h = Hamiltonian::from_terms(n, raw);
        const double ei = e_stab(h, s), ep = e_stab(h, extend(s, p)), em = e_stab(h, extend(s, p.negated()));
        if (std::abs(2 * ei - (ep + em)) > 1e-12 * scale_of(h)) {
            r.fail("2E_i != E_+ + E_- by " + fmt(std::abs(2 * ei - ep - em)));
        }
        ++probes;
    }
    r.note(std::to_string(results) + " solver results over " + std::to_string(corpus.size()) + " instances");
    r.note(std::to_string(probes) + " energy-identity probes");
    return r.done();
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"oracle exactness", criterion1},
        {"stabilizer state counts", criterion2},
        {"group energy identity", criterion3},
        {"cluster phase diagram", criterion4},
        {"toric extended scan", criterion5},
        {"annealing dominance and degradation", criterion6},
        {"linear scaling", criterion7},
        {"closure counterexample", criterion8},
        {"closure and validity invariants", criterion9},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) {
        pick.insert(std::atoi(argv[i]));
    }
    bool all = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!pick.empty() && !pick.count(id)) {
            continue;
        }
        Outcome o;
        try {
            o = checks[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << id << " (" << checks[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " | "
                  << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
