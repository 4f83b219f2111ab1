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


#include "stabgs/annealer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <utility>

#include "stabgs/errors.hpp"
#include "stabgs/rng.hpp"
#include "stabgs/solver_general.hpp"

namespace stabgs {

namespace {

using Action = std::pair<PauliOp, PauliOp>;

Action action_of(const std::vector<Gate::Kind> &word) {
    PauliOp x = PauliOp::single(1, 0, Letter::X), z = PauliOp::single(1, 0, Letter::Z);
    for (Gate::Kind k : word) {
        conjugate(x, {k, 0});
        conjugate(z, {k, 0});
    }
    return {x, z};
}

std::array<std::vector<Gate::Kind>, 24> build_cliffords() {
    std::array<std::vector<Gate::Kind>, 24> out;
    std::map<Action, bool> seen;
    std::vector<std::vector<Gate::Kind>> level{{}};
    std::size_t count = 0;
    while (count < out.size()) {
        std::vector<std::vector<Gate::Kind>> next;
        for (const auto &w : level) {
            if (seen.emplace(action_of(w), true).second) {
                out[count++] = w;
            }
            for (Gate::Kind k : {Gate::Kind::H, Gate::Kind::S}) {
                auto v = w;
                v.push_back(k);
                next.push_back(std::move(v));
            }
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace

const std::array<std::vector<Gate::Kind>, 24> &single_qubit_cliffords() {
    static const auto table = build_cliffords();
    return table;
}

CliffordAnsatz::CliffordAnsatz(std::size_t n_, std::size_t layers_)
    : n(n_), layers(layers_), slots((layers_ + 1) * n_, 0) {}

Circuit CliffordAnsatz::circuit() const {
    const auto &table = single_qubit_cliffords();
    Circuit c;
    c.n = n;
    for (std::size_t layer = 0; layer <= layers; ++layer) {
        if (layer > 0) {
            for (std::size_t q = 0; q + 1 < n; ++q) {
                c.gates.push_back({Gate::Kind::CNOT, q, q + 1});
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            for (Gate::Kind k : table[slot(layer, q)]) {
                c.gates.push_back({k, q});
            }
        }
    }
    return c;
}

double Schedule::temperature(std::size_t step) const {
    if (steps <= 1) {
        return t_start;
    }
    const double f = static_cast<double>(step) / static_cast<double>(steps - 1);
    return t_start * std::pow(t_end / t_start, f);
}

double evaluate(const CliffordAnsatz &a, const Hamiltonian &h) {
    if (a.n != h.n_sites()) {
        throw SizeError("ansatz and Hamiltonian sizes differ");
    }
    return e_stab(h, propagate_zero_state(a.circuit()));
}

double acceptance_probability(double delta_e, double temperature) {
    if (delta_e <= 0.0) {
        return 1.0;
    }
    if (temperature <= 0.0) {
        return 0.0;
    }
    return std::min(std::exp(-delta_e / temperature), 1.0);
}

AnnealResult anneal(const Hamiltonian &h, uint64_t seed, const AnnealOptions &opts) {
    SplitMix64 rng(seed);
    CliffordAnsatz cur(h.n_sites(), opts.layers);
    if (opts.random_start) {
        for (auto &s : cur.slots) {
            s = static_cast<uint8_t>(rng.below(24));
        }
    }
    AnnealResult r;
    r.seed = seed;
    double e = evaluate(cur, h);
    r.best_energy = e;
    r.best_ansatz = cur;
    if (cur.slots.empty()) {
        return r;
    }
    r.trace.reserve(opts.schedule.steps);
    for (std::size_t step = 0; step < opts.schedule.steps; ++step) {
        const double t = opts.schedule.temperature(step);
        const std::size_t at = rng.below(cur.slots.size());
        const auto pick = static_cast<uint8_t>(rng.below(24));
        const uint8_t old = cur.slots[at];
        cur.slots[at] = pick;
        const double e_new = evaluate(cur, h);
        const double p = acceptance_probability(e_new - e, t);
        if (p >= 1.0 || rng.uniform() < p) {
            e = e_new;
            if (e < r.best_energy) {
                r.best_energy = e;
                r.best_ansatz = cur;
            }
        } else {
            cur.slots[at] = old;
        }
        r.trace.push_back({step, t, e, r.best_energy});
    }
    return r;
}

std::string trace_csv(const std::vector<TracePoint> &trace) {
    std::string out = "step,temperature,energy,best_energy\n";
    char buf[128];
    for (const auto &p : trace) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", p.step, p.temperature, p.energy, p.best_energy);
        out += buf;
    }
    return out;
}

}  // namespace stabgs
