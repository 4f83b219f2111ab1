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

#include "stabgs/solver_general.hpp"

#include <cmath>
#include <unordered_set>

#include "stabgs/errors.hpp"

namespace stabgs {

double e_stab(const Hamiltonian &h, const StabGroup &s) {
    if (h.n_sites() != s.n_sites()) {
        throw SizeError("e_stab: qubit count mismatch");
    }
    double e = h.offset();
    for (const auto &t : h.terms()) {
        switch (s.member_sign(t.pauli)) {
            case MemberSign::plus:
                e += t.weight;
                break;
            case MemberSign::minus:
                e -= t.weight;
                break;
            case MemberSign::absent:
                break;
        }
    }
    return e;
}

PauliSet signed_terms(const Hamiltonian &h) {
    PauliSet out;
    for (const auto &t : h.terms()) {
        out.insert(t.pauli);
        out.insert(t.pauli.negated());
    }
    return out;
}

SolveResult make_result(const Hamiltonian &h, StabGroup group, std::string algorithm, std::string note) {
    SolveResult r;
    r.energy = e_stab(h, group);
    r.chosen_terms = intersect_with_set(group, signed_terms(h));
    r.group = std::move(group);
    r.algorithm = std::move(algorithm);
    r.tie_break_note = std::move(note);
    return r;
}

namespace {

class GroupSearch {
  public:
    GroupSearch(const std::vector<PauliOp> &ops, std::size_t n) : ops_(ops), n_(n) {}

    template <typename Visit, typename Prune>
    void run(Visit &&visit, Prune &&prune) {
        walk(StabGroup(n_), visit, prune);
    }

  private:
    const std::vector<PauliOp> &ops_;
    std::size_t n_;
    std::unordered_set<std::string> seen_;

    template <typename Visit, typename Prune>
    void walk(const StabGroup &g, Visit &visit, Prune &prune) {
        if (!seen_.insert(g.serialize()).second) {
            return;
        }
        visit(g);
        if (prune(g)) {
            return;
        }
        for (const auto &p : ops_) {
            for (const PauliOp &q : {p, p.negated()}) {
                StabGroup child = g;
                if (child.insert(q) == StabGroup::Insert::added) {
                    walk(child, visit, prune);
                }
            }
        }
    }
};

}  // namespace

SolveResult solve_general(const Hamiltonian &h, const GeneralOptions &opts) {
    if (h.size() > opts.max_terms) {
        throw GuardError("solve_general: " + std::to_string(h.size()) + " terms exceed the guard of " +
                         std::to_string(opts.max_terms));
    }
    std::vector<PauliOp> ops;
    for (const auto &t : h.terms()) {
        ops.push_back(t.pauli);
    }
    StabGroup best(h.n_sites());
    double best_e = e_stab(h, best);
    std::size_t visited = 0, ties = 0;
    auto visit = [&](const StabGroup &g) {
        ++visited;
        double e = e_stab(h, g);
        if (e < best_e) {
            best_e = e;
            best = g;
            ties = 0;
        } else if (e == best_e) {
            ++ties;
        }
    };
    auto prune = [&](const StabGroup &g) {
        if (!opts.bound_pruning) {
            return false;
        }
        double bound = e_stab(h, g);
        for (const auto &t : h.terms()) {
            if (g.member_sign(t.pauli) != MemberSign::absent) {
                continue;
            }
            bool compatible = true;
            for (const auto &gen : g.generators()) {
                if (!commutes(gen, t.pauli)) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) {
                bound -= std::abs(t.weight);
            }
        }
        return bound > best_e;
    };
    GroupSearch(ops, h.n_sites()).run(visit, prune);
    std::string note = "first minimizer in search order (terms in input order, + before -); " +
                       std::to_string(ties) + " later ties among " + std::to_string(visited) + " groups";
    return make_result(h, std::move(best), "general", std::move(note));
}

std::vector<StabGroup> enumerate_restricted_subsets(const PauliSet &terms, std::size_t n, std::size_t max_terms) {
    std::vector<PauliOp> ops;
    for (const auto &p : terms) {
        if (p.n_sites() != n) {
            throw SizeError("enumerate_restricted_subsets: qubit count mismatch");
        }
        PauliOp u = p.unsigned_op();
        bool dup = false;
        for (const auto &o : ops) {
            dup = dup || o == u;
        }
        if (!dup && !u.is_identity_letters()) {
            ops.push_back(u);
        }
    }
    if (ops.size() > max_terms) {
        throw GuardError("enumerate_restricted_subsets: too many terms");
    }
    std::vector<StabGroup> out;
    GroupSearch(ops, n).run([&](const StabGroup &g) { out.push_back(g); }, [](const StabGroup &) { return false; });
    return out;
}

}  // namespace stabgs
