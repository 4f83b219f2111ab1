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
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "stabgs/errors.hpp"
#include "stabgs/solver_local1d.hpp"
#include "test_util.hpp"

using namespace stabgs;
using stabgs::testing::P;

namespace {

constexpr double kPi = std::numbers::pi;

std::set<std::string> signatures(const PeriodicResult &r) {
    std::set<std::string> out;
    for (const auto &d : r.degenerate) {
        out.insert(d.phase_signature);
    }
    return out;
}

double polarized_closed_form(double h, double a) {
    const double c = std::cos(a), s = std::sin(a);
    return -0.5 * (std::pow(c, 4) + std::pow(s, 4)) - h * (c + s);
}

/// Signature of the committed operators of a finite-chain path over `period`
/// cursors starting at `from`.
std::string bulk_signature(const Local1DPath &path, long from, long period) {
    std::vector<PlacedTerm> placed;
    for (long m = from; m < from + period; ++m) {
        for (const auto &op : path.q[static_cast<std::size_t>(m)].ops()) {
            placed.push_back({0, op});
        }
    }
    return phase_signature(placed, static_cast<std::size_t>(period), 1).first;
}

/// Per-site energy on a finite chain of `n` sites of the group generated by
/// every whole translate of r's supercell generators.
double tiled_energy_per_site(const PeriodicHamiltonian1D &h, const PeriodicResult &r, std::size_t n) {
    const std::size_t period = r.supercell_c * h.l;
    std::vector<PauliOp> gens;
    for (std::size_t at = 0; at < n; at += period) {
        for (const auto &g : r.generators_in_supercell.ops()) {
            const long f = g.first_site(), l = g.last_site();
            if (f >= 0 && at + static_cast<std::size_t>(l) < n) {
                const auto lo = static_cast<std::size_t>(f);
                gens.push_back(embed(restrict_signed(g, lo, static_cast<std::size_t>(l)), n, at + lo));
            }
        }
    }
    return e_stab(h.finite_chain(n / h.l), StabGroup::from_generators(gens, n)) / static_cast<double>(n);
}

double tiled_bound(const PeriodicHamiltonian1D &h, std::size_t n) {
    double w = 0.0;
    for (const auto &t : h.cell_terms) {
        w += std::abs(t.weight);
    }
    return 2.0 * static_cast<double>(h.k()) * w / static_cast<double>(n);
}

}  // namespace

TEST(SolvePeriodic1D, ClusterPhase) {
    auto r = solve_periodic_1d(cluster_model(0.5, 0.3));
    EXPECT_NEAR(r.e_per_site, -1.0, 1e-12);
    EXPECT_EQ(r.supercell_c, 1u);
    EXPECT_EQ(r.phase_signature, "1|0:+XZX");
    EXPECT_EQ(r.degenerate.size(), 1u);
}

TEST(SolvePeriodic1D, PolarizedPhase) {
    auto r = solve_periodic_1d(cluster_model(1.0, 1.0));
    EXPECT_NEAR(r.e_per_site, -2.0, 1e-12);
    EXPECT_EQ(r.supercell_c, 1u);
    EXPECT_EQ(r.phase_signature, "1|0:+YY;0:-Y");
}

TEST(SolvePeriodic1D, FerromagneticPhase) {
    auto r = solve_periodic_1d(cluster_model(2.0, 0.0));
    EXPECT_NEAR(r.e_per_site, -2.0, 1e-12);
    EXPECT_EQ(r.phase_signature, "1|0:+YY");
}

TEST(SolvePeriodic1D, TricriticalPointListsPeriodThreeSets) {
    auto r = solve_periodic_1d(cluster_model(1.0, 0.0));
    EXPECT_NEAR(r.e_per_site, -1.0, 1e-12);
    const auto sigs = signatures(r);
    EXPECT_GE(sigs.size(), 4u);
    EXPECT_TRUE(sigs.count("1|0:+XZX"));
    EXPECT_TRUE(sigs.count("1|0:+YY"));

    // {XZX@p, YY@p, YY@p+1} and {XZX@p, XZX@p+1, YY@p+1} with period 3.
    const auto a = phase_signature({{0, P("X0 Z1 X2", 3)}, {0, P("Y0 Y1", 2)}, {1, P("Y0 Y1", 2)}}, 3, 1).first;
    const auto b = phase_signature({{0, P("X0 Z1 X2", 3)}, {1, P("X0 Z1 X2", 3)}, {1, P("Y0 Y1", 2)}}, 3, 1).first;
    EXPECT_EQ(a.substr(0, 2), "3|");
    EXPECT_EQ(b.substr(0, 2), "3|");
    EXPECT_TRUE(sigs.count(a)) << a;
    EXPECT_TRUE(sigs.count(b)) << b;
    const auto h = cluster_model(1.0, 0.0);
    for (const auto &d : r.degenerate) {
        EXPECT_NEAR(d.e_per_site, -1.0, 1e-12);
        EXPECT_NEAR(tiled_energy_per_site(h, d, 60), -1.0, tiled_bound(h, 60)) << d.phase_signature;
    }
}

TEST(SolvePeriodic1D, NoCycleWithinLimitThrows) {
    PeriodicOptions o;
    o.c_max = 0;
    EXPECT_THROW(solve_periodic_1d(cluster_model(0.5, 0.3), o), Error);
}

TEST(SolvePeriodic1D, EnergyNonIncreasingInCMax) {
    for (auto [j, hy] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.7, 0.1}, {0.3, 1.4}, {1.2, 0.05}}) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t c = 1; c <= 6; ++c) {
            PeriodicOptions o;
            o.c_max = c;
            const auto r = solve_periodic_1d(cluster_model(j, hy), o);
            EXPECT_LE(r.e_per_site, prev + 1e-12);
            EXPECT_LE(r.supercell_c, c);
            prev = r.e_per_site;
        }
    }
}

// No cycle of any length up to c_max beats the reported mean, and every
// reported minimizer, tiled onto a finite chain, realizes that mean up to the
// boundary.
TEST(SolvePeriodic1D, CycleOptimality) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Term> raw{{w(rng), P("X0 Z1 X2", 3)}, {w(rng), P("Y0 Y1", 2)}, {w(rng), P("Y0", 1)},
                              {w(rng), P("Z0 Z1", 2)}, {w(rng), P("X0", 1)}};
        const auto h = PeriodicHamiltonian1D::from_terms(1, raw);
        const auto best = solve_periodic_1d(h);
        for (const auto &d : best.degenerate) {
            if (d.supercell_c > 1) {
                PeriodicOptions o;
                o.c_max = d.supercell_c - 1;
                EXPECT_GE(solve_periodic_1d(h, o).e_per_site, best.e_per_site - 1e-12);
            }
            EXPECT_NEAR(tiled_energy_per_site(h, d, 60), best.e_per_site, tiled_bound(h, 60));
        }
    }
}

TEST(SolvePeriodic1D, MatchesFiniteChainsPerSite) {
    const std::vector<std::pair<double, double>> pts{{0.2, 0.1}, {0.5, 0.3}, {0.1, 0.6}, {0.0, 0.2},
                                                     {1.5, 0.1}, {2.0, 0.3}, {1.3, 0.4}, {0.4, 1.6},
                                                     {0.8, 1.0}, {0.3, 1.9}};
    const std::size_t n = 60;
    for (auto [j, hy] : pts) {
        const auto h = cluster_model(j, hy);
        const auto per = solve_periodic_1d(h);
        const auto path = solve_local1d_path(h.finite_chain(n));
        // One boundary costs at most the total weight of a unit's terms.
        const double boundary = 1.0 + j + hy;
        EXPECT_LE(std::abs(path.result.energy / n - per.e_per_site), 2.0 * boundary / n) << j << "," << hy;
        EXPECT_EQ(bulk_signature(path, 24, 6), per.phase_signature) << j << "," << hy;
    }
}

TEST(PhaseSignature, InvariantUnderTranslationAndRepetition) {
    const std::vector<PlacedTerm> base{{0, P("X0 Z1 X2", 3)}, {0, P("Y0 Y1", 2)}, {1, P("Y0 Y1", 2)}};
    const auto [s0, p0] = phase_signature(base, 3, 1);
    EXPECT_EQ(p0, 3u);
    for (long t = 1; t < 6; ++t) {
        std::vector<PlacedTerm> moved;
        for (const auto &x : base) {
            moved.push_back({x.pos + t, x.op});
        }
        EXPECT_EQ(phase_signature(moved, 3, 1).first, s0);
    }
    std::vector<PlacedTerm> doubled = base;
    for (const auto &x : base) {
        doubled.push_back({x.pos + 3, x.op});
    }
    EXPECT_EQ(phase_signature(doubled, 6, 1), std::make_pair(s0, std::size_t{3}));
}

TEST(PhaseSignature, DistinguishesSignsAndTrimsSupport) {
    EXPECT_NE(phase_signature({{0, P("Y0", 1)}}, 1, 1).first, phase_signature({{0, P("Y0", 1).negated()}}, 1, 1).first);
    EXPECT_EQ(phase_signature({{0, P("X1 Z2 X3", 4)}}, 1, 1).first, phase_signature({{1, P("X0 Z1 X2", 3)}}, 1, 1).first);
    EXPECT_THROW(phase_signature({}, 3, 2), SizeError);
}

TEST(SupercellC1, ToricTopologicalPhase) {
    const auto h = toric_model(0.0, 0.0);
    const auto r = solve_supercell_c1(h);
    EXPECT_NEAR(r.e_per_site, -1.0, 1e-12);
    bool has_x = false, has_z = false;
    for (const auto &g : r.generators_in_supercell.ops()) {
        std::set<Letter> letters;
        std::size_t weight = 0;
        for (std::size_t i = 0; i < g.n_sites(); ++i) {
            if (g.letter(i) != Letter::I) {
                letters.insert(g.letter(i));
                ++weight;
            }
        }
        EXPECT_EQ(weight, 4u);
        ASSERT_EQ(letters.size(), 1u);
        has_x |= *letters.begin() == Letter::X;
        has_z |= *letters.begin() == Letter::Z;
    }
    EXPECT_TRUE(has_x && has_z);
}

TEST(SupercellC1, ToricPolarizedPhaseA) {
    const auto h = toric_model(3.0, 0.0);
    const auto r = solve_supercell_c1(h);
    // Half a vertex term and half a plaquette term per qubit, plus the field.
    EXPECT_NEAR(r.e_per_site, -3.5, 1e-12);
    for (const auto &g : r.generators_in_supercell.ops()) {
        for (std::size_t i = 0; i < g.n_sites(); ++i) {
            EXPECT_NE(g.letter(i), Letter::Z);
        }
    }
}

TEST(SupercellC1, ExcludesMixedFourBodyTerms) {
    const auto h = rotate_y(toric_model(1.0, 1.0), std::vector<double>{0.3, 0.7});
    ASSERT_EQ(h.terms.size(), 36u);
    const auto keep = translation_compatible_terms(h);
    EXPECT_EQ(keep.size(), 12u);
    // A four-body term survives exactly when both factors on horizontal bonds
    // share a letter and both factors on vertical bonds do.
    auto paired = [](const SupercellTerm &t) {
        std::set<Letter> by_site[2];
        for (const auto &f : t.factors) {
            by_site[f.site].insert(f.letter);
        }
        return by_site[0].size() == 1 && by_site[1].size() == 1;
    };
    std::size_t four_body = 0;
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
        if (h.terms[t].factors.size() != 4) {
            continue;
        }
        ++four_body;
        const bool kept = std::find(keep.begin(), keep.end(), t) != keep.end();
        EXPECT_EQ(kept, paired(h.terms[t])) << t;
    }
    EXPECT_EQ(four_body, 32u);
}

TEST(ExtendedScan, PolarizedBranchAtQuarterTurn) {
    const double a = kPi / 4;
    const auto h = rotate_y(toric_model(1.0, 1.0), std::vector<double>{a, a});
    EXPECT_NEAR(solve_supercell_c1(h).e_per_site, -0.25 - std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(toric_polarized_energy(1.0, a), -1.6642135623730951, 1e-12);
}

TEST(ExtendedScan, PolarizedBranchMatchesClosedForm) {
    for (double h : {0.0, 0.3, 0.46, 1.0, 1.414, 2.5}) {
        for (int i = 0; i <= 40; ++i) {
            const double a = kPi / 2 * i / 40;
            EXPECT_NEAR(toric_polarized_energy(h, a), polarized_closed_form(h, a), 1e-9);
            EXPECT_NEAR(toric_polarized_energy(h, a), toric_polarized_energy(h, kPi / 2 - a), 1e-9);
        }
    }
}

TEST(ExtendedScan, ZeroAngleMatchesUnrotatedSolve) {
    const auto h = toric_model(0.0, 3.0);
    const auto rotated = solve_supercell_c1(rotate_y(h, std::vector<double>{0.0, 0.0}));
    const auto plain = solve_supercell_c1(h);
    EXPECT_DOUBLE_EQ(rotated.e_per_site, plain.e_per_site);
    EXPECT_EQ(rotated.phase_signature, plain.phase_signature);
    EXPECT_NEAR(plain.e_per_site, -3.5, 1e-12);
    for (const auto &g : plain.generators_in_supercell.ops()) {
        for (std::size_t i = 0; i < g.n_sites(); ++i) {
            EXPECT_NE(g.letter(i), Letter::X);
        }
    }
}

// Among c = 1 stabilizer states of the rotated model, the best
// vertex/plaquette-type energy at zero field follows -max(cos^4, sin^4) along
// alpha = beta and reaches -1 only at the unrotated angles.
TEST(ExtendedScan, TopologicalBranchDependsOnAngle) {
    const auto h = toric_model(0.0, 0.0);
    for (double a : {0.0, 0.1, 0.3, 0.5, kPi / 4, 1.2, kPi / 2}) {
        const auto r = solve_supercell_c1(rotate_y(h, std::vector<double>{a, a}));
        const double c4 = std::pow(std::cos(a), 4), s4 = std::pow(std::sin(a), 4);
        EXPECT_NEAR(r.e_per_site, -std::max(c4, s4), 1e-9) << a;
    }
    EXPECT_NEAR(toric_topological_energy(0.0), -1.0, 1e-12);
    EXPECT_NEAR(toric_topological_energy(0.7), -1.0, 1e-12);
}

TEST(ExtendedScan, ArgminAndThreads) {
    const auto h = toric_model(1.0, 1.0);
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i <= 4; ++i) {
        grid.emplace_back(kPi / 8 * i, kPi / 8 * i);
    }
    const auto one = extended_scan(h, grid, 1);
    const auto four = extended_scan(h, grid, 4);
    ASSERT_EQ(one.points.size(), grid.size());
    // Below the curvature flip the quarter turn is a local maximum of the
    // polarized branch, so the two symmetric off-diagonal points win.
    EXPECT_EQ(one.best, 1u);
    EXPECT_NEAR(one.points[1].result.e_per_site, one.points[3].result.e_per_site, 1e-12);
    EXPECT_LT(one.points[1].result.e_per_site, one.points[2].result.e_per_site);
    EXPECT_EQ(four.best, one.best);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(four.points[i].result.phase_signature, one.points[i].result.phase_signature);
        EXPECT_DOUBLE_EQ(four.points[i].result.e_per_site, one.points[i].result.e_per_site);
    }
}

TEST(ExtendedScan, ToricLineBranchPoints) {
    const auto r = analyze_toric_line();
    EXPECT_NEAR(r.crossing_h, 0.46, 0.01);
    EXPECT_NEAR(r.curvature_flip_h, std::sqrt(2.0), 0.01);
}
