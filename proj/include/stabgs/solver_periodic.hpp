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


#ifndef STABGS_SOLVER_PERIODIC_HPP
#define STABGS_SOLVER_PERIODIC_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stabgs/hamiltonian.hpp"
#include "stabgs/pauli.hpp"
#include "stabgs/stabgroup.hpp"

namespace stabgs {

struct PeriodicResult {
    double e_per_site = 0.0;
    /// Supercell size in units of the Hamiltonian's period.
    std::size_t supercell_c = 1;
    /// 1D: committed signed terms of one supercell, each placed at its first
    /// site on a register of c*l + k - 1 sites. Supercell: the signed
    /// representative terms whose translates generate the group, on the torus.
    PauliSet generators_in_supercell;
    std::string phase_signature;
    /// Every distinct minimizer found, this one included, ordered by
    /// (supercell_c, phase_signature). Empty inside the entries themselves.
    std::vector<PeriodicResult> degenerate;
};

/// A signed operator whose letters start at chain site `pos`.
struct PlacedTerm {
    long pos;
    PauliOp op;
};

/// Canonical label of a periodic term set with period `period` sites, a
/// multiple of the Hamiltonian period `l`: reduced to its primitive period,
/// then minimized over translations by multiples of l. Returns the label and
/// the primitive period in sites.
std::pair<std::string, std::size_t> phase_signature(const std::vector<PlacedTerm> &terms, std::size_t period,
                                                    std::size_t l);

struct PeriodicOptions {
    std::size_t c_max = 6;
    /// Upper limit on optimal closed walks enumerated per start state when
    /// collecting degenerate minimizers.
    std::size_t max_walks = 20000;
};

/// Minimum energy per site over stabilizer states periodic with c <= c_max
/// units. Throws NoCycleFound when no cycle exists within c_max.
PeriodicResult solve_periodic_1d(const PeriodicHamiltonian1D &h, const PeriodicOptions &opts = {});

/// Energy per site of the best period-1 state on the wrapped torus of h.
/// Representative terms that anticommute with one of their own translates
/// are dropped first.
PeriodicResult solve_supercell_c1(const SupercellHamiltonian &h, std::size_t max_terms = 24);

/// Representatives kept by solve_supercell_c1.
std::vector<std::size_t> translation_compatible_terms(const SupercellHamiltonian &h);

/// Group generated by every translate of the given signed representatives.
StabGroup translation_group(const SupercellHamiltonian &h, const std::vector<SupercellTerm> &reps);

/// e_stab of the wrapped Hamiltonian divided by the number of qubits.
double energy_per_site(const SupercellHamiltonian &h, const StabGroup &g);

struct ScanPoint {
    double alpha;
    double beta;
    PeriodicResult result;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    /// Lowest energy; ties within rounding go to the smaller (alpha, beta),
    /// then signature.
    std::size_t best = 0;
};

/// Rotates h by alpha on vertical-bond sites (site 1) and beta on
/// horizontal-bond sites (site 0), then solves each grid point.
ScanResult extended_scan(const SupercellHamiltonian &h, const std::vector<std::pair<double, double>> &grid,
                         unsigned threads = 1);

/// Branch analysis of the toric model along h_x = h_z = h with alpha = beta.
struct ToricLineAnalysis {
    /// Field where the best polarized energy on the alpha grid first drops to
    /// the topological energy.
    double crossing_h;
    /// Field where the second difference of the polarized energy at
    /// alpha = pi/4 changes sign.
    double curvature_flip_h;
};

/// Polarized branch: the group of X on every site after rotating by alpha.
double toric_polarized_energy(double h, double alpha, int dim = 3);
/// Topological branch: the vertex and plaquette group of the unrotated model.
double toric_topological_energy(double h, int dim = 3);
/// Scans alpha in [0, pi/2] with the given step and bisects in h to `tol`.
ToricLineAnalysis analyze_toric_line(double alpha_step = 1e-3, double tol = 1e-4);

}  // namespace stabgs

#endif
