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

#ifndef STABGS_HAMILTONIAN_HPP
#define STABGS_HAMILTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stabgs/pauli.hpp"

namespace stabgs {

/// Weights below this are dropped after merging or rotating.
inline constexpr double kWeightEpsilon = 1e-12;

struct Term {
    double weight;
    PauliOp pauli;
};

/// H = offset + sum_i w_i P_i on a finite chain. Every stored Pauli has phase
/// 0 and distinct letters; identity terms are folded into `offset`.
class Hamiltonian {
  public:
    Hamiltonian() = default;
    explicit Hamiltonian(std::size_t n);

    /// Folds signs into weights, merges equal Paulis (first occurrence keeps
    /// its position) and drops near-zero weights.
    static Hamiltonian from_terms(std::size_t n, const std::vector<Term> &raw);

    std::size_t n_sites() const { return n_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double offset() const { return offset_; }

    /// max(q_last - q_first + 1) over terms; 0 when there are none.
    std::size_t k() const { return k_; }
    std::size_t q_first(std::size_t id) const { return first_[id]; }
    std::size_t q_last(std::size_t id) const { return last_[id]; }
    /// Ids of terms whose last site is m.
    const std::vector<std::size_t> &by_last_site(std::size_t m) const { return by_last_[m]; }

    bool operator==(const Hamiltonian &o) const;

  private:
    std::size_t n_ = 0;
    double offset_ = 0.0;
    std::vector<Term> terms_;
    std::size_t k_ = 0;
    std::vector<std::size_t> first_;
    std::vector<std::size_t> last_;
    std::vector<std::vector<std::size_t>> by_last_;
};

/// An infinite chain invariant under translation by `l` sites. Each cell term
/// is given relative to a unit origin with its first site in [0, l).
struct PeriodicHamiltonian1D {
    std::size_t l = 1;
    std::vector<Term> cell_terms;

    /// Builds from raw terms: shifts each to the canonical origin and merges
    /// translates of the same operator.
    static PeriodicHamiltonian1D from_terms(std::size_t l, const std::vector<Term> &raw);

    /// Largest extent of a cell term (its locality k).
    std::size_t k() const;
    /// Cell terms placed at every origin j*l that fits in [0, units*l).
    Hamiltonian finite_chain(std::size_t units) const;
};

struct SupercellFactor {
    Letter letter;
    std::vector<int> offset;  // cell offset, one entry per dimension
    int site;                 // site inside the cell
};

struct SupercellTerm {
    double weight;
    std::vector<SupercellFactor> factors;
};

/// Translation-invariant lattice Hamiltonian wrapped on a torus of `dims`
/// cells; terms are written relative to a cell and replicated on every cell.
struct SupercellHamiltonian {
    std::vector<int> dims;
    int sites_per_cell = 1;
    std::vector<SupercellTerm> terms;

    std::size_t n_cells() const;
    std::size_t n_qubits() const { return n_cells() * static_cast<std::size_t>(sites_per_cell); }
    /// Qubit of (cell + offset, site) after wrapping.
    std::size_t qubit(std::size_t cell, const std::vector<int> &offset, int site) const;
    /// Term t anchored at `cell`, on the wrapped torus. The weight sign picks
    /// up any phase from factors landing on the same qubit.
    Term wrap_term(std::size_t t, std::size_t cell) const;
    /// All terms on all cells, merged.
    Hamiltonian wrap() const;
};

using AnyHamiltonian = std::variant<Hamiltonian, PeriodicHamiltonian1D, SupercellHamiltonian>;

/// Parses one of the three text formats. Errors carry 1-based line numbers.
AnyHamiltonian load_text(std::string_view text);
AnyHamiltonian load_file(const std::string &path);

std::string format(const Hamiltonian &h);
std::string format(const PeriodicHamiltonian1D &h);
std::string format(const SupercellHamiltonian &h);

/// sum_{i<j<=i+k-1} J^xx S^x S^x + J^yy S^y S^y [+ J^zz S^z S^z] with S = sigma/2
/// and J ~ N(0, 1), drawn bond by bond in (i, j) order.
Hamiltonian gen_stochastic_heisenberg(std::size_t n, std::size_t k, uint64_t seed, bool with_zz);

/// Conjugation by prod_j exp(i theta_j Y_j / 2): X -> cos X - sin Z,
/// Z -> sin X + cos Z, Y -> Y on each site.
Hamiltonian rotate_y(const Hamiltonian &h, const std::vector<double> &angles);
/// Same with one angle per site-in-cell.
SupercellHamiltonian rotate_y(const SupercellHamiltonian &h, const std::vector<double> &angles);

/// -X_{i-1} Z_i X_{i+1} - jy Y_i Y_{i+1} + hy Y_i per unit.
PeriodicHamiltonian1D cluster_model(double jy, double hy);

/// Toric code with fields on the square lattice: site 0 of a cell is the
/// horizontal bond, site 1 the vertical bond.
SupercellHamiltonian toric_model(double hx, double hz, int dim_x = 3, int dim_y = 3);

}  // namespace stabgs

#endif
