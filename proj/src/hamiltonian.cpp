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

#include "stabgs/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "stabgs/errors.hpp"
#include "stabgs/rng.hpp"

namespace stabgs {

namespace {

struct LettersHash {
    std::size_t operator()(const PauliOp &p) const { return p.letters_hash(); }
};
struct LettersEq {
    bool operator()(const PauliOp &a, const PauliOp &b) const { return a.same_letters(b); }
};

// Folds the sign into the weight; rejects non-Hermitian input.
Term normalized(Term t) {
    if (t.pauli.phase() & 1) {
        throw Error("term " + format_pauli(t.pauli) + " is not Hermitian");
    }
    if (t.pauli.negative()) {
        t.weight = -t.weight;
        t.pauli.set_phase(0);
    }
    return t;
}

// Merge by letters keeping the first position; drop near-zero sums.
std::vector<Term> merge_terms(const std::vector<Term> &raw) {
    std::vector<Term> merged;
    std::unordered_map<PauliOp, std::size_t, LettersHash, LettersEq> index;
    for (const auto &r : raw) {
        Term t = normalized(r);
        auto [it, fresh] = index.emplace(t.pauli, merged.size());
        if (fresh) {
            merged.push_back(t);
        } else {
            merged[it->second].weight += t.weight;
        }
    }
    std::vector<Term> out;
    for (auto &t : merged) {
        if (std::abs(t.weight) >= kWeightEpsilon) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::string format_weight(double w) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, end);
}

double parse_weight(const std::string &tok, std::size_t line) {
    double w = 0.0;
    const char *b = tok.data();
    const char *e = b + tok.size();
    if (!tok.empty() && *b == '+') {
        ++b;
    }
    auto [end, ec] = std::from_chars(b, e, w);
    if (ec != std::errc() || end != e) {
        throw ParseError("line " + std::to_string(line) + ": bad weight '" + tok + "'", line);
    }
    return w;
}

std::size_t parse_count(const std::string &tok, std::size_t line, const char *what) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size() || v == 0) {
        throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'", line);
    }
    return v;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Largest site index mentioned in sparse Pauli text, or -1.
long max_index(const std::string &text) {
    long best = -1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if ((text[i] == 'X' || text[i] == 'Y' || text[i] == 'Z') && i + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            long v = 0;
            std::from_chars(text.data() + i + 1, text.data() + text.size(), v);
            best = std::max(best, v);
        }
    }
    return best;
}

PauliOp parse_term_pauli(const std::string &text, std::size_t n, std::size_t line) {
    try {
        return parse_pauli(text, n);
    } catch (const ParseError &e) {
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    }
}

SupercellFactor parse_factor(const std::string &tok, std::size_t ndim, std::size_t line) {
    auto fail = [&](const std::string &why) -> SupercellFactor {
        throw ParseError("line " + std::to_string(line) + ": bad factor '" + tok + "': " + why, line);
    };
    if (tok.size() < 5 || tok[1] != '@' || tok[2] != '(' || tok.back() != ')') {
        return fail("expected LETTER@(...)");
    }
    SupercellFactor f;
    switch (tok[0]) {
        case 'X':
            f.letter = Letter::X;
            break;
        case 'Y':
            f.letter = Letter::Y;
            break;
        case 'Z':
            f.letter = Letter::Z;
            break;
        default:
            return fail("bad letter");
    }
    std::vector<int> nums;
    std::string body = tok.substr(3, tok.size() - 4);
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        int v = 0;
        auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || end != part.data() + part.size()) {
            return fail("bad integer");
        }
        nums.push_back(v);
    }
    if (nums.size() != ndim + 1) {
        return fail("expected " + std::to_string(ndim + 1) + " coordinates");
    }
    f.site = nums.back();
    nums.pop_back();
    f.offset = nums;
    return f;
}

}  // namespace

Hamiltonian::Hamiltonian(std::size_t n) : n_(n), by_last_(n) {}

Hamiltonian Hamiltonian::from_terms(std::size_t n, const std::vector<Term> &raw) {
    Hamiltonian h(n);
    for (const auto &t : raw) {
        if (t.pauli.n_sites() != n) {
            throw SizeError("term " + format_pauli(t.pauli) + " is not on " + std::to_string(n) + " sites");
        }
    }
    for (auto &t : merge_terms(raw)) {
        if (t.pauli.is_identity_letters()) {
            h.offset_ += t.weight;
            continue;
        }
        std::size_t id = h.terms_.size();
        std::size_t f = static_cast<std::size_t>(t.pauli.first_site());
        std::size_t l = static_cast<std::size_t>(t.pauli.last_site());
        h.first_.push_back(f);
        h.last_.push_back(l);
        h.by_last_[l].push_back(id);
        h.k_ = std::max(h.k_, l - f + 1);
        h.terms_.push_back(std::move(t));
    }
    return h;
}

bool Hamiltonian::operator==(const Hamiltonian &o) const {
    if (n_ != o.n_ || offset_ != o.offset_ || terms_.size() != o.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].weight != o.terms_[i].weight || terms_[i].pauli != o.terms_[i].pauli) {
            return false;
        }
    }
    return true;
}

PeriodicHamiltonian1D PeriodicHamiltonian1D::from_terms(std::size_t l, const std::vector<Term> &raw) {
    if (l == 0) {
        throw Error("period must be positive");
    }
    std::size_t span = 1;
    for (const auto &t : raw) {
        span = std::max(span, t.pauli.n_sites());
    }
    std::vector<Term> shifted;
    for (const auto &t : raw) {
        long f = t.pauli.first_site();
        if (f < 0) {
            throw Error("identity terms are not allowed in a periodic Hamiltonian");
        }
        std::size_t shift = static_cast<std::size_t>(f) / l * l;
        std::size_t width = static_cast<std::size_t>(t.pauli.last_site()) + 1 - shift;
        PauliOp p(width);
        for (std::size_t i = static_cast<std::size_t>(f); i < t.pauli.n_sites(); ++i) {
            if (t.pauli.letter(i) != Letter::I) {
                p.set_letter(i - shift, t.pauli.letter(i));
            }
        }
        p.set_phase(t.pauli.phase());
        shifted.push_back({t.weight, p});
    }
    // Pad to a common width so that equal operators merge.
    std::size_t width = 1;
    for (const auto &t : shifted) {
        width = std::max(width, t.pauli.n_sites());
    }
    for (auto &t : shifted) {
        t.pauli = embed(t.pauli, width, 0);
    }
    PeriodicHamiltonian1D h;
    h.l = l;
    h.cell_terms = merge_terms(shifted);
    (void)span;
    return h;
}

std::size_t PeriodicHamiltonian1D::k() const {
    std::size_t k = 0;
    for (const auto &t : cell_terms) {
        k = std::max(k, static_cast<std::size_t>(t.pauli.last_site() - t.pauli.first_site() + 1));
    }
    return k;
}

Hamiltonian PeriodicHamiltonian1D::finite_chain(std::size_t units) const {
    std::size_t n = units * l;
    std::vector<Term> raw;
    for (std::size_t u = 0; u < units; ++u) {
        for (const auto &t : cell_terms) {
            std::size_t last = u * l + static_cast<std::size_t>(t.pauli.last_site());
            if (last >= n) {
                continue;
            }
            PauliOp p(n);
            for (std::size_t i = 0; i < t.pauli.n_sites(); ++i) {
                if (t.pauli.letter(i) != Letter::I) {
                    p.set_letter(u * l + i, t.pauli.letter(i));
                }
            }
            raw.push_back({t.weight, p});
        }
    }
    return Hamiltonian::from_terms(n, raw);
}

std::size_t SupercellHamiltonian::n_cells() const {
    std::size_t c = 1;
    for (int d : dims) {
        c *= static_cast<std::size_t>(d);
    }
    return c;
}

std::size_t SupercellHamiltonian::qubit(std::size_t cell, const std::vector<int> &offset, int site) const {
    std::size_t index = 0;
    std::size_t stride = 1;
    std::size_t rest = cell;
    for (std::size_t d = 0; d < dims.size(); ++d) {
        int coord = static_cast<int>(rest % static_cast<std::size_t>(dims[d]));
        rest /= static_cast<std::size_t>(dims[d]);
        int wrapped = ((coord + offset[d]) % dims[d] + dims[d]) % dims[d];
        index += static_cast<std::size_t>(wrapped) * stride;
        stride *= static_cast<std::size_t>(dims[d]);
    }
    return index * static_cast<std::size_t>(sites_per_cell) + static_cast<std::size_t>(site);
}

Term SupercellHamiltonian::wrap_term(std::size_t t, std::size_t cell) const {
    const std::size_t n = n_qubits();
    PauliOp p(n);
    for (const auto &f : terms[t].factors) {
        multiply_into(p, PauliOp::single(n, qubit(cell, f.offset, f.site), f.letter));
    }
    if (p.phase() & 1) {
        throw Error("wrapped term " + std::to_string(t) + " is not Hermitian on this torus");
    }
    return normalized({terms[t].weight, p});
}

Hamiltonian SupercellHamiltonian::wrap() const {
    std::vector<Term> raw;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        for (std::size_t c = 0; c < n_cells(); ++c) {
            raw.push_back(wrap_term(t, c));
        }
    }
    return Hamiltonian::from_terms(n_qubits(), raw);
}

AnyHamiltonian load_text(std::string_view text) {
    enum class Kind { none, finite, periodic, supercell } kind = Kind::none;
    std::size_t n = 0;
    std::size_t period = 0;
    SupercellHamiltonian sc;
    std::vector<Term> raw;
    std::vector<std::pair<std::string, std::size_t>> pending;  // periodic term text and line

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view raw_line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        std::size_t hash = raw_line.find('#');
        std::string line = trim(raw_line.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        auto rest_of_line = [&]() {
            std::string rest;
            std::getline(ss, rest);
            return trim(rest);
        };
        if (kind == Kind::none) {
            if (head == "qubits") {
                std::string tok;
                ss >> tok;
                n = parse_count(tok, line_no, "qubit count");
                kind = Kind::finite;
            } else if (head == "period") {
                std::string tok;
                ss >> tok;
                period = parse_count(tok, line_no, "period");
                kind = Kind::periodic;
            } else if (head == "supercell") {
                std::vector<std::string> toks;
                std::string tok;
                while (ss >> tok) {
                    toks.push_back(tok);
                }
                auto it = std::find(toks.begin(), toks.end(), "sites_per_cell");
                if (it == toks.end() || it + 2 != toks.end() || it == toks.begin() || it - toks.begin() > 2) {
                    throw ParseError("line " + std::to_string(line_no) +
                                         ": expected 'supercell D1 [D2] sites_per_cell S'",
                                     line_no);
                }
                for (auto d = toks.begin(); d != it; ++d) {
                    sc.dims.push_back(static_cast<int>(parse_count(*d, line_no, "dimension")));
                }
                sc.sites_per_cell = static_cast<int>(parse_count(*(it + 1), line_no, "sites_per_cell"));
                kind = Kind::supercell;
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": expected a 'qubits', 'period' or 'supercell' header",
                                 line_no);
            }
            std::string extra;
            if (kind != Kind::supercell && (ss >> extra)) {
                throw ParseError("line " + std::to_string(line_no) + ": trailing text in header", line_no);
            }
            continue;
        }
        if (kind == Kind::supercell) {
            if (head != "uterm") {
                throw ParseError("line " + std::to_string(line_no) + ": expected 'uterm'", line_no);
            }
            std::string wtok;
            if (!(ss >> wtok)) {
                throw ParseError("line " + std::to_string(line_no) + ": missing weight", line_no);
            }
            SupercellTerm t{parse_weight(wtok, line_no), {}};
            std::string tok;
            while (ss >> tok) {
                SupercellFactor f = parse_factor(tok, sc.dims.size(), line_no);
                if (f.site < 0 || f.site >= sc.sites_per_cell) {
                    throw ParseError("line " + std::to_string(line_no) + ": site " + std::to_string(f.site) +
                                         " outside the cell",
                                     line_no);
                }
                t.factors.push_back(f);
            }
            if (t.factors.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": uterm without factors", line_no);
            }
            sc.terms.push_back(t);
            continue;
        }
        if (head != "term") {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'term'", line_no);
        }
        std::string wtok;
        if (!(ss >> wtok)) {
            throw ParseError("line " + std::to_string(line_no) + ": missing weight", line_no);
        }
        double w = parse_weight(wtok, line_no);
        std::string ptext = rest_of_line();
        if (kind == Kind::finite) {
            raw.push_back({w, parse_term_pauli(ptext, n, line_no)});
        } else {
            long mi = max_index(ptext);
            if (mi < 0) {
                throw ParseError("line " + std::to_string(line_no) + ": periodic terms need at least one factor",
                                 line_no);
            }
            raw.push_back({w, parse_term_pauli(ptext, static_cast<std::size_t>(mi) + 1, line_no)});
        }
    }
    switch (kind) {
        case Kind::none:
            throw ParseError("missing header", line_no == 0 ? 1 : line_no);
        case Kind::finite:
            return Hamiltonian::from_terms(n, raw);
        case Kind::periodic: {
            std::size_t width = 1;
            for (const auto &t : raw) {
                width = std::max(width, t.pauli.n_sites());
            }
            for (auto &t : raw) {
                t.pauli = embed(t.pauli, width, 0);
            }
            return PeriodicHamiltonian1D::from_terms(period, raw);
        }
        case Kind::supercell:
            return sc;
    }
    return Hamiltonian();
}

AnyHamiltonian load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_text(buf.str());
}

std::string format(const Hamiltonian &h) {
    std::string out = "qubits " + std::to_string(h.n_sites()) + "\n";
    if (h.offset() != 0.0) {
        out += "term " + format_weight(h.offset()) + "\n";
    }
    for (const auto &t : h.terms()) {
        out += "term " + format_weight(t.weight) + " " + format_pauli(t.pauli).substr(1) + "\n";
    }
    return out;
}

std::string format(const PeriodicHamiltonian1D &h) {
    std::string out = "period " + std::to_string(h.l) + "\n";
    for (const auto &t : h.cell_terms) {
        out += "term " + format_weight(t.weight) + " " + format_pauli(t.pauli).substr(1) + "\n";
    }
    return out;
}

std::string format(const SupercellHamiltonian &h) {
    std::string out = "supercell";
    for (int d : h.dims) {
        out += " " + std::to_string(d);
    }
    out += " sites_per_cell " + std::to_string(h.sites_per_cell) + "\n";
    for (const auto &t : h.terms) {
        out += "uterm " + format_weight(t.weight);
        for (const auto &f : t.factors) {
            out += std::string(" ") + letter_char(f.letter) + "@(";
            for (int o : f.offset) {
                out += std::to_string(o) + ",";
            }
            out += std::to_string(f.site) + ")";
        }
        out += "\n";
    }
    return out;
}

Hamiltonian gen_stochastic_heisenberg(std::size_t n, std::size_t k, uint64_t seed, bool with_zz) {
    SplitMix64 rng(seed);
    std::vector<Term> raw;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n && j <= i + k - 1; ++j) {
            for (Letter l : {Letter::X, Letter::Y, Letter::Z}) {
                if (l == Letter::Z && !with_zz) {
                    continue;
                }
                PauliOp p = PauliOp::single(n, i, l);
                p.set_letter(j, l);
                raw.push_back({rng.normal() / 4.0, p});
            }
        }
    }
    return Hamiltonian::from_terms(n, raw);
}

namespace {

// Images of one letter under the Y rotation: (weight factor, letter) pairs.
int rotated_letter(Letter l, double theta, std::pair<double, Letter> out[2]) {
    double c = std::cos(theta), s = std::sin(theta);
    switch (l) {
        case Letter::X:
            out[0] = {c, Letter::X};
            out[1] = {-s, Letter::Z};
            return 2;
        case Letter::Z:
            out[0] = {s, Letter::X};
            out[1] = {c, Letter::Z};
            return 2;
        default:
            out[0] = {1.0, l};
            return 1;
    }
}

}  // namespace

Hamiltonian rotate_y(const Hamiltonian &h, const std::vector<double> &angles) {
    if (angles.size() != h.n_sites()) {
        throw SizeError("rotate_y: need one angle per site");
    }
    std::vector<Term> raw;
    if (h.offset() != 0.0) {
        raw.push_back({h.offset(), PauliOp(h.n_sites())});
    }
    for (const auto &t : h.terms()) {
        std::vector<Term> partial{{t.weight, PauliOp(h.n_sites())}};
        for (std::size_t i = 0; i < h.n_sites(); ++i) {
            Letter l = t.pauli.letter(i);
            if (l == Letter::I) {
                continue;
            }
            std::pair<double, Letter> img[2];
            int cnt = rotated_letter(l, angles[i], img);
            std::vector<Term> next;
            for (const auto &p : partial) {
                for (int c = 0; c < cnt; ++c) {
                    Term q = p;
                    q.weight *= img[c].first;
                    q.pauli.set_letter(i, img[c].second);
                    next.push_back(std::move(q));
                }
            }
            partial = std::move(next);
        }
        for (auto &p : partial) {
            raw.push_back(std::move(p));
        }
    }
    return Hamiltonian::from_terms(h.n_sites(), raw);
}

SupercellHamiltonian rotate_y(const SupercellHamiltonian &h, const std::vector<double> &angles) {
    if (angles.size() != static_cast<std::size_t>(h.sites_per_cell)) {
        throw SizeError("rotate_y: need one angle per site in the cell");
    }
    SupercellHamiltonian out = h;
    out.terms.clear();
    // Key: factor list with letters; first occurrence keeps its position.
    std::map<std::vector<std::tuple<std::vector<int>, int, int>>, std::size_t> index;
    for (const auto &t : h.terms) {
        std::vector<SupercellTerm> partial{{t.weight, {}}};
        for (const auto &f : t.factors) {
            std::pair<double, Letter> img[2];
            int cnt = rotated_letter(f.letter, angles[static_cast<std::size_t>(f.site)], img);
            std::vector<SupercellTerm> next;
            for (const auto &p : partial) {
                for (int c = 0; c < cnt; ++c) {
                    SupercellTerm q = p;
                    q.weight *= img[c].first;
                    q.factors.push_back({img[c].second, f.offset, f.site});
                    next.push_back(std::move(q));
                }
            }
            partial = std::move(next);
        }
        for (auto &p : partial) {
            std::vector<std::tuple<std::vector<int>, int, int>> key;
            for (const auto &f : p.factors) {
                key.emplace_back(f.offset, f.site, static_cast<int>(f.letter));
            }
            std::sort(key.begin(), key.end());
            auto [it, fresh] = index.emplace(key, out.terms.size());
            if (fresh) {
                out.terms.push_back(std::move(p));
            } else {
                out.terms[it->second].weight += p.weight;
            }
        }
    }
    std::erase_if(out.terms, [](const SupercellTerm &t) { return std::abs(t.weight) < kWeightEpsilon; });
    return out;
}

PeriodicHamiltonian1D cluster_model(double jy, double hy) {
    std::vector<Term> raw;
    raw.push_back({-1.0, parse_pauli("X0 Z1 X2", 3)});
    raw.push_back({-jy, parse_pauli("Y0 Y1", 3)});
    raw.push_back({hy, parse_pauli("Y0", 3)});
    return PeriodicHamiltonian1D::from_terms(1, raw);
}

SupercellHamiltonian toric_model(double hx, double hz, int dim_x, int dim_y) {
    SupercellHamiltonian h;
    h.dims = {dim_x, dim_y};
    h.sites_per_cell = 2;
    auto f = [](Letter l, int dx, int dy, int s) { return SupercellFactor{l, {dx, dy}, s}; };
    // Vertex at the cell origin: left/right horizontal bonds, up/down vertical bonds.
    h.terms.push_back({-1.0, {f(Letter::X, -1, 0, 0), f(Letter::X, 0, 0, 0), f(Letter::X, 0, 0, 1),
                              f(Letter::X, 0, -1, 1)}});
    // Plaquette up-right of the origin: bottom/top horizontal, left/right vertical.
    h.terms.push_back({-1.0, {f(Letter::Z, 0, 0, 0), f(Letter::Z, 0, 1, 0), f(Letter::Z, 0, 0, 1),
                              f(Letter::Z, 1, 0, 1)}});
    for (int s = 0; s < 2; ++s) {
        h.terms.push_back({-hx, {f(Letter::X, 0, 0, s)}});
    }
    for (int s = 0; s < 2; ++s) {
        h.terms.push_back({-hz, {f(Letter::Z, 0, 0, s)}});
    }
    std::erase_if(h.terms, [](const SupercellTerm &t) { return std::abs(t.weight) < kWeightEpsilon; });
    return h;
}

}  // namespace stabgs
