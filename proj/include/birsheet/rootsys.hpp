#pragma once
// Classical root systems in Bourbaki coordinates, Weyl groups as signed
// permutations, subsystem closure, lattice quotients, shifted subtori.

#include "birsheet/arith.hpp"
#include "birsheet/errors.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace birsheet {

enum class Kind { A, B, C, D };
char kind_char(Kind k);
Kind parse_kind(char c);  // throws UnsupportedType
// "C3" -> (C, 3); unknown letters give UnsupportedType, other syntax Malformed.
std::pair<Kind, int> parse_group_name(const std::string& s);

inline constexpr int kRankCap = 6;

// Set of root indices; 128 bits covers every root system up to the cap.
struct RootSet {
    std::array<std::uint64_t, 2> w{0, 0};
    void set(int i) { w[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    int count() const { return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]); }
    bool empty() const { return (w[0] | w[1]) == 0; }
    bool subset_of(const RootSet& o) const { return (w[0] & ~o.w[0]) == 0 && (w[1] & ~o.w[1]) == 0; }
    RootSet operator|(const RootSet& o) const { return RootSet{{w[0] | o.w[0], w[1] | o.w[1]}}; }
    RootSet operator&(const RootSet& o) const { return RootSet{{w[0] & o.w[0], w[1] & o.w[1]}}; }
    std::vector<int> indices() const;
    auto operator<=>(const RootSet&) const = default;
};

struct RootSystem {
    Kind kind = Kind::A;
    int rank = 0;
    int dim = 0;  // ambient coordinates: rank+1 for A, rank otherwise
    std::vector<std::vector<int>> roots;   // ambient coordinates, canonical order
    std::vector<std::vector<int>> coeffs;  // coefficients on the simple roots
    std::vector<std::vector<int>> coroot_coeffs;  // coroot on the simple coroots
    std::vector<IVec> pairing;  // pairing[b][j] = <beta_b, alpha_j^vee>
    std::vector<int> height;
    std::vector<int> simple;  // simple[i-1] = index of alpha_i (Bourbaki numbering)
    int lowest = -1;          // alpha_0 = -(highest root)
    int highest = -1;
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
    std::vector<std::string> warnings;

    int size() const { return static_cast<int>(roots.size()); }
    int index_of(const std::vector<int>& v) const;  // -1 if not a root
    int negative(int i) const;
    bool positive(int i) const { return height[i] > 0; }
    // extended node e: 0 -> alpha_0, i -> alpha_i
    int node_root(int e) const { return e == 0 ? lowest : simple[e - 1]; }
    RootSet all() const;
    std::string name() const;
};

RootSystem build_root_system(Kind kind, int rank);            // D3 normalised to A3
std::shared_ptr<const RootSystem> root_system_cached(Kind kind, int rank);

// Signed permutation of ambient coordinates: e_i -> sign[i] * e_{perm[i]}.
struct WeylElement {
    std::vector<std::int8_t> perm;
    std::vector<std::int8_t> sign;
    std::vector<std::uint8_t> root_perm;
};

struct WeylGroup {
    std::vector<WeylElement> elements;  // elements[0] is the identity
    long order() const { return static_cast<long>(elements.size()); }
};

WeylGroup weyl_group(const RootSystem& rs);  // throws CapExceeded beyond kRankCap
std::shared_ptr<const WeylGroup> weyl_group_cached(const RootSystem& rs);

RootSet apply(const WeylElement& w, const RootSet& s);
QVec apply_torus(const RootSystem& rs, const WeylElement& w, const QVec& y);
IVec apply_cochar(const RootSystem& rs, const WeylElement& w, const IVec& y);

RootSet subsystem_closure(const RootSystem& rs, const RootSet& seed);  // Z-span of seed, intersected with Phi
RootSet closure_of_nodes(const RootSystem& rs, const std::vector<int>& nodes);
std::vector<int> subsystem_base(const RootSystem& rs, const RootSet& s);

struct LatticeQuotient {
    IMat relations;
    std::vector<Int> invariant_factors;  // nonzero normal-form diagonal
    int free_rank = 0;
    Int torsion_order = 1;
};
LatticeQuotient lattice_quotient(const IMat& relations, std::size_t ncols);

// Torus points are rational vectors y in coroot coordinates (x = sum y_j alpha_j^vee),
// taken modulo Z^n. A shifted subtorus is t + span_R(dir) + Z^n.
struct ShiftedSubtorus {
    IMat dir;    // saturated Z-basis of the direction lattice (HNF rows)
    IMat ann;    // saturated Z-basis of its annihilator (HNF rows)
    QVec inv;    // frac(ann * t), the canonical invariant of the coset
    QVec rep;    // canonical representative translation
    int dimension() const { return static_cast<int>(dir.size()); }
    bool contains(const QVec& y) const;
    bool contains(const ShiftedSubtorus& o) const;  // o is a subset of *this
    bool operator==(const ShiftedSubtorus& o) const { return ann == o.ann && inv == o.inv; }
    std::string key() const;
};
ShiftedSubtorus make_subtorus(const IMat& dir_rows, const QVec& t, std::size_t n);

// Roots beta with <beta, y> integral.
RootSet centralizer_of_point(const RootSystem& rs, const QVec& y);
// Roots constant and integral on the coset: the centralizer of a generic point.
RootSet generic_centralizer(const RootSystem& rs, const ShiftedSubtorus& c);
// A rational point of c whose centralizer equals the generic one, found by a bounded
// deterministic search and certified by subsystem equality.
QVec generic_point(const RootSystem& rs, const ShiftedSubtorus& c);

// Z(S): components of the kernel of the roots of S on the simply connected torus.
std::vector<ShiftedSubtorus> centre_components(const RootSystem& rs, const RootSet& s);

std::vector<Rat> ambient_point(const RootSystem& rs, const QVec& y);  // x = sum y_j alpha_j^vee

}  // namespace birsheet
