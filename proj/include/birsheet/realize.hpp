#pragma once
// Root subsystems as products of classical groups acting on coordinate blocks.
//
// A support class of the subsystem is read as GL_k (roots +-(eps_i e_i - eps_j e_j)),
// SO_{2k+1} (contains +-e_i), Sp_{2k} (contains +-2e_i) or SO_{2k} (both e_i +- e_j).
// Coordinates touched by no root are GL_1 factors.

#include "birsheet/orbits.hpp"
#include "birsheet/rootsys.hpp"

#include <string>
#include <vector>

namespace birsheet {

struct Factor {
    Kind kind = Kind::A;  // A stands for GL_{rank+1}
    int rank = 0;
    std::vector<int> coords;  // ascending
    std::vector<int> eps;     // GL only; eps[0] = +1
    RootSet roots;
    int minus_parity() const;
    bool abelian() const { return kind == Kind::A && rank == 0; }
    std::string name() const;  // "GL2", "C1", "D3"
};

struct Realization {
    std::vector<Factor> factors;  // ordered by smallest coordinate
    int factor_of_coord(int c) const;
    std::string type_string() const;  // nonabelian factors, e.g. "C1xC2"; "T" when none
};

Realization realize(const RootSystem& rs, const RootSet& s);  // throws InvalidInstance

using FactorOrbits = std::vector<ClassicalOrbit>;  // aligned with Realization::factors

FactorOrbits trivial_factor_orbits(const Realization& r);
std::vector<FactorOrbits> enumerate_factor_orbits(const Realization& r);
std::string factor_orbits_string(const Realization& r, const FactorOrbits& o);  // "[1,1]x[2]", "trivial"
FactorOrbits parse_factor_orbits(const Realization& r, const std::string& text);  // throws Malformed / InvalidOrbit
long orbit_dim(const FactorOrbits& o);

// The part of a Levi subsystem lying in one factor of a larger subsystem.
struct FactorInduction {
    int big = 0;  // index into the larger realization
    Kind kind = Kind::A;
    int rank = 0;
    LeviOrbit levi;  // not canonicalised; signs are relative to the factor's coordinates
};

// Requires the small subsystem to be a Levi subsystem of the big one, factor by factor.
std::vector<FactorInduction> split_induction(const Realization& small, const FactorOrbits& o, const Realization& big);
FactorOrbits induce(const Realization& small, const FactorOrbits& o, const Realization& big);

// Image of factor orbits under w, aligned with the realization of w(S).
FactorOrbits act_orbits(const WeylElement& w, const Realization& src, const FactorOrbits& o, const Realization& dst);

// LeviOrbit of a standard Levi Theta of the ambient simple group (theta: simple-root numbers 1..n).
LeviOrbit levi_orbit_of(const RootSystem& rs, const std::vector<int>& theta, const FactorOrbits& o);

}  // namespace birsheet
