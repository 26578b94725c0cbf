#pragma once
// Partition calculus for nilpotent orbits of classical groups.
//
// Factor kinds are read as realizations: A rank r is GL_{r+1}, B rank r is
// SO_{2r+1}, C rank r is Sp_{2r}, D rank r is SO_{2r}. Unipotent and nilpotent
// classes share the same encoding.

#include "birsheet/rootsys.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace birsheet {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

enum class VeryEven { None, I, II };

struct ClassicalOrbit {
    Kind kind = Kind::A;
    int rank = 0;
    Partition partition;
    VeryEven label = VeryEven::None;  // D only, present iff every part is even
    bool label_ambiguous = false;     // both labels possible; see ls_induce
    auto operator<=>(const ClassicalOrbit&) const = default;
};

int partition_size(const Partition& p);
int natural_dim(Kind k, int rank);  // size of the partitions: n+1, 2n+1, 2n, 2n
bool is_partition(const Partition& p);
Partition normalize_partition(Partition p);  // sort decreasing, drop zeros
bool is_very_even(Kind k, const Partition& p);
bool validate_orbit(Kind k, const Partition& p);
bool validate_orbit(const ClassicalOrbit& o);
ClassicalOrbit make_orbit(Kind k, int rank, Partition p, VeryEven label = VeryEven::None);  // throws InvalidOrbit
ClassicalOrbit trivial_orbit(Kind k, int rank);
ClassicalOrbit regular_orbit(Kind k, int rank);
std::vector<Partition> partitions_of(int n);  // reverse lexicographic
std::vector<ClassicalOrbit> enumerate_orbits(Kind k, int rank);

long group_dim(Kind k, int rank);  // dimension of the realization
long orbit_dim(const ClassicalOrbit& o);
long orbit_dim(Kind k, int rank, const ClassicalOrbit& o);  // throws InvalidOrbit on mismatch

Partition dual_partition(const Partition& p);
bool dominates(const Partition& a, const Partition& b);  // a >= b, equal sizes
ClassicalOrbit collapse(Kind k, const Partition& p);  // D very even result: label_ambiguous set

// Orbit of a standard Levi GL_{k_1} x ... x GL_{k_r} x X_{m'} of an ambient X_m.
struct LeviOrbit {
    std::vector<ClassicalOrbit> blocks;  // kind A, rank k_j - 1
    std::vector<int> block_sign;         // parity of minus signs in the block embedding (type D)
    std::optional<ClassicalOrbit> rest;  // the X_{m'} factor; absent when m' = 0
    int rest_rank() const { return rest ? rest->rank : 0; }
    long group_dim() const;
    long orbit_dim() const;
    int gl_size() const;  // sum of the block sizes
    auto operator<=>(const LeviOrbit&) const = default;
};

// Sort blocks, fold a D1 rest into a GL1 block, and reduce type D sign data to a
// canonical representative of the Weyl class.
LeviOrbit canonical_levi_orbit(Kind ambient, LeviOrbit lo);
std::string levi_key(const LeviOrbit& lo);
bool is_identity_levi(Kind ambient, int rank, const LeviOrbit& lo);
bool is_trivial(const LeviOrbit& lo);

ClassicalOrbit ls_induce(const LeviOrbit& lo, Kind ambient, int rank);  // throws InconsistentEmbedding
std::vector<LeviOrbit> enumerate_levi_orbits(Kind ambient, int rank, bool proper_only);
bool is_rigid(Kind k, int rank, const ClassicalOrbit& o);

long component_group_order(Kind k, int rank, const ClassicalOrbit& o);  // adjoint group
ClassicalOrbit springer_transfer(const ClassicalOrbit& o);

std::string partition_string(const Partition& p);  // "[2,2,1,1]"
std::string orbit_string(const ClassicalOrbit& o);  // "C2[2,2]", "D4[2,2,2,2]I"
std::string levi_orbit_string(const LeviOrbit& lo);
Partition parse_partition(const std::string& s);  // throws Malformed

}  // namespace birsheet
