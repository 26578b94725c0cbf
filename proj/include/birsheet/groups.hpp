#pragma once
// Pseudo-Levis, centre components, decomposition data and component posets of a
// simply connected classical group.
//
// Each pseudo-Levi class is stored through one standard subsystem S_P (the closure
// of a subset of the extended Dynkin diagram). Every W-conjugate of S_P is indexed
// with an element carrying it back, so data living on arbitrary centralizers can be
// moved to the standard frame and canonicalised under the stabiliser of S_P.

#include "birsheet/birational.hpp"
#include "birsheet/realize.hpp"
#include "birsheet/rootsys.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace birsheet {

enum class Exec { Serial, Parallel };

struct GroupSpec {
    Kind kind = Kind::A;
    int rank = 1;
    std::string name() const;          // "C3"
    std::string classical_name() const;  // "Sp6", "SL4", "Spin7"
};
// Accepts "C3", "Sp6", "SL4", "Spin7", "A1"; adjoint or intermediate names throw NotSimplyConnected.
GroupSpec parse_group_spec(const std::string& s);

// Effect of one stabiliser element of S_P on the finite data attached to P.
struct StabAction {
    std::vector<int> comp;    // centre component c goes to comp[c]
    std::vector<int> factor;  // factor i goes to factor[i]
    std::vector<char> flip;   // very even label of factor i swaps
    auto operator<=>(const StabAction&) const = default;
};

struct PseudoLevi {
    int index = 0;
    std::vector<int> theta;  // extended nodes, 0 = lowest root
    std::vector<std::vector<int>> all_thetas;  // every subset of the extended diagram in this class
    RootSet roots;
    Realization real;
    std::string type;
    bool is_levi = false;
    std::vector<int> levi_theta;      // a subset of simple roots giving a conjugate, when is_levi
    RootSet envelope;                 // C_G(Z(M)^0), in the frame of `roots`
    std::vector<int> envelope_theta;  // simple-root numbers of a standard Levi conjugate to it
    std::vector<ShiftedSubtorus> components;  // of Z(M), sorted by key
    std::vector<char> rp;
    std::vector<StabAction> actions;  // a group; actions[0] is the identity
    long conjugates = 0;              // size of the W-orbit of `roots`
    bool isolated() const { return components.front().dimension() == 0; }
};

struct CenterComponent {
    int pseudo_levi = 0;
    int index = 0;
    ShiftedSubtorus component;
    bool rp = false;
};

// (M, Z(M)^0 z, O^M) in the standard frame of M; canonical when minimal under the stabiliser.
struct DecompositionDatum {
    int pseudo_levi = 0;
    int component = 0;
    FactorOrbits orbit;
    auto operator<=>(const DecompositionDatum&) const = default;
};

// Finite datum standing for a class z.u: the semisimple locus and the unipotent part on C_G(z)^0.
struct ClassSkeleton {
    QVec point;
    RootSet centralizer;
    Realization real;
    FactorOrbits orbit;
};

// Z(C)^0 x for a conjugate C of a pseudo-Levi with the regularity property: the torus
// stratum where the centralizer is exactly C.
struct Flat {
    RootSet centralizer;
    ShiftedSubtorus locus;
    std::string key;
    Realization real;
    int pseudo_levi = 0;
    int component = 0;  // index in the standard frame of the class
    WeylElement to_standard;  // maps centralizer to S_P and locus to that component
};

// Partition of the proper subsets of the extended diagram into W-classes, as node bitmasks.
using ThetaClasses = std::vector<std::vector<unsigned>>;

class Group {
public:
    // Throws UnsupportedType or CapExceeded. A cached partition is only a hint: it is
    // re-validated and an inconsistent one raises Malformed.
    explicit Group(GroupSpec spec, Exec exec = Exec::Parallel, const ThetaClasses* cached = nullptr);

    const GroupSpec& spec() const { return spec_; }
    const RootSystem& rs() const { return *rs_; }
    const std::vector<PseudoLevi>& pseudo_levis() const { return pls_; }
    const PseudoLevi& pseudo_levi(int i) const { return pls_.at(i); }
    const ThetaClasses& theta_classes() const { return classes_; }
    int whole_group() const { return whole_; }  // index of the class with M = G
    const std::vector<ShiftedSubtorus>& centre() const { return pls_[whole_].components; }

    // w with w(s) = S_P; throws InvalidInstance when s is not a pseudo-Levi subsystem.
    std::pair<int, WeylElement> conjugate(const RootSet& s) const;

    DecompositionDatum canonical(const DecompositionDatum& d) const;
    DecompositionDatum canonical(const RootSet& s, const ShiftedSubtorus& x, const FactorOrbits& o) const;
    // Multiply the component by the centre element c (an index into centre()).
    DecompositionDatum translate(const DecompositionDatum& d, int c) const;

    // Every flat of the torus, sorted by (dimension desc, key); built once, thread-safe.
    const std::vector<Flat>& flats(Exec exec = Exec::Parallel) const;

    std::string datum_string(const DecompositionDatum& d) const;  // "C1xC1 @ comp 1 : trivial"
    long jordan_dim(const DecompositionDatum& d) const;

private:
    struct Entry {
        int pl;
        int elem;  // index into elems_, maps S_P to the key
    };
    struct Hash {
        std::size_t operator()(const RootSet& s) const { return s.w[0] * 0x9e3779b97f4a7c15ULL ^ s.w[1]; }
    };
    void add_class(const std::vector<int>& theta, const RootSet& s);
    void finish_class(PseudoLevi& p) const;

    GroupSpec spec_;
    std::shared_ptr<const RootSystem> rs_;
    std::vector<WeylElement> simple_refl_;
    std::vector<PseudoLevi> pls_;
    ThetaClasses classes_;
    int whole_ = 0;
    std::unordered_map<RootSet, Entry, Hash> orbit_;
    std::vector<WeylElement> elems_;
    std::vector<std::vector<std::pair<RootSet, int>>> orbit_list_;  // per class: (conjugate, elem)
    mutable std::once_flag flats_once_;
    mutable std::vector<Flat> flats_;
};

std::vector<CenterComponent> center_components(const Group& g, int pseudo_levi);
std::vector<DecompositionDatum> enumerate_decomposition_data(const Group& g, Exec exec = Exec::Parallel);

// Throws PointOutsideComponent, or InvalidOrbit when the orbit does not fit the factors.
ClassSkeleton induce_class(const Group& g, const DecompositionDatum& d, const QVec& z);
ClassSkeleton generic_skeleton(const Group& g, const DecompositionDatum& d);
// The decomposition datum of the Jordan class containing the skeleton.
DecompositionDatum datum_of_skeleton(const Group& g, const ClassSkeleton& sk);
long class_dim(const Group& g, const ClassSkeleton& sk);

struct PosetNode {
    RootSet centralizer;  // generic centralizer M_i of the node
    ShiftedSubtorus locus;  // Z(M_i)^0 s_i
    Realization real;
    std::string type;
    bool isolated = false;
    FactorOrbits induced;  // Ind_M^{M_i} O^M on the factors of M_i
    bool ambiguous = false;  // a very even label of the induced orbit is undetermined
    DecompositionDatum datum;  // canonical datum of the node's Jordan class
    std::vector<int> parents;  // nodes one hyperplane section above
    Verdict verdict;
};

struct ComponentPoset {
    DecompositionDatum tau;
    std::vector<PosetNode> nodes;  // nodes[0] is the component itself; sorted by (dimension desc, key)
    bool below(int i, int j) const;  // locus of j strictly inside locus of i
};

// Nodes: the flats of the root arrangement on the component, each with its generic centralizer.
// Parents are the nodes one dimension up containing the node.
ComponentPoset component_poset(const Group& g, const DecompositionDatum& tau, Exec exec = Exec::Parallel);
// Same poset built by repeated hyperplane sections of the component; kept as a reference.
ComponentPoset component_poset_by_sections(const Group& g, const DecompositionDatum& tau);

}  // namespace birsheet
