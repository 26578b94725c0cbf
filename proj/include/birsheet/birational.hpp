#pragma once
// Three-valued birationality verdicts for Lusztig-Spaltenstein induction.
//
// Verdicts live in per-type tables indexed by Weyl classes of (Levi, orbit)
// pairs. Sound rules (identity, type A, trivial adjoint component group,
// fixtures, transitivity along Levi chains, uniqueness of the birational datum)
// are iterated to a fixed point; whatever stays undecided is Unknown.

#include "birsheet/orbits.hpp"
#include "birsheet/realize.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace birsheet {

enum class VerdictValue { Birational, NotBirational, Unknown };
enum class Tri { Yes, No, Unknown };

const char* verdict_name(VerdictValue v);
const char* tri_name(Tri t);
VerdictValue parse_verdict(const std::string& s);  // throws Malformed

struct Verdict {
    VerdictValue value = VerdictValue::Unknown;
    std::string provenance;  // empty iff Unknown
    bool definite() const { return value != VerdictValue::Unknown; }
};

struct RigidAnswer {
    Tri value = Tri::Unknown;
    std::string provenance;
};

struct InductionInstance {
    Kind kind = Kind::A;
    int rank = 0;
    LeviOrbit levi;
};
// Levi given by simple-root numbers (1-based), orbit by descriptor ("trivial", "[2,1]x[1,1]").
InductionInstance make_instance(Kind kind, int rank, const std::vector<int>& theta, const std::string& orbit);

struct BirationalDatum {
    LeviOrbit levi;  // canonical; orbit birationally rigid in the Levi
    ClassicalOrbit induced;
};

struct DatumResult {
    bool known = false;
    BirationalDatum datum;
};

struct FixtureInstance {
    std::string id;
    Kind kind = Kind::A;
    int rank = 0;
    std::vector<int> levi;
    std::string orbit;
    VerdictValue verdict = VerdictValue::Unknown;
    std::string source;
};

struct RigidFixture {
    std::string id;
    Kind kind = Kind::A;
    int rank = 0;
    Partition partition;
    VeryEven label = VeryEven::None;
    bool rigid = false;
    std::string source;
};

struct FixtureSet {
    int version = 0;
    std::vector<FixtureInstance> instances;
    std::vector<RigidFixture> rigid;
};

FixtureSet parse_fixtures(const std::string& json_text);  // throws Malformed
const FixtureSet& builtin_fixtures();
const std::string& builtin_fixtures_text();

class BirationalEngine {
public:
    // Tables are closed under the rules up to `horizon` for every kind; requests beyond it
    // raise the horizon and recompute, so answers depend only on the horizon.
    explicit BirationalEngine(int horizon, FixtureSet fixtures = builtin_fixtures());
    ~BirationalEngine();
    BirationalEngine(const BirationalEngine&) = delete;
    BirationalEngine& operator=(const BirationalEngine&) = delete;

    int horizon() const;
    const FixtureSet& fixtures() const { return fixtures_; }

    Verdict decide(Kind kind, int rank, const LeviOrbit& levi);
    Verdict decide(const InductionInstance& inst) { return decide(inst.kind, inst.rank, inst.levi); }
    // Product of factor verdicts: NotBirational if any factor is, Birational if all are.
    Verdict decide(const std::vector<FactorInduction>& parts);

    RigidAnswer is_birationally_rigid(Kind kind, int rank, const ClassicalOrbit& o);
    // Every factor orbit birationally rigid in its factor.
    Tri factors_rigid(const Realization& r, const FactorOrbits& o);
    DatumResult birational_datum_of(Kind kind, int rank, const ClassicalOrbit& o);

    struct Entry {
        LeviOrbit levi;
        ClassicalOrbit induced;
        Verdict verdict;
        bool identity = false;
    };
    std::vector<Entry> instances(Kind kind, int rank);
    std::vector<std::pair<ClassicalOrbit, RigidAnswer>> rigidity_table(Kind kind, int rank);

private:
    struct Table;
    Table& table_locked(Kind kind, int rank);
    void rebuild_locked(int horizon);

    FixtureSet fixtures_;
    int horizon_ = 0;
    std::mutex mu_;
    std::map<std::pair<int, int>, std::unique_ptr<Table>> tables_;
};

// Chain L <= M <= G of standard Levis (simple-root subsets) with an orbit on L.
struct ChainCheck {
    Verdict lm, mg, lg;
    bool composes = false;  // Ind_M^G Ind_L^M = Ind_L^G
    bool consistent = true;  // biconditional on definite legs
    bool definite = false;
};
ChainCheck verify_transitivity(BirationalEngine& eng, const RootSystem& rs, const std::vector<int>& theta_l,
                               const std::vector<int>& theta_m, const FactorOrbits& orbit_l);

// A standard Levi (simple-root subset) and factor orbits realising a canonical Levi orbit.
std::optional<std::pair<std::vector<int>, FactorOrbits>> standard_levi_of(const RootSystem& rs, const LeviOrbit& lo);

}  // namespace birsheet
