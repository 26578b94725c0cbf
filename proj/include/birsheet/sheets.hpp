#pragma once
// Birational closures of Jordan classes, birational sheets, the partition check and
// the local-model report.
//
// Along a component poset, NotBirational is inherited by smaller loci and Birational
// by larger ones; marking applies the engine per node and then closes under both rules.

#include "birsheet/birational.hpp"
#include "birsheet/groups.hpp"

#include <string>
#include <vector>

namespace birsheet {

// Per-node verdicts for Ind_M^{M_i} O^M, closed under inheritance. Throws InconsistentVerdicts.
ComponentPoset mark_birationality(ComponentPoset poset, const Group& g, BirationalEngine& eng);

// Maximal NotBirational nodes; the birational locus is the component minus their union.
// Throws IncompletePoset when an Unknown node remains.
std::vector<int> wbir_set(const ComponentPoset& poset);
// Same antichain computed over the decided nodes only.
std::vector<int> excluded_nodes(const ComponentPoset& poset);
std::vector<int> unknown_nodes(const ComponentPoset& poset);

// Data of the Birational nodes, sorted and unique. Throws IncompletePoset.
std::vector<DecompositionDatum> birational_closure(const ComponentPoset& poset);

// A smaller locus has a strictly larger centralizer, verdicts are closed upward
// (Birational) and downward (NotBirational), and the excluded nodes form an antichain.
std::vector<std::string> poset_law_violations(const ComponentPoset& poset);

struct BirationalSheet {
    DecompositionDatum tau;
    Tri bb = Tri::Unknown;   // orbit of tau birationally rigid in M
    ComponentPoset poset;    // marked
    std::vector<DecompositionDatum> jordan_classes;  // Birational nodes
    std::vector<DecompositionDatum> undecided;       // data met only at Unknown nodes
    std::vector<int> excluded;  // maximal NotBirational nodes
    bool complete = false;      // bb decided and no Unknown node
};

// One sheet per tau with bb = Yes, followed by the tau with bb = Unknown (never complete).
std::vector<BirationalSheet> enumerate_birational_sheets(const Group& g, BirationalEngine& eng,
                                                         const std::vector<DecompositionDatum>& data,
                                                         Exec exec = Exec::Parallel);

enum class DatumStatus { Pass, Blocked, Fail };
const char* status_name(DatumStatus s);

struct PartitionReport {
    struct Row {
        DecompositionDatum datum;
        DatumStatus status = DatumStatus::Fail;
        std::vector<int> sheets;    // definite containing sheets
        std::vector<int> possible;  // containment that hinges on an Unknown
    };
    std::vector<Row> rows;
    int passed = 0, blocked = 0, failed = 0;
    std::vector<std::string> counterexamples;
    int sheet_count = 0;            // bb = Yes
    int sheet_count_mod_centre = 0;
    int ordinary_sheet_count = 0;   // data with a rigid orbit
    int ordinary_sheet_count_mod_centre = 0;
    int undecided_sheets = 0;
    bool pass() const { return failed == 0; }
    bool partial() const { return blocked > 0 || undecided_sheets > 0; }
};

PartitionReport verify_partition(const Group& g, const std::vector<DecompositionDatum>& data,
                                 const std::vector<BirationalSheet>& sheets);

// Number of orbits of the given data under translation by the centre.
int count_mod_centre(const Group& g, const std::vector<DecompositionDatum>& data);

bool orbit_is_rigid(const Group& g, const DecompositionDatum& d);  // ordinary rigidity on every factor

struct SheetComparison {
    bool rigid = false;  // tau's orbit rigid, so the regular closure is a sheet
    bool equal = false;  // birational closure = regular closure
    bool complete = false;
    std::vector<int> witnesses;  // maximal nodes missing from the birational closure
    std::vector<int> isolated;   // isolated nodes, with their verdicts in the poset
};
SheetComparison compare_sheet(const BirationalSheet& sheet, const Group& g);

// The sheet containing the class; throws Undecidable when the datum hinges on an Unknown.
int locate_class(const Group& g, BirationalEngine& eng, const std::vector<BirationalSheet>& sheets,
                 const ClassSkeleton& sk);
// The birationally rigid datum (L, Z(L)^0 z, O^L) birationally inducing the class.
DecompositionDatum birational_datum_of_class(const Group& g, BirationalEngine& eng, const ClassSkeleton& sk);

struct LocalModel {
    int node = 0;
    QVec point;              // generic point r of the node
    std::string centralizer_type;  // factors of c_g(r)
    std::string levi_type;   // Lie(M), a Levi of c_g(r)
    std::string orbit;       // O^M
    bool unibranch = true;
    bool normalization_smooth = true;
    Tri smooth = Tri::Yes;   // classical simple factors only
};
// Throws Undecidable when the node verdict is Unknown, InvalidInstance when the node is excluded.
LocalModel local_model(const Group& g, const BirationalSheet& sheet, int node);

}  // namespace birsheet
