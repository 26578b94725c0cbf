#pragma once
// Report assembly for the command-line front end. Payloads carry no timestamps and
// every list follows the library's canonical order, so equal inputs give equal bytes.

#include "birsheet/sheets.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace birsheet {

inline constexpr int kReportSchemaVersion = 1;

struct Enumeration {
    const Group* group = nullptr;
    std::vector<DecompositionDatum> data;
    std::vector<Tri> bb;  // aligned with data
    std::vector<BirationalSheet> sheets;
    PartitionReport partition;
};
Enumeration run_enumeration(const Group& g, BirationalEngine& eng, Exec exec);

struct VerifyReport {
    const Group* group = nullptr;
    PartitionReport partition;
    std::vector<std::string> partition_rows_blocked;  // datum strings
    int chains = 0, chains_definite = 0, chains_failed = 0;
    std::vector<std::string> chain_failures;
    int posets = 0, posets_failed = 0;
    std::vector<std::string> poset_failures;
    bool pass() const { return partition.pass() && chains_failed == 0 && posets_failed == 0; }
    bool partial() const { return partition.partial(); }
};
// Every chain L < M < G of standard Levis with each orbit of L.
void run_transitivity_suite(BirationalEngine& eng, const RootSystem& rs, VerifyReport& out);
VerifyReport run_verify(const Group& g, BirationalEngine& eng, Exec exec);

struct DecideReport {
    std::string group;
    std::vector<int> levi;
    std::string levi_type;
    std::string orbit;
    std::string induced;
    Verdict verdict;
};
// Throws InvalidInstance / Malformed / InvalidOrbit on a bad instance.
DecideReport run_decide(BirationalEngine& eng, const GroupSpec& spec, const std::vector<int>& levi, const std::string& orbit);

nlohmann::ordered_json to_json(const Enumeration& e);
nlohmann::ordered_json to_json(const VerifyReport& v);
nlohmann::ordered_json to_json(const DecideReport& d);
std::string dump(const nlohmann::ordered_json& j);  // two-space indent, trailing newline

// Cells wider than the limit are cut with "..." unless wide.
inline constexpr std::size_t kCellLimit = 28;
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         bool wide);
std::size_t display_width(const std::string& utf8);

std::string to_table(const Enumeration& e, bool wide);
std::string to_table(const VerifyReport& v, bool wide);
std::string to_table(const DecideReport& d, bool wide);

std::string theta_string(const std::vector<int>& theta);  // extended nodes: "{α0,α2}"

}  // namespace birsheet
