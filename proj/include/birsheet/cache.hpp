#pragma once
// On-disk cache of the W-class partition of extended-diagram subsets.
//
// An entry is keyed by (kind, rank) and carries the SHA-256 of its payload. Entries that
// fail to parse, hash or re-validate are deleted and recomputed; they are never trusted.

#include "birsheet/groups.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace birsheet {

std::string sha256_hex(const std::string& bytes);

std::filesystem::path cache_entry_path(const std::filesystem::path& dir, const GroupSpec& spec);
// nullopt when the entry is absent or corrupt; a corrupt entry is removed.
std::optional<ThetaClasses> load_theta_classes(const std::filesystem::path& dir, const GroupSpec& spec);
void store_theta_classes(const std::filesystem::path& dir, const GroupSpec& spec, const ThetaClasses& classes);

struct CacheOutcome {
    bool hit = false;        // a valid entry was used
    bool discarded = false;  // an entry existed and was rejected
};
// Builds the group, consulting and refreshing the cache when dir is given.
std::unique_ptr<Group> build_group(const GroupSpec& spec, Exec exec, const std::optional<std::filesystem::path>& dir,
                                   CacheOutcome* outcome = nullptr);

}  // namespace birsheet
