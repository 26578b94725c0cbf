#include "birsheet/cache.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <system_error>

namespace birsheet {

namespace {

constexpr int kCacheVersion = 1;

std::string payload_of(const ThetaClasses& classes) { return nlohmann::json(classes).dump(); }

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::filesystem::path cache_entry_path(const std::filesystem::path& dir, const GroupSpec& spec) {
    return dir / ("theta-classes-" + spec.name() + ".json");
}

std::optional<ThetaClasses> load_theta_classes(const std::filesystem::path& dir, const GroupSpec& spec) {
    const auto path = cache_entry_path(dir, spec);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    try {
        const auto j = nlohmann::json::parse(ss.str());
        const auto classes = j.at("classes").get<ThetaClasses>();
        if (j.at("version").get<int>() == kCacheVersion && j.at("group").get<std::string>() == spec.name() &&
            j.at("sha256").get<std::string>() == sha256_hex(payload_of(classes)))
            return classes;
    } catch (const nlohmann::json::exception&) {
    }
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
}

void store_theta_classes(const std::filesystem::path& dir, const GroupSpec& spec, const ThetaClasses& classes) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json j;
    j["version"] = kCacheVersion;
    j["group"] = spec.name();
    j["sha256"] = sha256_hex(payload_of(classes));
    j["classes"] = classes;
    // write then rename, so concurrent readers never see a partial entry
    const auto path = cache_entry_path(dir, spec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << j.dump() << '\n';
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::unique_ptr<Group> build_group(const GroupSpec& requested, Exec exec, const std::optional<std::filesystem::path>& dir,
                                   CacheOutcome* outcome) {
    CacheOutcome local;
    CacheOutcome& oc = outcome ? *outcome : local;
    oc = {};
    const auto rs = root_system_cached(requested.kind, requested.rank);
    const GroupSpec spec{rs->kind, rs->rank};  // D3 is stored as A3
    if (!dir) return std::make_unique<Group>(spec, exec);
    const bool existed = std::filesystem::exists(cache_entry_path(*dir, spec));
    if (auto cached = load_theta_classes(*dir, spec)) {
        try {
            auto g = std::make_unique<Group>(spec, exec, &*cached);
            oc.hit = true;
            return g;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Malformed) throw;
            std::error_code ec;
            std::filesystem::remove(cache_entry_path(*dir, spec), ec);
        }
    }
    oc.discarded = existed;
    auto g = std::make_unique<Group>(spec, exec);
    store_theta_classes(*dir, g->spec(), g->theta_classes());
    return g;
}

}  // namespace birsheet
