#include "birsheet/birational.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace birsheet {

namespace detail {
const char* builtin_fixtures_json();
}

const char* verdict_name(VerdictValue v) {
    switch (v) {
        case VerdictValue::Birational: return "Birational";
        case VerdictValue::NotBirational: return "NotBirational";
        case VerdictValue::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

VerdictValue parse_verdict(const std::string& s) {
    if (s == "Birational") return VerdictValue::Birational;
    if (s == "NotBirational") return VerdictValue::NotBirational;
    if (s == "Unknown") return VerdictValue::Unknown;
    throw Error(ErrorCode::Malformed, "unknown verdict '" + s + "'");
}

InductionInstance make_instance(Kind kind, int rank, const std::vector<int>& theta, const std::string& orbit) {
    auto rs = root_system_cached(kind, rank);
    std::vector<int> th = theta;
    std::sort(th.begin(), th.end());
    if (std::adjacent_find(th.begin(), th.end()) != th.end())
        throw Error(ErrorCode::InvalidInstance, "repeated simple root in Levi");
    const Realization small = realize(*rs, closure_of_nodes(*rs, th));
    InductionInstance inst;
    inst.kind = rs->kind;
    inst.rank = rs->rank;
    inst.levi = levi_orbit_of(*rs, th, parse_factor_orbits(small, orbit));
    return inst;
}

// ---------------------------------------------------------------- fixtures

namespace {

using nlohmann::json;

[[noreturn]] void bad_fixture(const std::string& why) { throw Error(ErrorCode::Malformed, "fixture file: " + why); }

const json& field(const json& obj, const char* key, json::value_t type, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) bad_fixture(where + " lacks \"" + key + "\"");
    const bool ok = it->type() == type ||
                    (type == json::value_t::number_integer && it->type() == json::value_t::number_unsigned);
    if (!ok) bad_fixture(where + " has a mistyped \"" + key + "\"");
    return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            bad_fixture(where + " has unexpected key \"" + it.key() + "\"");
}

}  // namespace

FixtureSet parse_fixtures(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_fixture(std::string("not JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_fixture("top level must be an object");
    only_keys(doc, {"version", "instances", "rigid"}, "document");
    FixtureSet fx;
    fx.version = field(doc, "version", json::value_t::number_integer, "document").get<int>();
    std::set<std::string> ids;
    auto take_id = [&](const json& e, const std::string& where) {
        std::string id = field(e, "id", json::value_t::string, where).get<std::string>();
        if (id.empty() || !ids.insert(id).second) bad_fixture(where + " has an empty or duplicate id");
        return id;
    };
    for (const auto& e : field(doc, "instances", json::value_t::array, "document")) {
        const std::string where = "instance entry";
        if (!e.is_object()) bad_fixture(where + " must be an object");
        only_keys(e, {"id", "ambient", "levi", "orbit", "verdict", "source"}, where);
        FixtureInstance f;
        f.id = take_id(e, where);
        std::tie(f.kind, f.rank) = parse_group_name(field(e, "ambient", json::value_t::string, where).get<std::string>());
        for (const auto& x : field(e, "levi", json::value_t::array, where)) {
            if (!x.is_number_integer()) bad_fixture(where + " " + f.id + " has a non-integer levi index");
            f.levi.push_back(x.get<int>());
        }
        f.orbit = field(e, "orbit", json::value_t::string, where).get<std::string>();
        f.verdict = parse_verdict(field(e, "verdict", json::value_t::string, where).get<std::string>());
        if (f.verdict == VerdictValue::Unknown) bad_fixture(f.id + " must carry a definite verdict");
        f.source = field(e, "source", json::value_t::string, where).get<std::string>();
        fx.instances.push_back(std::move(f));
    }
    for (const auto& e : field(doc, "rigid", json::value_t::array, "document")) {
        const std::string where = "rigid entry";
        if (!e.is_object()) bad_fixture(where + " must be an object");
        only_keys(e, {"id", "ambient", "orbit", "rigid", "source"}, where);
        RigidFixture r;
        r.id = take_id(e, where);
        std::tie(r.kind, r.rank) = parse_group_name(field(e, "ambient", json::value_t::string, where).get<std::string>());
        std::string orbit = field(e, "orbit", json::value_t::string, where).get<std::string>();
        if (orbit.size() > 2 && orbit.substr(orbit.size() - 2) == "II") {
            r.label = VeryEven::II;
            orbit.resize(orbit.size() - 2);
        } else if (!orbit.empty() && orbit.back() == 'I') {
            r.label = VeryEven::I;
            orbit.pop_back();
        }
        r.partition = parse_partition(orbit);
        r.rigid = field(e, "rigid", json::value_t::boolean, where).get<bool>();
        r.source = field(e, "source", json::value_t::string, where).get<std::string>();
        fx.rigid.push_back(std::move(r));
    }
    return fx;
}

const std::string& builtin_fixtures_text() {
    static const std::string text = detail::builtin_fixtures_json();
    return text;
}

const FixtureSet& builtin_fixtures() {
    static const FixtureSet fx = parse_fixtures(builtin_fixtures_text());
    return fx;
}

// ---------------------------------------------------------------- tables

struct BirationalEngine::Table {
    Kind kind = Kind::B;
    int rank = 0;
    bool lowrank = false;
    std::vector<LeviOrbit> inst;
    std::vector<ClassicalOrbit> induced;
    std::vector<int> induced_orbit;  // -1 when the very even label is undetermined
    std::vector<bool> identity;
    std::vector<Verdict> verdict;
    std::map<std::string, int> by_key;
    std::vector<ClassicalOrbit> orbits;
    std::map<std::string, int> orbit_index;
    std::vector<RigidAnswer> rigid;
    std::vector<std::vector<int>> proper_into;
    std::vector<bool> blocked;  // an undetermined label may hit this orbit
    struct Chain {
        int c, a_rank, a, b;  // a < 0: the L -> M leg is type A
        auto operator<=>(const Chain&) const = default;
    };
    std::vector<Chain> chains;
};

namespace {

bool isogenous_to_type_a(Kind k, int r) {
    return k == Kind::A || (k == Kind::B && r == 1) || (k == Kind::C && r == 1) || (k == Kind::D && (r == 2 || r == 3));
}

int min_rank(Kind k) { return k == Kind::D ? 2 : 1; }

bool trivial_partition(const Partition& p) {
    return std::all_of(p.begin(), p.end(), [](int x) { return x == 1; });
}

std::string where_of(Kind k, int r, const std::string& what) {
    return std::string(1, kind_char(k)) + std::to_string(r) + " " + what;
}

void set_verdict(Verdict& v, VerdictValue val, const std::string& prov, bool& changed, const std::string& where) {
    if (v.value == val) return;
    if (v.value != VerdictValue::Unknown)
        throw Error(ErrorCode::InconsistentVerdicts, where + ": rule " + prov + " gives " + verdict_name(val) + " but " +
                                                         v.provenance + " gave " + verdict_name(v.value));
    v.value = val;
    v.provenance = prov;
    changed = true;
}

void set_rigid(RigidAnswer& r, Tri val, const std::string& prov, bool& changed, const std::string& where) {
    if (r.value == val) return;
    if (r.value != Tri::Unknown)
        throw Error(ErrorCode::InconsistentVerdicts, where + ": rule " + prov + " gives rigid=" + tri_name(val) + " but " +
                                                         r.provenance + " gave " + tri_name(r.value));
    r.value = val;
    r.provenance = prov;
    changed = true;
}

// restricted growth strings: group label per element
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&, int)>& f) {
    std::vector<int> g(n, 0);
    std::function<void(int, int)> rec = [&](int i, int groups) {
        if (i == n) {
            f(g, groups);
            return;
        }
        for (int j = 0; j <= groups; ++j) {
            g[i] = j;
            rec(i + 1, std::max(groups, j + 1));
        }
    };
    rec(0, 0);
}

ClassicalOrbit gl_sum(const std::vector<const ClassicalOrbit*>& parts) {
    Partition p;
    int size = 0;
    for (const auto* o : parts) {
        size += o->rank + 1;
        if (p.size() < o->partition.size()) p.resize(o->partition.size(), 0);
        for (std::size_t i = 0; i < o->partition.size(); ++i) p[i] += o->partition[i];
    }
    return ClassicalOrbit{Kind::A, size - 1, p, VeryEven::None, false};
}

}  // namespace

BirationalEngine::BirationalEngine(int horizon, FixtureSet fixtures)
    : fixtures_(std::move(fixtures)), horizon_(std::max(horizon, 1)) {}

BirationalEngine::~BirationalEngine() = default;

int BirationalEngine::horizon() const { return horizon_; }

BirationalEngine::Table& BirationalEngine::table_locked(Kind kind, int rank) {
    if (rank > kRankCap) throw Error(ErrorCode::CapExceeded, "verdict tables beyond the rank cap");
    if (rank > horizon_) rebuild_locked(rank);
    auto it = tables_.find({static_cast<int>(kind), rank});
    if (it != tables_.end()) return *it->second;
    // build every rank of this kind up to the horizon, then close under the rules
    const int top = horizon_;
    for (int m = min_rank(kind); m <= top; ++m) {
        auto t = std::make_unique<Table>();
        t->kind = kind;
        t->rank = m;
        t->lowrank = isogenous_to_type_a(kind, m);
        t->orbits = enumerate_orbits(kind, m);
        for (std::size_t j = 0; j < t->orbits.size(); ++j) t->orbit_index[orbit_string(t->orbits[j])] = static_cast<int>(j);
        t->rigid.assign(t->orbits.size(), {});
        t->proper_into.assign(t->orbits.size(), {});
        t->blocked.assign(t->orbits.size(), false);
        for (auto& lo : enumerate_levi_orbits(kind, m, false)) {
            const int i = static_cast<int>(t->inst.size());
            t->by_key[levi_key(lo)] = i;
            ClassicalOrbit o = ls_induce(lo, kind, m);
            const bool id = is_identity_levi(kind, m, lo);
            int oi = -1;
            if (!o.label_ambiguous) {
                oi = t->orbit_index.at(orbit_string(o));
            } else {
                for (std::size_t j = 0; j < t->orbits.size(); ++j)
                    if (t->orbits[j].partition == o.partition) t->blocked[j] = true;
            }
            if (!id && oi >= 0) t->proper_into[oi].push_back(i);
            t->inst.push_back(std::move(lo));
            t->induced.push_back(o);
            t->induced_orbit.push_back(oi);
            t->identity.push_back(id);
            t->verdict.emplace_back();
        }
        tables_[{static_cast<int>(kind), m}] = std::move(t);
    }
    // chains L < M < G
    for (int m = min_rank(kind); m <= top; ++m) {
        Table& t = *tables_.at({static_cast<int>(kind), m});
        if (t.lowrank) continue;
        std::set<Table::Chain> chains;
        for (int i = 0; i < static_cast<int>(t.inst.size()); ++i) {
            if (t.identity[i]) continue;
            const LeviOrbit& L = t.inst[i];
            const int r = static_cast<int>(L.blocks.size());
            for (int mask = 0; mask < (1 << r); ++mask) {
                int m2 = L.rest_rank();
                LeviOrbit sub;
                std::vector<int> remaining;
                for (int j = 0; j < r; ++j)
                    if (mask >> j & 1) {
                        m2 += L.blocks[j].rank + 1;
                        sub.blocks.push_back(L.blocks[j]);
                        sub.block_sign.push_back(L.block_sign[j]);
                    } else {
                        remaining.push_back(j);
                    }
                if (remaining.empty()) continue;  // M = G
                std::optional<ClassicalOrbit> xpart = L.rest;
                int a_index = -1;
                if (mask != 0) {
                    if (kind == Kind::D && m2 == 1) continue;  // absorbed into a torus
                    sub.rest = L.rest;
                    ClassicalOrbit xo = ls_induce(sub, kind, m2);
                    if (xo.label_ambiguous) continue;
                    const Table& ta = *tables_.at({static_cast<int>(kind), m2});
                    a_index = ta.by_key.at(levi_key(canonical_levi_orbit(kind, sub)));
                    xpart = xo;
                }
                const int nr = static_cast<int>(remaining.size());
                for_each_set_partition(nr, [&](const std::vector<int>& g, int groups) {
                    if (mask == 0 && groups == nr) return;  // M = L
                    std::vector<ClassicalOrbit> merged;
                    std::vector<int> parity;
                    std::vector<bool> free_sign;
                    for (int gi = 0; gi < groups; ++gi) {
                        std::vector<const ClassicalOrbit*> members;
                        int par = 0;
                        bool odd = false;
                        for (int x = 0; x < nr; ++x)
                            if (g[x] == gi) {
                                const int j = remaining[x];
                                members.push_back(&L.blocks[j]);
                                par ^= L.block_sign[j];
                                if ((L.blocks[j].rank + 1) % 2) odd = true;
                            }
                        merged.push_back(gl_sum(members));
                        parity.push_back(par);
                        free_sign.push_back(kind == Kind::D && odd && members.size() > 1);
                    }
                    std::vector<int> free_idx;
                    for (int gi = 0; gi < groups; ++gi)
                        if (free_sign[gi]) free_idx.push_back(gi);
                    for (int s = 0; s < (1 << free_idx.size()); ++s) {
                        LeviOrbit M;
                        M.blocks = merged;
                        M.block_sign = parity;
                        for (std::size_t q = 0; q < free_idx.size(); ++q) M.block_sign[free_idx[q]] = s >> q & 1;
                        M.rest = xpart;
                        M = canonical_levi_orbit(kind, M);
                        auto it2 = t.by_key.find(levi_key(M));
                        if (it2 == t.by_key.end())
                            throw Error(ErrorCode::InconsistentEmbedding, where_of(kind, m, "missing intermediate Levi " + levi_key(M)));
                        chains.insert({i, mask != 0 ? m2 : 0, a_index, it2->second});
                    }
                });
            }
        }
        t.chains.assign(chains.begin(), chains.end());
    }
    // rules that need no search
    bool changed = false;
    for (int m = min_rank(kind); m <= top; ++m) {
        Table& t = *tables_.at({static_cast<int>(kind), m});
        for (std::size_t i = 0; i < t.inst.size(); ++i) {
            const std::string w = where_of(kind, m, levi_orbit_string(t.inst[i]));
            if (t.identity[i])
                set_verdict(t.verdict[i], VerdictValue::Birational, "identity", changed, w);
            else if (t.lowrank)
                set_verdict(t.verdict[i], VerdictValue::Birational, "type-A", changed, w);
            else if (t.induced_orbit[i] >= 0 && component_group_order(kind, m, t.induced[i]) == 1)
                set_verdict(t.verdict[i], VerdictValue::Birational, "component-group", changed, w);
        }
    }
    for (const auto& f : fixtures_.instances) {
        if (f.kind != kind || f.rank > top || f.rank < min_rank(kind)) continue;
        auto rs = root_system_cached(f.kind, f.rank);
        if (rs->kind != kind) continue;
        const InductionInstance inst = make_instance(f.kind, f.rank, f.levi, f.orbit);
        Table& t = *tables_.at({static_cast<int>(kind), f.rank});
        const int i = t.by_key.at(levi_key(canonical_levi_orbit(kind, inst.levi)));
        if (t.identity[i]) throw Error(ErrorCode::InvalidInstance, "fixture " + f.id + " is the identity induction");
        set_verdict(t.verdict[i], f.verdict, "fixture:" + f.id, changed, "fixture " + f.id);
    }
    for (const auto& f : fixtures_.rigid) {
        if (f.kind != kind || f.rank > top || f.rank < min_rank(kind)) continue;
        Table& t = *tables_.at({static_cast<int>(kind), f.rank});
        const ClassicalOrbit o = make_orbit(f.kind, f.rank, f.partition, f.label);
        set_rigid(t.rigid[t.orbit_index.at(orbit_string(o))], f.rigid ? Tri::Yes : Tri::No, "fixture:" + f.id, changed,
                  "fixture " + f.id);
    }
    // fixed point
    auto table_of = [&](int m) -> Table& { return *tables_.at({static_cast<int>(kind), m}); };
    for (changed = true; changed;) {
        changed = false;
        for (int m = min_rank(kind); m <= top; ++m) {
            Table& t = table_of(m);
            for (const auto& ch : t.chains) {
                Verdict& c = t.verdict[ch.c];
                Verdict& b = t.verdict[ch.b];
                Verdict a_type_a{VerdictValue::Birational, "type-A"};
                Verdict& a = ch.a < 0 ? a_type_a : table_of(ch.a_rank).verdict[ch.a];
                const std::string w = where_of(kind, m, "chain through " + levi_orbit_string(t.inst[ch.b]));
                if (a.value == VerdictValue::Birational && b.value == VerdictValue::Birational)
                    set_verdict(c, VerdictValue::Birational, "transitivity", changed, w);
                if (a.value == VerdictValue::NotBirational || b.value == VerdictValue::NotBirational)
                    set_verdict(c, VerdictValue::NotBirational, "transitivity", changed, w);
                if (c.value == VerdictValue::Birational) {
                    if (ch.a >= 0) set_verdict(a, VerdictValue::Birational, "transitivity", changed, w);
                    set_verdict(b, VerdictValue::Birational, "transitivity", changed, w);
                }
                if (c.value == VerdictValue::NotBirational && a.value == VerdictValue::Birational)
                    set_verdict(b, VerdictValue::NotBirational, "transitivity", changed, w);
                if (c.value == VerdictValue::NotBirational && b.value == VerdictValue::Birational && ch.a >= 0)
                    set_verdict(a, VerdictValue::NotBirational, "transitivity", changed, w);
            }
            for (std::size_t o = 0; o < t.orbits.size(); ++o) {
                if (t.blocked[o]) continue;
                const std::string w = where_of(kind, m, orbit_string(t.orbits[o]));
                const auto& into = t.proper_into[o];
                bool any_b = false, all_nb = true;
                for (int i : into) {
                    any_b |= t.verdict[i].value == VerdictValue::Birational;
                    all_nb &= t.verdict[i].value == VerdictValue::NotBirational;
                }
                if (any_b) set_rigid(t.rigid[o], Tri::No, "birationally-induced", changed, w);
                if (all_nb) set_rigid(t.rigid[o], Tri::Yes, into.empty() ? "not-induced" : "no-birational-induction", changed, w);
                if (t.rigid[o].value == Tri::Yes)
                    for (int i : into) set_verdict(t.verdict[i], VerdictValue::NotBirational, "bir-rigid-target", changed, w);
                // the birational datum is unique
                std::vector<int> cand;
                bool cand_open = false;
                for (int i : into) {
                    const LeviOrbit& L = t.inst[i];
                    if (!std::all_of(L.blocks.begin(), L.blocks.end(),
                                     [](const ClassicalOrbit& b) { return trivial_partition(b.partition); }))
                        continue;
                    Tri rest_rigid = Tri::Yes;
                    if (L.rest) {
                        Table& tr = table_of(L.rest->rank);
                        rest_rigid = tr.rigid[tr.orbit_index.at(orbit_string(*L.rest))].value;
                    }
                    if (rest_rigid == Tri::Yes) cand.push_back(i);
                    if (rest_rigid == Tri::Unknown) cand_open = true;
                }
                int n_b = 0;
                std::vector<int> undecided;
                for (int i : cand) {
                    if (t.verdict[i].value == VerdictValue::Birational) ++n_b;
                    if (t.verdict[i].value == VerdictValue::Unknown) undecided.push_back(i);
                }
                if (n_b > 1)
                    throw Error(ErrorCode::UniquenessViolation, w + ": two birational data from birationally rigid orbits");
                if (n_b == 1) {
                    for (int i : cand)
                        if (t.verdict[i].value != VerdictValue::Birational)
                            set_verdict(t.verdict[i], VerdictValue::NotBirational, "uniqueness", changed, w);
                } else if (!cand_open) {
                    if (undecided.empty())
                        set_rigid(t.rigid[o], Tri::Yes, "uniqueness", changed, w);
                    else if (undecided.size() == 1 && t.rigid[o].value == Tri::No)
                        set_verdict(t.verdict[undecided[0]], VerdictValue::Birational, "uniqueness", changed, w);
                }
            }
        }
    }
    return *tables_.at({static_cast<int>(kind), rank});
}

void BirationalEngine::rebuild_locked(int horizon) {
    tables_.clear();
    horizon_ = horizon;
}

Verdict BirationalEngine::decide(Kind kind, int rank, const LeviOrbit& levi) {
    if (is_identity_levi(kind, rank, levi)) return {VerdictValue::Birational, "identity"};
    if (kind == Kind::A) {
        ls_induce(levi, kind, rank);
        return {VerdictValue::Birational, "type-A"};
    }
    std::lock_guard lock(mu_);
    Table& t = table_locked(kind, rank);
    auto it = t.by_key.find(levi_key(canonical_levi_orbit(kind, levi)));
    if (it == t.by_key.end())
        throw Error(ErrorCode::InvalidInstance, "no standard Levi " + levi_orbit_string(levi) + " in " +
                                                    std::string(1, kind_char(kind)) + std::to_string(rank));
    return t.verdict[it->second];
}

Verdict BirationalEngine::decide(const std::vector<FactorInduction>& parts) {
    Verdict out{VerdictValue::Birational, "identity"};
    std::set<std::string> provs;
    bool unknown = false;
    for (const auto& p : parts) {
        Verdict v = decide(p.kind, p.rank, p.levi);
        if (v.value == VerdictValue::NotBirational) return v;
        if (v.value == VerdictValue::Unknown) unknown = true;
        else if (v.provenance != "identity") provs.insert(v.provenance);
    }
    if (unknown) return {};
    if (!provs.empty()) {
        out.provenance.clear();
        for (const auto& p : provs) out.provenance += (out.provenance.empty() ? "" : "+") + p;
    }
    return out;
}

RigidAnswer BirationalEngine::is_birationally_rigid(Kind kind, int rank, const ClassicalOrbit& o) {
    if (!validate_orbit(o) || o.kind != kind || o.rank != rank)
        throw Error(ErrorCode::InvalidOrbit, "invalid orbit " + orbit_string(o));
    if (kind == Kind::A) return {trivial_partition(o.partition) ? Tri::Yes : Tri::No, "type-A"};
    std::lock_guard lock(mu_);
    Table& t = table_locked(kind, rank);
    return t.rigid[t.orbit_index.at(orbit_string(o))];
}

Tri BirationalEngine::factors_rigid(const Realization& r, const FactorOrbits& o) {
    Tri out = Tri::Yes;
    for (std::size_t i = 0; i < r.factors.size(); ++i) {
        const Tri v = is_birationally_rigid(r.factors[i].kind, r.factors[i].rank, o[i]).value;
        if (v == Tri::No) return Tri::No;
        if (v == Tri::Unknown) out = Tri::Unknown;
    }
    return out;
}

DatumResult BirationalEngine::birational_datum_of(Kind kind, int rank, const ClassicalOrbit& o) {
    if (!validate_orbit(o) || o.kind != kind || o.rank != rank)
        throw Error(ErrorCode::InvalidOrbit, "invalid orbit " + orbit_string(o));
    DatumResult res;
    if (kind == Kind::A) {
        LeviOrbit lo;
        for (int k : dual_partition(o.partition)) lo.blocks.push_back(trivial_orbit(Kind::A, k - 1));
        res.known = true;
        res.datum = {canonical_levi_orbit(kind, lo), o};
        return res;
    }
    std::lock_guard lock(mu_);
    Table& t = table_locked(kind, rank);
    const int oi = t.orbit_index.at(orbit_string(o));
    if (t.rigid[oi].value == Tri::Yes) {
        LeviOrbit id;
        id.rest = o;
        res.known = true;
        res.datum = {id, o};
        return res;
    }
    std::vector<int> hits;
    for (int i : t.proper_into[oi]) {
        if (t.verdict[i].value != VerdictValue::Birational) continue;
        const LeviOrbit& L = t.inst[i];
        if (!std::all_of(L.blocks.begin(), L.blocks.end(), [](const ClassicalOrbit& b) { return trivial_partition(b.partition); }))
            continue;
        if (L.rest) {
            Table& tr = table_locked(kind, L.rest->rank);
            const Tri rr = tr.rigid[tr.orbit_index.at(orbit_string(*L.rest))].value;
            if (rr == Tri::Unknown) return res;
            if (rr == Tri::No) continue;
        }
        hits.push_back(i);
    }
    if (hits.size() > 1) throw Error(ErrorCode::UniquenessViolation, "two birational data for " + orbit_string(o));
    if (hits.size() == 1) {
        res.known = true;
        res.datum = {t.inst[hits[0]], o};
    }
    return res;
}

std::vector<BirationalEngine::Entry> BirationalEngine::instances(Kind kind, int rank) {
    std::vector<Entry> out;
    if (kind == Kind::A) {
        for (auto& lo : enumerate_levi_orbits(kind, rank, false)) {
            const bool id = is_identity_levi(kind, rank, lo);
            ClassicalOrbit o = ls_induce(lo, kind, rank);
            out.push_back({lo, o, {VerdictValue::Birational, id ? "identity" : "type-A"}, id});
        }
        return out;
    }
    std::lock_guard lock(mu_);
    Table& t = table_locked(kind, rank);
    for (std::size_t i = 0; i < t.inst.size(); ++i) out.push_back({t.inst[i], t.induced[i], t.verdict[i], t.identity[i]});
    return out;
}

std::vector<std::pair<ClassicalOrbit, RigidAnswer>> BirationalEngine::rigidity_table(Kind kind, int rank) {
    std::vector<std::pair<ClassicalOrbit, RigidAnswer>> out;
    if (kind == Kind::A) {
        for (auto& o : enumerate_orbits(kind, rank))
            out.push_back({o, {trivial_partition(o.partition) ? Tri::Yes : Tri::No, "type-A"}});
        return out;
    }
    std::lock_guard lock(mu_);
    Table& t = table_locked(kind, rank);
    for (std::size_t i = 0; i < t.orbits.size(); ++i) out.push_back({t.orbits[i], t.rigid[i]});
    return out;
}

// ---------------------------------------------------------------- chains of standard Levis

ChainCheck verify_transitivity(BirationalEngine& eng, const RootSystem& rs, const std::vector<int>& theta_l,
                               const std::vector<int>& theta_m, const FactorOrbits& orbit_l) {
    for (int x : theta_l)
        if (std::find(theta_m.begin(), theta_m.end(), x) == theta_m.end())
            throw Error(ErrorCode::InvalidInstance, "Levi chain is not nested");
    const Realization rl = realize(rs, closure_of_nodes(rs, theta_l));
    const Realization rm = realize(rs, closure_of_nodes(rs, theta_m));
    const Realization rg = realize(rs, rs.all());
    ChainCheck c;
    const FactorOrbits om = induce(rl, orbit_l, rm);
    const FactorOrbits og_two_step = induce(rm, om, rg);
    const FactorOrbits og_direct = induce(rl, orbit_l, rg);
    c.composes = og_two_step == og_direct;
    c.lm = eng.decide(split_induction(rl, orbit_l, rm));
    c.mg = eng.decide(split_induction(rm, om, rg));
    c.lg = eng.decide(split_induction(rl, orbit_l, rg));
    c.definite = c.lm.definite() && c.mg.definite() && c.lg.definite();
    if (c.definite) {
        const bool lhs = c.lg.value == VerdictValue::Birational;
        const bool rhs = c.lm.value == VerdictValue::Birational && c.mg.value == VerdictValue::Birational;
        c.consistent = lhs == rhs;
    }
    return c;
}

std::optional<std::pair<std::vector<int>, FactorOrbits>> standard_levi_of(const RootSystem& rs, const LeviOrbit& lo) {
    const std::string target = levi_key(canonical_levi_orbit(rs.kind, lo));
    const Realization rg = realize(rs, rs.all());
    for (int mask = 0; mask < (1 << rs.rank); ++mask) {
        std::vector<int> theta;
        for (int i = 0; i < rs.rank; ++i)
            if (mask >> i & 1) theta.push_back(i + 1);
        const Realization rl = realize(rs, closure_of_nodes(rs, theta));
        const LeviOrbit skel = split_induction(rl, trivial_factor_orbits(rl), rg)[0].levi;
        if (skel.blocks.size() != lo.blocks.size() || skel.rest_rank() != lo.rest_rank()) continue;
        for (const auto& o : enumerate_factor_orbits(rl)) {
            LeviOrbit cand = split_induction(rl, o, rg)[0].levi;
            if (levi_key(canonical_levi_orbit(rs.kind, cand)) == target) return std::make_pair(theta, o);
        }
    }
    return std::nullopt;
}

}  // namespace birsheet
