#include "birsheet/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace birsheet {

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

int natural_dim(Kind k, int rank) {
    switch (k) {
        case Kind::A: return rank + 1;
        case Kind::B: return 2 * rank + 1;
        case Kind::C:
        case Kind::D: return 2 * rank;
    }
    return 0;
}

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] <= 0 || (i > 0 && p[i] > p[i - 1])) return false;
    return true;
}

Partition normalize_partition(Partition p) {
    p.erase(std::remove(p.begin(), p.end(), 0), p.end());
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

namespace {

// (part, multiplicity) in decreasing part order
std::vector<std::pair<int, int>> multiplicities(const Partition& p) {
    std::vector<std::pair<int, int>> out;
    for (int x : p) {
        if (!out.empty() && out.back().first == x)
            ++out.back().second;
        else
            out.emplace_back(x, 1);
    }
    return out;
}

bool bad_part(Kind k, int part, int mult) {
    if (mult % 2 == 0) return false;
    if (k == Kind::C) return part % 2 == 1;
    if (k == Kind::B || k == Kind::D) return part % 2 == 0;
    return false;
}

int rank_from_size(Kind k, int n) {
    switch (k) {
        case Kind::A: return n - 1;
        case Kind::B: return n % 2 == 1 ? (n - 1) / 2 : -1;
        case Kind::C:
        case Kind::D: return n % 2 == 0 ? n / 2 : -1;
    }
    return -1;
}

long sum_sq_dual(const Partition& p) {
    long s = 0;
    for (int x : dual_partition(p)) s += static_cast<long>(x) * x;
    return s;
}

long odd_parts(const Partition& p) {
    return std::count_if(p.begin(), p.end(), [](int x) { return x % 2 == 1; });
}

}  // namespace

bool is_very_even(Kind k, const Partition& p) {
    return k == Kind::D && !p.empty() && std::all_of(p.begin(), p.end(), [](int x) { return x % 2 == 0; });
}

bool validate_orbit(Kind k, const Partition& p) {
    if (!is_partition(p)) return false;
    if (rank_from_size(k, partition_size(p)) < 0) return false;
    for (auto [part, mult] : multiplicities(p))
        if (bad_part(k, part, mult)) return false;
    return true;
}

bool validate_orbit(const ClassicalOrbit& o) {
    if (!validate_orbit(o.kind, o.partition)) return false;
    if (partition_size(o.partition) != natural_dim(o.kind, o.rank)) return false;
    if (is_very_even(o.kind, o.partition)) return o.label != VeryEven::None || o.label_ambiguous;
    return o.label == VeryEven::None && !o.label_ambiguous;
}

ClassicalOrbit make_orbit(Kind k, int rank, Partition p, VeryEven label) {
    ClassicalOrbit o{k, rank, std::move(p), label, false};
    if (!validate_orbit(o))
        throw Error(ErrorCode::InvalidOrbit, "invalid orbit " + orbit_string(o));
    return o;
}

ClassicalOrbit trivial_orbit(Kind k, int rank) {
    return ClassicalOrbit{k, rank, Partition(natural_dim(k, rank), 1), VeryEven::None, false};
}

ClassicalOrbit regular_orbit(Kind k, int rank) {
    const int n = natural_dim(k, rank);
    Partition p{n};
    if (k == Kind::D) p = rank == 1 ? Partition{1, 1} : Partition{n - 1, 1};
    return ClassicalOrbit{k, rank, p, VeryEven::None, false};
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(left, maxpart); x >= 1; --x) {
            cur.push_back(x);
            rec(left - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<ClassicalOrbit> enumerate_orbits(Kind k, int rank) {
    std::vector<ClassicalOrbit> out;
    for (auto& p : partitions_of(natural_dim(k, rank))) {
        if (!validate_orbit(k, p)) continue;
        if (is_very_even(k, p)) {
            out.push_back({k, rank, p, VeryEven::I, false});
            out.push_back({k, rank, p, VeryEven::II, false});
        } else {
            out.push_back({k, rank, p, VeryEven::None, false});
        }
    }
    return out;
}

long group_dim(Kind k, int rank) {
    const long n = natural_dim(k, rank);
    switch (k) {
        case Kind::A: return n * n;
        case Kind::B:
        case Kind::D: return n * (n - 1) / 2;
        case Kind::C: return rank * (2L * rank + 1);
    }
    return 0;
}

long orbit_dim(const ClassicalOrbit& o) {
    const long s = sum_sq_dual(o.partition);
    switch (o.kind) {
        case Kind::A: return group_dim(o.kind, o.rank) - s;
        case Kind::B:
        case Kind::D: return group_dim(o.kind, o.rank) - (s - odd_parts(o.partition)) / 2;
        case Kind::C: return group_dim(o.kind, o.rank) - (s + odd_parts(o.partition)) / 2;
    }
    return 0;
}

long orbit_dim(Kind k, int rank, const ClassicalOrbit& o) {
    if (o.kind != k || o.rank != rank || !validate_orbit(o))
        throw Error(ErrorCode::InvalidOrbit, "orbit " + orbit_string(o) + " does not belong to " +
                                                 std::string(1, kind_char(k)) + std::to_string(rank));
    return orbit_dim(o);
}

Partition dual_partition(const Partition& p) {
    Partition d;
    if (p.empty()) return d;
    for (int j = 1; j <= p.front(); ++j)
        d.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [j](int x) { return x >= j; })));
    return d;
}

bool dominates(const Partition& a, const Partition& b) {
    long sa = 0, sb = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return sa == sb;
}

ClassicalOrbit collapse(Kind k, const Partition& p0) {
    Partition p = normalize_partition(p0);
    const int rank = rank_from_size(k, partition_size(p));
    if (rank < 0)
        throw Error(ErrorCode::NoValidPartition, "no orbit of size " + std::to_string(partition_size(p)));
    if (k != Kind::A) {
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw Error(ErrorCode::NoValidPartition, "collapse did not terminate");
            int q = 0;
            for (auto [part, mult] : multiplicities(p))
                if (bad_part(k, part, mult)) {
                    q = part;
                    break;
                }
            if (q == 0) break;
            std::size_t last = 0;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] == q) last = i;
            p[last] = q - 1;
            std::size_t j = last + 1;
            while (j < p.size() && p[j] >= q - 1) ++j;
            if (j == p.size()) p.push_back(0);
            p[j] += 1;
            p = normalize_partition(p);
        }
    }
    ClassicalOrbit o{k, rank, p, VeryEven::None, false};
    if (is_very_even(k, p)) o.label_ambiguous = true;
    if (!validate_orbit(o)) throw Error(ErrorCode::NoValidPartition, "collapse produced " + partition_string(p));
    return o;
}

long LeviOrbit::group_dim() const {
    long d = rest ? birsheet::group_dim(rest->kind, rest->rank) : 0;
    for (const auto& b : blocks) d += birsheet::group_dim(b.kind, b.rank);
    return d;
}

long LeviOrbit::orbit_dim() const {
    long d = rest ? birsheet::orbit_dim(*rest) : 0;
    for (const auto& b : blocks) d += birsheet::orbit_dim(b);
    return d;
}

int LeviOrbit::gl_size() const {
    int s = 0;
    for (const auto& b : blocks) s += b.rank + 1;
    return s;
}

LeviOrbit canonical_levi_orbit(Kind ambient, LeviOrbit lo) {
    lo.block_sign.resize(lo.blocks.size(), 0);
    if (lo.rest && lo.rest->rank == 0) lo.rest.reset();
    if (lo.rest && lo.rest->kind == Kind::D && lo.rest->rank == 1) {
        lo.rest.reset();
        lo.blocks.push_back(trivial_orbit(Kind::A, 0));
        lo.block_sign.push_back(0);
    }
    int parity = 0;
    bool all_even = true;
    for (std::size_t i = 0; i < lo.blocks.size(); ++i) {
        parity ^= lo.block_sign[i] & 1;
        if ((lo.blocks[i].rank + 1) % 2 == 1) all_even = false;
    }
    std::vector<std::size_t> order(lo.blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = lo.blocks[a];
        const auto& y = lo.blocks[b];
        if (x.rank != y.rank) return x.rank > y.rank;
        return x.partition > y.partition;
    });
    std::vector<ClassicalOrbit> sorted;
    for (auto i : order) sorted.push_back(lo.blocks[i]);
    lo.blocks = std::move(sorted);
    lo.block_sign.assign(lo.blocks.size(), 0);
    if (ambient != Kind::D) return lo;
    const bool rest_ve = lo.rest && is_very_even(Kind::D, lo.rest->partition);
    if (!all_even) {
        // an odd block absorbs any sign change, so both labels of the rest are conjugate
        if (rest_ve) {
            lo.rest->label = VeryEven::I;
            lo.rest->label_ambiguous = false;
        }
        return lo;
    }
    if (lo.rest) {
        if (rest_ve && !lo.rest->label_ambiguous && parity)
            lo.rest->label = lo.rest->label == VeryEven::I ? VeryEven::II : VeryEven::I;
        return lo;
    }
    if (!lo.blocks.empty()) lo.block_sign[0] = parity;
    return lo;
}

std::string levi_key(const LeviOrbit& lo) {
    std::ostringstream os;
    for (std::size_t i = 0; i < lo.blocks.size(); ++i)
        os << "GL" << lo.blocks[i].rank + 1 << partition_string(lo.blocks[i].partition)
           << (i < lo.block_sign.size() && lo.block_sign[i] ? "-" : "") << ';';
    if (lo.rest) os << orbit_string(*lo.rest) << (lo.rest->label_ambiguous ? "?" : "");
    return os.str();
}

bool is_identity_levi(Kind ambient, int rank, const LeviOrbit& lo) {
    if (ambient == Kind::A) return lo.blocks.size() == 1 && lo.blocks[0].rank == rank;
    return lo.blocks.empty() && lo.rest && lo.rest->rank == rank;
}

bool is_trivial(const LeviOrbit& lo) {
    auto triv = [](const ClassicalOrbit& o) {
        return std::all_of(o.partition.begin(), o.partition.end(), [](int x) { return x == 1; });
    };
    if (lo.rest && !triv(*lo.rest)) return false;
    return std::all_of(lo.blocks.begin(), lo.blocks.end(), triv);
}

ClassicalOrbit ls_induce(const LeviOrbit& lo, Kind ambient, int rank) {
    for (const auto& b : lo.blocks)
        if (b.kind != Kind::A || !validate_orbit(b))
            throw Error(ErrorCode::InconsistentEmbedding, "invalid GL block orbit " + orbit_string(b));
    if (lo.rest && (lo.rest->kind != ambient || !validate_orbit(*lo.rest)))
        throw Error(ErrorCode::InconsistentEmbedding, "invalid factor orbit " + orbit_string(*lo.rest));
    const int total = ambient == Kind::A
                          ? lo.gl_size()
                          : 2 * lo.gl_size() + (lo.rest ? natural_dim(ambient, lo.rest->rank) : (ambient == Kind::B ? 1 : 0));
    if ((ambient == Kind::A && lo.rest) || total != natural_dim(ambient, rank))
        throw Error(ErrorCode::InconsistentEmbedding,
                    "Levi " + levi_orbit_string(lo) + " does not embed in " + std::string(1, kind_char(ambient)) +
                        std::to_string(rank));
    Partition r;
    if (lo.rest)
        r = lo.rest->partition;
    else if (ambient == Kind::B)
        r = {1};
    const int c = ambient == Kind::A ? 1 : 2;
    for (const auto& b : lo.blocks) {
        if (r.size() < b.partition.size()) r.resize(b.partition.size(), 0);
        for (std::size_t i = 0; i < b.partition.size(); ++i) r[i] += c * b.partition[i];
    }
    ClassicalOrbit o = collapse(ambient, r);
    o.rank = rank;
    if (ambient == Kind::D && is_very_even(Kind::D, o.partition)) {
        int parity = 0;
        bool all_even = true;
        for (std::size_t i = 0; i < lo.blocks.size(); ++i) {
            parity ^= (i < lo.block_sign.size() ? lo.block_sign[i] : 0) & 1;
            if ((lo.blocks[i].rank + 1) % 2 == 1) all_even = false;
        }
        bool rest_ambiguous = false;
        if (lo.rest && is_very_even(Kind::D, lo.rest->partition)) {
            rest_ambiguous = lo.rest->label_ambiguous;
            parity ^= lo.rest->label == VeryEven::II ? 1 : 0;
        }
        if (all_even && !rest_ambiguous) {
            o.label = parity ? VeryEven::II : VeryEven::I;
            o.label_ambiguous = false;
        } else {
            o.label = VeryEven::None;
            o.label_ambiguous = true;
        }
    }
    return o;
}

std::vector<LeviOrbit> enumerate_levi_orbits(Kind ambient, int rank, bool proper_only) {
    std::map<std::string, LeviOrbit> found;
    auto emit = [&](LeviOrbit lo) {
        lo = canonical_levi_orbit(ambient, std::move(lo));
        if (proper_only && is_identity_levi(ambient, rank, lo)) return;
        found.emplace(levi_key(lo), std::move(lo));
    };
    auto each_block_choice = [&](const Partition& sizes, const std::function<void(std::vector<ClassicalOrbit>&)>& f) {
        std::vector<ClassicalOrbit> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == sizes.size()) {
                f(cur);
                return;
            }
            for (const auto& o : enumerate_orbits(Kind::A, sizes[i] - 1)) {
                cur.push_back(o);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    };
    if (ambient == Kind::A) {
        for (const auto& sizes : partitions_of(rank + 1))
            each_block_choice(sizes, [&](std::vector<ClassicalOrbit>& bl) {
                LeviOrbit lo;
                lo.blocks = bl;
                emit(lo);
            });
        std::vector<LeviOrbit> out;
        for (auto& [k, v] : found) out.push_back(v);
        return out;
    }
    for (int mp = 0; mp <= rank; ++mp) {
        if (ambient == Kind::D && mp == 1) continue;
        std::vector<std::optional<ClassicalOrbit>> rests;
        if (mp == 0)
            rests.emplace_back(std::nullopt);
        else
            for (const auto& o : enumerate_orbits(ambient, mp)) rests.emplace_back(o);
        std::vector<Partition> size_choices = rank - mp == 0 ? std::vector<Partition>{Partition{}} : partitions_of(rank - mp);
        for (const auto& sizes : size_choices)
            each_block_choice(sizes, [&](std::vector<ClassicalOrbit>& bl) {
                for (const auto& rest : rests) {
                    LeviOrbit lo;
                    lo.blocks = bl;
                    lo.block_sign.assign(bl.size(), 0);
                    lo.rest = rest;
                    emit(lo);
                    if (ambient == Kind::D && !rest && !bl.empty()) {
                        lo.block_sign[0] = 1;
                        emit(lo);
                    }
                }
            });
    }
    std::vector<LeviOrbit> out;
    for (auto& [k, v] : found) out.push_back(v);
    return out;
}

bool is_rigid(Kind k, int rank, const ClassicalOrbit& o) {
    if (rank > kRankCap) throw Error(ErrorCode::CapExceeded, "rigidity search beyond rank cap");
    if (!validate_orbit(o)) throw Error(ErrorCode::InvalidOrbit, "invalid orbit " + orbit_string(o));
    const long target = orbit_dim(o);
    for (const auto& lo : enumerate_levi_orbits(k, rank, true)) {
        // codimension is preserved, so only matching dimensions can induce o
        if (group_dim(k, rank) - target != lo.group_dim() - lo.orbit_dim()) continue;
        ClassicalOrbit r = ls_induce(lo, k, rank);
        if (r.partition == o.partition && (r.label == o.label || r.label_ambiguous)) return false;
    }
    return true;
}

long component_group_order(Kind k, int rank, const ClassicalOrbit& o) {
    (void)rank;
    if (k == Kind::A) return 1;
    const auto m = multiplicities(o.partition);
    int distinct_odd = 0, distinct_even = 0;
    bool odd_with_odd_mult = false, even_with_odd_mult = false;
    for (auto [part, mult] : m) {
        if (part % 2 == 1) {
            ++distinct_odd;
            if (mult % 2 == 1) odd_with_odd_mult = true;
        } else {
            ++distinct_even;
            if (mult % 2 == 1) even_with_odd_mult = true;
        }
    }
    int e = 0;
    switch (k) {
        case Kind::B: e = std::max(distinct_odd - 1, 0); break;
        case Kind::C: e = even_with_odd_mult ? distinct_even - 1 : distinct_even; break;
        case Kind::D:
            if (distinct_odd == 0) e = 0;
            else e = odd_with_odd_mult ? distinct_odd - 2 : distinct_odd - 1;
            break;
        case Kind::A: break;
    }
    return 1L << std::max(e, 0);
}

ClassicalOrbit springer_transfer(const ClassicalOrbit& o) { return o; }

std::string partition_string(const Partition& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

std::string orbit_string(const ClassicalOrbit& o) {
    std::string s = std::string(1, kind_char(o.kind)) + std::to_string(o.rank) + partition_string(o.partition);
    if (o.label == VeryEven::I) s += "I";
    if (o.label == VeryEven::II) s += "II";
    return s;
}

std::string levi_orbit_string(const LeviOrbit& lo) {
    std::string s;
    for (std::size_t i = 0; i < lo.blocks.size(); ++i) {
        if (!s.empty()) s += " x ";
        s += "GL" + std::to_string(lo.blocks[i].rank + 1) + partition_string(lo.blocks[i].partition);
        if (i < lo.block_sign.size() && lo.block_sign[i]) s += "'";
    }
    if (lo.rest) s += (s.empty() ? "" : " x ") + orbit_string(*lo.rest);
    return s.empty() ? "1" : s;
}

Partition parse_partition(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw Error(ErrorCode::Malformed, "partition must look like [2,2,1,1]: '" + text + "'");
    Partition p;
    std::string body = t.substr(1, t.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit) || item.size() > 4)
            throw Error(ErrorCode::Malformed, "bad partition entry in '" + text + "'");
        p.push_back(std::stoi(item));
    }
    if (!is_partition(p)) throw Error(ErrorCode::Malformed, "not a weakly decreasing positive partition: '" + text + "'");
    return p;
}

}  // namespace birsheet
