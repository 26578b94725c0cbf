#include "birsheet/realize.hpp"

#include <algorithm>
#include <map>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace birsheet {

int Factor::minus_parity() const {
    return static_cast<int>(std::count(eps.begin(), eps.end(), -1)) & 1;
}

std::string Factor::name() const {
    if (kind == Kind::A) return "GL" + std::to_string(rank + 1);
    return std::string(1, kind_char(kind)) + std::to_string(rank);
}

int Realization::factor_of_coord(int c) const {
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (std::binary_search(factors[i].coords.begin(), factors[i].coords.end(), c)) return static_cast<int>(i);
    return -1;
}

std::string Realization::type_string() const {
    std::vector<std::string> parts;
    for (const auto& f : factors) {
        if (f.abelian()) continue;
        parts.push_back(f.kind == Kind::A ? "A" + std::to_string(f.rank) : f.name());
    }
    if (parts.empty()) return "T";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "x" : "") + parts[i];
    return s;
}

namespace {

int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

[[noreturn]] void not_classical(const RootSystem& rs, const std::string& why) {
    throw Error(ErrorCode::InvalidInstance, "subsystem of " + rs.name() + " is not a product of classical factors: " + why);
}

}  // namespace

Realization realize(const RootSystem& rs, const RootSet& s) {
    const int dim = rs.dim;
    std::vector<int> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    const auto idx = s.indices();
    for (int r : idx) {
        int first = -1;
        for (int c = 0; c < dim; ++c)
            if (rs.roots[r][c] != 0) {
                if (first < 0)
                    first = c;
                else
                    parent[find_root(parent, c)] = find_root(parent, first);
            }
    }
    std::map<int, std::vector<int>> classes;
    for (int c = 0; c < dim; ++c) classes[find_root(parent, c)].push_back(c);
    Realization real;
    for (auto& [rep, coords] : classes) {
        Factor f;
        f.coords = coords;
        const int k = static_cast<int>(coords.size());
        for (int r : idx)
            if (std::any_of(coords.begin(), coords.end(), [&](int c) { return rs.roots[r][c] != 0; }))
                f.roots.set(r);
        bool has_long_single = false, has_short_single = false, has_same = false, has_opp = false;
        std::set<std::pair<int, int>> same, opp;
        for (int r : f.roots.indices()) {
            std::vector<int> nz;
            for (int c : coords)
                if (rs.roots[r][c] != 0) nz.push_back(c);
            if (nz.size() == 1) {
                if (std::abs(rs.roots[r][nz[0]]) == 2) has_long_single = true;
                else has_short_single = true;
            } else if (nz.size() == 2) {
                if (rs.roots[r][nz[0]] == rs.roots[r][nz[1]]) same.insert({nz[0], nz[1]});
                else opp.insert({nz[0], nz[1]});
            }
        }
        for (const auto& pr : same)
            if (opp.count(pr)) has_same = has_opp = true;
        const int count = f.roots.count();
        if (count == 0) {
            f.kind = Kind::A;
            f.rank = k - 1;
            f.eps.assign(k, 1);
            if (k != 1) not_classical(rs, "empty support class");
        } else if (has_long_single) {
            f.kind = Kind::C;
            f.rank = k;
            if (count != 2 * k * k) not_classical(rs, "incomplete symplectic block");
        } else if (has_short_single) {
            f.kind = Kind::B;
            f.rank = k;
            if (count != 2 * k * k) not_classical(rs, "incomplete odd orthogonal block");
        } else if (has_same && has_opp) {
            f.kind = Kind::D;
            f.rank = k;
            if (count != 2 * k * (k - 1)) not_classical(rs, "incomplete even orthogonal block");
        } else {
            f.kind = Kind::A;
            f.rank = k - 1;
            if (dim == rs.rank + 1 && rs.kind == Kind::A) {
                f.eps.assign(k, 1);
            } else {
                // propagate eps along roots eps_i e_i - eps_j e_j
                std::map<int, int> eps{{coords[0], 1}};
                for (bool grew = true; grew;) {
                    grew = false;
                    for (int r : f.roots.indices()) {
                        int a = -1, b = -1;
                        for (int c : coords)
                            if (rs.roots[r][c] != 0) (a < 0 ? a : b) = c;
                        const bool ka = eps.count(a), kb = eps.count(b);
                        if (ka == kb) continue;
                        if (ka) eps[b] = rs.roots[r][a] == eps[a] ? -rs.roots[r][b] : rs.roots[r][b];
                        else eps[a] = rs.roots[r][b] == eps[b] ? -rs.roots[r][a] : rs.roots[r][a];
                        grew = true;
                    }
                }
                for (int c : coords) f.eps.push_back(eps.count(c) ? eps[c] : 0);
            }
            if (count != k * (k - 1)) not_classical(rs, "incomplete general linear block");
            for (int r : f.roots.indices()) {
                int a = -1, b = -1;
                for (std::size_t i = 0; i < coords.size(); ++i)
                    if (rs.roots[r][coords[i]] != 0) (a < 0 ? a : b) = static_cast<int>(i);
                if (b < 0 || rs.roots[r][coords[a]] * f.eps[a] != -rs.roots[r][coords[b]] * f.eps[b])
                    not_classical(rs, "root outside the general linear pattern");
            }
        }
        real.factors.push_back(std::move(f));
    }
    std::sort(real.factors.begin(), real.factors.end(),
              [](const Factor& a, const Factor& b) { return a.coords.front() < b.coords.front(); });
    return real;
}

FactorOrbits trivial_factor_orbits(const Realization& r) {
    FactorOrbits o;
    for (const auto& f : r.factors) o.push_back(trivial_orbit(f.kind, f.rank));
    return o;
}

std::vector<FactorOrbits> enumerate_factor_orbits(const Realization& r) {
    std::vector<FactorOrbits> out{{}};
    for (const auto& f : r.factors) {
        std::vector<FactorOrbits> next;
        const auto orbs = enumerate_orbits(f.kind, f.rank);
        for (const auto& partial : out)
            for (const auto& o : orbs) {
                next.push_back(partial);
                next.back().push_back(o);
            }
        out = std::move(next);
    }
    return out;
}

std::string factor_orbits_string(const Realization& r, const FactorOrbits& o) {
    std::string s;
    bool trivial = true;
    for (std::size_t i = 0; i < r.factors.size(); ++i) {
        if (r.factors[i].abelian()) continue;
        if (!s.empty()) s += "x";
        s += partition_string(o[i].partition);
        if (o[i].label == VeryEven::I) s += "I";
        if (o[i].label == VeryEven::II) s += "II";
        if (std::any_of(o[i].partition.begin(), o[i].partition.end(), [](int x) { return x != 1; })) trivial = false;
    }
    return trivial ? "trivial" : s;
}

FactorOrbits parse_factor_orbits(const Realization& r, const std::string& text) {
    FactorOrbits out = trivial_factor_orbits(r);
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "trivial" || t.empty()) return out;
    std::vector<std::string> items;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i)
        if (i == t.size() || (t[i] == 'x' && i > 0 && (t[i - 1] == ']' || t[i - 1] == 'I'))) {
            items.push_back(t.substr(start, i - start));
            start = i + 1;
        }
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < r.factors.size(); ++i)
        if (!r.factors[i].abelian()) slots.push_back(i);
    if (items.size() != slots.size())
        throw Error(ErrorCode::Malformed, "orbit descriptor '" + text + "' has " + std::to_string(items.size()) +
                                              " factors, the Levi has " + std::to_string(slots.size()));
    for (std::size_t j = 0; j < items.size(); ++j) {
        std::string item = items[j];
        VeryEven label = VeryEven::None;
        if (item.size() >= 2 && item.substr(item.size() - 2) == "II") {
            label = VeryEven::II;
            item.resize(item.size() - 2);
        } else if (!item.empty() && item.back() == 'I') {
            label = VeryEven::I;
            item.pop_back();
        }
        const auto& f = r.factors[slots[j]];
        out[slots[j]] = make_orbit(f.kind, f.rank, parse_partition(item), label);
    }
    return out;
}

long orbit_dim(const FactorOrbits& o) {
    long d = 0;
    for (const auto& x : o) d += orbit_dim(x);
    return d;
}

std::vector<FactorInduction> split_induction(const Realization& small, const FactorOrbits& o, const Realization& big) {
    std::vector<FactorInduction> out;
    for (std::size_t b = 0; b < big.factors.size(); ++b) {
        const Factor& F = big.factors[b];
        FactorInduction fi;
        fi.big = static_cast<int>(b);
        fi.kind = F.kind;
        fi.rank = F.rank;
        for (std::size_t s = 0; s < small.factors.size(); ++s) {
            const Factor& f = small.factors[s];
            const bool inside = std::includes(F.coords.begin(), F.coords.end(), f.coords.begin(), f.coords.end());
            if (!inside) {
                if (std::any_of(f.coords.begin(), f.coords.end(),
                                [&](int c) { return std::binary_search(F.coords.begin(), F.coords.end(), c); }))
                    throw Error(ErrorCode::InconsistentEmbedding, "factor " + f.name() + " straddles " + F.name());
                continue;
            }
            if (!f.roots.subset_of(F.roots) && !f.roots.empty())
                throw Error(ErrorCode::InconsistentEmbedding, "factor " + f.name() + " is not contained in " + F.name());
            if (f.kind == Kind::A) {
                fi.levi.blocks.push_back(o[s]);
                fi.levi.block_sign.push_back(F.kind == Kind::D ? f.minus_parity() : 0);
            } else if (f.kind == F.kind && F.kind != Kind::A && !fi.levi.rest) {
                fi.levi.rest = o[s];
            } else {
                throw Error(ErrorCode::InconsistentEmbedding, "factor " + f.name() + " is not a Levi factor of " + F.name());
            }
        }
        out.push_back(std::move(fi));
    }
    return out;
}

FactorOrbits induce(const Realization& small, const FactorOrbits& o, const Realization& big) {
    FactorOrbits out;
    for (const auto& fi : split_induction(small, o, big)) out.push_back(ls_induce(fi.levi, fi.kind, fi.rank));
    return out;
}

FactorOrbits act_orbits(const WeylElement& w, const Realization& src, const FactorOrbits& o, const Realization& dst) {
    FactorOrbits out(dst.factors.size());
    for (std::size_t i = 0; i < src.factors.size(); ++i) {
        const Factor& f = src.factors[i];
        const int j = dst.factor_of_coord(w.perm[f.coords.front()]);
        ClassicalOrbit img = o[i];
        if (f.kind == Kind::D && img.label != VeryEven::None) {
            int sign = 1;
            for (int c : f.coords) sign *= w.sign[c];
            if (sign < 0) img.label = img.label == VeryEven::I ? VeryEven::II : VeryEven::I;
        }
        out[j] = img;
    }
    return out;
}

LeviOrbit levi_orbit_of(const RootSystem& rs, const std::vector<int>& theta, const FactorOrbits& o) {
    for (int t : theta)
        if (t < 1 || t > rs.rank)
            throw Error(ErrorCode::InvalidInstance, "simple root index " + std::to_string(t) + " out of range for " + rs.name());
    const Realization small = realize(rs, closure_of_nodes(rs, theta));
    const Realization big = realize(rs, rs.all());
    if (o.size() != small.factors.size()) throw Error(ErrorCode::InvalidInstance, "orbit count does not match the Levi factors");
    auto parts = split_induction(small, o, big);
    if (parts.size() != 1) throw Error(ErrorCode::InvalidInstance, "ambient group is not simple");
    return parts[0].levi;
}

}  // namespace birsheet
