#include "oracles.hpp"

#include "birsheet/rootsys.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace birsheet;

namespace {

struct Type {
    Kind k;
    int r;
};

std::vector<Type> all_types() {
    std::vector<Type> out;
    for (int r = 1; r <= kRankCap; ++r) out.push_back({Kind::A, r});
    for (int r = 2; r <= kRankCap; ++r) out.push_back({Kind::B, r});
    for (int r = 2; r <= kRankCap; ++r) out.push_back({Kind::C, r});
    for (int r = 4; r <= kRankCap; ++r) out.push_back({Kind::D, r});
    return out;
}

int root_count(Kind k, int n) {
    switch (k) {
        case Kind::A: return n * (n + 1);
        case Kind::B:
        case Kind::C: return 2 * n * n;
        case Kind::D: return 2 * n * (n - 1);
    }
    return 0;
}

std::vector<int> highest_coeffs(Kind k, int n) {
    std::vector<int> c(n, 2);
    switch (k) {
        case Kind::A: c.assign(n, 1); break;
        case Kind::B: c[0] = 1; break;
        case Kind::C: c[n - 1] = 1; break;
        case Kind::D: c[0] = c[n - 2] = c[n - 1] = 1; break;
    }
    return c;
}

// simple roots joined to alpha_0 in the extended diagram
std::set<int> alpha0_neighbours(Kind k, int n) {
    switch (k) {
        case Kind::A: return {1, n};
        case Kind::B: return {2};
        case Kind::C: return {1};
        case Kind::D: return {2};
    }
    return {};
}

RootSet of(const RootSystem& rs, std::initializer_list<int> nodes) {
    RootSet s;
    for (int e : nodes) s.set(rs.node_root(e));
    return s;
}

}  // namespace

TEST_CASE("root systems match the classical closed forms") {
    for (auto [k, n] : all_types()) {
        CAPTURE(n);
        const RootSystem rs = build_root_system(k, n);
        CHECK(rs.size() == root_count(k, n));
        CHECK(rs.coeffs[rs.highest] == highest_coeffs(k, n));
        CHECK(rs.lowest == rs.negative(rs.highest));
        for (int i = 0; i < rs.size(); ++i) {
            const auto& c = rs.coeffs[i];
            const bool nonneg = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
            const bool nonpos = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
            CHECK((nonneg || nonpos));
            CHECK(rs.positive(i) == nonneg);
        }
        std::set<int> adj;
        for (int i = 1; i <= n; ++i) {
            const auto& a0 = rs.roots[rs.lowest];
            const auto& ai = rs.roots[rs.simple[i - 1]];
            int ip = 0;
            for (int c = 0; c < rs.dim; ++c) ip += a0[c] * ai[c];
            if (ip != 0) adj.insert(i);
        }
        CHECK(adj == alpha0_neighbours(k, n));
    }
}

TEST_CASE("rank one and the spec examples") {
    const RootSystem a1 = build_root_system(Kind::A, 1);
    CHECK(a1.size() == 2);
    CHECK(a1.lowest == a1.negative(a1.simple[0]));
    CHECK(build_root_system(Kind::B, 3).size() == 18);
    CHECK(build_root_system(Kind::C, 2).coeffs[build_root_system(Kind::C, 2).highest] == std::vector<int>{2, 1});
}

TEST_CASE("out-of-scope types are rejected") {
    CHECK_THROWS_AS(build_root_system(Kind::D, 2), Error);
    CHECK_THROWS_AS(build_root_system(Kind::B, 1), Error);
    CHECK_THROWS_AS(build_root_system(Kind::C, 1), Error);
    CHECK_THROWS_AS(parse_kind('E'), Error);
    const RootSystem d3 = build_root_system(Kind::D, 3);
    CHECK(d3.kind == Kind::A);
    CHECK(d3.rank == 3);
    CHECK_FALSE(d3.warnings.empty());
    try {
        build_root_system(Kind::A, kRankCap + 1);
        FAIL("rank above the cap was accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedType);
    }
}

TEST_CASE("weyl group orders and root permutations") {
    for (auto [k, n] : all_types()) {
        const RootSystem rs = build_root_system(k, n);
        const auto w = weyl_group_cached(rs);
        CHECK(w->order() == oracle::weyl_order(k, n));
        if (n > 4) continue;
        for (const auto& e : w->elements) {
            std::vector<char> hit(rs.size(), 0);
            for (int i = 0; i < rs.size(); ++i) {
                const int j = e.root_perm[i];
                hit[j] = 1;
                // w acts on coordinates as a signed permutation
                std::vector<int> img(rs.dim, 0);
                for (int c = 0; c < rs.dim; ++c) img[e.perm[c]] += e.sign[c] * rs.roots[i][c];
                CHECK(img == rs.roots[j]);
            }
            CHECK(std::count(hit.begin(), hit.end(), 1) == rs.size());
        }
    }
}

TEST_CASE("subsystem closure") {
    const RootSystem c2 = build_root_system(Kind::C, 2);
    CHECK(subsystem_closure(c2, RootSet{}).empty());
    const RootSet a1 = subsystem_closure(c2, of(c2, {1}));
    CHECK(a1.count() == 2);
    const RootSet long_pair = closure_of_nodes(c2, {0, 2});
    CHECK(long_pair.count() == 4);
    for (int i : long_pair.indices()) {
        int norm = 0;
        for (int x : c2.roots[i]) norm += x * x;
        CHECK(norm == 4);
    }
    auto g = oracle::rng(21);
    for (auto [k, n] : all_types()) {
        if (n > 4) continue;
        const RootSystem rs = build_root_system(k, n);
        std::uniform_int_distribution<int> pick(0, rs.size() - 1);
        for (int trial = 0; trial < 30; ++trial) {
            RootSet a, b;
            for (int t = 0; t < 2; ++t) a.set(pick(g));
            b = a;
            b.set(pick(g));
            const RootSet ca = subsystem_closure(rs, a), cb = subsystem_closure(rs, b);
            CHECK(subsystem_closure(rs, ca) == ca);
            CHECK(a.subset_of(ca));
            CHECK(ca.subset_of(cb));
            for (int i : ca.indices()) CHECK(ca.test(rs.negative(i)));
        }
    }
}

TEST_CASE("lattice quotients") {
    CHECK(lattice_quotient(identity_imat(3), 3).torsion_order == 1);
    const auto d = lattice_quotient(to_imat({{2, 0}, {0, 2}}), 2);
    CHECK(d.invariant_factors == std::vector<Int>{2, 2});
    CHECK(d.torsion_order == 4);
    const RootSystem c2 = build_root_system(Kind::C, 2);
    IMat cartan;
    for (const auto& row : c2.cartan) {
        cartan.emplace_back();
        for (int x : row) cartan.back().push_back(x);
    }
    CHECK(lattice_quotient(cartan, 2).torsion_order == 2);

    auto g = oracle::rng(22);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        IMat m(3, IVec(3));
        for (auto& r : m)
            for (auto& x : r) x = e(g);
        const auto q = lattice_quotient(m, 3);
        Int prod = 1;
        for (const auto& f : q.invariant_factors) prod *= f;
        if (q.free_rank == 0) CHECK(prod == q.torsion_order);
        IMat p = m;
        std::shuffle(p.begin(), p.end(), g);
        std::vector<int> cols{0, 1, 2};
        std::shuffle(cols.begin(), cols.end(), g);
        for (auto& r : p) r = IVec{r[cols[0]], r[cols[1]], r[cols[2]]};
        const auto qp = lattice_quotient(p, 3);
        CHECK(qp.invariant_factors == q.invariant_factors);
        CHECK(qp.free_rank == q.free_rank);
        CHECK(lattice_quotient(to_imat({}), 0).torsion_order == 1);
    }
}

TEST_CASE("centres of the simply connected groups") {
    for (auto [k, n] : all_types()) {
        const RootSystem rs = build_root_system(k, n);
        const auto z = centre_components(rs, rs.all());
        const std::size_t expect = k == Kind::A ? n + 1 : k == Kind::D ? 4 : 2;
        CHECK(z.size() == expect);
        for (const auto& c : z) CHECK(c.dimension() == 0);
        CHECK(centre_components(rs, RootSet{}).size() == 1);  // the torus is connected
    }
}

TEST_CASE("shifted subtori compare by coset") {
    auto g = oracle::rng(23);
    std::uniform_int_distribution<int> e(-3, 3), den(1, 4);
    for (int trial = 0; trial < 80; ++trial) {
        IMat dir{{e(g), e(g), e(g)}};
        if (dir[0] == IVec{0, 0, 0}) dir[0][0] = 1;
        QVec t{Rat(e(g), den(g)), Rat(e(g), den(g)), Rat(e(g), den(g))};
        for (auto& x : t) x.canonicalize();
        const auto a = make_subtorus(dir, t, 3);
        QVec moved = t;
        const Rat s(e(g), den(g));
        for (int c = 0; c < 3; ++c) moved[c] += s * Rat(dir[0][c]) + e(g);
        IMat scaled{{2 * dir[0][0], 2 * dir[0][1], 2 * dir[0][2]}};
        const auto b = make_subtorus(scaled, moved, 3);
        CHECK(a == b);
        CHECK(a.key() == b.key());
        CHECK(a.contains(moved));
        CHECK(a.contains(b));
        const auto p = make_subtorus({}, moved, 3);
        CHECK(a.contains(p));
        CHECK_FALSE(p.contains(a));
    }
}
