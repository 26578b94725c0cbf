#include "oracles.hpp"

#include "birsheet/birational.hpp"

#include <doctest.h>

#include <functional>
#include <map>

using namespace birsheet;

namespace {

Verdict decide(BirationalEngine& eng, Kind k, int r, std::vector<int> theta, const std::string& orbit = "trivial") {
    return eng.decide(make_instance(k, r, theta, orbit));
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Malformed;
}

std::string with_instance(const std::string& inst) {
    return R"({"version": 1, "instances": [)" + inst + R"(], "rigid": []})";
}

}  // namespace

TEST_CASE("fixture parsing is strict") {
    const FixtureSet& f = builtin_fixtures();
    CHECK(f.version == 1);
    CHECK(f.instances.size() >= 4);
    CHECK(f.rigid.size() == 1);
    CHECK(parse_fixtures(builtin_fixtures_text()).instances.size() == f.instances.size());
    const std::string good = R"({"id": "x", "ambient": "C2", "levi": [1], "orbit": "trivial", "verdict": "Birational", "source": "s"})";
    CHECK(parse_fixtures(with_instance(good)).instances.size() == 1);
    CHECK(code_of([] { parse_fixtures("{"); }) == ErrorCode::Malformed);
    CHECK(code_of([] { parse_fixtures(R"({"version": 1, "instances": []})"); }) == ErrorCode::Malformed);
    CHECK(code_of([&] { parse_fixtures(with_instance(good + "," + good)); }) == ErrorCode::Malformed);
    std::string unknown = good;
    unknown.replace(unknown.find("\"Birational\""), 12, "\"Unknown\"");
    CHECK(code_of([&] { parse_fixtures(with_instance(unknown)); }) == ErrorCode::Malformed);
    std::string extra = good;
    extra.insert(1, R"("note": "n", )");
    CHECK(code_of([&] { parse_fixtures(with_instance(extra)); }) == ErrorCode::Malformed);
    std::string levi = good;
    levi.replace(levi.find("[1]"), 3, "[\"1\"]");
    CHECK(code_of([&] { parse_fixtures(with_instance(levi)); }) == ErrorCode::Malformed);
}

TEST_CASE("instances") {
    CHECK(code_of([] { make_instance(Kind::C, 2, {1, 1}, "trivial"); }) == ErrorCode::InvalidInstance);
    CHECK(code_of([] { make_instance(Kind::C, 2, {3}, "trivial"); }) == ErrorCode::InvalidInstance);
    CHECK_THROWS_AS(make_instance(Kind::C, 2, {1}, "[3]"), Error);
    const auto inst = make_instance(Kind::C, 3, {3, 2}, "trivial");
    CHECK(ls_induce(inst.levi, Kind::C, 3).partition == Partition{2, 2, 1, 1});
}

TEST_CASE("sp4 subregular and the c3 family") {
    BirationalEngine eng(3);
    const Verdict b = decide(eng, Kind::C, 2, {1}), nb = decide(eng, Kind::C, 2, {2});
    CHECK(b.value == VerdictValue::Birational);
    CHECK(nb.value == VerdictValue::NotBirational);
    CHECK(b.provenance.find("fixture") != std::string::npos);
    CHECK(ls_induce(make_instance(Kind::C, 2, {1}, "trivial").levi, Kind::C, 2) ==
          ls_induce(make_instance(Kind::C, 2, {2}, "trivial").levi, Kind::C, 2));
    CHECK(decide(eng, Kind::C, 3, {2, 3}).value == VerdictValue::NotBirational);
    CHECK(eng.is_birationally_rigid(Kind::C, 3, make_orbit(Kind::C, 3, {2, 2, 1, 1})).value == Tri::Yes);
    CHECK(eng.is_birationally_rigid(Kind::C, 2, make_orbit(Kind::C, 2, {2, 2})).value == Tri::No);
    const auto d = eng.birational_datum_of(Kind::C, 2, make_orbit(Kind::C, 2, {2, 2}));
    REQUIRE(d.known);
    CHECK(d.datum.levi.blocks.size() == 1);
    CHECK(d.datum.levi.blocks[0].partition == Partition{1, 1});
    CHECK(!d.datum.levi.rest);
    // isomorphic so5: the short-root Levi plays the GL2 role
    CHECK(decide(eng, Kind::B, 2, {2}).value == VerdictValue::Birational);
    CHECK(decide(eng, Kind::B, 2, {1}).value == VerdictValue::NotBirational);
}

TEST_CASE("type A: everything is birational and data are dual partitions") {
    BirationalEngine eng(5);
    for (int r = 1; r <= 5; ++r) {
        for (const auto& e : eng.instances(Kind::A, r)) CHECK(e.verdict.value == VerdictValue::Birational);
        for (const auto& o : enumerate_orbits(Kind::A, r)) {
            const bool zero = o.partition.size() == static_cast<std::size_t>(r + 1);
            CHECK(eng.is_birationally_rigid(Kind::A, r, o).value == (zero ? Tri::Yes : Tri::No));
            const auto d = eng.birational_datum_of(Kind::A, r, o);
            REQUIRE(d.known);
            Partition sizes;
            for (const auto& b : d.datum.levi.blocks) {
                sizes.push_back(b.rank + 1);
                CHECK(b.partition.size() == static_cast<std::size_t>(b.rank + 1));
            }
            std::sort(sizes.rbegin(), sizes.rend());
            CHECK(sizes == oracle::transpose(o.partition));
        }
    }
}

TEST_CASE("rigid orbits are their own datum") {
    BirationalEngine eng(4);
    for (Kind k : {Kind::B, Kind::C, Kind::D})
        for (int r = (k == Kind::D ? 4 : 2); r <= 4; ++r)
            for (const auto& [o, ans] : eng.rigidity_table(k, r)) {
                if (ans.value != Tri::Yes) continue;
                const auto d = eng.birational_datum_of(k, r, o);
                REQUIRE(d.known);
                CHECK(d.datum.levi.blocks.empty());
                REQUIRE(d.datum.levi.rest.has_value());
                CHECK(*d.datum.levi.rest == o);
            }
}

TEST_CASE("connected centralizers force birationality") {
    BirationalEngine eng(4);
    for (Kind k : {Kind::B, Kind::C, Kind::D})
        for (int r = (k == Kind::D ? 4 : 2); r <= 4; ++r)
            for (const auto& e : eng.instances(k, r))
                if (component_group_order(k, r, e.induced) == 1) CHECK(e.verdict.value == VerdictValue::Birational);
}

TEST_CASE("each induced orbit has at most one birational datum") {
    BirationalEngine eng(4);
    for (Kind k : {Kind::B, Kind::C, Kind::D})
        for (int r = (k == Kind::D ? 4 : 2); r <= 4; ++r) {
            std::map<ClassicalOrbit, int> births;
            for (const auto& e : eng.instances(k, r)) {
                if (e.identity || e.verdict.value != VerdictValue::Birational) continue;
                bool rigid_source = true;
                for (const auto& b : e.levi.blocks) rigid_source &= b.partition.size() == static_cast<std::size_t>(b.rank + 1);
                if (e.levi.rest) rigid_source &= eng.is_birationally_rigid(e.levi.rest->kind, e.levi.rest->rank, *e.levi.rest).value == Tri::Yes;
                if (rigid_source) CHECK(++births[e.induced] == 1);
            }
        }
}

TEST_CASE("adding fixtures or raising the horizon never flips a definite verdict") {
    FixtureSet none;
    none.version = 1;
    BirationalEngine bare(4, none), full(4), high(6);
    for (Kind k : {Kind::B, Kind::C, Kind::D})
        for (int r = (k == Kind::D ? 4 : 2); r <= 4; ++r) {
            const auto a = bare.instances(k, r), b = full.instances(k, r), c = high.instances(k, r);
            REQUIRE(a.size() == b.size());
            REQUIRE(b.size() == c.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].levi == b[i].levi);
                if (a[i].verdict.definite()) CHECK(a[i].verdict.value == b[i].verdict.value);
                if (b[i].verdict.definite()) CHECK(b[i].verdict.value == c[i].verdict.value);
            }
        }
}

TEST_CASE("contradicting fixtures are reported") {
    const std::string text = with_instance(
        R"({"id": "a", "ambient": "C2", "levi": [1], "orbit": "trivial", "verdict": "Birational", "source": "t"},
           {"id": "b", "ambient": "C2", "levi": [2], "orbit": "trivial", "verdict": "Birational", "source": "t"})");
    BirationalEngine eng(2, parse_fixtures(text));
    CHECK_THROWS_AS(decide(eng, Kind::C, 2, {1}), Error);
}

TEST_CASE("transitivity on standard chains") {
    BirationalEngine eng(3);
    const auto c2 = root_system_cached(Kind::C, 2);
    const auto c3 = root_system_cached(Kind::C, 3);
    auto triv = [](const RootSystem& rs, std::vector<int> theta) {
        return trivial_factor_orbits(realize(rs, closure_of_nodes(rs, theta)));
    };
    const auto deg = verify_transitivity(eng, *c2, {2}, {1, 2}, triv(*c2, {2}));
    CHECK(deg.composes);
    CHECK(deg.consistent);
    const auto chain = verify_transitivity(eng, *c3, {2}, {2, 3}, triv(*c3, {2}));
    CHECK(chain.composes);
    CHECK(chain.consistent);
    CHECK(chain.lm.definite());
    // L sits in the sp4 factor of M as the short-root Levi, so the first step is birational
    CHECK(chain.lm.value == VerdictValue::Birational);
    if (chain.mg.definite() && chain.lg.definite()) CHECK(chain.mg.value == chain.lg.value);
}
