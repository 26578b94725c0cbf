#include "birsheet/sheets.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

namespace birsheet {

namespace {

bool is_b(const PosetNode& n) { return n.verdict.value == VerdictValue::Birational; }
bool is_nb(const PosetNode& n) { return n.verdict.value == VerdictValue::NotBirational; }

void inherit(PosetNode& n, VerdictValue v, bool& changed) {
    if (n.verdict.value == v) return;
    if (n.verdict.definite())
        throw Error(ErrorCode::InconsistentVerdicts, "poset node " + n.type + " is " + verdict_name(n.verdict.value) +
                                                         " by " + n.verdict.provenance + " but inherits " + verdict_name(v));
    n.verdict = {v, "strata"};
    changed = true;
}

// Runs body(i) for i < n, in parallel when asked; the first exception is rethrown.
template <class F>
void for_each_index(int n, Exec exec, F&& body) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(birsheet_sheets_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

ComponentPoset mark_birationality(ComponentPoset poset, const Group& g, BirationalEngine& eng) {
    const auto& p = g.pseudo_levi(poset.tau.pseudo_levi);
    auto& nodes = poset.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i == 0)
            nodes[i].verdict = {VerdictValue::Birational, "identity"};
        else if (nodes[i].ambiguous)
            nodes[i].verdict = {};
        else
            nodes[i].verdict = eng.decide(split_induction(p.real, poset.tau.orbit, nodes[i].real));
    }
    // parents precede children in node order
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& n : nodes)
            for (int q : n.parents)
                if (is_nb(nodes[q])) inherit(n, VerdictValue::NotBirational, changed);
        for (auto it = nodes.rbegin(); it != nodes.rend(); ++it)
            if (is_b(*it))
                for (int q : it->parents) inherit(nodes[q], VerdictValue::Birational, changed);
    }
    return poset;
}

std::vector<int> unknown_nodes(const ComponentPoset& poset) {
    std::vector<int> out;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i)
        if (!poset.nodes[i].verdict.definite()) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> excluded_nodes(const ComponentPoset& poset) {
    std::vector<int> out;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
        const auto& n = poset.nodes[i];
        if (is_nb(n) && std::none_of(n.parents.begin(), n.parents.end(), [&](int q) { return is_nb(poset.nodes[q]); }))
            out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> wbir_set(const ComponentPoset& poset) {
    if (!unknown_nodes(poset).empty()) throw Error(ErrorCode::IncompletePoset, "undecided nodes in the component poset");
    return excluded_nodes(poset);
}

namespace {

// Locus {y : ann y = inv mod Z^n} in machine integers; rep = num / den.
struct SmallLocus {
    std::vector<std::vector<long>> ann, dir;
    std::vector<long> num, inv_num;
    long den = 1, inv_den = 1;
};

SmallLocus small_locus(const ShiftedSubtorus& t) {
    SmallLocus s;
    for (const auto& r : t.ann) {
        s.ann.emplace_back();
        for (const auto& x : r) s.ann.back().push_back(x.get_si());
    }
    for (const auto& r : t.dir) {
        s.dir.emplace_back();
        for (const auto& x : r) s.dir.back().push_back(x.get_si());
    }
    Int den = 1, inv_den = 1;
    for (const auto& q : t.rep) den = lcm(den, Int(q.get_den()));
    for (const auto& q : t.inv) inv_den = lcm(inv_den, Int(q.get_den()));
    s.den = den.get_si();
    s.inv_den = inv_den.get_si();
    for (const auto& q : t.rep) s.num.push_back(Int(q * den).get_si());
    for (const auto& q : t.inv) s.inv_num.push_back(Int(q * inv_den).get_si());
    return s;
}

// b inside a: a's annihilator kills b's directions and b's base point satisfies a's equations
bool small_contains(const SmallLocus& a, const SmallLocus& b) {
    for (std::size_t k = 0; k < a.ann.size(); ++k) {
        const auto& row = a.ann[k];
        for (const auto& d : b.dir) {
            long v = 0;
            for (std::size_t c = 0; c < row.size(); ++c) v += row[c] * d[c];
            if (v != 0) return false;
        }
        long v = 0;
        for (std::size_t c = 0; c < row.size(); ++c) v += row[c] * b.num[c];
        // v / b.den - inv_num / inv_den must be an integer
        const long m = b.den * a.inv_den;
        if ((v * a.inv_den - a.inv_num[k] * b.den) % m != 0) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> poset_law_violations(const ComponentPoset& poset) {
    std::vector<std::string> out;
    const auto& nodes = poset.nodes;
    const int n = static_cast<int>(nodes.size());
    auto name = [&](int i) { return "node " + std::to_string(i) + " (" + nodes[i].type + ")"; };
    std::vector<SmallLocus> loci;
    for (const auto& node : nodes) loci.push_back(small_locus(node.locus));
    std::vector<std::vector<int>> above(n);  // nodes whose locus contains this one
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || nodes[j].locus.dimension() > nodes[i].locus.dimension()) continue;
            if (!small_contains(loci[i], loci[j])) continue;
            above[j].push_back(i);
            // distinct loci, so the centralizer grows strictly
            if (!nodes[i].centralizer.subset_of(nodes[j].centralizer) || nodes[i].centralizer == nodes[j].centralizer)
                out.push_back(name(j) + " lies in " + name(i) + " without a larger centralizer");
            if (is_nb(nodes[i]) && !is_nb(nodes[j])) out.push_back(name(j) + " lies under NotBirational " + name(i));
            if (is_b(nodes[j]) && !is_b(nodes[i])) out.push_back(name(i) + " lies over Birational " + name(j));
        }
    for (int j = 0; j < n; ++j)
        for (int q : nodes[j].parents)
            if (std::find(above[j].begin(), above[j].end(), q) == above[j].end())
                out.push_back("parent " + name(q) + " of " + name(j) + " does not contain it");
    std::vector<char> excluded(n, 0);
    for (int a : excluded_nodes(poset)) excluded[a] = 1;
    for (int j = 0; j < n; ++j)
        for (int i : above[j])
            if (excluded[i] && excluded[j]) out.push_back("excluded " + name(j) + " lies under excluded " + name(i));
    return out;
}

std::vector<DecompositionDatum> birational_closure(const ComponentPoset& poset) {
    if (!unknown_nodes(poset).empty()) throw Error(ErrorCode::IncompletePoset, "undecided nodes in the component poset");
    std::set<DecompositionDatum> out;
    for (const auto& n : poset.nodes)
        if (is_b(n)) out.insert(n.datum);
    return {out.begin(), out.end()};
}

std::vector<BirationalSheet> enumerate_birational_sheets(const Group& g, BirationalEngine& eng,
                                                         const std::vector<DecompositionDatum>& data, Exec exec) {
    const int n = static_cast<int>(data.size());
    std::vector<Tri> bb(n);
    for (int i = 0; i < n; ++i) bb[i] = eng.factors_rigid(g.pseudo_levi(data[i].pseudo_levi).real, data[i].orbit);
    std::vector<int> picked;
    for (Tri want : {Tri::Yes, Tri::Unknown})
        for (int i = 0; i < n; ++i)
            if (bb[i] == want) picked.push_back(i);
    std::vector<BirationalSheet> sheets(picked.size());
    g.flats(exec);
    for_each_index(static_cast<int>(picked.size()), exec, [&](int k) {
        BirationalSheet& s = sheets[k];
        s.tau = data[picked[k]];
        s.bb = bb[picked[k]];
        s.poset = mark_birationality(component_poset(g, s.tau, Exec::Serial), g, eng);
        std::set<DecompositionDatum> in, open;
        for (const auto& node : s.poset.nodes) {
            if (is_b(node)) in.insert(node.datum);
            if (!node.verdict.definite()) open.insert(node.datum);
        }
        for (const auto& d : in) open.erase(d);
        s.jordan_classes.assign(in.begin(), in.end());
        s.undecided.assign(open.begin(), open.end());
        s.excluded = excluded_nodes(s.poset);
        s.complete = s.bb == Tri::Yes && unknown_nodes(s.poset).empty();
    });
    return sheets;
}

const char* status_name(DatumStatus s) {
    switch (s) {
        case DatumStatus::Pass: return "pass";
        case DatumStatus::Blocked: return "blocked";
        case DatumStatus::Fail: return "fail";
    }
    return "fail";
}

int count_mod_centre(const Group& g, const std::vector<DecompositionDatum>& data) {
    std::set<DecompositionDatum> reps;
    const int nc = static_cast<int>(g.centre().size());
    for (const auto& d : data) {
        DecompositionDatum best = g.canonical(d);
        for (int c = 0; c < nc; ++c) best = std::min(best, g.translate(d, c));
        reps.insert(best);
    }
    return static_cast<int>(reps.size());
}

bool orbit_is_rigid(const Group& g, const DecompositionDatum& d) {
    const auto& real = g.pseudo_levi(d.pseudo_levi).real;
    for (std::size_t i = 0; i < real.factors.size(); ++i)
        if (!is_rigid(real.factors[i].kind, real.factors[i].rank, d.orbit[i])) return false;
    return true;
}

PartitionReport verify_partition(const Group& g, const std::vector<DecompositionDatum>& data,
                                 const std::vector<BirationalSheet>& sheets) {
    PartitionReport rep;
    std::map<DecompositionDatum, int> row_of;
    for (const auto& d : data) {
        row_of.emplace(d, static_cast<int>(rep.rows.size()));
        rep.rows.push_back({d, DatumStatus::Fail, {}, {}});
    }
    auto row = [&](const DecompositionDatum& d, int sheet) -> PartitionReport::Row* {
        auto it = row_of.find(d);
        if (it != row_of.end()) return &rep.rows[it->second];
        rep.counterexamples.push_back("sheet " + std::to_string(sheet) + " reaches " + g.datum_string(d) +
                                      ", which is missing from the decomposition data");
        ++rep.failed;
        return nullptr;
    };
    std::vector<DecompositionDatum> taus, ordinary;
    for (std::size_t k = 0; k < sheets.size(); ++k) {
        const auto& s = sheets[k];
        const int ks = static_cast<int>(k);
        if (s.bb == Tri::Yes) {
            taus.push_back(s.tau);
        } else {
            ++rep.undecided_sheets;
        }
        for (const auto& d : s.jordan_classes)
            if (auto* r = row(d, ks)) (s.bb == Tri::Yes ? r->sheets : r->possible).push_back(ks);
        for (const auto& d : s.undecided)
            if (auto* r = row(d, ks)) r->possible.push_back(ks);
    }
    for (auto& r : rep.rows) {
        const std::size_t def = r.sheets.size(), pos = r.possible.size();
        if (def > 1 || (def == 0 && pos == 0)) {
            r.status = DatumStatus::Fail;
            ++rep.failed;
            std::string where;
            for (int k : r.sheets) where += (where.empty() ? "" : ", ") + g.datum_string(sheets[k].tau);
            rep.counterexamples.push_back(g.datum_string(r.datum) + " lies in " + std::to_string(def) + " birational sheets" +
                                          (where.empty() ? "" : ": " + where));
        } else if (def == 1 && pos == 0) {
            r.status = DatumStatus::Pass;
            ++rep.passed;
        } else {
            r.status = DatumStatus::Blocked;
            ++rep.blocked;
        }
        if (orbit_is_rigid(g, r.datum)) ordinary.push_back(r.datum);
    }
    rep.sheet_count = static_cast<int>(taus.size());
    rep.sheet_count_mod_centre = count_mod_centre(g, taus);
    rep.ordinary_sheet_count = static_cast<int>(ordinary.size());
    rep.ordinary_sheet_count_mod_centre = count_mod_centre(g, ordinary);
    return rep;
}

SheetComparison compare_sheet(const BirationalSheet& sheet, const Group& g) {
    SheetComparison c;
    const auto& nodes = sheet.poset.nodes;
    c.rigid = orbit_is_rigid(g, sheet.tau);
    c.complete = unknown_nodes(sheet.poset).empty();
    c.equal = c.complete && std::all_of(nodes.begin(), nodes.end(), is_b);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].isolated) c.isolated.push_back(static_cast<int>(i));
        if (!is_b(nodes[i]) && std::all_of(nodes[i].parents.begin(), nodes[i].parents.end(), [&](int q) { return is_b(nodes[q]); }))
            c.witnesses.push_back(static_cast<int>(i));
    }
    return c;
}

DecompositionDatum birational_datum_of_class(const Group& g, BirationalEngine& eng, const ClassSkeleton& sk) {
    const RootSystem& rs = g.rs();
    std::vector<std::vector<int>> vecs;
    std::map<int, ClassicalOrbit> orbit_at;  // first coordinate of an L-factor
    auto gl_roots = [&](const std::vector<int>& coords, const std::vector<int>& eps) {
        for (std::size_t a = 0; a < coords.size(); ++a)
            for (std::size_t b = 0; b < coords.size(); ++b) {
                if (a == b) continue;
                std::vector<int> v(rs.dim, 0);
                v[coords[a]] = eps[a];
                v[coords[b]] = -eps[b];
                vecs.push_back(std::move(v));
            }
    };
    auto classical_roots = [&](Kind k, const std::vector<int>& coords) {
        for (std::size_t a = 0; a < coords.size(); ++a) {
            for (int s : {1, -1}) {
                std::vector<int> v(rs.dim, 0);
                if (k == Kind::B) v[coords[a]] = s;
                if (k == Kind::C) v[coords[a]] = 2 * s;
                if (k != Kind::D) vecs.push_back(v);
            }
            for (std::size_t b = a + 1; b < coords.size(); ++b)
                for (int s : {1, -1})
                    for (int t : {1, -1}) {
                        std::vector<int> v(rs.dim, 0);
                        v[coords[a]] = s;
                        v[coords[b]] = t;
                        vecs.push_back(std::move(v));
                    }
        }
    };
    for (std::size_t i = 0; i < sk.real.factors.size(); ++i) {
        const Factor& f = sk.real.factors[i];
        if (f.abelian()) {
            orbit_at[f.coords[0]] = sk.orbit[i];
            continue;
        }
        const DatumResult dr = eng.birational_datum_of(f.kind, f.rank, sk.orbit[i]);
        if (!dr.known)
            throw Error(ErrorCode::Undecidable, "birational datum of " + orbit_string(sk.orbit[i]) + " in " + f.name() + " is undecided");
        const LeviOrbit& lo = dr.datum.levi;
        std::size_t pos = 0;
        for (std::size_t j = 0; j < lo.blocks.size(); ++j) {
            const std::size_t k = lo.blocks[j].rank + 1;
            std::vector<int> coords(f.coords.begin() + pos, f.coords.begin() + pos + k);
            std::vector<int> eps(k, 1);
            if (f.kind == Kind::A)
                eps.assign(f.eps.begin() + pos, f.eps.begin() + pos + k);
            else if (f.kind == Kind::D && lo.block_sign[j])
                eps[0] = -1;
            gl_roots(coords, eps);
            orbit_at[coords[0]] = lo.blocks[j];
            pos += k;
        }
        if (lo.rest) {
            std::vector<int> coords(f.coords.begin() + pos, f.coords.end());
            classical_roots(f.kind, coords);
            orbit_at[coords[0]] = *lo.rest;
            pos = f.coords.size();
        }
        if (pos != f.coords.size()) throw Error(ErrorCode::InconsistentEmbedding, "birational datum does not fill " + f.name());
    }
    RootSet levi;
    for (const auto& v : vecs) {
        const int r = rs.index_of(v);
        if (r < 0) throw Error(ErrorCode::InconsistentEmbedding, "birational datum leaves the root system");
        levi.set(r);
    }
    const Realization rl = realize(rs, levi);
    FactorOrbits ol;
    for (const auto& f : rl.factors) ol.push_back(orbit_at.at(f.coords[0]));
    for (const auto& c : centre_components(rs, levi))
        if (c.contains(sk.point)) return g.canonical(levi, c, ol);
    throw Error(ErrorCode::PointOutsideComponent, "class point outside the centre of its birational Levi");
}

int locate_class(const Group& g, BirationalEngine& eng, const std::vector<BirationalSheet>& sheets, const ClassSkeleton& sk) {
    const DecompositionDatum tau = birational_datum_of_class(g, eng, sk);
    for (std::size_t k = 0; k < sheets.size(); ++k)
        if (sheets[k].tau == tau) {
            if (sheets[k].bb != Tri::Yes) break;
            return static_cast<int>(k);
        }
    throw Error(ErrorCode::Undecidable, "no decided birational sheet for " + g.datum_string(tau));
}

LocalModel local_model(const Group& g, const BirationalSheet& sheet, int node) {
    const auto& n = sheet.poset.nodes.at(node);
    if (!n.verdict.definite()) throw Error(ErrorCode::Undecidable, "node verdict is undecided");
    if (!is_b(n)) throw Error(ErrorCode::InvalidInstance, "node lies outside the birational sheet");
    const auto& p = g.pseudo_levi(sheet.tau.pseudo_levi);
    LocalModel m;
    m.node = node;
    m.point = generic_point(g.rs(), n.locus);
    m.centralizer_type = n.type;
    m.levi_type = p.type;
    m.orbit = factor_orbits_string(p.real, sheet.tau.orbit);
    return m;
}

}  // namespace birsheet
