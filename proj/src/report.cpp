#include "birsheet/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace birsheet {

using nlohmann::ordered_json;

namespace {

ordered_json rat_json(const Rat& q) { return to_string(q); }

ordered_json imat_json(const IMat& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : m) {
        ordered_json row = ordered_json::array();
        for (const auto& x : r) row.push_back(x.get_si());
        rows.push_back(row);
    }
    return rows;
}

ordered_json component_json(const ShiftedSubtorus& c, bool rp, int index) {
    ordered_json j;
    j["index"] = index;
    j["dimension"] = c.dimension();
    j["dir"] = imat_json(c.dir);
    ordered_json rep = ordered_json::array();
    for (const auto& q : c.rep) rep.push_back(rat_json(q));
    j["rep"] = rep;
    j["rp"] = rp;
    return j;
}

ordered_json group_json(const Group& g) {
    ordered_json j;
    j["name"] = g.spec().name();
    j["classical"] = g.spec().classical_name();
    j["kind"] = std::string(1, kind_char(g.spec().kind));
    j["rank"] = g.spec().rank;
    j["warnings"] = g.rs().warnings;
    return j;
}

std::string join(const std::vector<int>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string cut(const std::string& s, bool wide) {
    if (wide || display_width(s) <= kCellLimit) return s;
    std::string out;
    std::size_t w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool lead = (static_cast<unsigned char>(s[i]) & 0xC0) != 0x80;
        if (lead && w++ == kCellLimit - 3) break;
        out += s[i];
    }
    return out + "...";
}

std::string summary_lines(const PartitionReport& p) {
    std::ostringstream os;
    os << "birational sheets: " << p.sheet_count << " (" << p.sheet_count_mod_centre << " up to the centre)\n";
    os << "sheets: " << p.ordinary_sheet_count << " (" << p.ordinary_sheet_count_mod_centre << " up to the centre)\n";
    if (p.undecided_sheets) os << "candidate sheets with undecided rigidity: " << p.undecided_sheets << "\n";
    return os.str();
}

}  // namespace

std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string theta_string(const std::vector<int>& theta) {
    std::string out = "{";
    for (std::size_t i = 0; i < theta.size(); ++i) out += (i ? ",α" : "α") + std::to_string(theta[i]);
    return out + "}";
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         bool wide) {
    std::vector<std::vector<std::string>> cells{header};
    for (const auto& r : rows) {
        std::vector<std::string> c;
        for (const auto& x : r) c.push_back(cut(x, wide));
        cells.push_back(std::move(c));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& r : cells)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    std::string out;
    auto line = [&](const std::vector<std::string>& r) {
        std::string l;
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string x = i < r.size() ? r[i] : "";
            l += x;
            if (i + 1 < width.size()) l += std::string(width[i] - display_width(x) + 2, ' ');
        }
        out += l + "\n";
    };
    line(cells[0]);
    std::vector<std::string> rule;
    for (auto w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (std::size_t i = 1; i < cells.size(); ++i) line(cells[i]);
    return out;
}

// ---------------------------------------------------------------- enumerate

Enumeration run_enumeration(const Group& g, BirationalEngine& eng, Exec exec) {
    Enumeration e;
    e.group = &g;
    e.data = enumerate_decomposition_data(g, exec);
    for (const auto& d : e.data) e.bb.push_back(eng.factors_rigid(g.pseudo_levi(d.pseudo_levi).real, d.orbit));
    e.sheets = enumerate_birational_sheets(g, eng, e.data, exec);
    e.partition = verify_partition(g, e.data, e.sheets);
    return e;
}

ordered_json to_json(const Enumeration& e) {
    const Group& g = *e.group;
    std::map<DecompositionDatum, int> index;
    for (std::size_t i = 0; i < e.data.size(); ++i) index.emplace(e.data[i], static_cast<int>(i));

    ordered_json j;
    j["schema"] = "birsheet/enumerate";
    j["version"] = kReportSchemaVersion;
    j["group"] = group_json(g);
    j["centre_order"] = g.centre().size();

    ordered_json pls = ordered_json::array();
    for (const auto& p : g.pseudo_levis()) {
        ordered_json pj;
        pj["index"] = p.index;
        pj["theta"] = p.theta;
        pj["type"] = p.type;
        pj["is_levi"] = p.is_levi;
        pj["levi_theta"] = p.is_levi ? ordered_json(p.levi_theta) : ordered_json(nullptr);
        pj["isolated"] = p.isolated();
        pj["conjugates"] = p.conjugates;
        ordered_json comps = ordered_json::array();
        for (std::size_t c = 0; c < p.components.size(); ++c)
            comps.push_back(component_json(p.components[c], p.rp[c], static_cast<int>(c)));
        pj["components"] = comps;
        pls.push_back(pj);
    }
    j["pseudo_levis"] = pls;

    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < e.data.size(); ++i) {
        const auto& d = e.data[i];
        const auto& p = g.pseudo_levi(d.pseudo_levi);
        ordered_json dj;
        dj["index"] = i;
        dj["pseudo_levi"] = d.pseudo_levi;
        dj["component"] = d.component;
        dj["orbit"] = factor_orbits_string(p.real, d.orbit);
        dj["jordan_dim"] = g.jordan_dim(d);
        dj["rigid"] = orbit_is_rigid(g, d);
        dj["birationally_rigid"] = tri_name(e.bb[i]);
        data.push_back(dj);
    }
    j["decomposition_data"] = data;

    auto refs = [&](const std::vector<DecompositionDatum>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& d : v) a.push_back(index.at(d));
        return a;
    };
    ordered_json sheets = ordered_json::array();
    for (const auto& s : e.sheets) {
        ordered_json sj;
        sj["datum"] = index.at(s.tau);
        sj["birationally_rigid"] = tri_name(s.bb);
        sj["strata"] = refs(s.jordan_classes);
        sj["undecided"] = refs(s.undecided);
        ordered_json ex = ordered_json::array();
        for (int n : s.excluded) {
            const auto& node = s.poset.nodes[n];
            ordered_json xj;
            xj["centralizer"] = node.type;
            xj["isolated"] = node.isolated;
            xj["datum"] = index.at(node.datum);
            ex.push_back(xj);
        }
        sj["excluded"] = ex;
        sj["complete"] = s.complete;
        ordered_json flags;
        flags["unibranch"] = true;
        flags["normalization_smooth"] = true;
        flags["smooth"] = "yes";
        sj["flags"] = flags;
        sheets.push_back(sj);
    }
    j["birational_sheets"] = sheets;

    const auto& p = e.partition;
    ordered_json sum;
    sum["decomposition_data"] = e.data.size();
    sum["birational_sheets"] = p.sheet_count;
    sum["birational_sheets_mod_centre"] = p.sheet_count_mod_centre;
    sum["sheets"] = p.ordinary_sheet_count;
    sum["sheets_mod_centre"] = p.ordinary_sheet_count_mod_centre;
    sum["undecided_sheets"] = p.undecided_sheets;
    j["summary"] = sum;
    return j;
}

std::string to_table(const Enumeration& e, bool wide) {
    const Group& g = *e.group;
    std::ostringstream os;
    os << g.spec().classical_name() << " (" << g.spec().name() << "), centre of order " << g.centre().size() << "\n";
    for (const auto& w : g.rs().warnings) os << "warning: " << w << "\n";
    os << "\npseudo-Levis\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : g.pseudo_levis()) {
        int rp = static_cast<int>(std::count(p.rp.begin(), p.rp.end(), 1));
        rows.push_back({std::to_string(p.index), theta_string(p.theta), p.type, p.is_levi ? "yes" : "no",
                        std::to_string(p.components.size()), std::to_string(rp)});
    }
    os << render_table({"#", "Θ", "type", "Levi", "components", "RP"}, rows, wide);

    os << "\ndecomposition data\n";
    rows.clear();
    for (std::size_t i = 0; i < e.data.size(); ++i) {
        const auto& d = e.data[i];
        rows.push_back({std::to_string(i), g.pseudo_levi(d.pseudo_levi).type, std::to_string(d.component),
                        factor_orbits_string(g.pseudo_levi(d.pseudo_levi).real, d.orbit), std::to_string(g.jordan_dim(d)),
                        tri_name(e.bb[i])});
    }
    os << render_table({"#", "M", "comp", "orbit", "dim", "bir. rigid"}, rows, wide);

    os << "\nbirational sheets\n";
    rows.clear();
    std::map<DecompositionDatum, int> index;
    for (std::size_t i = 0; i < e.data.size(); ++i) index.emplace(e.data[i], static_cast<int>(i));
    for (std::size_t k = 0; k < e.sheets.size(); ++k) {
        const auto& s = e.sheets[k];
        std::vector<int> strata, excluded;
        for (const auto& d : s.jordan_classes) strata.push_back(index.at(d));
        for (int n : s.excluded) excluded.push_back(index.at(s.poset.nodes[n].datum));
        rows.push_back({std::to_string(k), g.datum_string(s.tau), join(strata, ","), join(excluded, ","),
                        s.complete ? "yes" : "no"});
    }
    os << render_table({"#", "datum", "strata", "excluded", "complete"}, rows, wide);
    os << "\n" << summary_lines(e.partition);
    return os.str();
}

// ---------------------------------------------------------------- verify

void run_transitivity_suite(BirationalEngine& eng, const RootSystem& rs, VerifyReport& out) {
    const unsigned full = (1u << rs.rank) - 1;
    auto theta_of = [](unsigned m) {
        std::vector<int> t;
        for (int i = 0; m >> i; ++i)
            if ((m >> i) & 1u) t.push_back(i + 1);
        return t;
    };
    for (unsigned m = 0; m < full; ++m)
        for (unsigned l = m;; l = (l - 1) & m) {
            if (l != m) {
                const auto tl = theta_of(l), tm = theta_of(m);
                const Realization rl = realize(rs, closure_of_nodes(rs, tl));
                for (const auto& o : enumerate_factor_orbits(rl)) {
                    const ChainCheck c = verify_transitivity(eng, rs, tl, tm, o);
                    ++out.chains;
                    if (c.definite) ++out.chains_definite;
                    if (!c.composes || !c.consistent) {
                        ++out.chains_failed;
                        out.chain_failures.push_back(theta_string(tl) + " < " + theta_string(tm) + " with " +
                                                     factor_orbits_string(rl, o) +
                                                     (c.composes ? ": verdicts break transitivity" : ": induction does not compose"));
                    }
                }
            }
            if (l == 0) break;
        }
}

VerifyReport run_verify(const Group& g, BirationalEngine& eng, Exec exec) {
    VerifyReport v;
    v.group = &g;
    const auto data = enumerate_decomposition_data(g, exec);
    const auto sheets = enumerate_birational_sheets(g, eng, data, exec);
    v.partition = verify_partition(g, data, sheets);
    for (const auto& r : v.partition.rows)
        if (r.status == DatumStatus::Blocked) v.partition_rows_blocked.push_back(g.datum_string(r.datum));
    run_transitivity_suite(eng, g.rs(), v);
    for (const auto& s : sheets) {
        ++v.posets;
        const auto bad = poset_law_violations(s.poset);
        if (bad.empty()) continue;
        ++v.posets_failed;
        for (const auto& b : bad) v.poset_failures.push_back(g.datum_string(s.tau) + ": " + b);
    }
    return v;
}

ordered_json to_json(const VerifyReport& v) {
    const auto& p = v.partition;
    ordered_json j;
    j["schema"] = "birsheet/verify";
    j["version"] = kReportSchemaVersion;
    j["group"] = group_json(*v.group);
    j["status"] = !v.pass() ? "fail" : v.partial() ? "pass-with-unknowns" : "pass";
    ordered_json part;
    part["passed"] = p.passed;
    part["blocked"] = p.blocked;
    part["failed"] = p.failed;
    part["counterexamples"] = p.counterexamples;
    part["blocked_data"] = v.partition_rows_blocked;
    part["birational_sheets"] = p.sheet_count;
    part["birational_sheets_mod_centre"] = p.sheet_count_mod_centre;
    part["sheets"] = p.ordinary_sheet_count;
    part["sheets_mod_centre"] = p.ordinary_sheet_count_mod_centre;
    part["undecided_sheets"] = p.undecided_sheets;
    j["partition"] = part;
    ordered_json tr;
    tr["chains"] = v.chains;
    tr["definite"] = v.chains_definite;
    tr["failed"] = v.chains_failed;
    tr["failures"] = v.chain_failures;
    j["transitivity"] = tr;
    ordered_json po;
    po["posets"] = v.posets;
    po["failed"] = v.posets_failed;
    po["failures"] = v.poset_failures;
    j["poset_laws"] = po;
    return j;
}

std::string to_table(const VerifyReport& v, bool wide) {
    const auto& p = v.partition;
    std::ostringstream os;
    os << v.group->spec().classical_name() << " (" << v.group->spec().name() << ")\n";
    std::vector<std::vector<std::string>> rows{
        {"partition", std::to_string(p.passed), std::to_string(p.blocked), std::to_string(p.failed)},
        {"transitivity", std::to_string(v.chains_definite), std::to_string(v.chains - v.chains_definite),
         std::to_string(v.chains_failed)},
        {"poset laws", std::to_string(v.posets - v.posets_failed), "0", std::to_string(v.posets_failed)},
    };
    os << render_table({"check", "pass", "blocked", "fail"}, rows, wide);
    os << "\n" << summary_lines(p);
    for (const auto& s : v.partition_rows_blocked) os << "blocked: " << s << "\n";
    for (const auto& s : p.counterexamples) os << "counterexample: " << s << "\n";
    for (const auto& s : v.chain_failures) os << "transitivity: " << s << "\n";
    for (const auto& s : v.poset_failures) os << "poset: " << s << "\n";
    os << "status: " << (!v.pass() ? "fail" : v.partial() ? "pass-with-unknowns" : "pass") << "\n";
    return os.str();
}

// ---------------------------------------------------------------- decide

DecideReport run_decide(BirationalEngine& eng, const GroupSpec& spec, const std::vector<int>& levi, const std::string& orbit) {
    const InductionInstance inst = make_instance(spec.kind, spec.rank, levi, orbit);
    DecideReport d;
    d.group = spec.name();
    d.levi = levi;
    std::sort(d.levi.begin(), d.levi.end());
    d.levi_type = levi_orbit_string(inst.levi);
    d.orbit = orbit;
    d.induced = orbit_string(ls_induce(inst.levi, inst.kind, inst.rank));
    d.verdict = eng.decide(inst);
    return d;
}

ordered_json to_json(const DecideReport& d) {
    ordered_json j;
    j["schema"] = "birsheet/decide";
    j["version"] = kReportSchemaVersion;
    j["group"] = d.group;
    j["levi"] = d.levi;
    j["inducing"] = d.levi_type;
    j["induced"] = d.induced;
    j["verdict"] = verdict_name(d.verdict.value);
    j["provenance"] = d.verdict.definite() ? ordered_json(d.verdict.provenance) : ordered_json(nullptr);
    return j;
}

std::string to_table(const DecideReport& d, bool wide) {
    return render_table({"group", "levi", "inducing", "induced", "verdict", "provenance"},
                        {{d.group, "{" + join(d.levi, ",") + "}", d.levi_type, d.induced, verdict_name(d.verdict.value),
                          d.verdict.definite() ? d.verdict.provenance : "-"}},
                        wide);
}

}  // namespace birsheet
