#include "birsheet/groups.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace birsheet {

// ---------------------------------------------------------------- group names

std::string GroupSpec::name() const { return std::string(1, kind_char(kind)) + std::to_string(rank); }

std::string GroupSpec::classical_name() const {
    switch (kind) {
        case Kind::A: return "SL" + std::to_string(rank + 1);
        case Kind::B: return "Spin" + std::to_string(2 * rank + 1);
        case Kind::C: return "Sp" + std::to_string(2 * rank);
        case Kind::D: return "Spin" + std::to_string(2 * rank);
    }
    return name();
}

GroupSpec parse_group_spec(const std::string& s) {
    std::string low;
    for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto number_after = [&](std::size_t prefix) -> int {
        const std::string digits = low.substr(prefix);
        if (digits.empty() || digits.size() > 3 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw Error(ErrorCode::Malformed, "cannot parse group name '" + s + "'");
        return std::stoi(digits);
    };
    auto starts = [&](const char* p) { return low.rfind(p, 0) == 0; };
    for (const char* p : {"psl", "pgl", "psp", "pso", "so", "gsp", "gl"})
        if (starts(p) && low.size() > std::string(p).size() && std::isdigit(static_cast<unsigned char>(low[std::string(p).size()])))
            throw Error(ErrorCode::NotSimplyConnected,
                        "'" + s + "' is not simply connected; only SL, Sp and Spin groups are modelled");
    GroupSpec g;
    if (starts("spin")) {
        const int m = number_after(4);
        if (m < 3 || m == 4) throw Error(ErrorCode::UnsupportedType, "Spin" + std::to_string(m) + " is not simple");
        if (m == 3) return {Kind::A, 1};
        g = m % 2 ? GroupSpec{Kind::B, (m - 1) / 2} : GroupSpec{Kind::D, m / 2};
    } else if (starts("sl")) {
        const int m = number_after(2);
        if (m < 2) throw Error(ErrorCode::UnsupportedType, "SL" + std::to_string(m) + " is not semisimple");
        g = {Kind::A, m - 1};
    } else if (starts("sp")) {
        const int m = number_after(2);
        if (m < 2 || m % 2) throw Error(ErrorCode::UnsupportedType, "Sp needs a positive even degree");
        if (m == 2) return {Kind::A, 1};
        g = {Kind::C, m / 2};
    } else {
        auto [k, r] = parse_group_name(s);
        g = {k, r};
    }
    return g;
}

// ---------------------------------------------------------------- Weyl elements

namespace {

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {  // a after b
    WeylElement c;
    const std::size_t n = b.perm.size();
    c.perm.resize(n);
    c.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.perm[i] = a.perm[b.perm[i]];
        c.sign[i] = static_cast<std::int8_t>(b.sign[i] * a.sign[b.perm[i]]);
    }
    c.root_perm.resize(b.root_perm.size());
    for (std::size_t r = 0; r < b.root_perm.size(); ++r) c.root_perm[r] = a.root_perm[b.root_perm[r]];
    return c;
}

WeylElement weyl_inv(const WeylElement& a) {
    WeylElement c;
    const std::size_t n = a.perm.size();
    c.perm.resize(n);
    c.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.perm[a.perm[i]] = static_cast<std::int8_t>(i);
        c.sign[a.perm[i]] = a.sign[i];
    }
    c.root_perm.resize(a.root_perm.size());
    for (std::size_t r = 0; r < a.root_perm.size(); ++r) c.root_perm[a.root_perm[r]] = static_cast<std::uint8_t>(r);
    return c;
}

WeylElement identity_element(const RootSystem& rs) {
    WeylElement w;
    for (int i = 0; i < rs.dim; ++i) {
        w.perm.push_back(static_cast<std::int8_t>(i));
        w.sign.push_back(1);
    }
    for (int r = 0; r < rs.size(); ++r) w.root_perm.push_back(static_cast<std::uint8_t>(r));
    return w;
}

// Classical reflections send each e_i to a signed unit vector.
WeylElement reflection_of(const RootSystem& rs, int root) {
    const auto& a = rs.roots[root];
    int aa = 0;
    for (int x : a) aa += x * x;
    WeylElement w;
    w.perm.resize(rs.dim);
    w.sign.resize(rs.dim);
    for (int i = 0; i < rs.dim; ++i)
        for (int j = 0; j < rs.dim; ++j) {
            const int num = (i == j ? aa : 0) - 2 * a[i] * a[j];
            if (num != 0) {
                w.perm[i] = static_cast<std::int8_t>(j);
                w.sign[i] = static_cast<std::int8_t>(num / aa);
            }
        }
    w.root_perm.resize(rs.size());
    for (int r = 0; r < rs.size(); ++r) {
        std::vector<int> v(rs.dim, 0);
        for (int i = 0; i < rs.dim; ++i) v[w.perm[i]] = w.sign[i] * rs.roots[r][i];
        w.root_perm[r] = static_cast<std::uint8_t>(rs.index_of(v));
    }
    return w;
}

std::vector<int> theta_of(unsigned mask) {
    std::vector<int> t;
    for (int e = 0; e < 32; ++e)
        if (mask >> e & 1u) t.push_back(e);
    return t;
}

int component_of(const std::vector<ShiftedSubtorus>& comps, const QVec& y) {
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (comps[c].contains(y)) return static_cast<int>(c);
    return -1;
}

StabAction compose(const StabAction& g, const StabAction& a) {  // g after a
    StabAction c;
    for (int x : a.comp) c.comp.push_back(g.comp[x]);
    for (std::size_t i = 0; i < a.factor.size(); ++i) {
        c.factor.push_back(g.factor[a.factor[i]]);
        c.flip.push_back(static_cast<char>(a.flip[i] ^ g.flip[a.factor[i]]));
    }
    return c;
}

DecompositionDatum act(const StabAction& a, const DecompositionDatum& d) {
    DecompositionDatum out;
    out.pseudo_levi = d.pseudo_levi;
    out.component = a.comp[d.component];
    out.orbit.resize(d.orbit.size());
    for (std::size_t i = 0; i < d.orbit.size(); ++i) {
        ClassicalOrbit o = d.orbit[i];
        if (a.flip[i] && o.label != VeryEven::None) o.label = o.label == VeryEven::I ? VeryEven::II : VeryEven::I;
        out.orbit[a.factor[i]] = o;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Group

Group::Group(GroupSpec spec, Exec exec, const ThetaClasses* cached) {
    rs_ = root_system_cached(spec.kind, spec.rank);
    spec_ = {rs_->kind, rs_->rank};
    const RootSystem& rs = *rs_;
    for (int i = 1; i <= rs.rank; ++i) simple_refl_.push_back(reflection_of(rs, rs.simple[i - 1]));
    elems_.push_back(identity_element(rs));

    const unsigned full = (1u << (rs.rank + 1)) - 1;
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < full; ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        // rank first, then standard Levis before subsets using the lowest root
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        if ((a & 1u) != (b & 1u)) return (a & 1u) < (b & 1u);
        return theta_of(a) < theta_of(b);
    });
    if (cached) {
        // Re-derive the partition and compare; a stale or corrupted entry is rejected.
        std::vector<int> seen(full, 0);
        for (const auto& cls : *cached)
            for (unsigned m : cls) {
                if (m >= full || seen[m]++) throw Error(ErrorCode::Malformed, "cached partition is not a partition");
            }
        if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(full))
            throw Error(ErrorCode::Malformed, "cached partition misses subsets");
    }
    for (unsigned m : masks) {
        const RootSet s = closure_of_nodes(rs, theta_of(m));
        auto it = orbit_.find(s);
        if (it != orbit_.end()) {
            classes_[it->second.pl].push_back(m);
            pls_[it->second.pl].all_thetas.push_back(theta_of(m));
            continue;
        }
        classes_.push_back({m});
        add_class(theta_of(m), s);
    }
    if (cached && *cached != classes_) throw Error(ErrorCode::Malformed, "cached partition disagrees with the recomputation");

    for (auto& p : pls_) {
        if (p.roots == rs.all()) whole_ = p.index;
        for (const auto& t : p.all_thetas)
            if (std::find(t.begin(), t.end(), 0) == t.end()) {
                p.is_levi = true;
                p.levi_theta = t;
                break;
            }
    }
    const int n = static_cast<int>(pls_.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) finish_class(pls_[i]);
}

void Group::add_class(const std::vector<int>& theta, const RootSet& s) {
    PseudoLevi p;
    p.index = static_cast<int>(pls_.size());
    p.theta = theta;
    p.all_thetas = {theta};
    p.roots = s;
    orbit_list_.emplace_back();
    auto& list = orbit_list_.back();
    orbit_[s] = {p.index, 0};
    list.push_back({s, 0});
    for (std::size_t k = 0; k < list.size(); ++k) {
        const auto [x, e] = list[k];
        for (const auto& refl : simple_refl_) {
            const RootSet y = apply(refl, x);
            if (orbit_.count(y)) continue;
            elems_.push_back(weyl_mul(refl, elems_[e]));
            const int id = static_cast<int>(elems_.size()) - 1;
            orbit_[y] = {p.index, id};
            list.push_back({y, id});
        }
    }
    p.conjugates = static_cast<long>(list.size());
    pls_.push_back(std::move(p));
}

void Group::finish_class(PseudoLevi& p) const {
    const RootSystem& rs = *rs_;
    p.real = realize(rs, p.roots);
    p.type = p.real.type_string();
    p.components = centre_components(rs, p.roots);
    for (const auto& c : p.components) p.rp.push_back(generic_centralizer(rs, c) == p.roots);

    // envelope: roots in the rational span of M
    QMat span;
    for (int b : subsystem_base(rs, p.roots)) {
        QVec v;
        for (int c : rs.coeffs[b]) v.emplace_back(c);
        span.push_back(std::move(v));
    }
    const std::size_t r0 = span.empty() ? 0 : rank_q(span);
    for (int b = 0; b < rs.size(); ++b) {
        QMat m = span;
        QVec v;
        for (int c : rs.coeffs[b]) v.emplace_back(c);
        m.push_back(std::move(v));
        if (rank_q(m) == r0) p.envelope.set(b);
    }
    const int env_class = conjugate(p.envelope).first;
    if (!pls_[env_class].is_levi)
        throw Error(ErrorCode::InconsistentEmbedding, "envelope of " + p.type + " is not a Levi subsystem");
    p.envelope_theta = pls_[env_class].levi_theta;

    // stabiliser of S_P acting on components and factors, from Schreier generators
    auto action_of = [&](const WeylElement& w) {
        StabAction a;
        for (std::size_t c = 0; c < p.components.size(); ++c)
            a.comp.push_back(p.components.size() == 1 ? 0 : component_of(p.components, apply_torus(rs, w, p.components[c].rep)));
        for (const auto& f : p.real.factors) {
            a.factor.push_back(p.real.factor_of_coord(w.perm[f.coords.front()]));
            int sign = 1;
            for (int c : f.coords) sign *= w.sign[c];
            a.flip.push_back(static_cast<char>(f.kind == Kind::D && sign < 0));
        }
        return a;
    };
    std::set<StabAction> gens;
    for (const auto& [x, e] : orbit_list_[p.index])
        for (const auto& refl : simple_refl_) {
            const int ey = orbit_.at(apply(refl, x)).elem;
            gens.insert(action_of(weyl_mul(weyl_inv(elems_[ey]), weyl_mul(refl, elems_[e]))));
        }
    const StabAction id = action_of(elems_[0]);
    std::set<StabAction> group{id};
    std::vector<StabAction> list{id};
    for (std::size_t k = 0; k < list.size(); ++k)
        for (const auto& g : gens) {
            StabAction c = compose(g, list[k]);
            if (group.insert(c).second) list.push_back(std::move(c));
        }
    p.actions = {id};
    for (const auto& a : group)
        if (a != id) p.actions.push_back(a);
}

std::pair<int, WeylElement> Group::conjugate(const RootSet& s) const {
    auto it = orbit_.find(s);
    if (it == orbit_.end()) throw Error(ErrorCode::InvalidInstance, "subsystem is not a pseudo-Levi subsystem");
    return {it->second.pl, weyl_inv(elems_[it->second.elem])};
}

DecompositionDatum Group::canonical(const DecompositionDatum& d) const {
    const auto& p = pls_.at(d.pseudo_levi);
    DecompositionDatum best = d;
    for (const auto& a : p.actions) {
        DecompositionDatum c = act(a, d);
        if (c < best) best = std::move(c);
    }
    return best;
}

DecompositionDatum Group::canonical(const RootSet& s, const ShiftedSubtorus& x, const FactorOrbits& o) const {
    const auto [pl, w] = conjugate(s);
    const auto& p = pls_[pl];
    DecompositionDatum d;
    d.pseudo_levi = pl;
    d.component = component_of(p.components, apply_torus(*rs_, w, x.rep));
    if (d.component < 0 || p.components[d.component].dimension() != x.dimension())
        throw Error(ErrorCode::PointOutsideComponent, "locus is not a component of the centre");
    d.orbit = act_orbits(w, realize(*rs_, s), o, p.real);
    return canonical(d);
}

DecompositionDatum Group::translate(const DecompositionDatum& d, int c) const {
    const auto& p = pls_.at(d.pseudo_levi);
    QVec y = p.components[d.component].rep;
    const QVec& z = centre().at(c).rep;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = frac(y[i] + z[i]);
    DecompositionDatum out = d;
    out.component = component_of(p.components, y);
    return canonical(out);
}

std::string Group::datum_string(const DecompositionDatum& d) const {
    const auto& p = pls_.at(d.pseudo_levi);
    return p.type + " @" + std::to_string(d.component) + " : " + factor_orbits_string(p.real, d.orbit);
}

long Group::jordan_dim(const DecompositionDatum& d) const {
    const auto& p = pls_.at(d.pseudo_levi);
    return rs_->size() - p.roots.count() + orbit_dim(d.orbit) + p.components[d.component].dimension();
}

// ---------------------------------------------------------------- data

std::vector<CenterComponent> center_components(const Group& g, int pseudo_levi) {
    const auto& p = g.pseudo_levi(pseudo_levi);
    std::vector<CenterComponent> out;
    for (std::size_t c = 0; c < p.components.size(); ++c)
        out.push_back({pseudo_levi, static_cast<int>(c), p.components[c], static_cast<bool>(p.rp[c])});
    return out;
}

std::vector<DecompositionDatum> enumerate_decomposition_data(const Group& g, Exec exec) {
    const int n = static_cast<int>(g.pseudo_levis().size());
    std::vector<std::vector<DecompositionDatum>> per(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) {
        const auto& p = g.pseudo_levi(i);
        const auto orbits = enumerate_factor_orbits(p.real);
        for (std::size_t c = 0; c < p.components.size(); ++c) {
            if (!p.rp[c]) continue;
            for (const auto& o : orbits) {
                DecompositionDatum d{i, static_cast<int>(c), o};
                if (g.canonical(d) == d) per[i].push_back(std::move(d));
            }
        }
        std::sort(per[i].begin(), per[i].end());
    }
    std::vector<DecompositionDatum> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

ClassSkeleton induce_class(const Group& g, const DecompositionDatum& d, const QVec& z) {
    const auto& p = g.pseudo_levi(d.pseudo_levi);
    if (!p.components.at(d.component).contains(z))
        throw Error(ErrorCode::PointOutsideComponent, "point does not lie on the datum's component");
    if (d.orbit.size() != p.real.factors.size())
        throw Error(ErrorCode::InvalidOrbit, "orbit does not match the factors of the pseudo-Levi");
    ClassSkeleton sk;
    sk.point = z;
    sk.centralizer = centralizer_of_point(g.rs(), z);
    sk.real = realize(g.rs(), sk.centralizer);
    sk.orbit = induce(p.real, d.orbit, sk.real);
    return sk;
}

ClassSkeleton generic_skeleton(const Group& g, const DecompositionDatum& d) {
    const auto& p = g.pseudo_levi(d.pseudo_levi);
    return induce_class(g, d, generic_point(g.rs(), p.components.at(d.component)));
}

DecompositionDatum datum_of_skeleton(const Group& g, const ClassSkeleton& sk) {
    for (const auto& c : centre_components(g.rs(), sk.centralizer))
        if (c.contains(sk.point)) return g.canonical(sk.centralizer, c, sk.orbit);
    throw Error(ErrorCode::PointOutsideComponent, "skeleton point outside the centre of its centralizer");
}

long class_dim(const Group& g, const ClassSkeleton& sk) {
    return g.rs().size() - sk.centralizer.count() + orbit_dim(sk.orbit);
}

// ---------------------------------------------------------------- flats and component posets

const std::vector<Flat>& Group::flats(Exec exec) const {
    std::call_once(flats_once_, [&] {
        const RootSystem& rs = *rs_;
        struct Job {
            int pl, k, c;
        };
        std::vector<Job> jobs;
        for (const auto& p : pls_)
            for (std::size_t k = 0; k < orbit_list_[p.index].size(); ++k)
                for (std::size_t c = 0; c < p.components.size(); ++c)
                    if (p.rp[c]) jobs.push_back({p.index, static_cast<int>(k), static_cast<int>(c)});
        std::vector<Flat> out(jobs.size());
        const long nj = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
        for (long j = 0; j < nj; ++j) {
            const Job& job = jobs[j];
            const auto& [s, e] = orbit_list_[job.pl][job.k];
            const WeylElement& w = elems_[e];
            const ShiftedSubtorus& comp = pls_[job.pl].components[job.c];
            IMat dir;
            for (const auto& d : comp.dir) dir.push_back(apply_cochar(rs, w, d));
            Flat& f = out[j];
            f.centralizer = s;
            f.locus = make_subtorus(dir, apply_torus(rs, w, comp.rep), rs.rank);
            f.key = f.locus.key();
            f.real = realize(rs, s);
            f.pseudo_levi = job.pl;
            f.component = job.c;
            f.to_standard = weyl_inv(w);
        }
        std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) {
            const int da = a.locus.dimension(), db = b.locus.dimension();
            return da != db ? da > db : a.key < b.key;
        });
        flats_ = std::move(out);
    });
    return flats_;
}

bool ComponentPoset::below(int i, int j) const {
    return i != j && nodes[i].locus.dimension() > nodes[j].locus.dimension() && nodes[i].locus.contains(nodes[j].locus);
}

namespace {

void induce_onto_node(const PseudoLevi& p, const DecompositionDatum& tau, const Realization& real, PosetNode& node) {
    node.real = real;
    node.type = real.type_string();
    node.isolated = node.locus.dimension() == 0;
    node.induced = induce(p.real, tau.orbit, real);
    node.ambiguous = std::any_of(node.induced.begin(), node.induced.end(), [](const ClassicalOrbit& o) { return o.label_ambiguous; });
}

const PseudoLevi& checked_class(const Group& g, const DecompositionDatum& tau) {
    const auto& p = g.pseudo_levi(tau.pseudo_levi);
    if (tau.component < 0 || tau.component >= static_cast<int>(p.components.size()) || !p.rp[tau.component])
        throw Error(ErrorCode::InvalidInstance, "datum component fails the regularity property");
    if (tau.orbit.size() != p.real.factors.size()) throw Error(ErrorCode::InvalidInstance, "datum orbit does not match the factors");
    return p;
}

// Components of { y in X : <beta, y> integral }, for beta non-constant on X.
std::vector<ShiftedSubtorus> hyperplane_section(const RootSystem& rs, const ShiftedSubtorus& x, int beta) {
    const std::size_t n = rs.rank, k = x.dir.size();
    IVec v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = dot(rs.pairing[beta], x.dir[i]);
    const Rat c = dot(rs.pairing[beta], x.rep);
    const SmithForm sf = smith_normal_form(IMat{v}, k);
    const Int g = sf.diag.at(0);
    IVec u(k);
    for (std::size_t i = 0; i < k; ++i) u[i] = sf.V[i][0] * sf.U[0][0];  // v.u = g
    IMat newdir;
    for (const auto& row : integer_kernel(IMat{v}, k)) {
        IVec d(n, Int(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) d[j] += row[i] * x.dir[i][j];
        newdir.push_back(std::move(d));
    }
    std::vector<ShiftedSubtorus> out;
    for (Int m = 0; m < g; ++m) {
        const Rat t = (Rat(m) - c) / Rat(g);
        QVec y = x.rep;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) y[j] += t * Rat(u[i]) * Rat(x.dir[i][j]);
        for (auto& q : y) q = frac(q);
        out.push_back(make_subtorus(newdir, y, n));
    }
    return out;
}

}  // namespace

ComponentPoset component_poset(const Group& g, const DecompositionDatum& tau, Exec exec) {
    const auto& p = checked_class(g, tau);
    const ShiftedSubtorus& top = p.components[tau.component];
    const auto& flats = g.flats(exec);
    const long nf = static_cast<long>(flats.size());
    std::vector<char> keep(nf, 0);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
    for (long i = 0; i < nf; ++i)
        keep[i] = p.roots.subset_of(flats[i].centralizer) && top.contains(flats[i].locus);
    std::vector<const Flat*> picked;
    for (long i = 0; i < nf; ++i)
        if (keep[i]) picked.push_back(&flats[i]);
    if (picked.empty() || !(picked[0]->locus == top))
        throw Error(ErrorCode::InconsistentEmbedding, "component missing from its own flat list");

    ComponentPoset poset;
    poset.tau = tau;
    poset.nodes.resize(picked.size());
    const int n = static_cast<int>(picked.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) {
        const Flat& f = *picked[i];
        PosetNode& node = poset.nodes[i];
        node.centralizer = f.centralizer;
        node.locus = f.locus;
        induce_onto_node(p, tau, f.real, node);
        const auto& q = g.pseudo_levi(f.pseudo_levi);
        node.datum = g.canonical(DecompositionDatum{f.pseudo_levi, f.component, act_orbits(f.to_standard, f.real, node.induced, q.real)});
        // generic centralizers grow as loci shrink, so parents have smaller centralizers
        for (int j = 0; j < i; ++j) {
            const Flat& h = *picked[j];
            if (h.locus.dimension() == f.locus.dimension() + 1 && h.centralizer.subset_of(f.centralizer) && h.locus.contains(f.locus))
                node.parents.push_back(j);
        }
    }
    return poset;
}

ComponentPoset component_poset_by_sections(const Group& g, const DecompositionDatum& tau) {
    const RootSystem& rs = g.rs();
    const auto& p = checked_class(g, tau);
    struct Raw {
        ShiftedSubtorus x;
        RootSet c;
        std::set<int> parents;
    };
    std::vector<Raw> raw{{p.components[tau.component], p.roots, {}}};
    std::map<std::string, int> seen{{raw[0].x.key(), 0}};
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].x.dimension() == 0) continue;
        for (int b = 0; b < rs.size(); ++b) {
            if (!rs.positive(b) || raw[i].c.test(b)) continue;
            if (std::all_of(raw[i].x.dir.begin(), raw[i].x.dir.end(), [&](const IVec& d) { return dot(rs.pairing[b], d) == 0; }))
                continue;
            for (auto& s : hyperplane_section(rs, raw[i].x, b)) {
                auto [it, fresh] = seen.emplace(s.key(), static_cast<int>(raw.size()));
                if (fresh) {
                    const RootSet c = generic_centralizer(rs, s);
                    raw.push_back({std::move(s), c, {}});
                }
                raw[it->second].parents.insert(static_cast<int>(i));
            }
        }
    }
    std::vector<int> order(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<std::string> keys;
    for (const auto& r : raw) keys.push_back(r.x.key());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int da = raw[a].x.dimension(), db = raw[b].x.dimension();
        return da != db ? da > db : keys[a] < keys[b];
    });
    std::vector<int> where(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = static_cast<int>(i);

    ComponentPoset poset;
    poset.tau = tau;
    poset.nodes.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const Raw& r = raw[order[i]];
        PosetNode& node = poset.nodes[i];
        node.centralizer = r.c;
        node.locus = r.x;
        induce_onto_node(p, tau, realize(rs, r.c), node);
        node.datum = g.canonical(r.c, r.x, node.induced);
        for (int q : r.parents) node.parents.push_back(where[q]);
        std::sort(node.parents.begin(), node.parents.end());
    }
    return poset;
}

}  // namespace birsheet
