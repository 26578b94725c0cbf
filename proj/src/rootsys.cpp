#include "birsheet/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <sstream>

namespace birsheet {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UnsupportedType: return "UnsupportedType";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::InvalidOrbit: return "InvalidOrbit";
        case ErrorCode::NoValidPartition: return "NoValidPartition";
        case ErrorCode::InconsistentEmbedding: return "InconsistentEmbedding";
        case ErrorCode::InvalidInstance: return "InvalidInstance";
        case ErrorCode::UniquenessViolation: return "UniquenessViolation";
        case ErrorCode::InconsistentVerdicts: return "InconsistentVerdicts";
        case ErrorCode::PointOutsideComponent: return "PointOutsideComponent";
        case ErrorCode::IncompletePoset: return "IncompletePoset";
        case ErrorCode::Undecidable: return "Undecidable";
        case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
        case ErrorCode::Malformed: return "Malformed";
    }
    return "Error";
}

char kind_char(Kind k) { return "ABCD"[static_cast<int>(k)]; }

Kind parse_kind(char c) {
    switch (c) {
        case 'A': case 'a': return Kind::A;
        case 'B': case 'b': return Kind::B;
        case 'C': case 'c': return Kind::C;
        case 'D': case 'd': return Kind::D;
    }
    throw Error(ErrorCode::UnsupportedType, std::string("unsupported root system type '") + c + "'");
}

std::pair<Kind, int> parse_group_name(const std::string& s) {
    if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
        throw Error(ErrorCode::Malformed, "group must look like C3, got '" + s + "'");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || i > 3)
            throw Error(ErrorCode::Malformed, "group must look like C3, got '" + s + "'");
    const Kind k = parse_kind(s[0]);
    return {k, std::stoi(s.substr(1))};
}

std::vector<int> RootSet::indices() const {
    std::vector<int> out;
    for (int i = 0; i < 128; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

int RootSystem::index_of(const std::vector<int>& v) const {
    for (int i = 0; i < size(); ++i)
        if (roots[i] == v) return i;
    return -1;
}

int RootSystem::negative(int i) const {
    std::vector<int> v = roots[i];
    for (int& x : v) x = -x;
    return index_of(v);
}

RootSet RootSystem::all() const {
    RootSet s;
    for (int i = 0; i < size(); ++i) s.set(i);
    return s;
}

std::string RootSystem::name() const { return std::string(1, kind_char(kind)) + std::to_string(rank); }

namespace {

int ip(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<int> unit(int dim, int i, int c) {
    std::vector<int> v(dim, 0);
    v[i] = c;
    return v;
}

// Solve sum_i c_i basis_i = v over Q; the result is integral for roots and coroots.
std::vector<int> solve_coeffs(const std::vector<std::vector<int>>& basis, const std::vector<int>& v) {
    const std::size_t n = basis.size(), d = v.size();
    QMat M(d, QVec(n + 1));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < n; ++c) M[r][c] = basis[c][r];
        M[r][n] = v[r];
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < d; ++c) {
        std::size_t p = row;
        while (p < d && M[p][c] == 0) ++p;
        if (p == d) continue;
        std::swap(M[row], M[p]);
        Rat inv = 1 / M[row][c];
        for (auto& x : M[row]) x *= inv;
        for (std::size_t r = 0; r < d; ++r)
            if (r != row && M[r][c] != 0) {
                Rat f = M[r][c];
                for (std::size_t k = 0; k <= n; ++k) M[r][k] -= f * M[row][k];
            }
        pivcol.push_back(c);
        ++row;
    }
    std::vector<int> out(n, 0);
    for (std::size_t r = 0; r < pivcol.size(); ++r) {
        Rat x = M[r][n];
        x.canonicalize();
        if (x.get_den() != 1) throw Error(ErrorCode::InvalidInstance, "non-integral root coordinates");
        out[pivcol[r]] = static_cast<int>(x.get_num().get_si());
    }
    return out;
}

}  // namespace

RootSystem build_root_system(Kind kind, int rank) {
    RootSystem rs;
    if (rank < 1) throw Error(ErrorCode::UnsupportedType, "rank must be positive");
    if (rank > kRankCap)
        throw Error(ErrorCode::UnsupportedType, "rank " + std::to_string(rank) + " exceeds the cap " + std::to_string(kRankCap));
    if ((kind == Kind::B || kind == Kind::C) && rank < 2)
        throw Error(ErrorCode::UnsupportedType, std::string(1, kind_char(kind)) + "1 is not a classical label; use A1");
    if (kind == Kind::D && rank < 3) throw Error(ErrorCode::UnsupportedType, "type D requires rank >= 3");
    if (kind == Kind::D && rank == 3) {
        rs = build_root_system(Kind::A, 3);
        rs.warnings.push_back("D3 normalised to A3");
        return rs;
    }
    rs.kind = kind;
    rs.rank = rank;
    const int n = rank;
    const int dim = kind == Kind::A ? n + 1 : n;
    rs.dim = dim;
    std::vector<std::vector<int>> roots;
    std::vector<std::vector<int>> simple;
    if (kind == Kind::A) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (i != j) {
                    auto v = unit(dim, i, 1);
                    v[j] = -1;
                    roots.push_back(v);
                }
        for (int i = 0; i < n; ++i) {
            auto v = unit(dim, i, 1);
            v[i + 1] = -1;
            simple.push_back(v);
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        auto v = unit(dim, i, si);
                        v[j] = sj;
                        roots.push_back(v);
                    }
        if (kind == Kind::B)
            for (int i = 0; i < n; ++i)
                for (int s : {1, -1}) roots.push_back(unit(dim, i, s));
        if (kind == Kind::C)
            for (int i = 0; i < n; ++i)
                for (int s : {2, -2}) roots.push_back(unit(dim, i, s));
        for (int i = 0; i + 1 < n; ++i) {
            auto v = unit(dim, i, 1);
            v[i + 1] = -1;
            simple.push_back(v);
        }
        if (kind == Kind::B) simple.push_back(unit(dim, n - 1, 1));
        if (kind == Kind::C) simple.push_back(unit(dim, n - 1, 2));
        if (kind == Kind::D) {
            auto v = unit(dim, n - 2, 1);
            v[n - 1] = 1;
            simple.push_back(v);
        }
    }
    auto coroot = [](const std::vector<int>& a) {
        const int len = ip(a, a);
        std::vector<int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = 2 * a[i] / len;
        return c;
    };
    std::vector<std::vector<int>> simple_co;
    for (const auto& s : simple) simple_co.push_back(coroot(s));

    struct Rec {
        int height;
        std::vector<int> coeffs, amb;
    };
    std::vector<Rec> recs;
    for (const auto& r : roots) {
        Rec rec;
        rec.amb = r;
        rec.coeffs = solve_coeffs(simple, r);
        rec.height = std::accumulate(rec.coeffs.begin(), rec.coeffs.end(), 0);
        recs.push_back(std::move(rec));
    }
    std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.coeffs < b.coeffs;
    });
    for (auto& r : recs) {
        rs.roots.push_back(r.amb);
        rs.coeffs.push_back(r.coeffs);
        rs.height.push_back(r.height);
        rs.coroot_coeffs.push_back(solve_coeffs(simple_co, coroot(r.amb)));
        IVec pr(n);
        for (int j = 0; j < n; ++j) pr[j] = ip(r.amb, simple_co[j]);
        rs.pairing.push_back(std::move(pr));
    }
    for (const auto& s : simple) rs.simple.push_back(rs.index_of(s));
    rs.highest = rs.size() - 1;
    rs.lowest = 0;
    rs.cartan.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rs.cartan[i][j] = ip(simple[i], simple_co[j]);
    return rs;
}

namespace {

template <class K, class V>
struct MemoTable {
    std::shared_mutex mu;
    std::map<K, std::shared_ptr<const V>> map;
    template <class F>
    std::shared_ptr<const V> get(const K& k, F&& make) {
        {
            std::shared_lock lock(mu);
            auto it = map.find(k);
            if (it != map.end()) return it->second;
        }
        auto v = std::make_shared<const V>(make());
        std::unique_lock lock(mu);
        return map.emplace(k, v).first->second;  // idempotent: first writer wins
    }
};

}  // namespace

std::shared_ptr<const RootSystem> root_system_cached(Kind kind, int rank) {
    static MemoTable<std::pair<int, int>, RootSystem> memo;
    return memo.get({static_cast<int>(kind), rank}, [&] { return build_root_system(kind, rank); });
}

namespace {

WeylElement compose(const WeylElement& a, const WeylElement& b) {  // a after b
    WeylElement c;
    const std::size_t d = a.perm.size();
    c.perm.resize(d);
    c.sign.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        c.perm[i] = a.perm[b.perm[i]];
        c.sign[i] = static_cast<std::int8_t>(b.sign[i] * a.sign[b.perm[i]]);
    }
    return c;
}

WeylElement reflection(const RootSystem& rs, int root) {
    const auto& a = rs.roots[root];
    const int len = ip(a, a);
    WeylElement w;
    w.perm.resize(rs.dim);
    w.sign.resize(rs.dim);
    for (int i = 0; i < rs.dim; ++i) {
        std::vector<int> e = unit(rs.dim, i, 1);
        const int c = 2 * a[i] / len;  // <e_i, a^vee>
        for (int k = 0; k < rs.dim; ++k) e[k] -= c * a[k];
        for (int k = 0; k < rs.dim; ++k)
            if (e[k] != 0) {
                w.perm[i] = static_cast<std::int8_t>(k);
                w.sign[i] = static_cast<std::int8_t>(e[k]);
            }
    }
    return w;
}

}  // namespace

WeylGroup weyl_group(const RootSystem& rs) {
    if (rs.rank > kRankCap) throw Error(ErrorCode::CapExceeded, "Weyl group enumeration beyond rank cap");
    std::vector<WeylElement> gens;
    for (int s : rs.simple) gens.push_back(reflection(rs, s));
    WeylElement id;
    for (int i = 0; i < rs.dim; ++i) {
        id.perm.push_back(static_cast<std::int8_t>(i));
        id.sign.push_back(1);
    }
    auto key = [](const WeylElement& w) { return std::make_pair(w.perm, w.sign); };
    std::set<std::pair<std::vector<std::int8_t>, std::vector<std::int8_t>>> seen{key(id)};
    WeylGroup W;
    W.elements.push_back(id);
    for (std::size_t head = 0; head < W.elements.size(); ++head)
        for (const auto& g : gens) {
            WeylElement c = compose(g, W.elements[head]);
            if (seen.insert(key(c)).second) W.elements.push_back(std::move(c));
        }
    // Root permutations, computed once for every element.
    std::map<std::vector<int>, int> index;
    for (int r = 0; r < rs.size(); ++r) index[rs.roots[r]] = r;
    for (auto& w : W.elements) {
        w.root_perm.resize(rs.size());
        for (int r = 0; r < rs.size(); ++r) {
            std::vector<int> img(rs.dim, 0);
            for (int i = 0; i < rs.dim; ++i) img[w.perm[i]] += w.sign[i] * rs.roots[r][i];
            w.root_perm[r] = static_cast<std::uint8_t>(index.at(img));
        }
    }
    return W;
}

std::shared_ptr<const WeylGroup> weyl_group_cached(const RootSystem& rs) {
    static MemoTable<std::pair<int, int>, WeylGroup> memo;
    return memo.get({static_cast<int>(rs.kind), rs.rank}, [&] { return weyl_group(rs); });
}

RootSet apply(const WeylElement& w, const RootSet& s) {
    RootSet out;
    for (int i = 0; i < 2; ++i) {
        std::uint64_t bits = s.w[i];
        while (bits) {
            const int b = __builtin_ctzll(bits);
            bits &= bits - 1;
            out.set(w.root_perm[i * 64 + b]);
        }
    }
    return out;
}

QVec apply_torus(const RootSystem& rs, const WeylElement& w, const QVec& y) {
    QVec out(rs.rank, Rat(0));
    for (int j = 0; j < rs.rank; ++j) {
        if (y[j] == 0) continue;
        const auto& cc = rs.coroot_coeffs[w.root_perm[rs.simple[j]]];
        for (int i = 0; i < rs.rank; ++i)
            if (cc[i] != 0) out[i] += y[j] * cc[i];
    }
    for (auto& x : out) x.canonicalize();
    return out;
}

IVec apply_cochar(const RootSystem& rs, const WeylElement& w, const IVec& y) {
    IVec out(rs.rank, Int(0));
    for (int j = 0; j < rs.rank; ++j) {
        if (y[j] == 0) continue;
        const auto& cc = rs.coroot_coeffs[w.root_perm[rs.simple[j]]];
        for (int i = 0; i < rs.rank; ++i) out[i] += y[j] * cc[i];
    }
    return out;
}

RootSet subsystem_closure(const RootSystem& rs, const RootSet& seed) {
    RootSet out;
    if (seed.empty()) return out;
    IMat gens;
    for (int i : seed.indices()) {
        IVec v;
        for (int c : rs.coeffs[i]) v.emplace_back(c);
        gens.push_back(std::move(v));
    }
    IMat H = hermite_rows(gens, rs.rank);
    for (int r = 0; r < rs.size(); ++r) {
        IVec v;
        for (int c : rs.coeffs[r]) v.emplace_back(c);
        std::size_t col = 0;
        bool ok = true;
        for (const auto& row : H) {
            while (col < v.size() && row[col] == 0) ++col;
            if (col == v.size()) break;
            if (v[col] % row[col] != 0) {
                ok = false;
                break;
            }
            Int q = v[col] / row[col];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
        }
        if (ok && std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) out.set(r);
    }
    return out;
}

RootSet closure_of_nodes(const RootSystem& rs, const std::vector<int>& nodes) {
    RootSet seed;
    for (int e : nodes) seed.set(rs.node_root(e));
    return subsystem_closure(rs, seed);
}

std::vector<int> subsystem_base(const RootSystem& rs, const RootSet& s) {
    std::vector<int> pos;
    for (int i : s.indices())
        if (rs.positive(i)) pos.push_back(i);
    std::set<std::vector<int>> sums;
    for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = a + 1; b < pos.size(); ++b) {
            std::vector<int> v = rs.roots[pos[a]];
            for (int k = 0; k < rs.dim; ++k) v[k] += rs.roots[pos[b]][k];
            sums.insert(v);
        }
    std::vector<int> base;
    for (int p : pos)
        if (!sums.count(rs.roots[p])) base.push_back(p);
    return base;
}

LatticeQuotient lattice_quotient(const IMat& relations, std::size_t ncols) {
    LatticeQuotient q;
    q.relations = relations;
    SmithForm s = smith_normal_form(relations, ncols);
    q.invariant_factors = s.diag;
    q.free_rank = static_cast<int>(ncols - s.rank);
    q.torsion_order = 1;
    for (const auto& d : s.diag) q.torsion_order *= d;
    return q;
}

bool ShiftedSubtorus::contains(const QVec& y) const {
    for (std::size_t i = 0; i < ann.size(); ++i)
        if (frac(dot(ann[i], y)) != inv[i]) return false;
    return true;
}

bool ShiftedSubtorus::contains(const ShiftedSubtorus& o) const {
    for (const auto& a : ann)
        for (const auto& d : o.dir)
            if (dot(a, d) != 0) return false;
    return contains(o.rep);
}

std::string ShiftedSubtorus::key() const {
    std::ostringstream os;
    for (const auto& row : ann) {
        for (const auto& x : row) os << x.get_str() << ',';
        os << ';';
    }
    os << '|';
    for (const auto& x : inv) os << x.get_str() << ',';
    return os.str();
}

ShiftedSubtorus make_subtorus(const IMat& dir_rows, const QVec& t, std::size_t n) {
    ShiftedSubtorus c;
    c.ann = integer_kernel(dir_rows, n);
    c.dir = c.ann.empty() ? hermite_rows(identity_imat(n), n) : integer_kernel(c.ann, n);
    c.inv.clear();
    for (const auto& a : c.ann) c.inv.push_back(frac(dot(a, t)));
    if (c.ann.empty()) {
        c.rep.assign(n, Rat(0));
        return c;
    }
    SmithForm s = smith_normal_form(c.ann, n);
    const std::size_t k = c.ann.size();
    QVec z(n, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < k; ++j) v += Rat(s.U[i][j]) * c.inv[j];
        z[i] = v / Rat(s.D[i][i]);
    }
    c.rep.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < n; ++j) v += Rat(s.V[i][j]) * z[j];
        c.rep[i] = frac(v);
    }
    return c;
}

RootSet centralizer_of_point(const RootSystem& rs, const QVec& y) {
    RootSet s;
    for (int r = 0; r < rs.size(); ++r)
        if (is_integer(dot(rs.pairing[r], y))) s.set(r);
    return s;
}

RootSet generic_centralizer(const RootSystem& rs, const ShiftedSubtorus& c) {
    RootSet s;
    for (int r = 0; r < rs.size(); ++r) {
        bool constant = true;
        for (const auto& d : c.dir)
            if (dot(rs.pairing[r], d) != 0) {
                constant = false;
                break;
            }
        if (constant && is_integer(dot(rs.pairing[r], c.rep))) s.set(r);
    }
    return s;
}

QVec generic_point(const RootSystem& rs, const ShiftedSubtorus& c) {
    const RootSet target = generic_centralizer(rs, c);
    if (c.dir.empty()) return c.rep;
    for (long q = 2; q <= 10000; ++q) {
        QVec y = c.rep;
        Rat lam = 1;
        for (const auto& d : c.dir) {
            lam /= q;
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += lam * Rat(d[i]);
        }
        for (auto& x : y) x = frac(x);
        if (centralizer_of_point(rs, y) == target) return y;
    }
    throw Error(ErrorCode::CapExceeded, "no certified generic point within the sample bound");
}

std::vector<ShiftedSubtorus> centre_components(const RootSystem& rs, const RootSet& s) {
    const std::size_t n = rs.rank;
    std::vector<int> base = subsystem_base(rs, s);
    if (base.empty()) return {make_subtorus(identity_imat(n), QVec(n, Rat(0)), n)};
    IMat R;
    for (int b : base) R.push_back(rs.pairing[b]);
    SmithForm sf = smith_normal_form(R, n);
    const std::size_t k = sf.rank;
    IMat dir;
    for (std::size_t j = k; j < n; ++j) {
        IVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = sf.V[i][j];
        dir.push_back(std::move(v));
    }
    std::vector<ShiftedSubtorus> out;
    std::vector<long> a(k, 0);
    for (;;) {
        QVec z(n, Rat(0));
        for (std::size_t i = 0; i < k; ++i) z[i] = Rat(a[i]) / Rat(sf.D[i][i]);
        QVec t(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) t[i] += Rat(sf.V[i][j]) * z[j];
        out.push_back(make_subtorus(dir, t, n));
        std::size_t pos = 0;
        while (pos < k && ++a[pos] >= sf.D[pos][pos].get_si()) a[pos++] = 0;
        if (pos == k) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
    return out;
}

std::vector<Rat> ambient_point(const RootSystem& rs, const QVec& y) {
    std::vector<Rat> x(rs.dim, Rat(0));
    for (int j = 0; j < rs.rank; ++j) {
        const auto& a = rs.roots[rs.simple[j]];
        const int len = ip(a, a);
        for (int i = 0; i < rs.dim; ++i) {
            Rat c(2 * a[i], len);
            c.canonicalize();
            x[i] += y[j] * c;
        }
    }
    for (auto& v : x) v.canonicalize();
    return x;
}

}  // namespace birsheet
