#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace oracle {

using Rat = mpq_class;

namespace {

std::size_t rank_of(std::vector<std::vector<Rat>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            const Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Gram matrix J and nilpotent X of Jordan type p with X^T J + J X = 0 (J empty for gl).
void representative(Kind k, const Partition& p, std::vector<std::vector<int>>& J, std::vector<std::vector<int>>& X) {
    const int n = std::accumulate(p.begin(), p.end(), 0);
    X.assign(n, std::vector<int>(n, 0));
    J.assign(n, std::vector<int>(n, 0));
    const int eps = k == Kind::C ? -1 : 1;
    auto chain = [&](int base, int len) {
        for (int i = 0; i + 1 < len; ++i) X[base + i + 1][base + i] = 1;
    };
    int pos = 0;
    std::map<int, int> pending;  // part -> start of an unpaired chain
    for (int part : p) {
        chain(pos, part);
        const bool self_dual = (k == Kind::C) == (part % 2 == 0);
        if (k == Kind::A) {
        } else if (self_dual) {
            for (int i = 0; i < part; ++i) J[pos + i][pos + part - 1 - i] = (i % 2 == 0) ? 1 : -1;
        } else if (auto it = pending.find(part); it != pending.end()) {
            const int v = it->second, w = pos;
            for (int i = 0; i < part; ++i) {
                const int s = (i % 2 == 0) ? 1 : -1;
                J[v + i][w + part - 1 - i] = s;
                J[w + part - 1 - i][v + i] = eps * s;
            }
            pending.erase(it);
        } else {
            pending[part] = pos;
        }
        pos += part;
    }
}

}  // namespace

long matrix_algebra_dim(Kind k, int n) {
    if (k == Kind::A) return static_cast<long>(n) * n;
    return k == Kind::C ? n * (n + 1) / 2 : n * (n - 1) / 2;
}

long matrix_orbit_dim(Kind k, const Partition& p) {
    std::vector<std::vector<int>> J, X;
    representative(k, p, J, X);
    const int n = static_cast<int>(X.size());
    auto var = [n](int a, int b) { return a * n + b; };
    std::vector<std::vector<Rat>> alg, all;
    if (k != Kind::A)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<Rat> row(n * n, 0);
                for (int c = 0; c < n; ++c) {
                    row[var(c, a)] += J[c][b];
                    row[var(c, b)] += J[a][c];
                }
                alg.push_back(row);
            }
    all = alg;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<Rat> row(n * n, 0);
            for (int c = 0; c < n; ++c) {
                row[var(c, b)] += X[a][c];
                row[var(a, c)] -= X[c][b];
            }
            all.push_back(row);
        }
    return static_cast<long>(rank_of(all)) - static_cast<long>(rank_of(alg));
}

bool x_partition(Kind k, const Partition& p) {
    if (k == Kind::A) return true;
    std::map<int, int> mult;
    for (int x : p) ++mult[x];
    for (auto [part, m] : mult) {
        const bool must_pair = (k == Kind::C) ? part % 2 == 1 : part % 2 == 0;
        if (must_pair && m % 2) return false;
    }
    return true;
}

bool dominates(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return sa == sb;
}

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int left, int max) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(left, max); x >= 1; --x) {
            cur.push_back(x);
            self(self, left - x, x);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::optional<Partition> exhaustive_collapse(Kind k, const Partition& p) {
    const int n = std::accumulate(p.begin(), p.end(), 0);
    std::vector<Partition> below;
    for (auto& q : all_partitions(n))
        if (x_partition(k, q) && dominates(p, q)) below.push_back(q);
    for (auto& q : below)
        if (std::all_of(below.begin(), below.end(), [&](const Partition& r) { return dominates(q, r); })) return q;
    return std::nullopt;
}

Partition transpose(const Partition& p) {
    Partition t;
    for (int i = 1; !p.empty() && i <= p[0]; ++i)
        t.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [i](int x) { return x >= i; })));
    return t;
}

long partition_count(int n) {
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            const long s = (k % 2) ? 1 : -1;
            p[m] += s * p[m - g1];
            if (g2 <= m) p[m] += s * p[m - g2];
        }
    return p[n];
}

long weyl_order(Kind k, int r) {
    long f = 1;
    for (int i = 2; i <= r; ++i) f *= i;
    switch (k) {
        case Kind::A: return f * (r + 1);
        case Kind::B:
        case Kind::C: return f << r;
        case Kind::D: return f << (r - 1);
    }
    return 0;
}

namespace {
Int det(std::vector<std::vector<Int>> m) {
    // Bareiss fraction-free elimination
    const std::size_t n = m.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i)
            for (std::size_t j = c + 1; j < n; ++j) m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev;
        prev = m[c][c];
    }
    return sign * m[n - 1][n - 1];
}

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}
}  // namespace

Int determinantal_divisor(const IMat& a, int k) {
    if (k == 0) return 1;
    const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<std::vector<int>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    Int g = 0;
    for (auto& r : rs)
        for (auto& c : cs) {
            std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(abs(det(m))).get_mpz_t());
        }
    return g;
}

std::vector<std::string> poset_laws(const birsheet::ComponentPoset& p) {
    using birsheet::VerdictValue;
    std::vector<std::string> out;
    const auto& nodes = p.nodes;
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<char>> in(n, std::vector<char>(n, 0));  // in[i][j]: locus j inside locus i
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) in[i][j] = i != j && nodes[i].locus.contains(nodes[j].locus);
    std::vector<int> maximal_nb;
    for (int i = 0; i < n; ++i) {
        bool has_nb_above = false;
        for (int j = 0; j < n; ++j) {
            if (!in[j][i]) continue;
            if (!(nodes[j].centralizer.subset_of(nodes[i].centralizer) && nodes[j].centralizer != nodes[i].centralizer))
                out.push_back("centralizers do not reverse the inclusion " + std::to_string(i) + " < " + std::to_string(j));
            if (nodes[j].verdict.value == VerdictValue::NotBirational) {
                has_nb_above = true;
                if (nodes[i].verdict.value != VerdictValue::NotBirational)
                    out.push_back("NotBirational not inherited by " + std::to_string(i));
            }
            if (nodes[i].verdict.value == VerdictValue::Birational && nodes[j].verdict.value != VerdictValue::Birational)
                out.push_back("Birational not inherited by " + std::to_string(j));
        }
        if (nodes[i].verdict.value == VerdictValue::NotBirational && !has_nb_above) maximal_nb.push_back(i);
    }
    for (int a : maximal_nb)
        for (int b : maximal_nb)
            if (in[a][b]) out.push_back("maximal NotBirational nodes are comparable");
    // the cover relation is exactly the parent lists
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!in[j][i]) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k) cover = !(in[j][k] && in[k][i]);
            const auto& par = nodes[i].parents;
            const bool listed = std::find(par.begin(), par.end(), j) != par.end();
            const bool one_up = nodes[j].locus.dimension() == nodes[i].locus.dimension() + 1;
            if (cover && !one_up) out.push_back("cover " + std::to_string(i) + " < " + std::to_string(j) + " skips a dimension");
            if (listed != cover) out.push_back("parent list of " + std::to_string(i) + " disagrees at " + std::to_string(j));
        }
    return out;
}

}  // namespace oracle
