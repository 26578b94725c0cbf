#include "birsheet/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace birsheet {

IMat identity_imat(std::size_t n) {
    IMat m(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat to_imat(const std::vector<std::vector<long>>& m) {
    IMat r;
    r.reserve(m.size());
    for (const auto& row : m) {
        IVec v;
        for (long x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return r;
}

std::size_t cols_of(const IMat& m, std::size_t fallback) { return m.empty() ? fallback : m[0].size(); }

namespace {

void swap_rows(IMat& M, std::size_t a, std::size_t b) {
    if (a != b) std::swap(M[a], M[b]);
}
void swap_cols(IMat& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : M) std::swap(row[a], row[b]);
}
// row a -= q * row b
void row_axpy(IMat& M, std::size_t a, const Int& q, std::size_t b) {
    for (std::size_t j = 0; j < M[a].size(); ++j) M[a][j] -= q * M[b][j];
}
void col_axpy(IMat& M, std::size_t a, const Int& q, std::size_t b) {
    for (auto& row : M) row[a] -= q * row[b];
}
Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IMat& A, std::size_t n) {
    const std::size_t m = A.size();
    SmithForm s;
    s.D = A;
    s.U = identity_imat(m);
    s.V = identity_imat(n);
    IMat& D = s.D;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (!found || abs(D[i][j]) < best)) {
                        found = true;
                        best = abs(D[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (!found) goto done;
            swap_rows(D, t, pi);
            swap_rows(s.U, t, pi);
            swap_cols(D, t, pj);
            swap_cols(s.V, t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                Int q = floor_div(D[i][t], D[t][t]);
                row_axpy(D, i, q, t);
                row_axpy(s.U, i, q, t);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                Int q = floor_div(D[t][j], D[t][t]);
                col_axpy(D, j, q, t);
                col_axpy(s.V, j, q, t);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        for (std::size_t k = 0; k < n; ++k) D[t][k] += D[i][k];
                        for (std::size_t k = 0; k < m; ++k) s.U[t][k] += s.U[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : s.U[t]) x = -x;
        }
    }
done:
    s.rank = 0;
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        if (D[i][i] != 0) {
            s.diag.push_back(D[i][i]);
            ++s.rank;
        }
    return s;
}

IMat hermite_rows(IMat A, std::size_t n) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < A.size(); ++c) {
        for (;;) {
            std::size_t piv = A.size();
            for (std::size_t i = r; i < A.size(); ++i)
                if (A[i][c] != 0 && (piv == A.size() || abs(A[i][c]) < abs(A[piv][c]))) piv = i;
            if (piv == A.size()) break;
            std::swap(A[r], A[piv]);
            bool clean = true;
            for (std::size_t i = r + 1; i < A.size(); ++i) {
                if (A[i][c] == 0) continue;
                Int q = floor_div(A[i][c], A[r][c]);
                row_axpy(A, i, q, r);
                if (A[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r >= A.size() || A[r][c] == 0) continue;
        if (A[r][c] < 0)
            for (auto& x : A[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(A[i][c], A[r][c]);
            if (q != 0) row_axpy(A, i, q, r);
        }
        ++r;
    }
    A.resize(r);
    return A;
}

IMat integer_kernel(const IMat& A, std::size_t n) {
    if (A.empty()) return identity_imat(n);
    SmithForm s = smith_normal_form(A, n);
    IMat basis;
    for (std::size_t j = s.rank; j < n; ++j) {
        IVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = s.V[i][j];
        basis.push_back(std::move(v));
    }
    return hermite_rows(std::move(basis), n);
}

bool in_row_lattice(const IMat& A, const IVec& v0) {
    const std::size_t n = v0.size();
    IMat H = hermite_rows(A, n);
    IVec v = v0;
    std::size_t c = 0;
    for (const auto& row : H) {
        while (c < n && row[c] == 0) ++c;
        if (c == n) break;
        if (v[c] % row[c] != 0) return false;
        Int q = v[c] / row[c];
        for (std::size_t j = 0; j < n; ++j) v[j] -= q * row[j];
    }
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

std::size_t rank_q(QMat M) {
    std::size_t r = 0;
    const std::size_t n = M.empty() ? 0 : M[0].size();
    for (std::size_t c = 0; c < n && r < M.size(); ++c) {
        std::size_t piv = r;
        while (piv < M.size() && M[piv][c] == 0) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[r], M[piv]);
        for (std::size_t i = r + 1; i < M.size(); ++i) {
            if (M[i][c] == 0) continue;
            Rat f = M[i][c] / M[r][c];
            for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[r][j];
        }
        ++r;
    }
    return r;
}

Rat frac(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rat r = q - Rat(f);
    r.canonicalize();
    return r;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Rat dot(const IVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += Rat(a[i]) * b[i];
    s.canonicalize();
    return s;
}

Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int gcd_of(const IVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

std::string to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

}  // namespace birsheet
