#pragma once
// Exact integer/rational linear algebra. Everything is GMP-backed; no floating point.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace birsheet {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IMat = std::vector<IVec>;  // row-major
using QMat = std::vector<QVec>;

IMat identity_imat(std::size_t n);
IMat to_imat(const std::vector<std::vector<long>>& m);
std::size_t cols_of(const IMat& m, std::size_t fallback = 0);

// U * A * V = D, D diagonal with d_1 | d_2 | ..., d_i >= 0, U and V unimodular.
struct SmithForm {
    IMat U, D, V;
    std::vector<Int> diag;  // nonzero diagonal entries, in order
    std::size_t rank = 0;
};
SmithForm smith_normal_form(const IMat& A, std::size_t ncols);

// Row Hermite normal form; zero rows dropped. Canonical for the row lattice.
IMat hermite_rows(IMat A, std::size_t ncols);

// Saturated Z-basis (rows, HNF) of { x in Z^n : A x = 0 }.
IMat integer_kernel(const IMat& A, std::size_t ncols);

// Is v in the Z-row-span of A?
bool in_row_lattice(const IMat& A, const IVec& v);

std::size_t rank_q(QMat M);

Rat frac(const Rat& q);  // representative in [0,1)
bool is_integer(const Rat& q);
Rat dot(const IVec& a, const QVec& b);
Int dot(const IVec& a, const IVec& b);
Int gcd_of(const IVec& v);
std::string to_string(const Rat& q);

}  // namespace birsheet
