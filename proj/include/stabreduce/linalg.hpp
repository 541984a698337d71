#pragma once

// Exact integer and rational linear algebra on arbitrary-precision scalars.
// Everything here is deterministic: fixed pivot order, fixed normalizations.
// No floating point anywhere in this library.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "stabreduce/error.hpp"

namespace stabreduce {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Int vec_gcd(const IntVec& v);
IntVec primitive(const IntVec& v);  // v / gcd, zero vector stays zero
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& v);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);
RatVec to_rat(const IntVec& v);
// Clears denominators; result is primitive integral with the same direction.
IntVec to_int_primitive(const RatVec& v);
std::string show(const IntVec& v);

// Row-major dense integer matrix. Rows or columns may be zero.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols);
    static IntMatrix from_cols(const std::vector<IntVec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    IntVec row(int i) const;
    IntVec col(int j) const;
    std::vector<IntVec> row_list() const;
    std::vector<IntVec> col_list() const;
    IntMatrix transposed() const;
    IntMatrix mul(const IntMatrix& other) const;
    IntVec mul_vec(const IntVec& v) const;
    bool operator==(const IntMatrix& other) const = default;
    std::string show() const;

  private:
    int rows_, cols_;
    std::vector<Int> a_;
};

struct HermiteResult {
    IntMatrix h;  // h = m * u, column-style Hermite normal form
    IntMatrix u;  // unimodular
};

// Column-style HNF: pivots sit in strictly increasing rows as the column
// index grows, pivots are positive, entries left of a pivot in its row are
// reduced into [0, pivot), zero columns are pushed to the right end.
// Pivot ties are broken by smallest column index, so output is stable.
HermiteResult hermite_normal_form(const IntMatrix& m);

struct SmithResult {
    IntMatrix s;  // s = u * m * v, diagonal, d_i | d_{i+1}, d_i >= 0
    IntMatrix u;
    IntMatrix v;
    std::vector<Int> divisors;  // nonzero elementary divisors, in order
};

SmithResult smith_normal_form(const IntMatrix& m);

int rank(const IntMatrix& m);

// Basis of the saturated lattice { v : m v = 0 }, as a list of primitive
// integer vectors in canonical (column HNF) form. Saturation is automatic:
// the kernel columns of a unimodular transform span a direct summand.
std::vector<IntVec> kernel_lattice(const IntMatrix& m);

// Does v lie in the integer column span of m? Witness via HNF back-solve.
bool in_column_lattice(const IntMatrix& m, const IntVec& v);

// Solve m y = v over the integers (y a column-combination vector), or nullopt
// when v is outside the column lattice. Same HNF back-solve as
// in_column_lattice, but the coefficients are kept.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& v);

// Solve a x = b exactly over the rationals; a given as row list.
// Deterministic Gaussian elimination, first-nonzero pivot rule.
// Returns the particular solution with all free variables set to zero.
std::optional<RatVec> solve_rational(const std::vector<RatVec>& a, const RatVec& b);

// A linear subspace of Q^n given by a spanning set; reduced internally to a
// canonical row echelon basis.
class RationalSubspace {
  public:
    RationalSubspace(int ambient, const std::vector<RatVec>& spanning);
    static RationalSubspace span_int(int ambient, const std::vector<IntVec>& spanning);

    int ambient() const { return ambient_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<RatVec>& basis() const { return basis_; }
    bool contains(const RatVec& v) const;
    bool contains_int(const IntVec& v) const;

  private:
    int ambient_;
    std::vector<RatVec> basis_;  // reduced row echelon, canonical
};

// dim(a n b), computed from an explicit spanning set of the intersection
// (kernel of the stacked basis matrix pushed through the first basis).
int intersection_dim(const RationalSubspace& a, const RationalSubspace& b);

}  // namespace stabreduce
