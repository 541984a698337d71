#include "stabreduce/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace stabreduce {

Int vec_gcd(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = vec_gcd(v);
    if (g == 0) return v;
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

Int dot(const IntVec& a, const IntVec& b) {
    SR_REQUIRE(a.size() == b.size(), "dot: size mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    SR_REQUIRE(a.size() == b.size(), "dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
    SR_REQUIRE(a.size() == b.size(), "add: size mismatch");
    IntVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    SR_REQUIRE(a.size() == b.size(), "sub: size mismatch");
    IntVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVec scale(const Int& c, const IntVec& v) {
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

RatVec to_rat(const IntVec& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

IntVec to_int_primitive(const RatVec& v) {
    Int l = 1;
    for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(l);
        out[i] = scaled.get_num();  // denominator is 1 after scaling
    }
    return primitive(out);
}

std::string show(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << ")";
    return os.str();
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
    IntMatrix m(int(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        SR_REQUIRE(int(rows[i].size()) == cols, "from_rows: ragged row");
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols, int rows) {
    IntMatrix m(rows, int(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        SR_REQUIRE(int(cols[j].size()) == rows, "from_cols: ragged column");
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::row(int i) const {
    IntVec out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
    return out;
}

IntVec IntMatrix::col(int j) const {
    IntVec out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

std::vector<IntVec> IntMatrix::row_list() const {
    std::vector<IntVec> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

std::vector<IntVec> IntMatrix::col_list() const {
    std::vector<IntVec> out;
    out.reserve(cols_);
    for (int j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
    SR_REQUIRE(cols_ == other.rows(), "mul: inner dimension mismatch");
    IntMatrix out(rows_, other.cols());
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < other.cols(); ++j) out.at(i, j) += at(i, k) * other.at(k, j);
        }
    return out;
}

IntVec IntMatrix::mul_vec(const IntVec& v) const {
    SR_REQUIRE(int(v.size()) == cols_, "mul_vec: dimension mismatch");
    IntVec out(rows_, Int(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

std::string IntMatrix::show() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j).get_str();
        }
    }
    os << "]";
    return os.str();
}

namespace {

void col_swap(IntMatrix& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void col_negate(IntMatrix& m, int j) {
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = -m.at(i, j);
}

// col_j += c * col_k
void col_addmul(IntMatrix& m, int j, int k, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) += c * m.at(i, k);
}

// Combine columns c and j so that row r becomes (gcd, 0); both transforms
// are applied to h and u simultaneously, keeping h = m * u.
void col_gcd_step(IntMatrix& h, IntMatrix& u, int r, int c, int j) {
    Int a = h.at(r, c), b = h.at(r, j);
    if (b == 0) return;
    if (a == 0) {
        col_swap(h, c, j);
        col_swap(u, c, j);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (int i = 0; i < h.rows(); ++i) {
        Int hc = h.at(i, c), hj = h.at(i, j);
        h.at(i, c) = s * hc + t * hj;
        h.at(i, j) = -bg * hc + ag * hj;
    }
    for (int i = 0; i < u.rows(); ++i) {
        Int uc = u.at(i, c), uj = u.at(i, j);
        u.at(i, c) = s * uc + t * uj;
        u.at(i, j) = -bg * uc + ag * uj;
    }
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.cols());
    int c = 0;
    for (int r = 0; r < m.rows() && c < m.cols(); ++r) {
        // smallest column index with a nonzero entry becomes the pivot column
        int first = -1;
        for (int j = c; j < m.cols(); ++j)
            if (h.at(r, j) != 0) {
                first = j;
                break;
            }
        if (first < 0) continue;
        if (first != c) {
            col_swap(h, c, first);
            col_swap(u, c, first);
        }
        for (int j = c + 1; j < m.cols(); ++j) col_gcd_step(h, u, r, c, j);
        if (h.at(r, c) < 0) {
            col_negate(h, c);
            col_negate(u, c);
        }
        // reduce the pivot row to the left of the pivot into [0, pivot)
        for (int k = 0; k < c; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(r, k).get_mpz_t(), h.at(r, c).get_mpz_t());
            col_addmul(h, k, c, -q);
            col_addmul(u, k, c, -q);
        }
        ++c;
    }
    return {h, u};
}

SmithResult smith_normal_form(const IntMatrix& m) {
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());

    auto row_swap = [&](IntMatrix& x, int a, int b) {
        for (int j = 0; j < x.cols(); ++j) std::swap(x.at(a, j), x.at(b, j));
    };
    auto row_addmul = [&](IntMatrix& x, int a, int b, const Int& cf) {
        if (cf == 0) return;
        for (int j = 0; j < x.cols(); ++j) x.at(a, j) += cf * x.at(b, j);
    };

    int t = 0;
    int nmin = std::min(m.rows(), m.cols());
    while (t < nmin) {
        // deterministic search for the smallest nonzero |entry| in the block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < m.rows(); ++i)
            for (int j = t; j < m.cols(); ++j) {
                if (s.at(i, j) == 0) continue;
                Int a = abs(s.at(i, j));
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) {
            row_swap(s, t, pi);
            row_swap(u, t, pi);
        }
        if (pj != t) {
            col_swap(s, t, pj);
            col_swap(v, t, pj);
        }
        bool dirty = false;
        for (int i = t + 1; i < m.rows(); ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
            row_addmul(s, i, t, -q);
            row_addmul(u, i, t, -q);
            if (s.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < m.cols(); ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
            col_addmul(s, j, t, -q);
            col_addmul(v, j, t, -q);
            if (s.at(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // remainders survived, rerun the pivot search
        // divisibility fixup: fold any non-multiple into the pivot block
        bool fixed = false;
        for (int i = t + 1; i < m.rows() && !fixed; ++i)
            for (int j = t + 1; j < m.cols() && !fixed; ++j)
                if (s.at(i, j) % s.at(t, t) != 0) {
                    row_addmul(s, t, i, Int(1));
                    row_addmul(u, t, i, Int(1));
                    fixed = true;
                }
        if (fixed) continue;
        if (s.at(t, t) < 0) {
            // negating a row of s is a row operation, tracked on the u side
            for (int j = 0; j < m.cols(); ++j) s.at(t, j) = -s.at(t, j);
            for (int j = 0; j < u.cols(); ++j) u.at(t, j) = -u.at(t, j);
        }
        ++t;
    }
    SmithResult out{s, u, v, {}};
    for (int i = 0; i < nmin; ++i)
        if (s.at(i, i) != 0) out.divisors.push_back(s.at(i, i));
    return out;
}

int rank(const IntMatrix& m) {
    HermiteResult hr = hermite_normal_form(m);
    int r = 0;
    for (int j = 0; j < m.cols(); ++j) {
        bool nz = false;
        for (int i = 0; i < m.rows(); ++i)
            if (hr.h.at(i, j) != 0) nz = true;
        if (nz) ++r;
    }
    return r;
}

std::vector<IntVec> kernel_lattice(const IntMatrix& m) {
    HermiteResult hr = hermite_normal_form(m);
    std::vector<IntVec> raw;
    for (int j = 0; j < m.cols(); ++j) {
        bool nz = false;
        for (int i = 0; i < m.rows(); ++i)
            if (hr.h.at(i, j) != 0) nz = true;
        if (!nz) raw.push_back(hr.u.col(j));
    }
    if (raw.empty()) return raw;
    // canonical basis of the same lattice
    IntMatrix b = IntMatrix::from_cols(raw, m.cols());
    HermiteResult canon = hermite_normal_form(b);
    std::vector<IntVec> out;
    for (int j = 0; j < canon.h.cols(); ++j) {
        IntVec v = canon.h.col(j);
        if (!is_zero(v)) out.push_back(v);
    }
    return out;
}

bool in_column_lattice(const IntMatrix& m, const IntVec& v) {
    SR_REQUIRE(int(v.size()) == m.rows(), "in_column_lattice: size mismatch");
    HermiteResult hr = hermite_normal_form(m);
    // back-solve against the pivot structure of h
    IntVec rem = v;
    for (int j = 0; j < hr.h.cols(); ++j) {
        int pr = -1;
        for (int i = 0; i < m.rows(); ++i)
            if (hr.h.at(i, j) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) break;
        // rows above pr are zero in this column; rem must be divisible here
        if (rem[pr] % hr.h.at(pr, j) != 0) {
            // try later columns? pivots rows strictly increase, so no
            return false;
        }
        Int q = rem[pr] / hr.h.at(pr, j);
        for (int i = 0; i < m.rows(); ++i) rem[i] -= q * hr.h.at(i, j);
    }
    return is_zero(rem);
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& v) {
    SR_REQUIRE(int(v.size()) == m.rows(), "solve_integer: size mismatch");
    HermiteResult hr = hermite_normal_form(m);
    IntVec rem = v;
    IntVec z(size_t(m.cols()), Int(0));
    for (int j = 0; j < hr.h.cols(); ++j) {
        int pr = -1;
        for (int i = 0; i < m.rows(); ++i)
            if (hr.h.at(i, j) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) break;
        if (rem[pr] % hr.h.at(pr, j) != 0) return std::nullopt;
        Int q = rem[pr] / hr.h.at(pr, j);
        z[size_t(j)] = q;
        for (int i = 0; i < m.rows(); ++i) rem[i] -= q * hr.h.at(i, j);
    }
    if (!is_zero(rem)) return std::nullopt;
    return hr.u.mul_vec(z);
}

std::optional<RatVec> solve_rational(const std::vector<RatVec>& a, const RatVec& b) {
    SR_REQUIRE(a.size() == b.size(), "solve_rational: row count mismatch");
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<RatVec> w = a;
    RatVec rhs = b;
    std::vector<int> pivot_col_of_row;
    size_t pr = 0;
    for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
        size_t sel = pr;
        while (sel < rows && w[sel][pc] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(w[sel], w[pr]);
        std::swap(rhs[sel], rhs[pr]);
        Rat inv = 1 / w[pr][pc];
        for (size_t j = pc; j < cols; ++j) w[pr][j] *= inv;
        rhs[pr] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr || w[i][pc] == 0) continue;
            Rat f = w[i][pc];
            for (size_t j = pc; j < cols; ++j) w[i][j] -= f * w[pr][j];
            rhs[i] -= f * rhs[pr];
        }
        pivot_col_of_row.push_back(int(pc));
        ++pr;
    }
    for (size_t i = pr; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = rhs[i];
    return x;
}

namespace {

// reduced row echelon form over Q; returns nonzero rows
std::vector<RatVec> rref(std::vector<RatVec> w) {
    size_t rows = w.size();
    size_t cols = rows ? w[0].size() : 0;
    size_t pr = 0;
    for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
        size_t sel = pr;
        while (sel < rows && w[sel][pc] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(w[sel], w[pr]);
        Rat inv = 1 / w[pr][pc];
        for (size_t j = 0; j < cols; ++j) w[pr][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr || w[i][pc] == 0) continue;
            Rat f = w[i][pc];
            for (size_t j = 0; j < cols; ++j) w[i][j] -= f * w[pr][j];
        }
        ++pr;
    }
    w.resize(pr);
    return w;
}

}  // namespace

RationalSubspace::RationalSubspace(int ambient, const std::vector<RatVec>& spanning)
    : ambient_(ambient) {
    for (const RatVec& v : spanning)
        SR_REQUIRE(int(v.size()) == ambient, "RationalSubspace: vector size mismatch");
    basis_ = rref(spanning);
}

RationalSubspace RationalSubspace::span_int(int ambient, const std::vector<IntVec>& spanning) {
    std::vector<RatVec> rs;
    rs.reserve(spanning.size());
    for (const IntVec& v : spanning) rs.push_back(to_rat(v));
    return RationalSubspace(ambient, rs);
}

bool RationalSubspace::contains(const RatVec& v) const {
    SR_REQUIRE(int(v.size()) == ambient_, "contains: size mismatch");
    RatVec rem = v;
    for (const RatVec& b : basis_) {
        size_t p = 0;
        while (p < b.size() && b[p] == 0) ++p;
        if (p == b.size()) continue;
        Rat f = rem[p];  // basis rows are rref, pivot is 1
        if (f == 0) continue;
        for (size_t j = 0; j < rem.size(); ++j) rem[j] -= f * b[j];
    }
    return is_zero(rem);
}

bool RationalSubspace::contains_int(const IntVec& v) const { return contains(to_rat(v)); }

int intersection_dim(const RationalSubspace& a, const RationalSubspace& b) {
    SR_REQUIRE(a.ambient() == b.ambient(), "intersection_dim: ambient mismatch");
    int n = a.ambient();
    int p = a.dim(), q = b.dim();
    if (p == 0 || q == 0) return 0;
    // kernel of the n x (p+q) matrix [A | -B] pushed through A spans a n b
    std::vector<RatVec> stacked(n, RatVec(size_t(p) + q, Rat(0)));
    for (int k = 0; k < p; ++k)
        for (int i = 0; i < n; ++i) stacked[i][k] = a.basis()[k][i];
    for (int k = 0; k < q; ++k)
        for (int i = 0; i < n; ++i) stacked[i][size_t(p) + k] = -b.basis()[k][i];
    // nullspace via rref on the stacked matrix
    std::vector<RatVec> r = rref(stacked);
    std::vector<int> pivots;
    for (const RatVec& row : r) {
        size_t j = 0;
        while (j < row.size() && row[j] == 0) ++j;
        pivots.push_back(int(j));
    }
    std::vector<RatVec> inter;
    for (int j = 0; j < p + q; ++j) {
        if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
        RatVec coeff(size_t(p) + q, Rat(0));
        coeff[j] = 1;
        for (size_t i = 0; i < r.size(); ++i) coeff[pivots[i]] = -r[i][j];
        RatVec v(n, Rat(0));
        for (int k = 0; k < p; ++k)
            for (int i = 0; i < n; ++i) v[i] += coeff[k] * a.basis()[k][i];
        inter.push_back(v);
    }
    return int(rref(inter).size());
}

}  // namespace stabreduce
