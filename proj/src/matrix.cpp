#include "weilgamma/matrix.hpp"

#include "weilgamma/errors.hpp"

namespace weilgamma {

namespace {

void require_same_shape(const Matrix& x, const Matrix& y, const char* op) {
    if (!ring_equal(x.ring, y.ring) || x.rows != y.rows || x.cols != y.cols)
        fail(ErrorKind::DescriptorMismatch, std::string(op) + ": shape or ring mismatch");
}

void require_field(const Matrix& m, const char* op) {
    if (!is_field(m.ring))
        fail(ErrorKind::RingNotField, std::string(op) + " requires field coefficients, got " + m.ring->signature);
}

} // namespace

Matrix mat_zero(const RingPtr& r, long rows, long cols) {
    return {r, rows, cols, std::vector<Value>(static_cast<size_t>(rows * cols), ring_zero(r))};
}

Matrix mat_identity(const RingPtr& r, long n) { return mat_scalar(r, n, ring_one(r)); }

Matrix mat_scalar(const RingPtr& r, long n, const Value& c) {
    Matrix m = mat_zero(r, n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

Matrix mat_from(const RingPtr& r, long rows, long cols, std::vector<Value> entries) {
    if (entries.size() != static_cast<size_t>(rows * cols))
        fail(ErrorKind::DescriptorMismatch, "matrix entry count");
    return {r, rows, cols, std::move(entries)};
}

Matrix mat_add(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y, "mat_add");
    Matrix m = x;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = ring_add(m.a[i], y.a[i]);
    return m;
}

Matrix mat_sub(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y, "mat_sub");
    Matrix m = x;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = ring_sub(m.a[i], y.a[i]);
    return m;
}

Matrix mat_mul(const Matrix& x, const Matrix& y) {
    if (!ring_equal(x.ring, y.ring) || x.cols != y.rows)
        fail(ErrorKind::DescriptorMismatch, "mat_mul: shape or ring mismatch");
    Matrix m = mat_zero(x.ring, x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const Value& xik = x.at(i, k);
            if (is_zero(xik)) continue;
            for (long j = 0; j < y.cols; ++j) {
                const Value& ykj = y.at(k, j);
                if (is_zero(ykj)) continue;
                m.at(i, j) = ring_add(m.at(i, j), ring_mul(xik, ykj));
            }
        }
    return m;
}

Matrix mat_neg(const Matrix& x) {
    Matrix m = x;
    for (Value& v : m.a) v = ring_neg(v);
    return m;
}

Matrix mat_scale(const Matrix& x, const Value& c) {
    Matrix m = x;
    for (Value& v : m.a) v = ring_mul(v, c);
    return m;
}

Matrix mat_transpose(const Matrix& x) {
    Matrix m = mat_zero(x.ring, x.cols, x.rows);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) m.at(j, i) = x.at(i, j);
    return m;
}

Matrix mat_pow(const Matrix& x, long e) {
    if (x.rows != x.cols) fail(ErrorKind::DescriptorMismatch, "mat_pow on non-square matrix");
    if (e < 0) return mat_pow(mat_inverse(x), -e);
    Matrix acc = mat_identity(x.ring, x.rows);
    Matrix base = x;
    while (e > 0) {
        if (e & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool mat_eq(const Matrix& x, const Matrix& y) {
    if (!ring_equal(x.ring, y.ring) || x.rows != y.rows || x.cols != y.cols) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
        if (!(x.a[i] == y.a[i])) return false;
    return true;
}

bool mat_is_zero(const Matrix& x) {
    for (const Value& v : x.a)
        if (!is_zero(v)) return false;
    return true;
}

bool mat_is_identity(const Matrix& x) {
    if (x.rows != x.cols) return false;
    return mat_eq(x, mat_identity(x.ring, x.rows));
}

Value mat_trace(const Matrix& x) {
    Value t = ring_zero(x.ring);
    for (long i = 0; i < std::min(x.rows, x.cols); ++i) t = ring_add(t, x.at(i, i));
    return t;
}

Value mat_det(const Matrix& x) {
    if (x.rows != x.cols) fail(ErrorKind::DescriptorMismatch, "determinant of non-square matrix");
    ValueOps ops{x.ring};
    return det_generic<Value>(x.rows, [&](long i, long j) { return x.at(i, j); }, ops);
}

Matrix mat_adjugate(const Matrix& x) {
    long n = x.rows;
    if (n != x.cols) fail(ErrorKind::DescriptorMismatch, "adjugate of non-square matrix");
    Matrix adj = mat_zero(x.ring, n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = ring_one(x.ring);
        return adj;
    }
    ValueOps ops{x.ring};
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            // cofactor C_ij = (-1)^(i+j) det(minor(i,j)); adj = transpose of cofactors
            Value minor = det_generic<Value>(
                n - 1,
                [&](long r, long c) {
                    long rr = r < i ? r : r + 1;
                    long cc = c < j ? c : c + 1;
                    return x.at(rr, cc);
                },
                ops);
            adj.at(j, i) = ((i + j) % 2 == 0) ? minor : ring_neg(minor);
        }
    }
    return adj;
}

Matrix mat_inverse(const Matrix& x) {
    Value d = mat_det(x);
    Value dinv = inverse(d); // NotAUnit surfaces here
    return mat_scale(mat_adjugate(x), dinv);
}

bool mat_is_invertible(const Matrix& x) {
    if (x.rows != x.cols) return false;
    return is_unit(mat_det(x));
}

Matrix mat_block_diag(const Matrix& x, const Matrix& y) {
    if (!ring_equal(x.ring, y.ring)) fail(ErrorKind::DescriptorMismatch, "block_diag ring mismatch");
    Matrix m = mat_zero(x.ring, x.rows + y.rows, x.cols + y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) m.at(i, j) = x.at(i, j);
    for (long i = 0; i < y.rows; ++i)
        for (long j = 0; j < y.cols; ++j) m.at(x.rows + i, x.cols + j) = y.at(i, j);
    return m;
}

Matrix mat_specialize(const Hom& f, const Matrix& x) {
    Matrix m{f.target(), x.rows, x.cols, {}};
    m.a.reserve(x.a.size());
    for (const Value& v : x.a) m.a.push_back(f(v));
    return m;
}

// --- field linear algebra ---------------------------------------------------------

namespace {

// row echelon form in place; returns pivot column per row
std::vector<long> row_reduce(Matrix& m) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < m.cols && row < m.rows; ++col) {
        long pr = -1;
        for (long i = row; i < m.rows; ++i)
            if (!is_zero(m.at(i, col))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
        Value inv = inverse(m.at(row, col));
        for (long j = col; j < m.cols; ++j) m.at(row, j) = ring_mul(m.at(row, j), inv);
        for (long i = 0; i < m.rows; ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            Value c = m.at(i, col);
            for (long j = col; j < m.cols; ++j)
                m.at(i, j) = ring_sub(m.at(i, j), ring_mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

Matrix field_kernel_basis(const Matrix& M) {
    require_field(M, "kernel");
    Matrix m = M;
    std::vector<long> pivots = row_reduce(m);
    std::vector<bool> is_pivot(static_cast<size_t>(M.cols), false);
    for (long p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<long> free_cols;
    for (long j = 0; j < M.cols; ++j)
        if (!is_pivot[static_cast<size_t>(j)]) free_cols.push_back(j);
    Matrix basis = mat_zero(M.ring, M.cols, static_cast<long>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        long fc = free_cols[k];
        basis.at(fc, static_cast<long>(k)) = ring_one(M.ring);
        for (size_t rr = 0; rr < pivots.size(); ++rr)
            basis.at(pivots[rr], static_cast<long>(k)) = ring_neg(m.at(static_cast<long>(rr), fc));
    }
    return basis;
}

long field_rank(const Matrix& M) {
    require_field(M, "rank");
    Matrix m = M;
    return static_cast<long>(row_reduce(m).size());
}

Matrix field_solve(const Matrix& M, const Matrix& B) {
    require_field(M, "solve");
    if (M.rows != B.rows) fail(ErrorKind::DescriptorMismatch, "solve shape mismatch");
    Matrix aug = mat_zero(M.ring, M.rows, M.cols + B.cols);
    for (long i = 0; i < M.rows; ++i) {
        for (long j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        for (long j = 0; j < B.cols; ++j) aug.at(i, M.cols + j) = B.at(i, j);
    }
    std::vector<long> pivots = row_reduce(aug);
    for (long p : pivots)
        if (p >= M.cols) fail(ErrorKind::RelationViolated, "inconsistent linear system");
    Matrix x = mat_zero(M.ring, M.cols, B.cols);
    for (size_t rr = 0; rr < pivots.size(); ++rr)
        for (long j = 0; j < B.cols; ++j) x.at(pivots[rr], j) = aug.at(static_cast<long>(rr), M.cols + j);
    return x;
}

Matrix field_restrict(const Matrix& A, const Matrix& B) {
    // C with A*B = B*C
    return field_solve(B, mat_mul(A, B));
}

} // namespace weilgamma
