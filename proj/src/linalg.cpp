#include "qqa/linalg.hpp"

#include <cassert>

#include "qqa/errors.hpp"

namespace qqa {

Rational dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    std::size_t k = 0;
    for (const auto& x : a)
        for (const auto& y : b) r[k++] = x * y;
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rws) {
    if (rws.empty()) return Mat(0, 0);
    Mat m(rws.size(), rws[0].size());
    for (std::size_t i = 0; i < rws.size(); ++i) {
        assert(rws[i].size() == m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
    }
    return m;
}

Mat Mat::outer(const Vec& col, const Vec& row) {
    Mat m(col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i)
        for (std::size_t j = 0; j < row.size(); ++j) m.at(i, j) = col[i] * row[j];
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

Vec Mat::col(std::size_t j) const {
    Vec c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

Mat Mat::operator*(const Mat& o) const {
    assert(cols == o.rows);
    Mat r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    assert(rows == o.rows && cols == o.cols);
    Mat r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

Vec Mat::mul_vec(const Vec& x) const {
    assert(x.size() == cols);
    Vec r(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j)
            if (at(i, j) != 0) s += at(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Mat Mat::pow(unsigned long e) const {
    assert(rows == cols);
    Mat result = identity(rows);
    Mat base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Mat Mat::kron_with(const Mat& o) const {
    Mat r(rows * o.rows, cols * o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (at(i, j) == 0) continue;
            for (std::size_t p = 0; p < o.rows; ++p)
                for (std::size_t q = 0; q < o.cols; ++q)
                    r.at(i * o.rows + p, j * o.cols + q) = at(i, j) * o.at(p, q);
        }
    return r;
}

Vec mul_row(const Vec& x, const Mat& m) {
    assert(x.size() == m.rows);
    Vec r(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r[j] += x[i] * m.at(i, j);
    }
    return r;
}

Vec RowSpace::reduce(Vec v) const {
    for (std::size_t k = 0; k < rref_.size(); ++k) {
        const Rational& c = v[pivots_[k]];
        if (c == 0) continue;
        Rational f = c;  // rref rows have pivot 1
        for (std::size_t j = 0; j < ambient_; ++j)
            if (rref_[k][j] != 0) v[j] -= f * rref_[k][j];
    }
    return v;
}

bool RowSpace::insert(const Vec& v) {
    assert(v.size() == ambient_);
    Vec red = reduce(v);
    std::size_t piv = ambient_;
    for (std::size_t j = 0; j < ambient_; ++j)
        if (red[j] != 0) { piv = j; break; }
    if (piv == ambient_) return false;
    Rational inv = red[piv];
    for (auto& x : red) x /= inv;
    // keep earlier rows reduced against the new pivot
    for (std::size_t k = 0; k < rref_.size(); ++k) {
        Rational c = rref_[k][piv];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (red[j] != 0) rref_[k][j] -= c * red[j];
    }
    rref_.push_back(std::move(red));
    pivots_.push_back(piv);
    raw_.push_back(v);
    return true;
}

bool RowSpace::contains(const Vec& v) const {
    return is_zero(reduce(v));
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    assert(a.rows == b.size());
    const std::size_t n = a.rows, m = a.cols;
    Mat work = a;
    Vec rhs = b;
    std::vector<std::size_t> pivot_row_of_col(m, n);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = rank; i < n; ++i)
            if (work.at(i, col) != 0) { sel = i; break; }
        if (sel == n) continue;
        if (sel != rank) {
            for (std::size_t j = 0; j < m; ++j) std::swap(work.at(sel, j), work.at(rank, j));
            std::swap(rhs[sel], rhs[rank]);
        }
        Rational inv = work.at(rank, col);
        for (std::size_t j = col; j < m; ++j) work.at(rank, j) /= inv;
        rhs[rank] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank) continue;
            Rational c = work.at(i, col);
            if (c == 0) continue;
            for (std::size_t j = col; j < m; ++j) work.at(i, j) -= c * work.at(rank, j);
            rhs[i] -= c * rhs[rank];
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }
    // consistency: zero rows must have zero rhs
    for (std::size_t i = rank; i < n; ++i)
        if (rhs[i] != 0) return std::nullopt;
    Vec x(m, Rational(0));
    for (std::size_t col = 0; col < m; ++col)
        if (pivot_row_of_col[col] < n) x[col] = rhs[pivot_row_of_col[col]];
    // verify (guards against free variables interacting with pivot choices)
    Vec check = a.mul_vec(x);
    for (std::size_t i = 0; i < n; ++i)
        if (check[i] != b[i]) return std::nullopt;
    return x;
}

LinearSolver::LinearSolver(Mat a) : lu_(std::move(a)) {
    assert(lu_.rows == lu_.cols);
    const std::size_t n = lu_.rows;
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = col; i < n; ++i)
            if (lu_.at(perm_[i], col) != 0) { sel = i; break; }
        if (sel == n) { singular_ = true; return; }
        std::swap(perm_[col], perm_[sel]);
        const Rational& piv = lu_.at(perm_[col], col);
        for (std::size_t i = col + 1; i < n; ++i) {
            Rational f = lu_.at(perm_[i], col) / piv;
            lu_.at(perm_[i], col) = f;
            if (f == 0) continue;
            for (std::size_t j = col + 1; j < n; ++j)
                if (lu_.at(perm_[col], j) != 0) lu_.at(perm_[i], j) -= f * lu_.at(perm_[col], j);
        }
    }
}

Vec LinearSolver::solve(Vec b) const {
    if (singular_) throw MathError("LinearSolver: singular matrix");
    const std::size_t n = lu_.rows;
    assert(b.size() == n);
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j)
            if (lu_.at(perm_[i], j) != 0) s -= lu_.at(perm_[i], j) * y[j];
        y[i] = s;
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            if (lu_.at(perm_[ii], j) != 0) s -= lu_.at(perm_[ii], j) * x[j];
        x[ii] = s / lu_.at(perm_[ii], ii);
    }
    return x;
}

std::optional<Vec> coordinates_in_rows(const std::vector<Vec>& rows, const Vec& target) {
    if (rows.empty()) return is_zero(target) ? std::optional<Vec>(Vec{}) : std::nullopt;
    // columns of A are the rows-as-vectors; solve A c = target
    Mat a(target.size(), rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        assert(rows[j].size() == target.size());
        for (std::size_t i = 0; i < target.size(); ++i) a.at(i, j) = rows[j][i];
    }
    return solve(a, target);
}

} // namespace qqa
