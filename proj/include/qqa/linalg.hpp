#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qqa/numeric.hpp"

namespace qqa {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec kron(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);

// Dense exact-rational matrix, row-major.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rws);
    static Mat outer(const Vec& col, const Vec& row);

    Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    Mat operator*(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Vec mul_vec(const Vec& x) const;  // M x
    Mat pow(unsigned long e) const;
    Mat kron_with(const Mat& o) const;

    bool operator==(const Mat& o) const = default;
};

// x^t M
Vec mul_row(const Vec& x, const Mat& m);

// Incrementally maintained row space with exact reduced row-echelon form.
// raw() returns the inserted vectors that increased the rank, in insertion
// order, so closure algorithms get reproducible bases.
class RowSpace {
public:
    explicit RowSpace(std::size_t ambient) : ambient_(ambient) {}

    bool insert(const Vec& v);  // true iff rank grew
    bool contains(const Vec& v) const;
    std::size_t dim() const { return rref_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<Vec>& raw() const { return raw_; }

private:
    Vec reduce(Vec v) const;

    std::size_t ambient_;
    std::vector<Vec> rref_;
    std::vector<std::size_t> pivots_;
    std::vector<Vec> raw_;
};

// Exact solve of A x = b by Gaussian elimination; nullopt when the system is
// singular or inconsistent. A may be rectangular (rows >= cols).
std::optional<Vec> solve(const Mat& a, const Vec& b);

// LU-style factorization for repeated solves against the same square matrix.
class LinearSolver {
public:
    explicit LinearSolver(Mat a);
    bool singular() const { return singular_; }
    Vec solve(Vec b) const;  // throws MathError when singular

private:
    Mat lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

// Coordinates of target in the span of the given rows: c with sum c_j rows[j]
// = target, or nullopt.
std::optional<Vec> coordinates_in_rows(const std::vector<Vec>& rows, const Vec& target);

} // namespace qqa
