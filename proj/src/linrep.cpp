#include "qqa/linrep.hpp"

#include <deque>

#include "qqa/digits.hpp"
#include "qqa/errors.hpp"

namespace qqa {

void LinearRepresentation::validate() const {
    if (base < 2) throw PreconditionError("LinearRepresentation: base must be >= 2");
    if (matrices.size() != base) throw PreconditionError("LinearRepresentation: need one matrix per digit");
    if (u.size() != dim || v.size() != dim) throw PreconditionError("LinearRepresentation: vector size mismatch");
    for (const auto& m : matrices)
        if (m.rows != dim || m.cols != dim) throw PreconditionError("LinearRepresentation: matrix size mismatch");
}

Rational evaluate(const LinearRepresentation& rep, const Integer& n) {
    rep.validate();
    // digits least significant first: the recursion f(qn + i) = M_i f(n)
    // unrolls to u^t M_{n_0} M_{n_1} ... M_{n_L} v, so leading zeros of the
    // expansion act next to v (where M_0 v = v makes them vanish)
    Vec row = rep.u;
    for (int d : to_digits(n, rep.base).digits) row = mul_row(row, rep.matrices[static_cast<std::size_t>(d)]);
    return dot(row, rep.v);
}

bool is_zero_insensitive(const LinearRepresentation& rep) {
    rep.validate();
    return rep.matrices[0].mul_vec(rep.v) == rep.v;
}

LinearRepresentation stabilize(const LinearRepresentation& rep) {
    rep.validate();
    Vec v = rep.v;
    for (std::size_t i = 0; i <= rep.dim + 1; ++i) {
        Vec next = rep.matrices[0].mul_vec(v);
        if (next == v) {
            LinearRepresentation out = rep;
            out.v = v;
            return out;
        }
        v = std::move(next);
    }
    throw MathError("stabilize: no fixpoint of v <- M_0 v within dim+1 iterations");
}

bool SubspaceBasis::contains(const Vec& x) const {
    if (vectors.empty()) return is_zero(x);
    RowSpace space(x.size());
    for (const auto& b : vectors) space.insert(b);
    return space.contains(x);
}

namespace {

// Minimal subspace containing the seeds and invariant under the given maps
// (right multiplication for row spaces, left for column spaces). Breadth
// first in deterministic digit order.
SubspaceBasis invariant_closure(std::size_t ambient, const std::vector<Vec>& seeds,
                                const std::vector<Mat>& ms, bool row_side) {
    RowSpace space(ambient);
    std::deque<Vec> work;
    SubspaceBasis basis;
    for (const auto& s : seeds) {
        if (space.insert(s)) {
            basis.vectors.push_back(s);
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        Vec x = std::move(work.front());
        work.pop_front();
        for (const auto& m : ms) {
            Vec y = row_side ? mul_row(x, m) : m.mul_vec(x);
            if (space.insert(y)) {
                basis.vectors.push_back(y);
                work.push_back(y);
            }
        }
    }
    return basis;
}

} // namespace

SubspaceBasis affine_closure_u(const LinearRepresentation& rep) {
    rep.validate();
    std::vector<Vec> seeds;
    for (const auto& m : rep.matrices) {
        Vec d = mul_row(rep.u, m);
        for (std::size_t i = 0; i < rep.dim; ++i) d[i] -= rep.u[i];
        seeds.push_back(std::move(d));
    }
    return invariant_closure(rep.dim, seeds, rep.matrices, /*row_side=*/true);
}

SubspaceBasis affine_closure_v(const LinearRepresentation& rep) {
    rep.validate();
    std::vector<Vec> seeds;
    for (const auto& m : rep.matrices) {
        Vec d = m.mul_vec(rep.v);
        for (std::size_t i = 0; i < rep.dim; ++i) d[i] -= rep.v[i];
        seeds.push_back(std::move(d));
    }
    return invariant_closure(rep.dim, seeds, rep.matrices, /*row_side=*/false);
}

namespace {

// Basis of span{u^t prod M} (row_side) or span{prod M v} (column side),
// seeded with the vector itself.
std::vector<Vec> reachable_space(const LinearRepresentation& rep, bool row_side) {
    RowSpace space(rep.dim);
    std::deque<Vec> work;
    std::vector<Vec> basis;
    Vec seed = row_side ? rep.u : rep.v;
    if (space.insert(seed)) {
        basis.push_back(seed);
        work.push_back(seed);
    }
    while (!work.empty()) {
        Vec x = std::move(work.front());
        work.pop_front();
        for (const auto& m : rep.matrices) {
            Vec y = row_side ? mul_row(x, m) : m.mul_vec(x);
            if (space.insert(y)) {
                basis.push_back(y);
                work.push_back(y);
            }
        }
    }
    return basis;
}

Vec coords_or_throw(const std::vector<Vec>& basis, const Vec& target, const char* what) {
    auto c = coordinates_in_rows(basis, target);
    if (!c) throw MathError(std::string("minimize: closure basis does not span ") + what);
    return *c;
}

// Projects onto the forward row space when row_side, else onto the backward
// column space, producing an equivalent representation of that rank.
LinearRepresentation project(const LinearRepresentation& rep, bool row_side) {
    std::vector<Vec> basis = reachable_space(rep, row_side);
    const std::size_t d2 = basis.size();
    LinearRepresentation out;
    out.base = rep.base;
    out.dim = d2;
    out.matrices.assign(rep.base, Mat(d2, d2));
    for (std::size_t digit = 0; digit < rep.base; ++digit) {
        for (std::size_t j = 0; j < d2; ++j) {
            Vec image = row_side ? mul_row(basis[j], rep.matrices[digit])
                                 : rep.matrices[digit].mul_vec(basis[j]);
            Vec c = coords_or_throw(basis, image, "an image vector");
            for (std::size_t i = 0; i < d2; ++i) {
                // rows of the new matrix for row vectors, columns for columns
                if (row_side)
                    out.matrices[digit].at(j, i) = c[i];
                else
                    out.matrices[digit].at(i, j) = c[i];
            }
        }
    }
    if (row_side) {
        out.u = coords_or_throw(basis, rep.u, "u");
        out.v.assign(d2, Rational(0));
        for (std::size_t j = 0; j < d2; ++j) out.v[j] = dot(basis[j], rep.v);
    } else {
        out.v = coords_or_throw(basis, rep.v, "v");
        out.u.assign(d2, Rational(0));
        for (std::size_t j = 0; j < d2; ++j) out.u[j] = dot(rep.u, basis[j]);
    }
    return out;
}

void check_same_function(const LinearRepresentation& a, const LinearRepresentation& b) {
    // exhaustive for base 2, a deterministic sample otherwise
    if (a.base == 2) {
        for (unsigned long n = 0; n < 256; ++n)
            if (evaluate(a, Integer(n)) != evaluate(b, Integer(n)))
                throw MathError("minimize: reduced representation disagrees at n=" + std::to_string(n));
        return;
    }
    std::uint64_t state = 0x6a5d21c3e0f1a97bULL;
    Integer range = ipow(static_cast<unsigned long>(a.base), 8);
    for (int i = 0; i < 256; ++i) {
        state = mix64(state);
        Integer n = Integer(static_cast<unsigned long>(state)) % range;
        if (evaluate(a, n) != evaluate(b, n))
            throw MathError("minimize: reduced representation disagrees on a sampled argument");
    }
}

} // namespace

LinearRepresentation minimize(const LinearRepresentation& rep) {
    rep.validate();
    if (!is_zero_insensitive(rep)) throw PreconditionError("minimize: representation is not zero-insensitive");
    LinearRepresentation fwd = project(rep, /*row_side=*/true);
    LinearRepresentation out = project(fwd, /*row_side=*/false);
    check_same_function(rep, out);
    if (!is_zero_insensitive(out))
        throw MathError("minimize: reduction lost zero-insensitivity");
    return out;
}

std::size_t minimal_dimension(const LinearRepresentation& rep) {
    return minimize(rep).dim;
}

bool matrix_condition_quasimultiplicative(const LinearRepresentation& rep, unsigned r) {
    rep.validate();
    return rep.matrices[0].pow(r) == Mat::outer(rep.v, rep.u);
}

bool is_quasimultiplicative(const LinearRepresentation& rep, unsigned r) {
    rep.validate();
    if (!is_zero_insensitive(rep)) throw PreconditionError("is_quasimultiplicative: representation is not zero-insensitive");
    if (minimal_dimension(rep) != rep.dim)
        throw PreconditionError("is_quasimultiplicative: representation is not minimal; minimize it first");
    return matrix_condition_quasimultiplicative(rep, r);
}

bool is_quasiadditive(const LinearRepresentation& rep, unsigned r) {
    rep.validate();
    if (!is_zero_insensitive(rep)) throw PreconditionError("is_quasiadditive: representation is not zero-insensitive");
    if (dot(rep.u, rep.v) != 0) return false;
    Mat m0r = rep.matrices[0].pow(r);
    SubspaceBasis u_space = affine_closure_u(rep);
    SubspaceBasis v_space = affine_closure_v(rep);
    // x^t (M_0^r - I) v = 0 for all x in U
    Vec m0rv = m0r.mul_vec(rep.v);
    for (const auto& x : u_space.vectors)
        if (dot(x, m0rv) != dot(x, rep.v)) return false;
    // u^t (M_0^r - I) y = 0 for all y in V
    Vec um0r = mul_row(rep.u, m0r);
    for (const auto& y : v_space.vectors)
        if (dot(um0r, y) != dot(rep.u, y)) return false;
    // x^t M_0^r y = 0 for all x in U, y in V
    for (const auto& x : u_space.vectors) {
        Vec xm = mul_row(x, m0r);
        for (const auto& y : v_space.vectors)
            if (dot(xm, y) != 0) return false;
    }
    return true;
}

std::optional<unsigned> min_parameter(const LinearRepresentation& rep, Kind kind, unsigned r_max) {
    if (kind == Kind::multiplicative) {
        if (!is_zero_insensitive(rep)) throw PreconditionError("min_parameter: representation is not zero-insensitive");
        if (minimal_dimension(rep) != rep.dim)
            throw PreconditionError("min_parameter: representation is not minimal; minimize it first");
        for (unsigned r = 0; r <= r_max; ++r)
            if (matrix_condition_quasimultiplicative(rep, r)) return r;
        return std::nullopt;
    }
    for (unsigned r = 0; r <= r_max; ++r)
        if (is_quasiadditive(rep, r)) return r;
    return std::nullopt;
}

} // namespace qqa
