#include "qqa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qqa/digits.hpp"
#include "qqa/errors.hpp"
#include "qqa/random.hpp"

namespace qqa {

// ---- the building-block set B ----------------------------------------------

void enumerate_B(unsigned q, unsigned r, unsigned max_len,
                 const std::function<void(const Integer&, unsigned)>& fn) {
    if (q < 2) throw PreconditionError("enumerate_B: base must be >= 2");
    if (r < 1) throw PreconditionError("enumerate_B: parameter must be >= 1");
    // one exact-length pass per length keeps the stream in length-then-value
    // order (digits are tried in ascending order, msb first)
    for (unsigned len = 1; len <= max_len; ++len) {
        std::function<void(unsigned, unsigned, const Integer&)> rec =
            [&](unsigned pos, unsigned zrun, const Integer& val) {
                if (pos == len) {
                    fn(val, len);
                    return;
                }
                bool last = pos + 1 == len;
                unsigned first = (pos == 0 || last) ? 1u : 0u;
                for (unsigned d = first; d < q; ++d) {
                    if (d == 0 && zrun + 1 >= r) continue;
                    rec(pos + 1, d == 0 ? zrun + 1 : 0, val * q + d);
                }
            };
        rec(0, 0, Integer(0));
    }
}

std::vector<Integer> members_of_B(unsigned q, unsigned r, unsigned max_len) {
    std::vector<Integer> out;
    enumerate_B(q, r, max_len, [&](const Integer& n, unsigned) { out.push_back(n); });
    return out;
}

std::vector<Integer> count_B_by_length(unsigned q, unsigned r, unsigned max_len) {
    if (r < 1) throw PreconditionError("count_B_by_length: parameter must be >= 1");
    std::vector<Integer> counts(max_len + 1, Integer(0));
    std::vector<Integer> dp(r, Integer(0));  // dp[z]: prefixes ending in z zeros
    if (max_len == 0) return counts;
    dp[0] = q - 1;
    counts[1] = dp[0];
    for (unsigned len = 2; len <= max_len; ++len) {
        std::vector<Integer> next(r, Integer(0));
        Integer total = 0;
        for (unsigned z = 0; z < r; ++z) total += dp[z];
        next[0] = total * (q - 1);
        for (unsigned z = 0; z + 1 < r; ++z) next[z + 1] = dp[z];
        dp = std::move(next);
        counts[len] = dp[0];
    }
    return counts;
}

double beta_root(unsigned q, unsigned r) {
    if (r < 1) throw PreconditionError("beta_root: parameter must be >= 1");
    auto p = [&](double x) {
        double v = std::pow(x, static_cast<double>(r));
        for (unsigned i = 0; i < r; ++i) v -= (q - 1) * std::pow(x, static_cast<double>(i));
        return v;
    };
    double lo = 1.0, hi = static_cast<double>(q);
    if (p(lo) == 0) return lo;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (p(mid) <= 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Rational B_count_closed_form(unsigned q, unsigned r, const Rational& x) {
    Rational den = 1;
    Rational xp = 1;
    for (unsigned i = 1; i <= r; ++i) {
        xp *= x;
        den -= Rational(q - 1) * xp;
    }
    if (den == 0) throw MathError("B_count_closed_form: pole at the given x");
    return Rational(q - 1) * x / den;
}

Rational B_count_resolvent(unsigned q, unsigned r, const Rational& x) {
    if (r < 1) throw PreconditionError("B_count_resolvent: parameter must be >= 1");
    // zero-run automaton: from z, a nonzero digit (q-1 ways) returns to 0, a
    // zero advances to z+1 (< r)
    Mat a(r, r);
    for (unsigned z = 0; z < r; ++z) {
        a.at(0, z) = q - 1;
        if (z + 1 < r) a.at(z + 1, z) = 1;
    }
    Mat system = Mat::identity(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) system.at(i, j) -= x * a.at(i, j);
    LinearSolver solver(std::move(system));
    if (solver.singular()) throw MathError("B_count_resolvent: pole at the given x");
    Vec y(r, Rational(0));
    y[0] = q - 1;
    Vec z = solver.solve(std::move(y));
    return x * z[0];
}

Rational one_minus_x_minus_xr_B_closed_form(unsigned q, unsigned r, const Rational& x) {
    Rational den = 1 - Rational(q) * x + Rational(q - 1) * rpow(x, static_cast<long>(r) + 1);
    if (den == 0) throw MathError("one_minus_x_minus_xr_B_closed_form: pole at the given x");
    return (1 - x) * (1 - Rational(q) * x) / den;
}

// ---- weights ----------------------------------------------------------------

namespace {

// weight of one member for the generating function in t: e^{f t} for additive
// functions, f^t for multiplicative ones
double member_weight(const ArithmeticFunction& f, const Integer& n, double t) {
    Rational value = f.evaluator(n);
    if (f.kind == Kind::additive) return std::exp(to_double(value) * t);
    if (value <= 0) throw MathError("member weight: multiplicative function must be positive on B");
    return std::pow(to_double(value), t);
}

// the additive statistic driving the constants: f itself for additive
// functions, log f for multiplicative ones
double member_statistic(const ArithmeticFunction& f, const Rational& value) {
    if (f.kind == Kind::additive) return to_double(value);
    if (value <= 0) throw MathError("member statistic: multiplicative function must be positive");
    return log_to_double(value);
}

struct LengthAccumulator {
    std::vector<double> s1, s2, max_abs;
    std::vector<double> count;
    explicit LengthAccumulator(unsigned max_len)
        : s1(max_len + 1, 0.0), s2(max_len + 1, 0.0), max_abs(max_len + 1, 0.0), count(max_len + 1, 0.0) {}
    void add(unsigned len, double w) {
        s1[len] += w;
        s2[len] += w * w;
        max_abs[len] = std::max(max_abs[len], std::fabs(w));
        count[len] += 1;
    }
};

bool representation_is_integral(const LinearRepresentation& rep) {
    auto ok = [](const Rational& v) { return is_integer(v); };
    for (const auto& m : rep.matrices)
        for (const auto& e : m.a)
            if (!ok(e)) return false;
    for (const auto& e : rep.u)
        if (!ok(e)) return false;
    for (const auto& e : rep.v)
        if (!ok(e)) return false;
    return true;
}

// Enumerates B carrying u^t prod M as a double row vector (exact for integer
// matrices while entries stay below 2^53). The walk applies matrices in
// msb-first order, so each leaf value is f of the reversed member; reversal
// permutes the members of every length, leaving all per-length sums intact.
void accumulate_via_representation(const LinearRepresentation& rep, unsigned r, unsigned L,
                                   bool take_log, LengthAccumulator& acc) {
    const std::size_t d = rep.dim;
    const unsigned q = rep.base;
    std::vector<std::vector<double>> mats(q, std::vector<double>(d * d));
    for (unsigned digit = 0; digit < q; ++digit)
        for (std::size_t i = 0; i < d * d; ++i) mats[digit][i] = to_double(rep.matrices[digit].a[i]);
    std::vector<double> u(d), v(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = to_double(rep.u[i]);
    for (std::size_t i = 0; i < d; ++i) v[i] = to_double(rep.v[i]);

    std::vector<std::vector<double>> rows(L + 1, std::vector<double>(d));
    rows[0] = u;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned zrun) {
        if (pos == L) return;
        unsigned first = pos == 0 ? 1u : 0u;
        for (unsigned digit = first; digit < q; ++digit) {
            if (digit == 0 && zrun + 1 >= r) continue;
            const auto& m = mats[digit];
            auto& row = rows[pos + 1];
            const auto& prev = rows[pos];
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0;
                for (std::size_t i = 0; i < d; ++i) s += prev[i] * m[i * d + j];
                row[j] = s;
            }
            if (digit != 0) {
                double value = 0;
                for (std::size_t i = 0; i < d; ++i) value += row[i] * v[i];
                acc.add(pos + 1, take_log ? std::log(value) : value);
            }
            rec(pos + 1, digit == 0 ? zrun + 1 : 0);
        }
    };
    rec(0, 0);
}

void accumulate_via_evaluator(const ArithmeticFunction& f, unsigned r, unsigned L, LengthAccumulator& acc) {
    enumerate_B(f.base, r, L, [&](const Integer& n, unsigned len) {
        acc.add(len, member_statistic(f, f.evaluator(n)));
    });
}

LengthAccumulator accumulate_members(const ArithmeticFunction& f, unsigned r, unsigned L) {
    LengthAccumulator acc(L);
    if (f.representation && representation_is_integral(*f.representation) && f.representation->base == f.base) {
        accumulate_via_representation(*f.representation, r, L, f.kind == Kind::multiplicative, acc);
    } else {
        accumulate_via_evaluator(f, r, L, acc);
    }
    return acc;
}

// count_len <= growth_coeff * beta^len, valid for every length by the count
// recurrence once it holds for r consecutive initial lengths
double count_growth_coefficient(unsigned q, unsigned r, double beta) {
    auto counts = count_B_by_length(q, r, std::max(2 * r + 2, 8u));
    double c = 1.0;
    for (std::size_t len = 1; len < counts.size(); ++len)
        c = std::max(c, counts[len].get_d() / std::pow(beta, static_cast<double>(len)));
    return c;
}

// upper bound on the sum over len > L of len^power * ratio^len (power <= 2)
double geometric_tail(double ratio, unsigned L, int power) {
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    double tail = 0;
    unsigned len = L + 1;
    for (; len < L + 20000; ++len) {
        double term = std::pow(static_cast<double>(len), power) * std::pow(ratio, static_cast<double>(len));
        tail += term;
        if (term < 1e-300 || term < tail * 1e-18) return tail;
    }
    // closed-form remainder past the cap: sum_{j>=0} (1+j)^p x^j <= A_p(x)
    double m = static_cast<double>(len);
    double one_minus = 1.0 - ratio;
    double a_p = power == 0 ? 1.0 / one_minus
               : power == 1 ? 1.0 / (one_minus * one_minus)
                            : 2.0 / (one_minus * one_minus * one_minus);
    return tail + std::pow(m, power) * std::pow(ratio, m) * a_p;
}

} // namespace

TruncatedValue B_truncated(const ArithmeticFunction& f, unsigned r, double x, double t, unsigned L) {
    TruncatedValue out;
    double sum = 0;
    double max_stat_slope = 0, max_stat_intercept = 0;
    LengthAccumulator acc(L);
    enumerate_B(f.base, r, L, [&](const Integer& n, unsigned len) {
        Rational value = f.evaluator(n);
        double stat = member_statistic(f, value);  // f or log f, so both weights are exp(stat * t)
        acc.add(len, stat);
        sum += std::pow(x, static_cast<double>(len)) * std::exp(stat * t);
    });
    out.value = sum;
    // |stat| <= slope * len + intercept estimated over the enumerated range
    for (unsigned len = 1; len <= L; ++len) {
        if (acc.count[len] == 0) continue;
        max_stat_slope = std::max(max_stat_slope, acc.max_abs[len] / static_cast<double>(len));
        max_stat_intercept = std::max(max_stat_intercept, acc.max_abs[len]);
    }
    max_stat_slope *= 1.25;  // headroom over the observed slope
    const double beta = beta_root(f.base, r);
    const double coeff = count_growth_coefficient(f.base, r, beta);
    const double ratio = beta * std::fabs(x) * std::exp(std::fabs(t) * max_stat_slope);
    if (ratio >= 1.0) {
        out.divergence_risk = true;
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    out.tail_bound = coeff * std::exp(std::fabs(t) * max_stat_intercept) * geometric_tail(ratio, L, 0);
    return out;
}

double F_from_B(double x, double t, unsigned r, double B_value) {
    (void)t;
    double den = 1 - x;
    den -= std::pow(x, static_cast<double>(r)) * B_value;
    if (std::fabs(den) < 1e-300) throw MathError("F_from_B: pole at the given point");
    double geom = 0;
    for (unsigned i = 0; i < r; ++i) geom += std::pow(x, static_cast<double>(i));
    return (1 + geom * B_value) / den;
}

std::vector<double> B_series(const ArithmeticFunction& f, unsigned r, double t, unsigned k_max) {
    std::vector<double> coeffs(k_max + 1, 0.0);
    enumerate_B(f.base, r, k_max, [&](const Integer& n, unsigned len) {
        coeffs[len] += member_weight(f, n, t);
    });
    return coeffs;
}

std::vector<double> F_series_from_B(const std::vector<double>& b_coeffs, unsigned r) {
    const std::size_t n = b_coeffs.size();
    // numerator 1 + (1 + x + ... + x^{r-1}) B, denominator 1 - x - x^r B
    std::vector<double> num(n, 0.0), den(n, 0.0);
    num[0] = 1;
    for (std::size_t shift = 0; shift < r; ++shift)
        for (std::size_t j = 0; j + shift < n; ++j) num[j + shift] += b_coeffs[j];
    den[0] = 1;
    if (n > 1) den[1] -= 1;
    for (std::size_t j = 0; j + r < n; ++j) den[j + r] -= b_coeffs[j];
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double v = num[k];
        for (std::size_t j = 1; j <= k; ++j) v -= den[j] * out[k - j];
        out[k] = v;  // den[0] == 1
    }
    return out;
}

double brute_force_F_coeff(const ArithmeticFunction& f, unsigned k, double t) {
    Integer limit = ipow(static_cast<unsigned long>(f.base), k);
    double sum = 0;
    for (Integer n = 0; n < limit; ++n) sum += member_weight(f, n, t);
    return sum;
}

// ---- exact moment transfer system ------------------------------------------

namespace {

Mat matrix_from_step(std::size_t n, const std::function<Vec(const Vec&)>& step) {
    Mat a(n, n);
    Vec e(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1;
        Vec col = step(e);
        for (std::size_t i = 0; i < n; ++i) a.at(i, j) = col[i];
        e[j] = 0;
    }
    return a;
}

} // namespace

MomentSystem MomentSystem::from_transducer(const Transducer& t, unsigned r) {
    t.validate();
    if (r < 1) throw PreconditionError("MomentSystem: parameter must be >= 1");
    const unsigned q = t.base;
    // live (zero-run, state) pairs reachable after the first (nonzero) digit
    std::map<std::pair<unsigned, std::size_t>, std::size_t> index;
    std::vector<std::pair<unsigned, std::size_t>> pairs;
    auto intern = [&](unsigned z, std::size_t s) {
        auto key = std::make_pair(z, s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        index.emplace(key, pairs.size());
        pairs.push_back(key);
        return pairs.size() - 1;
    };
    for (unsigned d = 1; d < q; ++d) intern(0, t.transitions[t.initial][d].next);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [z, s] = pairs[p];
        for (unsigned d = 0; d < q; ++d) {
            unsigned z2 = d == 0 ? z + 1 : 0;
            if (z2 >= r) continue;
            intern(z2, t.transitions[s][d].next);
        }
    }
    const std::size_t np = pairs.size();
    const std::size_t n = 3 * np;

    MomentSystem sys;
    sys.q_ = q;
    sys.r_ = r;
    auto step = [&](const Vec& y) {
        Vec out(n, Rational(0));
        for (std::size_t p = 0; p < np; ++p) {
            const Rational& c = y[3 * p];
            const Rational& s1 = y[3 * p + 1];
            const Rational& s2 = y[3 * p + 2];
            if (c == 0 && s1 == 0 && s2 == 0) continue;
            auto [z, s] = pairs[p];
            for (unsigned d = 0; d < q; ++d) {
                unsigned z2 = d == 0 ? z + 1 : 0;
                if (z2 >= r) continue;
                const auto& tr = t.transitions[s][d];
                std::size_t p2 = index.at({z2, tr.next});
                const Rational& o = tr.output;
                out[3 * p2] += c;
                out[3 * p2 + 1] += s1 + o * c;
                out[3 * p2 + 2] += s2 + 2 * o * s1 + o * o * c;
            }
        }
        return out;
    };
    sys.a_ = matrix_from_step(n, step);
    sys.y1_.assign(n, Rational(0));
    for (unsigned d = 1; d < q; ++d) {
        const auto& tr = t.transitions[t.initial][d];
        std::size_t p = index.at({0u, tr.next});
        sys.y1_[3 * p] += 1;
        sys.y1_[3 * p + 1] += tr.output;
        sys.y1_[3 * p + 2] += tr.output * tr.output;
    }
    sys.w0_.assign(n, Rational(0));
    sys.w1_.assign(n, Rational(0));
    sys.w2_.assign(n, Rational(0));
    for (std::size_t p = 0; p < np; ++p) {
        auto [z, s] = pairs[p];
        if (z != 0) continue;  // members end in a nonzero digit
        const Rational& fin = t.final_outputs[s];
        sys.w0_[3 * p] += 1;
        sys.w1_[3 * p + 1] += 1;
        sys.w1_[3 * p] += fin;
        sys.w2_[3 * p + 2] += 1;
        sys.w2_[3 * p + 1] += 2 * fin;
        sys.w2_[3 * p] += fin * fin;
    }
    return sys;
}

MomentSystem MomentSystem::from_representation(const LinearRepresentation& rep, unsigned r) {
    rep.validate();
    if (r < 1) throw PreconditionError("MomentSystem: parameter must be >= 1");
    const unsigned q = rep.base;
    const std::size_t d = rep.dim;
    const std::size_t d2 = d * d;
    // The strings are consumed msb-first, so each accepted string contributes
    // f of its reversal; the member set of every length is closed under
    // reversal, so the tracked sums equal the true per-length sums.
    // per zero-run state: one count slot, d row slots, d^2 tensor-square slots
    const std::size_t block = 1 + d + d2;
    const std::size_t n = r * block;
    std::vector<Mat> kron_mats;
    kron_mats.reserve(q);
    for (unsigned digit = 0; digit < q; ++digit)
        kron_mats.push_back(rep.matrices[digit].kron_with(rep.matrices[digit]));

    MomentSystem sys;
    sys.q_ = q;
    sys.r_ = r;
    auto slice = [&](const Vec& y, unsigned z, std::size_t offset, std::size_t len) {
        return Vec(y.begin() + static_cast<long>(z * block + offset),
                   y.begin() + static_cast<long>(z * block + offset + len));
    };
    auto step = [&](const Vec& y) {
        Vec out(n, Rational(0));
        for (unsigned z = 0; z < r; ++z) {
            Vec row = slice(y, z, 1, d);
            Vec sq = slice(y, z, 1 + d, d2);
            const Rational& c = y[z * block];
            for (unsigned digit = 0; digit < q; ++digit) {
                unsigned z2 = digit == 0 ? z + 1 : 0;
                if (z2 >= r) continue;
                out[z2 * block] += c;
                Vec row2 = mul_row(row, rep.matrices[digit]);
                Vec sq2 = mul_row(sq, kron_mats[digit]);
                for (std::size_t i = 0; i < d; ++i) out[z2 * block + 1 + i] += row2[i];
                for (std::size_t i = 0; i < d2; ++i) out[z2 * block + 1 + d + i] += sq2[i];
            }
        }
        return out;
    };
    sys.a_ = matrix_from_step(n, step);
    sys.y1_.assign(n, Rational(0));
    for (unsigned digit = 1; digit < q; ++digit) {
        Vec row = mul_row(rep.u, rep.matrices[digit]);
        Vec sq = kron(row, row);
        sys.y1_[0] += 1;
        for (std::size_t i = 0; i < d; ++i) sys.y1_[1 + i] += row[i];
        for (std::size_t i = 0; i < d2; ++i) sys.y1_[1 + d + i] += sq[i];
    }
    sys.w0_.assign(n, Rational(0));
    sys.w1_.assign(n, Rational(0));
    sys.w2_.assign(n, Rational(0));
    sys.w0_[0] = 1;
    Vec vv = kron(rep.v, rep.v);
    for (std::size_t i = 0; i < d; ++i) sys.w1_[1 + i] = rep.v[i];
    for (std::size_t i = 0; i < d2; ++i) sys.w2_[1 + d + i] = vv[i];
    return sys;
}

std::vector<MomentSystem::LengthSums> MomentSystem::sums_by_length(unsigned max_len) const {
    std::vector<LengthSums> out(max_len + 1);
    if (max_len == 0) return out;
    Vec y = y1_;
    for (unsigned len = 1; len <= max_len; ++len) {
        out[len] = {dot(w0_, y), dot(w1_, y), dot(w2_, y)};
        if (len < max_len) y = a_.mul_vec(y);
    }
    return out;
}

MomentSystem::Derivatives MomentSystem::derivatives_at_inv_q() const {
    const Rational x = make_rational(1, q_);
    const std::size_t n = a_.rows;
    Mat system = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a_.at(i, j) != 0) system.at(i, j) -= x * a_.at(i, j);
    LinearSolver solver(std::move(system));
    if (solver.singular())
        throw MathError("MomentSystem: I - A/q is singular; the growth precondition fails");
    Vec z = solver.solve(y1_);
    Vec z2 = solver.solve(z);
    Derivatives d;
    d.b_t = x * dot(w1_, z);
    d.b_tt = x * dot(w2_, z);
    d.b_tx = dot(w1_, z2);
    return d;
}

Rational mu_from_derivatives(const MomentSystem::Derivatives& d, unsigned q, unsigned r) {
    return d.b_t * rpow(Rational(q), -2L * r);
}

Rational sigma2_formula(const MomentSystem::Derivatives& d, unsigned q, unsigned r) {
    const long rr = static_cast<long>(r);
    const Rational b1 = d.b_t, b2 = d.b_tt, b11 = d.b_tx;
    const Rational qr = Rational(q);
    const Rational qm1 = qr - 1;
    auto qp = [&](long e) { return rpow(qr, e); };
    return -b1 * b1 * qp(1 - 4 * rr) / qm1
         + 2 * b1 * b1 * qp(1 - 3 * rr) / qm1
         - b1 * b1 * qp(-4 * rr) / qm1
         - Rational(4 * rr) * b1 * b1 * qp(-4 * rr)
         + b2 * qp(-2 * rr)
         - 2 * b1 * b11 * qp(-4 * rr - 1);
}

Rational sigma2_implicit(const MomentSystem::Derivatives& d, unsigned q, unsigned r) {
    const long rr = static_cast<long>(r);
    const Rational qr = Rational(q);
    const Rational qm1 = qr - 1;
    auto qp = [&](long e) { return rpow(qr, e); };
    // G(x, t) = x + x^r B(x, t) - 1 vanishes at the dominant singularity
    // alpha(t); differentiate twice at t = 0, alpha(0) = 1/q.
    const Rational g_x = qp(rr + 1);
    const Rational g_t = qp(-rr) * d.b_t;
    const Rational alpha1 = -g_t / g_x;
    const Rational g_tt = qp(-rr) * d.b_tt;
    const Rational g_xt = Rational(rr) * qp(1 - rr) * d.b_t + qp(-rr) * d.b_tx;
    const Rational g_xx = 2 * qp(rr + 2) * (qp(rr + 1) - 1 - Rational(rr + 1) * qm1) / qm1;
    const Rational alpha2 = -(g_tt + 2 * g_xt * alpha1 + g_xx * alpha1 * alpha1) / g_x;
    // sigma^2 = -(log alpha)''(0) = -q alpha'' + q^2 alpha'^2
    return -qr * alpha2 + qr * qr * alpha1 * alpha1;
}

// ---- constants ---------------------------------------------------------------

ConstantsResult exact_constants_additive(const ArithmeticFunction& f, std::optional<unsigned> r_opt_param) {
    if (f.kind != Kind::additive)
        throw PreconditionError("exact_constants_additive: additive function required");
    unsigned r = r_opt_param.value_or(std::max(f.parameter, 1u));
    if (r < 1) throw PreconditionError("exact_constants_additive: parameter must be >= 1");
    MomentSystem sys = [&] {
        if (f.transducer) return MomentSystem::from_transducer(*f.transducer, r);
        if (f.representation) return MomentSystem::from_representation(*f.representation, r);
        throw PreconditionError("exact_constants_additive: no finite-state evaluator available for " + f.name);
    }();
    auto d = sys.derivatives_at_inv_q();
    Rational mu = mu_from_derivatives(d, f.base, r);
    Rational s2 = sigma2_formula(d, f.base, r);
    if (s2 != sigma2_implicit(d, f.base, r))
        throw MathError("exact_constants_additive: variance routes disagree (transcription bug)");
    ConstantsResult out;
    out.method = "exact-rational";
    out.q = f.base;
    out.r = r;
    out.mu_exact = mu;
    out.sigma2_exact = s2;
    out.mu = to_double(mu);
    out.sigma2 = to_double(s2);
    return out;
}

ConstantsResult truncated_constants(const ArithmeticFunction& f, unsigned r, unsigned L, double tolerance) {
    if (r < 1) throw PreconditionError("truncated_constants: parameter must be >= 1");
    if (L < 2 * r + 2) throw PreconditionError("truncated_constants: truncation too small");
    LengthAccumulator acc = accumulate_members(f, r, L);
    const unsigned q = f.base;
    const double x = 1.0 / q;
    double b1 = 0, b2 = 0, b11 = 0;
    for (unsigned len = 1; len <= L; ++len) {
        double xl = std::pow(x, static_cast<double>(len));
        b1 += xl * acc.s1[len];
        b2 += xl * acc.s2[len];
        b11 += static_cast<double>(len) * xl * q * acc.s1[len];  // len * x^{len-1}
    }
    // statistic growth |w| <= slope*len + intercept, from the enumerated range
    double slope = 0;
    for (unsigned len = (L + 1) / 2; len <= L; ++len)
        if (acc.count[len] > 0) slope = std::max(slope, acc.max_abs[len] / static_cast<double>(len));
    slope *= 1.25;
    double intercept = 0;
    for (unsigned len = 1; len <= L; ++len)
        if (acc.count[len] > 0) intercept = std::max(intercept, acc.max_abs[len] - slope * len);

    const double beta = beta_root(q, r);
    const double coeff = count_growth_coefficient(q, r, beta);
    const double rho = beta * x;
    double tail0 = coeff * geometric_tail(rho, L, 0);
    double tail1 = coeff * geometric_tail(rho, L, 1);
    double tail2 = coeff * geometric_tail(rho, L, 2);
    double tb1 = slope * tail1 + intercept * tail0;
    double tb2 = slope * slope * tail2 + 2 * slope * intercept * tail1 + intercept * intercept * tail0;
    double tb11 = q * (slope * tail2 + intercept * tail1);

    const long rr = static_cast<long>(r);
    auto qp = [&](long e) { return std::pow(static_cast<double>(q), static_cast<double>(e)); };
    const double qm1 = q - 1.0;
    double mu = b1 * qp(-2 * rr);
    double s2 = -b1 * b1 * qp(1 - 4 * rr) / qm1 + 2 * b1 * b1 * qp(1 - 3 * rr) / qm1
              - b1 * b1 * qp(-4 * rr) / qm1 - 4.0 * rr * b1 * b1 * qp(-4 * rr)
              + b2 * qp(-2 * rr) - 2 * b1 * b11 * qp(-4 * rr - 1);
    double ds2_db1 = std::fabs(-2 * b1 * qp(1 - 4 * rr) / qm1 + 4 * b1 * qp(1 - 3 * rr) / qm1
                               - 2 * b1 * qp(-4 * rr) / qm1 - 8.0 * rr * b1 * qp(-4 * rr)
                               - 2 * b11 * qp(-4 * rr - 1));

    ConstantsResult out;
    out.method = "truncated-series";
    out.q = q;
    out.r = r;
    out.truncation = L;
    out.mu = mu;
    out.sigma2 = s2;
    out.mu_error = tb1 * qp(-2 * rr);
    out.sigma2_error = ds2_db1 * tb1 + qp(-2 * rr) * tb2 + 2 * std::fabs(b1) * qp(-4 * rr - 1) * tb11;
    out.flagged = out.mu_error > tolerance || out.sigma2_error > tolerance;
    return out;
}

ConstantsResult runlength_constants(const BaseSequence& s, unsigned cutoff) {
    if (cutoff < 1) throw PreconditionError("runlength_constants: cutoff must be >= 1");
    std::vector<double> logs(cutoff + 1, 0.0);
    for (unsigned i = 1; i <= cutoff; ++i) {
        Rational v = s.value(i);
        if (v < 1) throw PreconditionError("runlength_constants: sequence values must be >= 1");
        logs[i] = log_to_double(v);
    }
    auto p2 = [](double e) { return std::pow(2.0, e); };
    double mu = 0;
    for (unsigned i = 1; i <= cutoff; ++i) mu += logs[i] * p2(-(static_cast<double>(i) + 2));
    double s2 = 0;
    for (unsigned i = 1; i <= cutoff; ++i) {
        double li = static_cast<double>(i);
        s2 += logs[i] * logs[i] * (p2(-li - 2) - (2 * li - 1) * p2(-2 * li - 4));
    }
    for (unsigned i = 1; i <= cutoff; ++i)
        for (unsigned j = i + 1; j <= cutoff; ++j)
            s2 -= logs[i] * logs[j] * (static_cast<double>(i) + j - 1) * p2(-(static_cast<double>(i) + j + 3));

    // tails from the declared bound log s_i <= log(scale) + i log(ratio)
    const double c0 = std::log(std::max(s.growth_scale, 1.0));
    const double c1 = std::log(std::max(s.growth_ratio, 1.0 + 1e-9));
    auto logbound = [&](double i) { return c0 + c1 * i; };
    double mu_tail = 0;
    for (unsigned i = cutoff + 1; i <= cutoff + 400; ++i) mu_tail += logbound(i) * p2(-(static_cast<double>(i) + 2));
    double s2_tail = 0;
    for (unsigned i = cutoff + 1; i <= cutoff + 400; ++i) {
        double li = static_cast<double>(i);
        s2_tail += logbound(li) * logbound(li) * (p2(-li - 2) + (2 * li - 1) * p2(-2 * li - 4));
    }
    for (unsigned i = 1; i <= cutoff + 400; ++i)
        for (unsigned j = std::max(i + 1, cutoff + 1); j <= cutoff + 400; ++j)
            s2_tail += logbound(i) * logbound(j) * (static_cast<double>(i) + j - 1) * p2(-(static_cast<double>(i) + j + 3));

    ConstantsResult out;
    out.method = "closed-form-runlength";
    out.q = 2;
    out.r = 1;
    out.truncation = cutoff;
    out.mu = mu;
    out.sigma2 = s2;
    out.mu_error = mu_tail;
    out.sigma2_error = s2_tail;
    return out;
}

ConstantsResult monte_carlo_constants(const ArithmeticFunction& f, unsigned k, unsigned long m,
                                      std::uint64_t seed) {
    if (m < 2) throw PreconditionError("monte_carlo_constants: need at least two samples");
    double sum = 0, sumsq = 0;
    for (unsigned long i = 0; i < m; ++i) {
        SampleStream stream(seed, i);
        Integer n = stream.uniform_digits(f.base, k);
        double x = member_statistic(f, f.evaluator(n));
        sum += x;
        sumsq += x * x;
    }
    const double dm = static_cast<double>(m);
    double mean = sum / dm;
    double var = (sumsq - dm * mean * mean) / (dm - 1);
    // 95% normal-approximation half-widths
    const double z = 1.959963984540054;
    ConstantsResult out;
    out.method = "monte-carlo";
    out.q = f.base;
    out.r = std::max(f.parameter, 1u);
    out.scale = k;
    out.samples = m;
    out.seed = seed;
    out.mu = mean / k;
    out.sigma2 = var / k;
    out.mu_error = z * std::sqrt(var / dm) / k;
    out.sigma2_error = z * var * std::sqrt(2.0 / (dm - 1)) / k;
    return out;
}

// ---- limit-law experiments ----------------------------------------------------

Scale Scale::power(unsigned k) {
    Scale s;
    s.is_power = true;
    s.k = k;
    return s;
}

Scale Scale::upto(const Integer& bound) {
    Scale s;
    s.is_power = false;
    s.bound = bound;
    return s;
}

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double ks_distance_to_normal(std::vector<double> standardized) {
    std::sort(standardized.begin(), standardized.end());
    const double m = static_cast<double>(standardized.size());
    double d = 0;
    for (std::size_t i = 0; i < standardized.size(); ++i) {
        double phi = standard_normal_cdf(standardized[i]);
        d = std::max(d, phi - static_cast<double>(i) / m);
        d = std::max(d, static_cast<double>(i + 1) / m - phi);
    }
    return d;
}

ExperimentResult clt_experiment(const ArithmeticFunction& f, const Scale& scale, unsigned long m,
                                std::uint64_t seed, double mu, double sigma2) {
    if (sigma2 <= 0)
        throw PreconditionError("clt_experiment: sigma^2 must be positive (the limit law excludes constant functions)");
    if (m < 2) throw PreconditionError("clt_experiment: need at least two samples");
    ExperimentResult out;
    out.samples = m;
    out.scale_kind = scale.is_power ? "power" : "bound";
    out.k = scale.k;
    out.bound = scale.bound;
    double eff_k = scale.is_power
                       ? static_cast<double>(scale.k)
                       : log_to_double(scale.bound) / std::log(static_cast<double>(f.base));
    out.effective_k = eff_k;
    const double center = mu * eff_k;
    const double spread = std::sqrt(sigma2 * eff_k);

    std::vector<double> z(m);
    double sum = 0, sumsq = 0;
    for (unsigned long i = 0; i < m; ++i) {
        SampleStream stream(seed, i);
        Integer n = scale.is_power ? stream.uniform_digits(f.base, scale.k)
                                   : stream.uniform_below(f.base, scale.bound);
        double x = member_statistic(f, f.evaluator(n));
        sum += x;
        sumsq += x * x;
        z[i] = (x - center) / spread;
    }
    const double dm = static_cast<double>(m);
    out.mean = sum / dm;
    out.variance = (sumsq - dm * out.mean * out.mean) / (dm - 1);

    const double lo = -5.0, hi = 5.0;
    const std::size_t nbins = 50;
    out.bins.resize(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
        out.bins[b].left = lo + (hi - lo) * static_cast<double>(b) / nbins;
        out.bins[b].right = lo + (hi - lo) * static_cast<double>(b + 1) / nbins;
    }
    for (double zi : z) {
        double clamped = std::min(std::max(zi, lo), std::nextafter(hi, lo));
        auto b = static_cast<std::size_t>((clamped - lo) / (hi - lo) * nbins);
        ++out.bins[std::min(b, nbins - 1)].count;
    }
    out.ks = ks_distance_to_normal(std::move(z));
    return out;
}

std::map<long, Integer> output_sum_distribution(const Transducer& t, unsigned k) {
    t.validate();
    // reads exactly k digits, so the transducer must ignore fed zeros beyond
    // the top of the expansion: per-state final(s) = out(s,0) + final(next)
    for (std::size_t s = 0; s < t.states; ++s) {
        const auto& tr = t.transitions[s][0];
        if (t.final_outputs[s] != tr.output + t.final_outputs[tr.next])
            throw PreconditionError("output_sum_distribution: transducer is sensitive to trailing zeros");
    }
    std::vector<std::map<long, Integer>> dist(t.states);
    auto as_long = [](const Rational& v) {
        if (!is_integer(v)) throw PreconditionError("output_sum_distribution: integer outputs required");
        return rational_to_integer(v).get_si();
    };
    dist[t.initial][0] = 1;
    for (unsigned step = 0; step < k; ++step) {
        std::vector<std::map<long, Integer>> next(t.states);
        for (std::size_t s = 0; s < t.states; ++s) {
            for (const auto& [val, cnt] : dist[s]) {
                for (unsigned d = 0; d < t.base; ++d) {
                    const auto& tr = t.transitions[s][d];
                    next[tr.next][val + as_long(tr.output)] += cnt;
                }
            }
        }
        dist = std::move(next);
    }
    std::map<long, Integer> out;
    for (std::size_t s = 0; s < t.states; ++s) {
        long fin = as_long(t.final_outputs[s]);
        for (const auto& [val, cnt] : dist[s]) out[val + fin] += cnt;
    }
    return out;
}

} // namespace qqa
