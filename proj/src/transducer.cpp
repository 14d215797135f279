#include "qqa/transducer.hpp"

#include <deque>

#include "qqa/digits.hpp"
#include "qqa/errors.hpp"

namespace qqa {

void Transducer::validate() const {
    if (base < 2) throw PreconditionError("Transducer: base must be >= 2");
    if (states == 0) throw PreconditionError("Transducer: no states");
    if (initial >= states) throw PreconditionError("Transducer: initial state out of range");
    if (transitions.size() != states) throw PreconditionError("Transducer: one transition row per state required");
    if (final_outputs.size() != states) throw PreconditionError("Transducer: one final output per state required");
    for (const auto& row : transitions) {
        if (row.size() != base) throw PreconditionError("Transducer: exactly one transition per (state, digit) required");
        for (const auto& tr : row)
            if (tr.next >= states) throw PreconditionError("Transducer: transition target out of range");
    }
}

bool Transducer::connected() const {
    std::vector<bool> seen(states, false);
    std::deque<std::size_t> work{initial};
    seen[initial] = true;
    while (!work.empty()) {
        std::size_t s = work.front();
        work.pop_front();
        for (const auto& tr : transitions[s]) {
            if (!seen[tr.next]) {
                seen[tr.next] = true;
                work.push_back(tr.next);
            }
        }
    }
    for (bool b : seen)
        if (!b) return false;
    return true;
}

Rational output_sum(const Transducer& t, const Integer& n) {
    t.validate();
    if (n < 0) throw PreconditionError("output_sum: negative argument");
    Rational sum = 0;
    std::size_t state = t.initial;
    for (int d : to_digits(n, t.base).digits) {
        const auto& tr = t.transitions[state][static_cast<std::size_t>(d)];
        sum += tr.output;
        state = tr.next;
    }
    return sum + t.final_outputs[state];
}

Rational output_sum_via_recursion(const Transducer& t, const Integer& n) {
    t.validate();
    // b(qn + eps) = N_eps b(n) + delta_eps, applied along the digits from most
    // significant to least significant, starting from b(0) = final outputs
    Vec b = t.final_outputs;
    for (int d : to_digits(n, t.base).msb_first()) {
        Vec next(t.states);
        for (std::size_t s = 0; s < t.states; ++s) {
            const auto& tr = t.transitions[s][static_cast<std::size_t>(d)];
            next[s] = b[tr.next] + tr.output;
        }
        b = std::move(next);
    }
    return b[t.initial];
}

ResetReport check_reset_condition(const Transducer& t, unsigned r) {
    t.validate();
    if (!t.connected()) throw PreconditionError("check_reset_condition: transducer is not connected");
    ResetReport rep;
    rep.reset_output_sums.resize(t.states);
    std::vector<std::size_t> landing(t.states);
    for (std::size_t s = 0; s < t.states; ++s) {
        std::size_t cur = s;
        Rational sum = 0;
        for (unsigned i = 0; i < r; ++i) {
            const auto& tr = t.transitions[cur][0];
            sum += tr.output;
            cur = tr.next;
        }
        landing[s] = cur;
        rep.reset_output_sums[s] = sum;
    }
    rep.has_reset = true;
    for (std::size_t s = 1; s < t.states; ++s)
        if (landing[s] != landing[0]) rep.has_reset = false;
    rep.target = landing[0];
    rep.condition1 = rep.has_reset && landing[0] == t.initial;
    rep.condition2 = true;
    for (std::size_t s = 0; s < t.states; ++s)
        if (rep.reset_output_sums[s] != t.final_outputs[s]) rep.condition2 = false;
    rep.condition3 = true;
    for (std::size_t s = 0; s < t.states; ++s) {
        const auto& tr = t.transitions[s][0];
        if (t.final_outputs[s] != tr.output + t.final_outputs[tr.next]) rep.condition3 = false;
    }
    return rep;
}

LinearRepresentation to_linear_representation(const Transducer& t) {
    t.validate();
    const std::size_t m = t.states;
    // reindex so the initial state is state 0 (swap with whatever sits there)
    std::vector<std::size_t> idx(m);
    for (std::size_t s = 0; s < m; ++s) idx[s] = s;
    idx[0] = t.initial;
    idx[t.initial] = 0;
    std::vector<std::size_t> pos(m);
    for (std::size_t s = 0; s < m; ++s) pos[idx[s]] = s;

    const std::size_t d = 2 * m + 1;
    LinearRepresentation rep;
    rep.base = t.base;
    rep.dim = d;
    rep.matrices.assign(t.base, Mat(d, d));
    for (unsigned digit = 0; digit < t.base; ++digit) {
        Mat& mat = rep.matrices[digit];
        for (std::size_t s = 0; s < m; ++s) {
            const auto& tr = t.transitions[idx[s]][digit];
            mat.at(s, pos[tr.next]) = 1;            // N_digit
            mat.at(s, m) = tr.output;               // delta_digit
            if (digit == 0) mat.at(s, m + 1 + s) = 1;
        }
        mat.at(m, m) = 1;
        if (digit == 0)
            for (std::size_t s = 0; s < m; ++s) mat.at(m + 1 + s, m + 1 + s) = 1;
    }
    rep.u.assign(d, Rational(0));
    rep.u[0] = 1;
    rep.v.assign(d, Rational(0));
    Vec b0(m);
    for (std::size_t s = 0; s < m; ++s) b0[s] = t.final_outputs[idx[s]];
    for (std::size_t s = 0; s < m; ++s) rep.v[s] = b0[s];
    rep.v[m] = 1;
    // v tail: b(0) - N_0 b(0) - delta_0
    for (std::size_t s = 0; s < m; ++s) {
        const auto& tr = t.transitions[idx[s]][0];
        rep.v[m + 1 + s] = b0[s] - b0[pos[tr.next]] - tr.output;
    }
    return rep;
}

} // namespace qqa
