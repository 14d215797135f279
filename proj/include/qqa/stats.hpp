#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qqa/catalog.hpp"
#include "qqa/linalg.hpp"
#include "qqa/numeric.hpp"
#include "qqa/transducer.hpp"

namespace qqa {

// ---- the building-block set B -------------------------------------------
// B = positive integers not divisible by q whose base-q expansion contains no
// run of r zeros. Members are streamed in length-then-value order.

void enumerate_B(unsigned q, unsigned r, unsigned max_len,
                 const std::function<void(const Integer&, unsigned)>& fn);
std::vector<Integer> members_of_B(unsigned q, unsigned r, unsigned max_len);
// counts[len] for len in [0, max_len], via the zero-run automaton
std::vector<Integer> count_B_by_length(unsigned q, unsigned r, unsigned max_len);

// Largest real root of x^r - (q-1)(x^{r-1} + ... + x + 1); governs the growth
// of the counts above. Bisection to 1e-12.
double beta_root(unsigned q, unsigned r);

// B(x, 0) = (q-1)x / (1 - (q-1)(x + ... + x^r)); throws MathError at a pole.
Rational B_count_closed_form(unsigned q, unsigned r, const Rational& x);
// Same value through the transfer-matrix resolvent x w (I - xA)^{-1} y.
Rational B_count_resolvent(unsigned q, unsigned r, const Rational& x);
// (1-x)(1-qx) / (1 - qx + (q-1)x^{r+1}); throws MathError at a pole.
Rational one_minus_x_minus_xr_B_closed_form(unsigned q, unsigned r, const Rational& x);

// ---- truncated generating function --------------------------------------

struct TruncatedValue {
    double value = 0;
    double tail_bound = 0;
    bool divergence_risk = false;  // geometric ratio >= 1 for the declared growth
};

// Partial sum of B(x,t) over members of length <= L, with a geometric tail
// bound from beta and the function's growth class. Additive functions use the
// weight e^{f(n) t}, multiplicative ones f(n)^t (f must be positive on B).
TruncatedValue B_truncated(const ArithmeticFunction& f, unsigned r, double x, double t, unsigned L);

// F(x,t) = (1 + (1+x+...+x^{r-1}) B) / (1 - x - x^r B); throws MathError when
// the denominator vanishes.
double F_from_B(double x, double t, unsigned r, double B_value);

// Series coefficients of B(x, t) in x up to k_max (index = length).
std::vector<double> B_series(const ArithmeticFunction& f, unsigned r, double t, unsigned k_max);
// Series of F from the series of B by exact power-series division.
std::vector<double> F_series_from_B(const std::vector<double>& b_coeffs, unsigned r);
// Oracle: sum over n < q^k of the weight (e^{f t} or f^t).
double brute_force_F_coeff(const ArithmeticFunction& f, unsigned k, double t);

// ---- exact moment transfer system ----------------------------------------
// Product of the zero-run automaton with a finite-state evaluator of an
// additive integer-valued f. Tracks, per state and input length, the number
// of B-members, the sum of f and the sum of f^2, all exactly. The three
// t-derivatives of B-hat at (1/q, 0) come out of resolvent solves.

class MomentSystem {
public:
    static MomentSystem from_transducer(const Transducer& t, unsigned r);
    static MomentSystem from_representation(const LinearRepresentation& rep, unsigned r);

    struct LengthSums {
        Rational count, sum_f, sum_f2;
    };
    // sums for lengths 0..max_len (index 0 is zero)
    std::vector<LengthSums> sums_by_length(unsigned max_len) const;

    struct Derivatives {
        Rational b_t, b_tt, b_tx;  // at x = 1/q, t = 0
    };
    Derivatives derivatives_at_inv_q() const;  // throws MathError when I - A/q is singular

    unsigned base() const { return q_; }
    std::size_t dimension() const { return a_.rows; }

private:
    MomentSystem() = default;
    unsigned q_ = 2;
    unsigned r_ = 1;
    Mat a_;        // transfer matrix of the stacked (count, sum, sum2) state
    Vec y1_;       // state after reading the first digit
    Vec w0_, w1_, w2_;  // readouts for count / sum f / sum f^2
};

Rational mu_from_derivatives(const MomentSystem::Derivatives& d, unsigned q, unsigned r);
// Variance constant, literal transcription of the published formula.
Rational sigma2_formula(const MomentSystem::Derivatives& d, unsigned q, unsigned r);
// Same constant through implicit differentiation of x + x^r B(x,t) = 1 at the
// dominant root; algebraically equal to sigma2_formula.
Rational sigma2_implicit(const MomentSystem::Derivatives& d, unsigned q, unsigned r);

// ---- constants ------------------------------------------------------------

struct ConstantsResult {
    std::string method;  // exact-rational | truncated-series | closed-form-runlength | monte-carlo
    double mu = 0;
    double sigma2 = 0;
    std::optional<Rational> mu_exact, sigma2_exact;
    double mu_error = 0;      // 0 when exact; tail bound or confidence half-width otherwise
    double sigma2_error = 0;
    unsigned q = 2;
    unsigned r = 1;
    unsigned long truncation = 0;
    unsigned long scale = 0;    // digit count k for monte-carlo
    unsigned long samples = 0;
    std::uint64_t seed = 0;
    bool flagged = false;  // tail bound exceeded the requested tolerance
};

// Exact constants for an additive integer-valued function with a transducer
// or linear representation; r defaults to the declared parameter (raised to 1
// when the declared parameter is 0).
ConstantsResult exact_constants_additive(const ArithmeticFunction& f, std::optional<unsigned> r = std::nullopt);

// Truncated-series constants for positive functions (log f for multiplicative
// input, f itself for additive input), members enumerated up to length L.
ConstantsResult truncated_constants(const ArithmeticFunction& f, unsigned r, unsigned L,
                                    double tolerance = 1e-2);

// Closed-form constants of the run length transform of s, sums truncated at
// cutoff with geometric tail bounds.
ConstantsResult runlength_constants(const BaseSequence& s, unsigned cutoff);

// Sample-based constants at scale q^k from m samples.
ConstantsResult monte_carlo_constants(const ArithmeticFunction& f, unsigned k, unsigned long m,
                                      std::uint64_t seed);

// ---- limit-law experiments -------------------------------------------------

struct Scale {
    bool is_power = true;
    unsigned k = 64;     // digits when is_power
    Integer bound = 0;   // exclusive upper bound otherwise
    static Scale power(unsigned k);
    static Scale upto(const Integer& bound);
};

struct HistogramBin {
    double left = 0, right = 0;
    unsigned long count = 0;
};

struct ExperimentResult {
    unsigned long samples = 0;
    std::string scale_kind;  // "power" | "bound"
    unsigned k = 0;
    Integer bound = 0;
    double effective_k = 0;  // k or log_q(bound)
    double mean = 0;         // of the raw statistic f or log f
    double variance = 0;
    double ks = 0;           // sup |empirical cdf - Phi|
    std::vector<HistogramBin> bins;
};

// Standardizes f(N) (additive) or log f(N) (multiplicative) with the supplied
// constants and measures the Kolmogorov-Smirnov distance to the standard
// Gaussian. Rejects sigma2 = 0.
ExperimentResult clt_experiment(const ArithmeticFunction& f, const Scale& scale, unsigned long m,
                                std::uint64_t seed, double mu, double sigma2);

double standard_normal_cdf(double x);
// sorts its argument
double ks_distance_to_normal(std::vector<double> standardized);

// Exact distribution of the output sum over n uniform in [0, q^k); requires
// integer outputs. value -> count.
std::map<long, Integer> output_sum_distribution(const Transducer& t, unsigned k);

std::string to_json(const ConstantsResult& c);
std::string to_json(const ExperimentResult& e);
std::string histogram_csv(const ExperimentResult& e);

} // namespace qqa
