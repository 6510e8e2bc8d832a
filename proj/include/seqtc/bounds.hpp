#pragma once

#include "seqtc/param.hpp"

#include <cstdint>
#include <optional>

namespace seqtc {

enum class PlannerMode { general, even_optimized };

/* Raised when an internal consistency check fails (a witness product that
 * must be nonzero reduced to zero, a factor count off the closed form).
 * Never expected on valid inputs; indicates an engine bug. */
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct Witness {
    std::vector<ParamElement> factors;                            // each in the diagonal kernel
    ParamElement product = ParamElement(ProblemSpec::create(2, 2, {1})); // fully reduced cup product
    int factor_count = 0;
};

struct TcReport {
    ProblemSpec spec = ProblemSpec::create(2, 2, {1});
    int upper = 0;
    int lower = 0;
    int exact = 0;
    int witness_factor_count = 0;
    bool witness_nonzero = false;
    std::size_t witness_terms = 0;
    long long hdim_numerator = 0; // hdim(E_B^rbar) + 1 = (d-1)(R+m-1) + 1
    int hdim_denominator = 0;     // d - 1

    std::string to_line() const;
};

/* R + m - 1 (the dimensional upper bound). */
int upper_bound(const ProblemSpec& spec);

/* The strict fractional bound (hdim + 1)/(d - 1) as (numerator, denominator). */
std::pair<long long, int> hdim_ratio(const ProblemSpec& spec);

/* Cup-length witness for odd d: R + m - 1 diagonal-kernel classes with
 * nonzero product. Robots with a single target contribute no slot
 * distinctions of their own and are folded in as additional obstacles. */
Witness odd_witness(const ProblemSpec& spec);

/* Cup-length witness for even d: R + m - 2 diagonal-kernel classes. */
Witness even_witness(const ProblemSpec& spec);

/* The alternative hand-computed witness for d odd, m = 2, r-bar = (2,3):
 * (w2_13-w1_13)^2 (w2_14-w1_14)^2 (w2_23-w1_23) (w3_14-w1_14). */
Witness section3_witness(const ProblemSpec& spec);

/* The specific basis monomial whose presence certifies the odd witness is
 * nonzero (base part w_12 w_23 ... w_2m, slot parts with I_1 = (2,1,...,1)
 * and I_s = (1,...,1)). Not defined when every robot has a single target. */
std::optional<ParamMonomial> odd_witness_key_monomial(const ProblemSpec& spec);

/* Exact value: runs the parity-matching witness, checks the factor count
 * against the closed form and that the product is nonzero, and returns
 * R + m - 1 (d odd) or R + m - 2 (d even). */
TcReport tc_exact(const ProblemSpec& spec);

/* Sequential TC of F(R^d, n): r(n-1) for d odd, r(n-1) - 1 for d even.
 * Requires r, d, n >= 2. */
int reference_tc(int d, int n, int r);

/* Constant-schedule parametrized TC of the obstacle fibration:
 * rn + m - 1 for d odd, rn + m - 2 for d even. */
int reference_parametrized_tc(int d, int m, int n, int r);

/* Number of local planning rules: R + m cells in general mode, R + m - 1
 * in the even-optimized mode (the obstacle-dependent projection line). */
int rule_count(const ProblemSpec& spec, PlannerMode mode);

} // namespace seqtc
