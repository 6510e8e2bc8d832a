#pragma once

#include "seqtc/algebra.hpp"

#include <optional>

namespace seqtc {

/* Problem data (d, m, n, r-bar) plus the derived block structure. Target
 * counts are sorted non-decreasing on construction; the permutation back
 * to the caller's robot order is kept so results can be mapped to the
 * original labels. */
class ProblemSpec {
public:
    static ProblemSpec create(int d, int m, const std::vector<int>& targets_per_robot);

    int dimension() const { return d_; }
    int obstacle_count() const { return m_; }
    int robot_count() const { return n_; }
    int points() const { return m_ + n_; }
    Parity parity() const { return parity_for_dimension(d_); }

    /* Sorted non-decreasing target counts r_1 <= ... <= r_n. */
    const std::vector<int>& stops() const { return stops_; }
    /* robot_order()[k] = 0-based original index of sorted robot k. */
    const std::vector<int>& robot_order() const { return order_; }
    /* Sorted position of the 0-based original robot index. */
    int sorted_position(int original) const;

    int total_targets() const { return total_; } // R
    int block_count() const { return ell_; }     // number of distinct stop values
    /* n_u for u in 0..block_count (n_0 = 0, n_ell = n). */
    int block_end(int u) const { return block_end_[u]; }
    /* r_{n_u} for u in 1..block_count. */
    int block_stop(int u) const { return block_stop_[u]; }

    /* Number of slots carried by the slotted algebra: max(r_n, 2). The
     * degenerate schedule r_n = 1 still needs two distinguishable slots
     * for the witness constructions; see kernel_generators. */
    int slot_count() const { return slot_count_; }
    /* First slot at which the pair class w^s_{ij} with j = m + robot
     * stops changing: slots >= stop_slot are identified with it. */
    int stop_slot(int sorted_robot /* 1..n */) const;
    /* 0-based block-range index u with block_stop(u) < s <= block_stop(u+1);
     * the last range extends to slot_count(). */
    int block_range_of_slot(int s) const;
    /* Smallest legal second index for a slot-s factor in a basis monomial. */
    int min_point_for_slot(int s) const;

    bool operator==(const ProblemSpec& o) const
    {
        return d_ == o.d_ && m_ == o.m_ && stops_ == o.stops_;
    }

    std::string to_string() const; // "d=3 m=2 r=(2,3)"

private:
    ProblemSpec() = default;
    int d_ = 0, m_ = 0, n_ = 0, total_ = 0, ell_ = 0, slot_count_ = 0;
    std::vector<int> stops_;
    std::vector<int> order_;
    std::vector<int> block_end_;
    std::vector<int> block_stop_;
};

/* Slot-canonical generator of H*(E_B^rbar). slot 0 is the distinguished
 * base slot (obstacle pairs, pulled back from the base of the fibration);
 * slots 1..slot_count carry the per-stage classes. */
struct SlottedGenerator {
    int slot = 0;
    int i = 0;
    int j = 0;

    friend std::strong_ordering operator<=>(const SlottedGenerator& a, const SlottedGenerator& b)
    {
        if (auto c = a.slot <=> b.slot; c != 0)
            return c;
        if (auto c = a.j <=> b.j; c != 0)
            return c;
        return a.i <=> b.i;
    }
    friend bool operator==(const SlottedGenerator&, const SlottedGenerator&) = default;
};

using ParamMonomial = std::vector<SlottedGenerator>;

/* Canonical form of w^s_{ij}: base slot when j <= m, otherwise slot
 * min(s, stop_slot(j - m)). Requires 1 <= i < j <= m+n, 1 <= s <= slot_count. */
SlottedGenerator canonicalize_generator(int s, int i, int j, const ProblemSpec& spec);

class ParamElement {
public:
    explicit ParamElement(ProblemSpec spec); // zero

    static ParamElement unit(ProblemSpec spec);
    /* w^s_{ij} for i < j and -w^s_{ji} for i > j, slot-canonicalized. */
    static ParamElement generator(ProblemSpec spec, int s, int i, int j);

    const ProblemSpec& spec() const { return spec_; }
    const std::map<ParamMonomial, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Int coefficient(const ParamMonomial& mono) const;

    ParamElement& operator+=(const ParamElement& rhs);
    ParamElement& operator-=(const ParamElement& rhs);
    ParamElement& operator*=(const Int& c);

    friend ParamElement operator+(ParamElement a, const ParamElement& b) { return a += b; }
    friend ParamElement operator-(ParamElement a, const ParamElement& b) { return a -= b; }
    friend ParamElement operator*(ParamElement a, const Int& c) { return a *= c; }
    friend ParamElement operator*(const Int& c, ParamElement a) { return a *= c; }
    friend ParamElement operator-(ParamElement a) { return a *= Int(-1); }
    friend ParamElement operator*(const ParamElement& a, const ParamElement& b);
    friend bool operator==(const ParamElement& a, const ParamElement& b);

    void add_term(ParamMonomial mono, Int coeff);

private:
    ProblemSpec spec_;
    std::map<ParamMonomial, Int> terms_;
};

/* Product fully reduced to the additive basis: slots canonicalized,
 * each slot straightened through the plain Arnold algebra, slot blocks
 * ordered with the graded sign, squares dropped. */
ParamElement param_multiply(const ParamElement& a, const ParamElement& b);

/* The diagonal-restriction homomorphism: forgets every slot superscript,
 * landing in H*(F(R^d, m+n)). */
AlgebraElement diagonal_image(const ParamElement& x);

/* All distinct nonzero differences w^{s'}_{ij} - w^{s}_{ij} (s < s' as
 * canonical slots). Every returned element maps to zero under the
 * diagonal restriction. */
std::vector<ParamElement> kernel_generators(const ProblemSpec& spec);

/* True iff the monomial is one of the additive basis elements: factors
 * slot-canonical, strictly increasing second indices within the base part
 * and within each slot part, and each slot part's second indices within
 * the slot's block range. */
bool is_basis_monomial(const ParamMonomial& mono, const ProblemSpec& spec);

/* Stable text form: base factors unnumbered, slot-k factors prefixed wk,
 * e.g. "w[1,2] w1[1,3] w2[1,4]". */
std::string to_string(const ParamMonomial& mono);
std::string to_string(const ParamElement& x);

} // namespace seqtc
