#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqtc {

/* Exact integer coefficients. Witness products carry coefficients like
 * (-2)^n and sweeps must never overflow silently. */
using Int = boost::multiprecision::cpp_int;

/* Parity of the generator degree d-1. Even degree: classes commute.
 * Odd degree: classes anticommute. */
enum class Parity { even_degree, odd_degree };

constexpr Parity parity_for_dimension(int d)
{
    return d % 2 != 0 ? Parity::even_degree : Parity::odd_degree;
}

/* One generator w_ij of H*(F(R^d, N)), 1 <= i < j <= N. */
struct BaseGenerator {
    int i = 0;
    int j = 0;

    BaseGenerator() = default;
    BaseGenerator(int i_, int j_) : i(i_), j(j_)
    {
        if (i < 1 || j <= i)
            throw std::invalid_argument("BaseGenerator requires 1 <= i < j");
    }

    /* Canonical factor order: by j, then by i. */
    friend std::strong_ordering operator<=>(const BaseGenerator& a, const BaseGenerator& b)
    {
        if (auto c = a.j <=> b.j; c != 0)
            return c;
        return a.i <=> b.i;
    }
    friend bool operator==(const BaseGenerator&, const BaseGenerator&) = default;
};

/* Admissible monomial: factors with strictly increasing j. */
using Monomial = std::vector<BaseGenerator>;

bool is_admissible(const Monomial& mono);

/* Element of H*(F(R^d, N)): exact integer combination of admissible
 * monomials. Immutable value type; all operations are pure. */
class AlgebraElement {
public:
    AlgebraElement(int points, Parity parity);

    static AlgebraElement unit(int points, Parity parity);

    /* w_ij for i < j, and -w_ji for i > j. Rejects i == j. */
    static AlgebraElement generator(int i, int j, int points, Parity parity);

    int points() const { return points_; }
    Parity parity() const { return parity_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const Monomial& mono) const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(const Int& c);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const Int& c) { return a *= c; }
    friend AlgebraElement operator*(const Int& c, AlgebraElement a) { return a *= c; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= Int(-1); }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

    /* Used by straighten/multiply to assemble reduced output. */
    void add_term(Monomial mono, Int coeff);

private:
    int points_;
    Parity parity_;
    std::map<Monomial, Int> terms_;
};

/* Full straightening of an arbitrary factor word to the admissible basis:
 * repeatedly sorts (with sign for odd-degree generators), drops squares,
 * and applies w_ip w_jp = w_ij (w_jp - w_ip) to the leftmost pair sharing
 * the same second index. Terminates because the multiset of second
 * indices strictly decreases at each rewrite. */
AlgebraElement straighten(std::span<const BaseGenerator> factors, int points, Parity parity);
AlgebraElement straighten(const Monomial& factors, int points, Parity parity);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/* Ring homomorphism induced by an injective relabeling of the N points.
 * point_map[k] is the image of point k+1 in 1..points_out. w_ij maps to
 * w_{f(i) f(j)}, with the sign flip when f reverses the pair order. */
AlgebraElement substitute_hom(const AlgebraElement& x, const std::vector<int>& point_map,
                              int points_out);

/* Stable text form, e.g. "-2*w[1,3]w[2,4] + w[1,2]w[3,4]". */
std::string to_string(const AlgebraElement& x);
std::string to_string(const Monomial& mono);

} // namespace seqtc
