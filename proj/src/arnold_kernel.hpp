#pragma once

#include "seqtc/algebra.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

/* Shared straightening kernel for the plain Arnold algebra and the slotted
 * algebra. A factor carries a slot tag (0 = base / untagged); the Arnold
 * relation only fires between factors in the same slot. Reduction:
 *
 *   1. canonicalize every factor's slot (no-op for the plain algebra),
 *   2. sort by (slot, j, i), tracking the transposition sign when the
 *      generators have odd degree; a repeated factor kills the term,
 *   3. rewrite the leftmost same-slot pair sharing j via
 *      w_{ab} w_{cb} = w_{ac} w_{cb} - w_{ac} w_{ab}   (a < c < b)
 *      and recurse on both branches.
 *
 * The multiset of second indices drops strictly at each rewrite, so the
 * recursion terminates. */

namespace seqtc::detail {

struct Factor {
    int slot = 0;
    int i = 0;
    int j = 0;

    friend std::strong_ordering operator<=>(const Factor& a, const Factor& b)
    {
        if (auto c = a.slot <=> b.slot; c != 0)
            return c;
        if (auto c = a.j <=> b.j; c != 0)
            return c;
        return a.i <=> b.i;
    }
    friend bool operator==(const Factor&, const Factor&) = default;
};

using Word = std::vector<Factor>;
using WordMap = std::map<Word, Int>;
using CanonFn = std::function<Factor(const Factor&)>;

/* Insertion sort; returns +1/-1 (transposition parity when anticommuting)
 * or 0 when the word contains a repeated factor. */
inline int sort_word(Word& w, Parity parity)
{
    long swaps = 0;
    for (std::size_t a = 1; a < w.size(); ++a) {
        Factor f = w[a];
        std::size_t b = a;
        while (b > 0 && f < w[b - 1]) {
            w[b] = w[b - 1];
            --b;
            ++swaps;
        }
        w[b] = f;
    }
    for (std::size_t a = 1; a < w.size(); ++a)
        if (w[a] == w[a - 1])
            return 0;
    if (parity == Parity::odd_degree && swaps % 2 != 0)
        return -1;
    return 1;
}

inline void reduce_word(Word w, Int coeff, Parity parity, const CanonFn* canon, WordMap& out)
{
    if (canon)
        for (Factor& f : w)
            f = (*canon)(f);
    int sign = sort_word(w, parity);
    if (sign == 0)
        return;
    if (sign < 0)
        coeff = -coeff;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        const Factor a = w[p];
        const Factor b = w[p + 1];
        if (a.slot == b.slot && a.j == b.j) {
            Word w1 = w;
            w1[p] = Factor{a.slot, a.i, b.i};
            w1[p + 1] = Factor{a.slot, b.i, a.j};
            Word w2 = w;
            w2[p] = Factor{a.slot, a.i, b.i};
            w2[p + 1] = Factor{a.slot, a.i, a.j};
            reduce_word(std::move(w1), coeff, parity, canon, out);
            reduce_word(std::move(w2), -coeff, parity, canon, out);
            return;
        }
    }
    auto it = out.find(w);
    if (it == out.end()) {
        out.emplace(std::move(w), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0)
            out.erase(it);
    }
}

} // namespace seqtc::detail
