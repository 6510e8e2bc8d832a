#include "seqtc/algebra.hpp"

#include "arnold_kernel.hpp"

#include <sstream>

namespace seqtc {

bool is_admissible(const Monomial& mono)
{
    for (std::size_t k = 1; k < mono.size(); ++k)
        if (mono[k].j <= mono[k - 1].j)
            return false;
    return true;
}

AlgebraElement::AlgebraElement(int points, Parity parity) : points_(points), parity_(parity)
{
    if (points < 1)
        throw std::invalid_argument("point count must be positive");
}

AlgebraElement AlgebraElement::unit(int points, Parity parity)
{
    AlgebraElement e(points, parity);
    e.terms_.emplace(Monomial{}, Int(1));
    return e;
}

AlgebraElement AlgebraElement::generator(int i, int j, int points, Parity parity)
{
    if (i == j)
        throw std::invalid_argument("w_ii is not a generator");
    if (i < 1 || j < 1 || i > points || j > points)
        throw std::invalid_argument("generator index out of range");
    AlgebraElement e(points, parity);
    if (i < j)
        e.terms_.emplace(Monomial{BaseGenerator(i, j)}, Int(1));
    else
        e.terms_.emplace(Monomial{BaseGenerator(j, i)}, Int(-1));
    return e;
}

Int AlgebraElement::coefficient(const Monomial& mono) const
{
    auto it = terms_.find(mono);
    return it == terms_.end() ? Int(0) : it->second;
}

void AlgebraElement::add_term(Monomial mono, Int coeff)
{
    if (coeff == 0)
        return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(std::move(mono), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

namespace {

void require_compatible(const AlgebraElement& a, const AlgebraElement& b)
{
    if (a.points() != b.points() || a.parity() != b.parity())
        throw std::invalid_argument("elements live in different algebras (point count or parity mismatch)");
}

} // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs)
{
    require_compatible(*this, rhs);
    for (const auto& [mono, coeff] : rhs.terms_)
        add_term(mono, coeff);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs)
{
    require_compatible(*this, rhs);
    for (const auto& [mono, coeff] : rhs.terms_)
        add_term(mono, -coeff);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Int& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, coeff] : terms_)
        coeff *= c;
    return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b)
{
    return a.points_ == b.points_ && a.parity_ == b.parity_ && a.terms_ == b.terms_;
}

namespace {

AlgebraElement from_word_map(detail::WordMap&& words, int points, Parity parity)
{
    AlgebraElement out(points, parity);
    for (auto& [word, coeff] : words) {
        Monomial mono;
        mono.reserve(word.size());
        for (const detail::Factor& f : word)
            mono.push_back(BaseGenerator(f.i, f.j));
        out.add_term(std::move(mono), std::move(coeff));
    }
    return out;
}

} // namespace

AlgebraElement straighten(std::span<const BaseGenerator> factors, int points, Parity parity)
{
    detail::Word word;
    word.reserve(factors.size());
    for (const BaseGenerator& g : factors) {
        if (g.j > points)
            throw std::invalid_argument("generator index exceeds point count");
        word.push_back(detail::Factor{0, g.i, g.j});
    }
    detail::WordMap out;
    detail::reduce_word(std::move(word), Int(1), parity, nullptr, out);
    return from_word_map(std::move(out), points, parity);
}

AlgebraElement straighten(const Monomial& factors, int points, Parity parity)
{
    return straighten(std::span<const BaseGenerator>(factors), points, parity);
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b)
{
    require_compatible(a, b);
    detail::WordMap out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            detail::Word word;
            word.reserve(ma.size() + mb.size());
            for (const BaseGenerator& g : ma)
                word.push_back(detail::Factor{0, g.i, g.j});
            for (const BaseGenerator& g : mb)
                word.push_back(detail::Factor{0, g.i, g.j});
            detail::reduce_word(std::move(word), ca * cb, a.parity(), nullptr, out);
        }
    }
    return from_word_map(std::move(out), a.points(), a.parity());
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    return multiply(a, b);
}

AlgebraElement substitute_hom(const AlgebraElement& x, const std::vector<int>& point_map,
                              int points_out)
{
    if (static_cast<int>(point_map.size()) < x.points())
        throw std::invalid_argument("point map does not cover the domain");
    for (int k = 0; k < x.points(); ++k) {
        int v = point_map[k];
        if (v < 1 || v > points_out)
            throw std::invalid_argument("point map image out of range");
        for (int l = 0; l < k; ++l)
            if (point_map[l] == v)
                throw std::invalid_argument("point map must be injective");
    }
    AlgebraElement out(points_out, x.parity());
    for (const auto& [mono, coeff] : x.terms()) {
        Int sign(1);
        Monomial mapped;
        mapped.reserve(mono.size());
        for (const BaseGenerator& g : mono) {
            int a = point_map[g.i - 1];
            int b = point_map[g.j - 1];
            if (a < b) {
                mapped.push_back(BaseGenerator(a, b));
            } else {
                mapped.push_back(BaseGenerator(b, a));
                sign = -sign;
            }
        }
        AlgebraElement reduced = straighten(mapped, points_out, x.parity());
        reduced *= coeff * sign;
        out += reduced;
    }
    return out;
}

std::string to_string(const Monomial& mono)
{
    if (mono.empty())
        return "1";
    std::ostringstream os;
    for (const BaseGenerator& g : mono)
        os << "w[" << g.i << "," << g.j << "]";
    return os.str();
}

std::string to_string(const AlgebraElement& x)
{
    if (x.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : x.terms()) {
        Int mag = coeff < 0 ? Int(-coeff) : coeff;
        if (first) {
            if (coeff < 0)
                os << "-";
            first = false;
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        if (mono.empty())
            os << mag.str();
        else if (mag != 1)
            os << mag.str() << "*" << to_string(mono);
        else
            os << to_string(mono);
    }
    return os.str();
}

} // namespace seqtc
