#include "seqtc/param.hpp"

#include "arnold_kernel.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace seqtc {

ProblemSpec ProblemSpec::create(int d, int m, const std::vector<int>& targets_per_robot)
{
    if (d < 2)
        throw std::invalid_argument("d >= 2 required");
    if (m < 2)
        throw std::invalid_argument("m >= 2 required");
    if (targets_per_robot.empty())
        throw std::invalid_argument("n >= 1 required");
    for (int r : targets_per_robot)
        if (r < 1)
            throw std::invalid_argument("every target count must be >= 1");

    ProblemSpec s;
    s.d_ = d;
    s.m_ = m;
    s.n_ = static_cast<int>(targets_per_robot.size());
    s.order_.resize(s.n_);
    std::iota(s.order_.begin(), s.order_.end(), 0);
    std::stable_sort(s.order_.begin(), s.order_.end(), [&](int a, int b) {
        return targets_per_robot[a] < targets_per_robot[b];
    });
    s.stops_.reserve(s.n_);
    for (int k : s.order_)
        s.stops_.push_back(targets_per_robot[k]);
    s.total_ = std::accumulate(s.stops_.begin(), s.stops_.end(), 0);

    s.block_end_.push_back(0);
    for (int k = 0; k < s.n_; ++k) {
        if (k + 1 == s.n_ || s.stops_[k + 1] != s.stops_[k]) {
            s.block_end_.push_back(k + 1);
            s.block_stop_.push_back(s.stops_[k]);
        }
    }
    s.block_stop_.insert(s.block_stop_.begin(), 0); // block_stop(0) = 0 sentinel
    s.ell_ = static_cast<int>(s.block_stop_.size()) - 1;
    s.slot_count_ = std::max(s.stops_.back(), 2);
    return s;
}

int ProblemSpec::sorted_position(int original) const
{
    for (int k = 0; k < n_; ++k)
        if (order_[k] == original)
            return k;
    throw std::invalid_argument("robot index out of range");
}

int ProblemSpec::stop_slot(int sorted_robot) const
{
    if (sorted_robot < 1 || sorted_robot > n_)
        throw std::invalid_argument("robot index out of range");
    int r = stops_[sorted_robot - 1];
    return r == stops_.back() ? slot_count_ : r;
}

int ProblemSpec::block_range_of_slot(int s) const
{
    if (s < 1 || s > slot_count_)
        throw std::invalid_argument("slot out of range");
    for (int u = 0; u < ell_; ++u) {
        int hi = (u + 1 == ell_) ? slot_count_ : block_stop_[u + 1];
        if (s > block_stop_[u] && s <= hi)
            return u;
    }
    return ell_ - 1;
}

int ProblemSpec::min_point_for_slot(int s) const
{
    return m_ + block_end_[block_range_of_slot(s)] + 1;
}

std::string ProblemSpec::to_string() const
{
    std::ostringstream os;
    os << "d=" << d_ << " m=" << m_ << " r=(";
    for (int k = 0; k < n_; ++k)
        os << (k ? "," : "") << stops_[k];
    os << ")";
    return os.str();
}

SlottedGenerator canonicalize_generator(int s, int i, int j, const ProblemSpec& spec)
{
    if (i < 1 || j <= i || j > spec.points())
        throw std::invalid_argument("generator pair out of range");
    if (s < 1 || s > spec.slot_count())
        throw std::invalid_argument("slot out of range");
    if (j <= spec.obstacle_count())
        return SlottedGenerator{0, i, j};
    return SlottedGenerator{std::min(s, spec.stop_slot(j - spec.obstacle_count())), i, j};
}

ParamElement::ParamElement(ProblemSpec spec) : spec_(std::move(spec)) {}

ParamElement ParamElement::unit(ProblemSpec spec)
{
    ParamElement e(std::move(spec));
    e.terms_.emplace(ParamMonomial{}, Int(1));
    return e;
}

ParamElement ParamElement::generator(ProblemSpec spec, int s, int i, int j)
{
    if (i == j)
        throw std::invalid_argument("w_ii is not a generator");
    Int coeff(1);
    if (i > j) {
        std::swap(i, j);
        coeff = -1;
    }
    SlottedGenerator g = canonicalize_generator(s, i, j, spec);
    ParamElement e(std::move(spec));
    e.terms_.emplace(ParamMonomial{g}, std::move(coeff));
    return e;
}

Int ParamElement::coefficient(const ParamMonomial& mono) const
{
    auto it = terms_.find(mono);
    return it == terms_.end() ? Int(0) : it->second;
}

void ParamElement::add_term(ParamMonomial mono, Int coeff)
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

void require_same_spec(const ParamElement& a, const ParamElement& b)
{
    if (!(a.spec() == b.spec()))
        throw std::invalid_argument("elements live over different problem specs");
}

} // namespace

ParamElement& ParamElement::operator+=(const ParamElement& rhs)
{
    require_same_spec(*this, rhs);
    for (const auto& [mono, coeff] : rhs.terms_)
        add_term(mono, coeff);
    return *this;
}

ParamElement& ParamElement::operator-=(const ParamElement& rhs)
{
    require_same_spec(*this, rhs);
    for (const auto& [mono, coeff] : rhs.terms_)
        add_term(mono, -coeff);
    return *this;
}

ParamElement& ParamElement::operator*=(const Int& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, coeff] : terms_)
        coeff *= c;
    return *this;
}

bool operator==(const ParamElement& a, const ParamElement& b)
{
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
}

ParamElement param_multiply(const ParamElement& a, const ParamElement& b)
{
    require_same_spec(a, b);
    const ProblemSpec& spec = a.spec();
    detail::CanonFn canon = [&spec](const detail::Factor& f) {
        if (f.slot == 0)
            return f;
        SlottedGenerator g = canonicalize_generator(f.slot, f.i, f.j, spec);
        return detail::Factor{g.slot, g.i, g.j};
    };
    detail::WordMap out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            detail::Word word;
            word.reserve(ma.size() + mb.size());
            for (const SlottedGenerator& g : ma)
                word.push_back(detail::Factor{g.slot, g.i, g.j});
            for (const SlottedGenerator& g : mb)
                word.push_back(detail::Factor{g.slot, g.i, g.j});
            detail::reduce_word(std::move(word), ca * cb, spec.parity(), &canon, out);
        }
    }
    ParamElement result(spec);
    for (auto& [word, coeff] : out) {
        ParamMonomial mono;
        mono.reserve(word.size());
        for (const detail::Factor& f : word)
            mono.push_back(SlottedGenerator{f.slot, f.i, f.j});
        result.add_term(std::move(mono), std::move(coeff));
    }
    return result;
}

ParamElement operator*(const ParamElement& a, const ParamElement& b)
{
    return param_multiply(a, b);
}

AlgebraElement diagonal_image(const ParamElement& x)
{
    const ProblemSpec& spec = x.spec();
    AlgebraElement out(spec.points(), spec.parity());
    for (const auto& [mono, coeff] : x.terms()) {
        Monomial word;
        word.reserve(mono.size());
        for (const SlottedGenerator& g : mono)
            word.push_back(BaseGenerator(g.i, g.j));
        AlgebraElement reduced = straighten(word, spec.points(), spec.parity());
        reduced *= coeff;
        out += reduced;
    }
    return out;
}

std::vector<ParamElement> kernel_generators(const ProblemSpec& spec)
{
    std::vector<ParamElement> out;
    for (int j = spec.obstacle_count() + 1; j <= spec.points(); ++j) {
        for (int i = 1; i < j; ++i) {
            std::set<int> slots;
            for (int s = 1; s <= spec.slot_count(); ++s)
                slots.insert(canonicalize_generator(s, i, j, spec).slot);
            for (auto it1 = slots.begin(); it1 != slots.end(); ++it1) {
                for (auto it2 = std::next(it1); it2 != slots.end(); ++it2) {
                    ParamElement diff = ParamElement::generator(spec, *it2, i, j)
                                      - ParamElement::generator(spec, *it1, i, j);
                    if (!diff.is_zero())
                        out.push_back(std::move(diff));
                }
            }
        }
    }
    return out;
}

bool is_basis_monomial(const ParamMonomial& mono, const ProblemSpec& spec)
{
    for (std::size_t k = 0; k < mono.size(); ++k) {
        const SlottedGenerator& g = mono[k];
        if (g.i < 1 || g.j <= g.i || g.j > spec.points())
            return false;
        if (g.slot == 0) {
            if (g.j > spec.obstacle_count())
                return false;
        } else {
            if (g.slot > spec.slot_count())
                return false;
            if (canonicalize_generator(g.slot, g.i, g.j, spec) != g)
                return false;
            if (g.j < spec.min_point_for_slot(g.slot))
                return false;
        }
        if (k > 0) {
            if (!(mono[k - 1] < g))
                return false; // canonical slot-major order
            if (mono[k - 1].slot == g.slot && mono[k - 1].j >= g.j)
                return false; // strictly increasing J within each slot part
        }
    }
    return true;
}

std::string to_string(const ParamMonomial& mono)
{
    if (mono.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const SlottedGenerator& g : mono) {
        if (!first)
            os << " ";
        first = false;
        os << "w";
        if (g.slot > 0)
            os << g.slot;
        os << "[" << g.i << "," << g.j << "]";
    }
    return os.str();
}

std::string to_string(const ParamElement& x)
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
