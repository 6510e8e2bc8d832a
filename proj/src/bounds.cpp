#include "seqtc/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace seqtc {

int upper_bound(const ProblemSpec& spec)
{
    if (spec.obstacle_count() < 2)
        throw std::invalid_argument("m >= 2 required");
    return spec.total_targets() + spec.obstacle_count() - 1;
}

std::pair<long long, int> hdim_ratio(const ProblemSpec& spec)
{
    long long hdim = static_cast<long long>(spec.dimension() - 1) * upper_bound(spec);
    return {hdim + 1, spec.dimension() - 1};
}

namespace {

/* Robots whose schedule has a single stop carry no slot distinctions of
 * their own (all their pair classes are identified across slots), so the
 * witness treats them as additional obstacles. The remaining "mover"
 * blocks keep their stop times. When every robot has a single stop the
 * movers are all robots and the one block has stop time 1; the algebra
 * still carries two slots in that case. */
struct MoverLayout {
    int m_eff = 0;                      // m + folded single-stop robots
    int j0 = 0;                         // point index of the first mover
    std::vector<int> last_point;        // P_k, k = 0..blocks (P_0 = m_eff)
    std::vector<int> stop;              // sigma_k, k = 0..blocks (sigma_0 = 1)
    int blocks = 0;
};

MoverLayout mover_layout(const ProblemSpec& spec)
{
    MoverLayout lay;
    const int m = spec.obstacle_count();
    if (spec.stops().back() == 1) {
        lay.m_eff = m;
        lay.blocks = 1;
        lay.last_point = {m, spec.points()};
        lay.stop = {1, 1};
    } else {
        int folded = spec.block_stop(1) == 1 ? spec.block_end(1) : 0;
        lay.m_eff = m + folded;
        lay.last_point = {lay.m_eff};
        lay.stop = {1};
        for (int u = 1; u <= spec.block_count(); ++u) {
            if (spec.block_stop(u) == 1)
                continue;
            lay.last_point.push_back(m + spec.block_end(u));
            lay.stop.push_back(spec.block_stop(u));
        }
        lay.blocks = static_cast<int>(lay.stop.size()) - 1;
    }
    lay.j0 = lay.m_eff + 1;
    return lay;
}

ParamElement slot_difference(const ProblemSpec& spec, int s_hi, int s_lo, int i, int j)
{
    return ParamElement::generator(spec, s_hi, i, j) - ParamElement::generator(spec, s_lo, i, j);
}

Witness assemble(const ProblemSpec& spec, std::vector<ParamElement> factors, int expected_count)
{
    if (static_cast<int>(factors.size()) != expected_count)
        throw InternalError("witness factor count does not match the closed form");
    ParamElement product = ParamElement::unit(spec);
    for (const ParamElement& f : factors) {
        if (!diagonal_image(f).is_zero())
            throw InternalError("witness factor is not in the diagonal kernel");
        product = param_multiply(product, f);
    }
    return Witness{std::move(factors), std::move(product), expected_count};
}

} // namespace

Witness odd_witness(const ProblemSpec& spec)
{
    if (spec.parity() != Parity::even_degree)
        throw std::invalid_argument("odd witness requires odd d");
    const MoverLayout lay = mover_layout(spec);
    const int points = spec.points();
    std::vector<ParamElement> factors;

    for (int i = 2; i <= lay.m_eff; ++i)
        factors.push_back(slot_difference(spec, 1, 2, i, lay.j0)); // w1 - w2
    for (int k = 1; k <= lay.blocks; ++k) {
        const int entry = lay.stop[k - 1] + 1;
        for (int j = lay.last_point[k - 1] + 1; j <= lay.last_point[k]; ++j)
            factors.push_back(slot_difference(spec, entry, 1, 1, j));
        for (int s = entry; s <= lay.stop[k]; ++s)
            for (int j = lay.last_point[k - 1] + 1; j <= points; ++j)
                factors.push_back(slot_difference(spec, s, 1, 1, j));
    }
    return assemble(spec, std::move(factors), upper_bound(spec));
}

Witness even_witness(const ProblemSpec& spec)
{
    if (spec.parity() != Parity::odd_degree)
        throw std::invalid_argument("even witness requires even d");
    const MoverLayout lay = mover_layout(spec);
    const int points = spec.points();
    std::vector<ParamElement> factors;

    for (int i = 2; i <= lay.m_eff; ++i)
        factors.push_back(slot_difference(spec, 1, 2, i, lay.j0)); // w1 - w2
    for (int j = lay.j0 + 1; j <= points; ++j)
        factors.push_back(slot_difference(spec, 2, 1, j - 1, j));
    for (int k = 1; k <= lay.blocks; ++k)
        for (int s = lay.stop[k - 1] + 1; s <= lay.stop[k]; ++s)
            for (int j = lay.last_point[k - 1] + 1; j <= points; ++j)
                factors.push_back(slot_difference(spec, s, 1, 1, j));
    return assemble(spec, std::move(factors), upper_bound(spec) - 1);
}

Witness section3_witness(const ProblemSpec& spec)
{
    if (spec.parity() != Parity::even_degree)
        throw std::invalid_argument("the section-3 witness requires odd d");
    if (spec.obstacle_count() != 2 || spec.robot_count() != 2 || spec.stops() != std::vector<int>{2, 3})
        throw std::invalid_argument("the section-3 witness is defined for m=2, r=(2,3) only");
    std::vector<ParamElement> factors;
    factors.push_back(slot_difference(spec, 2, 1, 1, 3));
    factors.push_back(slot_difference(spec, 2, 1, 1, 3));
    factors.push_back(slot_difference(spec, 2, 1, 1, 4));
    factors.push_back(slot_difference(spec, 2, 1, 1, 4));
    factors.push_back(slot_difference(spec, 2, 1, 2, 3));
    factors.push_back(slot_difference(spec, 3, 1, 1, 4));
    return assemble(spec, std::move(factors), 6);
}

std::optional<ParamMonomial> odd_witness_key_monomial(const ProblemSpec& spec)
{
    if (spec.stops().back() == 1)
        return std::nullopt;
    const MoverLayout lay = mover_layout(spec);
    const int points = spec.points();
    ParamMonomial mono;

    mono.push_back(canonicalize_generator(1, 1, 2, spec));
    for (int t = 3; t <= lay.m_eff; ++t)
        mono.push_back(canonicalize_generator(1, 2, t, spec));
    mono.push_back(canonicalize_generator(1, 2, lay.j0, spec));
    for (int j = lay.j0 + 1; j <= points; ++j)
        mono.push_back(canonicalize_generator(1, 1, j, spec));
    for (int k = 1; k <= lay.blocks; ++k)
        for (int s = std::max(2, lay.stop[k - 1] + 1); s <= lay.stop[k]; ++s)
            for (int j = lay.last_point[k - 1] + 1; j <= points; ++j)
                mono.push_back(canonicalize_generator(s, 1, j, spec));
    std::sort(mono.begin(), mono.end());
    if (!is_basis_monomial(mono, spec))
        throw InternalError("key monomial is not in basis form");
    return mono;
}

TcReport tc_exact(const ProblemSpec& spec)
{
    const bool odd = spec.parity() == Parity::even_degree;
    TcReport rep;
    rep.spec = spec;
    rep.upper = upper_bound(spec);
    auto [num, den] = hdim_ratio(spec);
    rep.hdim_numerator = num;
    rep.hdim_denominator = den;

    Witness w = odd ? odd_witness(spec) : even_witness(spec);
    if (w.product.is_zero())
        throw InternalError("witness product vanished for " + spec.to_string());
    const int expected = odd ? rep.upper : rep.upper - 1;
    if (w.factor_count != expected)
        throw InternalError("witness factor count mismatch for " + spec.to_string());

    rep.lower = expected;
    rep.exact = expected;
    rep.witness_factor_count = w.factor_count;
    rep.witness_nonzero = true;
    rep.witness_terms = w.product.terms().size();
    return rep;
}

int reference_tc(int d, int n, int r)
{
    if (d < 2 || n < 2 || r < 2)
        throw std::invalid_argument("reference_tc requires d, n, r >= 2");
    return d % 2 != 0 ? r * (n - 1) : r * (n - 1) - 1;
}

int reference_parametrized_tc(int d, int m, int n, int r)
{
    if (d < 2 || m < 2 || r < 1 || n < 1)
        throw std::invalid_argument("reference_parametrized_tc requires d, m >= 2 and n, r >= 1");
    return d % 2 != 0 ? r * n + m - 1 : r * n + m - 2;
}

int rule_count(const ProblemSpec& spec, PlannerMode mode)
{
    if (mode == PlannerMode::even_optimized && spec.parity() != Parity::odd_degree)
        throw std::invalid_argument("even-optimized mode requires even d");
    int base = spec.total_targets() + spec.obstacle_count();
    return mode == PlannerMode::general ? base : base - 1;
}

std::string TcReport::to_line() const
{
    std::ostringstream os;
    os << "d=" << spec.dimension() << " m=" << spec.obstacle_count() << " n=" << spec.robot_count()
       << " r=";
    for (int k = 0; k < spec.robot_count(); ++k)
        os << (k ? "," : "") << spec.stops()[k];
    os << " upper=" << upper << " lower=" << lower << " exact=" << exact
       << " witness_factors=" << witness_factor_count << " witness_nonzero=" << (witness_nonzero ? 1 : 0)
       << " witness_terms=" << witness_terms << " hdim_bound=" << hdim_numerator << "/"
       << hdim_denominator;
    return os.str();
}

} // namespace seqtc
