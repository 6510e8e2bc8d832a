#include "seqtc/sweep.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace seqtc {

namespace {

void non_decreasing_tuples(int n, int r_max, int min_value, std::vector<int>& prefix,
                           std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(prefix.size()) == n) {
        out.push_back(prefix);
        return;
    }
    for (int r = min_value; r <= r_max; ++r) {
        prefix.push_back(r);
        non_decreasing_tuples(n, r_max, r, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<ProblemSpec> enumerate_specs(const SweepRanges& ranges)
{
    std::vector<ProblemSpec> specs;
    for (int d : ranges.dims)
        for (int m : ranges.obstacle_counts)
            for (int n : ranges.robot_counts) {
                std::vector<std::vector<int>> tuples;
                std::vector<int> prefix;
                non_decreasing_tuples(n, ranges.r_max, 1, prefix, tuples);
                for (const auto& r : tuples)
                    specs.push_back(ProblemSpec::create(d, m, r));
            }
    return specs;
}

SpecCheck check_spec(const ProblemSpec& spec)
{
    SpecCheck res;
    res.spec = spec;
    auto fail = [&res](const std::string& msg) {
        if (res.failure.empty())
            res.failure = msg;
    };
    try {
        const bool odd = spec.parity() == Parity::even_degree;
        const Witness w = odd ? odd_witness(spec) : even_witness(spec);
        const int expected = odd ? upper_bound(spec) : upper_bound(spec) - 1;
        if (w.factor_count != expected)
            fail("witness factor count != closed form");
        if (w.product.is_zero())
            fail("witness product is zero");
        for (const ParamElement& f : w.factors)
            if (!diagonal_image(f).is_zero()) {
                fail("witness factor escapes the diagonal kernel");
                break;
            }
        for (const auto& [mono, coeff] : w.product.terms())
            if (!is_basis_monomial(mono, spec)) {
                fail("witness product has a non-basis term");
                break;
            }
        if (odd) {
            if (auto key = odd_witness_key_monomial(spec)) {
                if (w.product.coefficient(*key) == 0)
                    fail("odd witness misses its key basis monomial");
            }
        }

        res.report = tc_exact(spec);
        if (res.report.exact != expected)
            fail("tc_exact disagrees with the witness count");

        /* Constant-schedule consistency with the closed reference form. */
        if (spec.stops().front() == spec.stops().back()) {
            const int r = spec.stops().front();
            if (res.report.exact !=
                reference_parametrized_tc(spec.dimension(), spec.obstacle_count(),
                                          spec.robot_count(), r))
                fail("constant-schedule value disagrees with the reference formula");
        }

        if (rule_count(spec, PlannerMode::general) != upper_bound(spec) + 1)
            fail("general rule count != R+m");
        if (!odd && rule_count(spec, PlannerMode::even_optimized) - 1 != res.report.exact)
            fail("even-optimized rule count does not match the exact value");
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    res.ok = res.failure.empty();
    return res;
}

std::vector<SpecCheck> check_specs(const std::vector<ProblemSpec>& specs, bool parallel)
{
    std::vector<SpecCheck> out(specs.size());
    const long count = static_cast<long>(specs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < count; ++k)
            out[k] = check_spec(specs[k]);
    } else {
        for (long k = 0; k < count; ++k)
            out[k] = check_spec(specs[k]);
    }
    return out;
}

std::vector<SpecCheck> check_specs_reference(const std::vector<ProblemSpec>& specs)
{
    return check_specs(specs, false);
}

namespace {

Vec random_point(std::mt19937_64& rng, int d)
{
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    Vec p(d);
    for (int k = 0; k < d; ++k)
        p[k] = coord(rng);
    return p;
}

double min_slice_separation(const std::vector<Vec>& obstacles,
                            const std::vector<std::vector<Vec>>& targets)
{
    double best = std::numeric_limits<double>::infinity();
    std::size_t r_max = 0;
    for (const auto& list : targets)
        r_max = std::max(r_max, list.size());
    for (std::size_t k = 1; k <= r_max; ++k) {
        std::vector<const Vec*> slice;
        for (const Vec& o : obstacles)
            slice.push_back(&o);
        for (const auto& list : targets)
            slice.push_back(&list[std::min(k, list.size()) - 1]);
        for (std::size_t a = 0; a < slice.size(); ++a)
            for (std::size_t b = a + 1; b < slice.size(); ++b)
                best = std::min(best, distance(*slice[a], *slice[b]));
    }
    return best;
}

/* Smallest gap between projection values, ignoring engineered ties
 * (anything below 1e-12 counts as one value). */
double min_projection_gap(const ProjectionFrame& frame, const std::vector<Vec>& pts)
{
    std::vector<double> vals;
    for (const Vec& p : pts)
        vals.push_back(frame.project(p));
    std::sort(vals.begin(), vals.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < vals.size(); ++k)
        if (vals[k] - vals[k - 1] > 1e-12)
            best = std::min(best, vals[k] - vals[k - 1]);
    return best;
}

} // namespace

Scenario random_scenario(int d, int m, const std::vector<int>& stops, PlannerMode mode,
                         std::uint64_t seed, bool engineered_ties)
{
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        std::vector<Vec> obstacles;
        for (int a = 0; a < m; ++a)
            obstacles.push_back(random_point(rng, d));

        std::vector<std::vector<Vec>> targets;
        for (int r : stops) {
            std::vector<Vec> list;
            for (int k = 0; k < r; ++k)
                list.push_back(random_point(rng, d));
            targets.push_back(std::move(list));
        }

        if (min_slice_separation(obstacles, targets) < 0.12)
            continue;

        ProjectionFrame frame;
        if (mode == PlannerMode::even_optimized) {
            Vec diff = sub(obstacles[1], obstacles[0]);
            Vec e = scaled(diff, 1.0 / norm(diff));
            frame = ProjectionFrame{e, tangent_field_image(e)};
        } else {
            Vec e(d, 0.0), p(d, 0.0);
            e[0] = 1.0;
            p[1] = 1.0;
            frame = ProjectionFrame{e, p};
        }

        if (engineered_ties) {
            /* Snap a few targets onto other symbols' projection values by
             * sliding them along e; the points stay distinct because the
             * perpendicular parts differ. */
            std::vector<const Vec*> anchors;
            for (const Vec& o : obstacles)
                anchors.push_back(&o);
            std::uniform_int_distribution<int> robot_pick(0, static_cast<int>(targets.size()) - 1);
            int ties = 2 + static_cast<int>(rng() % 2);
            for (int t = 0; t < ties; ++t) {
                int i = robot_pick(rng);
                int k = static_cast<int>(rng() % targets[i].size());
                const Vec* anchor = anchors[rng() % anchors.size()];
                if (mode == PlannerMode::general) {
                    targets[i][k][0] = (*anchor)[0]; // exact tie along e = x1
                } else {
                    double shift = frame.project(*anchor) - frame.project(targets[i][k]);
                    targets[i][k] = axpy(targets[i][k], shift, frame.e);
                }
            }
            /* Occasionally make one robot hold between consecutive stops. */
            if (rng() % 2 == 0) {
                int i = robot_pick(rng);
                if (targets[i].size() >= 2) {
                    std::size_t k = 1 + rng() % (targets[i].size() - 1);
                    targets[i][k] = targets[i][k - 1];
                }
            }
            if (min_slice_separation(obstacles, targets) < 0.05)
                continue;
        }

        std::vector<Vec> pts;
        for (const Vec& o : obstacles)
            pts.push_back(o);
        for (const auto& list : targets)
            for (const Vec& z : list)
                pts.push_back(z);
        if (min_projection_gap(frame, pts) < 0.02)
            continue;

        try {
            return Scenario::create(d, mode, std::move(obstacles), std::move(targets));
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    std::ostringstream os;
    os << "failed to draw a scenario (d=" << d << " m=" << m << " seed=" << seed << ")";
    throw std::runtime_error(os.str());
}

} // namespace seqtc
