/* Acceptance suite: one line per criterion, nonzero exit on any failure. */

#include "oracle.hpp"
#include "seqtc/io.hpp"
#include "seqtc/sweep.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

using namespace seqtc;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg)
    {
        ok = false;
        if (!detail.empty())
            detail += "; ";
        detail += msg;
    }
    void note(const std::string& msg)
    {
        if (detail.empty())
            detail = msg;
    }
};

ParamElement G(const ProblemSpec& spec, int s, int i, int j)
{
    return ParamElement::generator(spec, s, i, j);
}

/* 1. The worked d=3, m=2, r=(2,3) example, including the hand-computed
 *    alternative witness expansion. */
Outcome criterion_1()
{
    Outcome out;
    ProblemSpec spec = ProblemSpec::create(3, 2, {2, 3});
    TcReport rep = tc_exact(spec);
    if (rep.exact != 6)
        out.fail("exact != 6");
    if (rep.upper != 6)
        out.fail("upper != 6");
    if (!rep.witness_nonzero || rep.witness_factor_count != 6)
        out.fail("witness is not a nonzero 6-factor product");

    Witness w = section3_witness(spec);
    if (w.factor_count != 6)
        out.fail("section-3 witness must have 6 factors");

    /* Hand-computed reduction of the section-3 witness, done factor by
     * factor with the defining relations (see test_bounds for the same
     * derivation): 4*(M1 - M2). The four products written in the source
     * display collapse onto these two basis monomials: its second and
     * fourth terms carry equal basis monomials (the obstacle-pair class
     * has no slot) with opposite signs and cancel. */
    ParamMonomial M1{SlottedGenerator{0, 1, 2}, SlottedGenerator{1, 1, 3},
                     SlottedGenerator{1, 1, 4}, SlottedGenerator{2, 2, 3},
                     SlottedGenerator{2, 1, 4}, SlottedGenerator{3, 1, 4}};
    ParamMonomial M2{SlottedGenerator{0, 1, 2}, SlottedGenerator{1, 2, 3},
                     SlottedGenerator{1, 1, 4}, SlottedGenerator{2, 1, 3},
                     SlottedGenerator{2, 1, 4}, SlottedGenerator{3, 1, 4}};
    ParamElement expect(spec);
    expect.add_term(M1, 4);
    expect.add_term(M2, -4);
    if (!(w.product == expect))
        out.fail("section-3 expansion disagrees with the hand reduction");

    /* Reconstruct the displayed four-product sum with engine products and
     * check exact agreement, term merge included. */
    auto tail = G(spec, 2, 1, 4) * G(spec, 1, 1, 4) * G(spec, 3, 1, 4);
    ParamElement t1 = tail * G(spec, 2, 1, 2) * G(spec, 2, 2, 3) * G(spec, 1, 1, 3);
    ParamElement t2 = tail * G(spec, 2, 1, 2) * G(spec, 2, 1, 3) * G(spec, 1, 1, 3);
    ParamElement t3 = tail * G(spec, 2, 1, 3) * G(spec, 1, 1, 2) * G(spec, 1, 2, 3);
    ParamElement t4 = tail * G(spec, 2, 1, 3) * G(spec, 1, 1, 2) * G(spec, 1, 1, 3);
    if (!((t1 - t2 - t3 + t4) * Int(4) == w.product))
        out.fail("displayed four-term sum does not reproduce the expansion");
    if (!(t2 == t4))
        out.fail("terms two and four of the display should carry one basis monomial");

    out.note("exact=6, upper=6; expansion = 4*(M1 - M2), displayed terms 2 and 4 merge");
    return out;
}

SweepRanges acceptance_ranges(std::vector<int> dims)
{
    SweepRanges ranges;
    ranges.dims = std::move(dims);
    ranges.obstacle_counts = {2, 3};
    ranges.robot_counts = {1, 2, 3};
    ranges.r_max = 3;
    return ranges;
}

/* 2. Odd sweep. */
Outcome criterion_2()
{
    Outcome out;
    std::vector<ProblemSpec> specs = enumerate_specs(acceptance_ranges({3, 5}));
    int checked = 0;
    for (const ProblemSpec& spec : specs) {
        Witness w = odd_witness(spec);
        if (w.product.is_zero()) {
            out.fail(spec.to_string() + ": witness product is zero");
            break;
        }
        if (w.factor_count != spec.total_targets() + spec.obstacle_count() - 1 ||
            w.factor_count != upper_bound(spec)) {
            out.fail(spec.to_string() + ": factor count mismatch");
            break;
        }
        for (const ParamElement& f : w.factors)
            if (!diagonal_image(f).is_zero()) {
                out.fail(spec.to_string() + ": factor escapes the diagonal kernel");
                break;
            }
        ++checked;
    }
    out.note(std::to_string(checked) + " odd specs verified");
    return out;
}

/* 3. Even sweep. */
Outcome criterion_3()
{
    Outcome out;
    std::vector<ProblemSpec> specs = enumerate_specs(acceptance_ranges({2, 4}));
    int checked = 0;
    for (const ProblemSpec& spec : specs) {
        Witness w = even_witness(spec);
        const int expect = spec.total_targets() + spec.obstacle_count() - 2;
        if (w.product.is_zero()) {
            out.fail(spec.to_string() + ": witness product is zero");
            break;
        }
        if (w.factor_count != expect) {
            out.fail(spec.to_string() + ": factor count mismatch");
            break;
        }
        if (tc_exact(spec).exact != expect) {
            out.fail(spec.to_string() + ": tc_exact mismatch");
            break;
        }
        ++checked;
    }
    out.note(std::to_string(checked) + " even specs verified");
    return out;
}

/* 4. Constant-schedule consistency with the closed reference values. */
Outcome criterion_4()
{
    Outcome out;
    int checked = 0;
    for (int d : {2, 3, 4, 5})
        for (int m : {2, 3})
            for (int n : {1, 2, 3})
                for (int r : {2, 3}) {
                    ProblemSpec spec = ProblemSpec::create(d, m, std::vector<int>(n, r));
                    const int want = d % 2 != 0 ? r * n + m - 1 : r * n + m - 2;
                    if (tc_exact(spec).exact != want ||
                        tc_exact(spec).exact != reference_parametrized_tc(d, m, n, r)) {
                        out.fail(spec.to_string() + ": disagrees with the constant-schedule value");
                        return out;
                    }
                    ++checked;
                }
    out.note(std::to_string(checked) + " constant schedules verified");
    return out;
}

/* 5. Algebra property suite. */
Outcome criterion_5()
{
    Outcome out;
    for (Parity p : {Parity::even_degree, Parity::odd_degree}) {
        const int N = 6;
        for (int i = 1; i <= N && out.ok; ++i)
            for (int j = i + 1; j <= N && out.ok; ++j) {
                auto w = [&](int a, int b) { return AlgebraElement::generator(a, b, N, p); };
                if (!multiply(w(i, j), w(i, j)).is_zero())
                    out.fail("square relation fails");
                for (int q = j + 1; q <= N; ++q) {
                    AlgebraElement zero = multiply(w(i, q), w(j, q)) -
                                          multiply(w(i, j), w(j, q)) + multiply(w(i, j), w(i, q));
                    if (!zero.is_zero()) {
                        out.fail("three-term relation fails");
                        break;
                    }
                }
            }
    }

    std::mt19937_64 rng(1234);
    auto random_word = [&rng](int N, int max_len) {
        Monomial word;
        int len = 1 + static_cast<int>(rng() % max_len);
        for (int k = 0; k < len; ++k) {
            int j = 2 + static_cast<int>(rng() % (N - 1));
            int i = 1 + static_cast<int>(rng() % (j - 1));
            word.push_back(BaseGenerator(i, j));
        }
        return word;
    };

    for (int trial = 0; trial < 120 && out.ok; ++trial) {
        const int N = 3 + static_cast<int>(rng() % 5);
        const Parity p = rng() % 2 ? Parity::even_degree : Parity::odd_degree;
        Monomial word = random_word(N, 6);
        AlgebraElement e = straighten(word, N, p);
        AlgebraElement again(N, p);
        for (const auto& [mono, coeff] : e.terms()) {
            AlgebraElement part = straighten(mono, N, p);
            part *= coeff;
            again += part;
        }
        if (!(again == e))
            out.fail("straightening is not idempotent");
    }

    for (int trial = 0; trial < 100 && out.ok; ++trial) {
        const int N = 4 + static_cast<int>(rng() % 3);
        const Parity p = rng() % 2 ? Parity::even_degree : Parity::odd_degree;
        Monomial wx = random_word(N, 3), wy = random_word(N, 3);
        AlgebraElement x = straighten(wx, N, p), y = straighten(wy, N, p);
        const bool flip = p == Parity::odd_degree && (wx.size() * wy.size()) % 2 == 1;
        AlgebraElement yx = multiply(y, x);
        if (!(multiply(x, y) == (flip ? -yx : yx)))
            out.fail("graded commutativity fails");
    }

    for (int trial = 0; trial < 200 && out.ok; ++trial) {
        const int N = 4 + static_cast<int>(rng() % 3);
        const Parity p = rng() % 2 ? Parity::even_degree : Parity::odd_degree;
        AlgebraElement a = straighten(random_word(N, 3), N, p);
        AlgebraElement b = straighten(random_word(N, 3), N, p);
        AlgebraElement c = straighten(random_word(N, 3), N, p);
        if (!(multiply(multiply(a, b), c) == multiply(a, multiply(b, c))))
            out.fail("associativity fails");
        if (!(multiply(a, b + c) == multiply(a, b) + multiply(a, c)))
            out.fail("distributivity fails");
    }

    int counted = 0;
    for (int N = 2; N <= 6 && out.ok; ++N)
        for (int k = 0; k <= 4; ++k) {
            auto monos = oracle::enumerate_admissible(N, k);
            if (Int(monos.size()) != oracle::poincare_coefficient(N, k)) {
                out.fail("basis count disagrees with the Poincare series");
                break;
            }
            counted += static_cast<int>(monos.size());
        }
    out.note("relations, idempotence, signs, 200 triples, " + std::to_string(counted) +
             " basis monomials counted");
    return out;
}

/* 6. Optimized reduction vs the naive exhaustive rewriter. */
Outcome criterion_6()
{
    Outcome out;
    std::mt19937_64 rng(987654321);
    int agreed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int m = 2 + static_cast<int>(rng() % 2);
        int n = 1 + static_cast<int>(rng() % (5 - m));
        std::vector<int> stops;
        for (int i = 0; i < n; ++i)
            stops.push_back(1 + static_cast<int>(rng() % 3));
        ProblemSpec spec = ProblemSpec::create(2 + static_cast<int>(rng() % 4), m, stops);

        oracle::RawWord word;
        ParamElement prod = ParamElement::unit(spec);
        int len = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < len; ++k) {
            int j = 2 + static_cast<int>(rng() % (spec.points() - 1));
            int i = 1 + static_cast<int>(rng() % (j - 1));
            int s = 1 + static_cast<int>(rng() % spec.slot_count());
            word.push_back({s, i, j});
            prod = prod * G(spec, s, i, j);
        }
        ParamElement naive = oracle::reduce_naive(spec, {{Int(1), word}}, rng);
        if (!(naive == prod)) {
            out.fail(spec.to_string() + ": naive and optimized reductions disagree");
            break;
        }
        ++agreed;
    }
    out.note(std::to_string(agreed) + " random products agreed");
    return out;
}

/* 7. Planner certification. */
Outcome criterion_7()
{
    Outcome out;
    int passed = 0;
    for (int mode_case = 0; mode_case < 2 && out.ok; ++mode_case) {
        const PlannerMode mode =
            mode_case == 0 ? PlannerMode::general : PlannerMode::even_optimized;
        for (int k = 0; k < 50; ++k) {
            const bool engineered = k < 10;
            const int d = mode == PlannerMode::even_optimized ? 2 : (k % 2 == 0 ? 2 : 3);
            const int m = 2 + k % 2;
            const int n = 1 + k % 3;
            std::vector<int> stops;
            for (int i = 0; i < n; ++i)
                stops.push_back(1 + (k + i) % 3);
            Scenario sc = random_scenario(d, m, stops, mode,
                                          100000ull + 1000ull * mode_case + k, engineered);
            PlannedPath path = plan(sc);
            ValidationReport rep = validate(path, sc, 2048, 1e-7, 1e-9);
            if (!rep.pass) {
                std::ostringstream os;
                os << "scenario " << mode_case << "/" << k << " failed (rr="
                   << rep.min_robot_robot << ", ro=" << rep.min_robot_obstacle << ")";
                out.fail(os.str());
                break;
            }
            ++passed;
        }
    }
    out.note(std::to_string(passed) + " scenarios planned and validated at 2048 samples/interval");
    return out;
}

/* 8. Rule-count identities. */
Outcome criterion_8()
{
    Outcome out;
    int checked = 0;
    for (int d : {2, 3, 4, 5}) {
        for (const ProblemSpec& spec : enumerate_specs(acceptance_ranges({d}))) {
            const int base = spec.total_targets() + spec.obstacle_count();
            if (rule_count(spec, PlannerMode::general) != base) {
                out.fail(spec.to_string() + ": general rule count != R+m");
                return out;
            }
            if (d % 2 == 0) {
                if (rule_count(spec, PlannerMode::even_optimized) != base - 1) {
                    out.fail(spec.to_string() + ": even-optimized rule count != R+m-1");
                    return out;
                }
                if (rule_count(spec, PlannerMode::even_optimized) - 1 != tc_exact(spec).exact) {
                    out.fail(spec.to_string() + ": rule count does not certify the exact value");
                    return out;
                }
            }
            ++checked;
        }
    }
    out.note(std::to_string(checked) + " specs verified");
    return out;
}

/* 9. Within-cell continuity under configuration perturbation. */
Outcome criterion_9()
{
    Outcome out;
    struct Case {
        int d;
        int m;
        std::vector<int> stops;
        PlannerMode mode;
        std::uint64_t seed;
    };
    const std::vector<Case> cases{
        {3, 2, {2, 2}, PlannerMode::general, 4242},
        {3, 3, {2, 3}, PlannerMode::general, 4343},
        {2, 2, {2}, PlannerMode::general, 4444},
        {2, 2, {2, 2}, PlannerMode::even_optimized, 4545},
        {2, 3, {1, 2}, PlannerMode::even_optimized, 4646},
    };
    int checked = 0;
    for (const Case& c : cases) {
        Scenario base = random_scenario(c.d, c.m, c.stops, c.mode, c.seed, false);
        ProjectionFrame frame = projection_frame(base);
        CellDescriptor cell0 = classify_cell(base, frame, 1e-9 * base.scene_scale());
        for (double eta : {1e-3, 1e-5}) {
            std::mt19937_64 rng(c.seed ^ 0xabcdefull);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            std::vector<std::vector<Vec>> targets = base.targets();
            for (auto& list : targets)
                for (Vec& z : list) {
                    Vec dir(z.size());
                    for (double& x : dir)
                        x = unit(rng);
                    const double len = norm(dir);
                    for (std::size_t a = 0; a < z.size(); ++a)
                        z[a] += eta * dir[a] / len;
                }
            Scenario moved = Scenario::create(c.d, c.mode, base.obstacles(), targets);
            CellDescriptor cell1 = classify_cell(moved, frame, 1e-9 * moved.scene_scale());
            if (cell1.sigma != cell0.sigma) {
                out.fail("perturbation changed the cell (test construction error)");
                return out;
            }
            PlannedPath p0 = plan(base);
            PlannedPath p1 = plan(moved);
            double sup = 0;
            for (int s = 0; s <= 512; ++s) {
                const double t = s / 512.0;
                for (std::size_t i = 0; i < p0.robots.size(); ++i)
                    sup = std::max(sup, distance(path_point(p0.robots[i], t),
                                                 path_point(p1.robots[i], t)));
            }
            if (sup > 1e4 * eta) {
                std::ostringstream os;
                os << "sup distance " << sup << " exceeds 1e4 * " << eta;
                out.fail(os.str());
                return out;
            }
            ++checked;
        }
    }
    out.note(std::to_string(checked) + " perturbation pairs within the Lipschitz budget");
    return out;
}

} // namespace

int main()
{
    struct Entry {
        int id;
        const char* label;
        Outcome (*run)();
        double budget_seconds;
    };
    const std::vector<Entry> entries{
        {1, "worked example d=3 m=2 r=(2,3)", criterion_1, 1.0},
        {2, "odd sweep witnesses", criterion_2, 60.0},
        {3, "even sweep witnesses", criterion_3, 60.0},
        {4, "constant-schedule consistency", criterion_4, 60.0},
        {5, "algebra property suite", criterion_5, 60.0},
        {6, "naive-rewriter oracle equivalence", criterion_6, 60.0},
        {7, "planner certification", criterion_7, 120.0},
        {8, "rule-count identities", criterion_8, 60.0},
        {9, "within-cell continuity", criterion_9, 60.0},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = e.run();
        } catch (const std::exception& ex) {
            out.ok = false;
            out.detail = std::string("exception: ") + ex.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > e.budget_seconds) {
            out.ok = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
        std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.label << " ("
                  << out.detail << ", " << timing << ")\n";
        if (!out.ok)
            ++failures;
    }
    std::cout << (failures == 0 ? "acceptance suite passed" : "acceptance suite FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
