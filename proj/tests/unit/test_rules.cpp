#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "riparian/rules.hpp"

using namespace riparian;
using riparian::testing::Rational;
namespace t = riparian::testing;

namespace {

void expect_near(std::span<const double> actual, const std::vector<double>& expected, double tol) {
    ASSERT_EQ(actual.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(actual[i], expected[i], tol) << "component " << i + 1;
    }
}

struct ShareCheck {
    Allocation allocation;
    t::ShareFn<double> share;
};

const InflowProfile kFourAgents{50, 30, 10, 10};
const InflowProfile kNile{16.8, 16.2, 17.6, 65.3, 0};

std::vector<RuleSpec> parameterized_rules(double p) {
    return {RuleSpec::no_transfer(),
            RuleSpec::egalitarian_full_transfer(),
            RuleSpec::egalitarian_partial_transfer(),
            RuleSpec::shapley(),
            RuleSpec::compromise(p),
            RuleSpec::partial_compromise(p)};
}

}  // namespace

// --- Worked examples ------------------------------------------------------

TEST(NoTransfer, IsTheIdentity) {
    expect_near(no_transfer(kFourAgents).values(), {50, 30, 10, 10}, 0);
    expect_near(no_transfer(InflowProfile{0, 0, 0}).values(), {0, 0, 0}, 0);
    expect_near(no_transfer(kNile).values(), {16.8, 16.2, 17.6, 65.3, 0}, 0);
}

TEST(EgalitarianFullTransfer, FourAgentsMatchExactShares) {
    const auto exact = t::simulate_shares<Rational>(t::rationals({50, 30, 10, 10}),
                                                    t::eft_share<Rational>);
    EXPECT_EQ(exact[1], Rational(50, 3));
    EXPECT_EQ(exact[2], Rational(95, 3));
    EXPECT_EQ(exact[3], Rational(155, 3));
    expect_near(egalitarian_full_transfer(kFourAgents).values(), t::to_doubles(exact), 1e-12);
}

TEST(EgalitarianFullTransfer, NileColumn) {
    expect_near(egalitarian_full_transfer(kNile).values(), {0, 4.2, 9.6, 18.4, 83.7}, 1e-9);
}

TEST(EgalitarianFullTransfer, OnlyTerminalInflow) {
    expect_near(egalitarian_full_transfer(InflowProfile{0, 0, 7}).values(), {0, 0, 7}, 0);
}

TEST(Shapley, FourAgents) {
    expect_near(shapley(kFourAgents).values(), {12.5, 22.5, 27.5, 37.5}, 1e-12);
}

TEST(Shapley, NileColumn) {
    expect_near(shapley(kNile).values(), {3.36, 7.41, 13.28, 45.93, 45.93}, 0.01);
}

TEST(Shapley, ZeroProfile) {
    expect_near(shapley(InflowProfile{0, 0, 0, 0}).values(), {0, 0, 0, 0}, 0);
}

TEST(EgalitarianPartialTransfer, FourAgents) {
    expect_near(egalitarian_partial_transfer(kFourAgents).values(),
                {0, 80.0 / 3, 100.0 / 3, 40}, 1e-12);
}

TEST(EgalitarianPartialTransfer, NileColumn) {
    expect_near(egalitarian_partial_transfer(kNile).values(), {0, 8.25, 17.05, 61.62, 28.98},
                0.01);
}

TEST(EgalitarianPartialTransfer, SplitIntoNMinusOnePartsOracle) {
    const auto exact = t::simulate_shares<Rational>(t::rationals({3, 2, 1, 1}),
                                                    t::ept_share<Rational>);
    EXPECT_EQ(exact, (std::vector<Rational>{0, Rational(5, 3), Rational(7, 3), 3}));
    expect_near(egalitarian_partial_transfer(InflowProfile{3, 2, 1, 1}).values(),
                t::to_doubles(exact), 1e-12);
}

TEST(Compromise, FourAgentsClosedForm) {
    for (double l : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
        expect_near(compromise(kFourAgents, l).values(),
                    {50 * l, 50.0 / 3 + 40 * l / 3, 95.0 / 3 - 65 * l / 3, 155.0 / 3 - 125 * l / 3},
                    1e-12);
    }
}

TEST(Compromise, ThreeTwoOneOneKeepsOwnShare) {
    for (double l : {0.0, 0.3, 1.0}) {
        expect_near(compromise(InflowProfile{3, 2, 1, 1}, l).values(),
                    {3 * l, 1 + l, 2 - l, 4 - 3 * l}, 1e-12);
    }
}

TEST(Compromise, NileHalf) {
    expect_near(compromise(kNile, 0.5).values(), {8.40, 10.20, 13.60, 41.85, 41.85}, 1e-9);
}

TEST(Compromise, ParameterOutsideUnitIntervalIsRejected) {
    EXPECT_THROW((void)compromise(kFourAgents, -0.1), DomainError);
    EXPECT_THROW((void)compromise(kFourAgents, 1.5), DomainError);
    EXPECT_THROW((void)RuleSpec::compromise(2.0), DomainError);
}

TEST(PartialCompromise, FourAgentsClosedForm) {
    for (double d : {0.0, 0.2, 0.5, 1.0}) {
        expect_near(partial_compromise(kFourAgents, d).values(),
                    {50 * d, 80.0 / 3 + 10 * d / 3, 100.0 / 3 - 70 * d / 3, 40 - 30 * d}, 1e-12);
    }
}

TEST(PartialCompromise, NileHalf) {
    expect_near(partial_compromise(kNile, 0.5).values(), {8.40, 12.22, 17.33, 63.46, 14.49},
                0.01);
}

// On (3,2,1,1) the share passed on to predecessors, beta, is 1 - delta.
TEST(PartialCompromise, PredecessorShareIsOneMinusDelta) {
    for (double beta : {0.0, 0.25, 0.6, 1.0}) {
        expect_near(partial_compromise(InflowProfile{3, 2, 1, 1}, 1 - beta).values(),
                    {3 - 3 * beta, 2 - beta / 3, 1 + 4 * beta / 3, 1 + 2 * beta}, 1e-12);
    }
}

TEST(PartialCompromise, ParameterOutsideUnitIntervalIsRejected) {
    EXPECT_THROW((void)partial_compromise(kFourAgents, 1.0001), DomainError);
    EXPECT_THROW((void)RuleSpec::partial_compromise(-1), DomainError);
}

TEST(AlphaRule, DimensionMismatch) {
    EXPECT_THROW((void)alpha_rule(kFourAgents, AlphaParams({0.5, 0.5})), DimensionError);
}

TEST(AlphaRule, ShapleyMapForFourAgents) {
    expect_near(shapley_alphas(4).values(), {0.25, 1.0 / 3, 0.5}, 1e-15);
    expect_near(alpha_rule(kFourAgents, shapley_alphas(4)).values(), {12.5, 22.5, 27.5, 37.5},
                1e-12);
}

TEST(AlphaRule, AcceptsClosedIntervalEndpoints) {
    expect_near(alpha_rule(kFourAgents, AlphaParams({1, 1, 1})).values(), {50, 30, 10, 10}, 1e-12);
    expect_near(alpha_rule(kFourAgents, AlphaParams({0, 0, 0})).values(),
                egalitarian_full_transfer(kFourAgents).vector(), 1e-12);
}

// --- Properties on random profiles ----------------------------------------

class RandomProfiles : public ::testing::Test {
protected:
    std::mt19937_64 rng{20240611};

    InflowProfile next(std::size_t lo = 2, std::size_t hi = 12) {
        return InflowProfile(t::random_profile(rng, t::random_size(rng, lo, hi)));
    }
    double unit() { return std::uniform_real_distribution<double>(0, 1)(rng); }
};

TEST_F(RandomProfiles, EveryRuleIsFeasibleAndNonWasteful) {
    for (int trial = 0; trial < 2000; ++trial) {
        const auto e = next();
        for (const auto& rule : parameterized_rules(unit())) {
            const auto x = rule.apply(e);
            EXPECT_TRUE(validate_allocation(e, x.values()).ok) << rule.to_string();
        }
    }
}

TEST_F(RandomProfiles, RulesMatchTheShareMatrixOracle) {
    for (int trial = 0; trial < 500; ++trial) {
        const auto e = next();
        const double p = unit();
        const double eps = Tolerance{}.at(e.total());
        const ShareCheck cases[] = {
            {no_transfer(e), t::nt_share<double>},
            {egalitarian_full_transfer(e), t::eft_share<double>},
            {shapley(e), t::shapley_share<double>},
            {egalitarian_partial_transfer(e), t::ept_share<double>},
            {compromise(e, p), t::mix<double>(p, t::nt_share<double>, t::eft_share<double>)},
            {partial_compromise(e, p), t::mix<double>(p, t::nt_share<double>, t::ept_share<double>)},
        };
        for (const auto& c : cases) {
            expect_near(c.allocation.values(), t::simulate_shares<double>(e.vector(), c.share), eps);
        }
    }
}

TEST_F(RandomProfiles, EndpointIdentities) {
    for (int trial = 0; trial < 500; ++trial) {
        const auto e = next();
        const double eps = Tolerance{}.at(e.total());
        expect_near(compromise(e, 1).values(), e.vector(), eps);
        expect_near(partial_compromise(e, 1).values(), e.vector(), eps);
        expect_near(compromise(e, 0).values(), egalitarian_full_transfer(e).vector(), eps);
        expect_near(partial_compromise(e, 0).values(), egalitarian_partial_transfer(e).vector(),
                    eps);
    }
}

TEST_F(RandomProfiles, AlphaFamilyEmbedsTheNamedRules) {
    for (int trial = 0; trial < 1000; ++trial) {
        const auto e = next(2, 8);
        const std::size_t n = e.size();
        const double p = unit();
        const double eps = Tolerance{}.at(e.total());
        expect_near(alpha_rule(e, shapley_alphas(n)).values(), shapley(e).vector(), eps);
        expect_near(alpha_rule(e, compromise_alphas(n, p)).values(), compromise(e, p).vector(),
                    eps);
        expect_near(alpha_rule(e, partial_compromise_alphas(n, p)).values(),
                    partial_compromise(e, p).vector(), eps);
        expect_near(alpha_rule(e, compromise_alphas(n, 1)).values(), e.vector(), eps);
        expect_near(alpha_rule(e, compromise_alphas(n, 0)).values(),
                    egalitarian_full_transfer(e).vector(), eps);
    }
}

TEST_F(RandomProfiles, RulesAreLinear) {
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = t::random_size(rng, 2, 12);
        const InflowProfile a(t::random_profile(rng, n));
        const InflowProfile b(t::random_profile(rng, n));
        std::vector<double> sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
        const InflowProfile ab(sum);
        const double eps = Tolerance{}.at(ab.total());
        for (const auto& rule : parameterized_rules(unit())) {
            const auto xa = rule.apply(a);
            const auto xb = rule.apply(b);
            const auto xab = rule.apply(ab);
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(xab[i], xa[i] + xb[i], eps);
        }
    }
}

TEST_F(RandomProfiles, RulesAreHomogeneous) {
    for (int trial = 0; trial < 500; ++trial) {
        const auto e = next();
        const double gamma = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
        const double eps = Tolerance{}.at(std::max(1.0, gamma) * e.total());
        for (const auto& rule : parameterized_rules(unit())) {
            const auto x = rule.apply(e);
            const auto xs = rule.apply(e.scaled(gamma));
            for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(xs[i], gamma * x[i], eps);
        }
    }
}

TEST(Shapley, SingleSourceKeepsTheDownstreamMean) {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::vector<double> v(n, 0.0);
            v[i] = 7.0;
            const auto x = shapley(InflowProfile(v));
            double downstream = 0.0;
            for (std::size_t k = i + 1; k < n; ++k) downstream += x[k];
            EXPECT_NEAR(x[i], downstream / static_cast<double>(n - 1 - i), 1e-12);
        }
    }
}

// --- Rule spec grammar -----------------------------------------------------

TEST(RuleSpecGrammar, ParsesEveryForm) {
    EXPECT_EQ(parse_rule_spec("nt").to_string(), "nt");
    EXPECT_EQ(parse_rule_spec("eft").to_string(), "eft");
    EXPECT_EQ(parse_rule_spec(" ept ").to_string(), "ept");
    EXPECT_EQ(parse_rule_spec("shapley").to_string(), "shapley");
    EXPECT_EQ(parse_rule_spec("compromise:0.25").to_string(), "compromise:0.25");
    EXPECT_EQ(parse_rule_spec("partial:1").to_string(), "partial:1");
    EXPECT_EQ(parse_rule_spec("alpha:0.25,0.5, 1").to_string(), "alpha:0.25,0.5,1");
}

TEST(RuleSpecGrammar, CanonicalFormRoundTrips) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        const double p = std::uniform_real_distribution<double>(0, 1)(rng);
        for (const auto& rule : parameterized_rules(p)) {
            EXPECT_EQ(parse_rule_spec(rule.to_string()).to_string(), rule.to_string());
        }
        const auto alpha = RuleSpec::alpha(AlphaParams({p, 1 - p, p / 3}));
        const auto reparsed = parse_rule_spec(alpha.to_string());
        expect_near(reparsed.apply(InflowProfile{1, 2, 3, 4}).values(),
                    alpha.apply(InflowProfile{1, 2, 3, 4}).vector(), 0);
    }
}

TEST(RuleSpecGrammar, ErrorsNameTheOffendingToken) {
    try {
        (void)parse_rule_spec("compromise:abc");
        FAIL();
    } catch (const RuleParseError& e) {
        EXPECT_NE(std::string(e.what()).find("abc"), std::string::npos);
    }
    try {
        (void)parse_rule_spec("sharpley");
        FAIL();
    } catch (const RuleParseError& e) {
        EXPECT_NE(std::string(e.what()).find("sharpley"), std::string::npos);
    }
    EXPECT_THROW((void)parse_rule_spec("nt:0.5"), RuleParseError);
    EXPECT_THROW((void)parse_rule_spec("partial"), RuleParseError);
    EXPECT_THROW((void)parse_rule_spec("alpha:0.5,,0.2"), RuleParseError);
}

TEST(RuleSpecGrammar, ReportsLegalRange) {
    try {
        (void)parse_rule_spec("compromise:1.5");
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("[0, 1]"), std::string::npos);
    }
}
