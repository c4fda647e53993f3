#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace synclat;
using namespace testing_support;

namespace {

std::vector<Rational> vec(std::initializer_list<long> xs) { return std::vector<Rational>(xs.begin(), xs.end()); }

}  // namespace

TEST(EvalAdmissible, LinearFieldIsAdjacency) {
    auto net = corpus("fig_pm_i");
    EXPECT_EQ(eval_admissible(net, AdmissibleField::linear(), vec({1, 1, 1, -2, -2})), vec({-1, -1, -1, 2, 2}));
}

TEST(EvalAdmissible, ProductCoupling) {
    AdmissibleField f;
    f.coupling[{1, 1}] = 1;
    EXPECT_EQ(eval_admissible(corpus("fig_pm_i"), f, vec({1, 1, 1, -2, -2})), vec({-1, -1, -1, -4, -4}));
}

TEST(EvalAdmissible, InternalDynamics) {
    AdmissibleField f;
    f.internal = RationalPoly{1, 0, 1};  // 1 + x^2
    EXPECT_EQ(eval_admissible(net_of({{2}}), f, vec({3})), vec({10}));
    EXPECT_THROW(eval_admissible(net_of({{2}}), f, vec({1, 2})), std::invalid_argument);
}

TEST(InPolydiagonal, Basic) {
    auto p = Partition::parse("{1,3}{2}", 3);
    EXPECT_TRUE(in_polydiagonal(vec({4, 0, 4}), p));
    EXPECT_FALSE(in_polydiagonal(vec({4, 0, 5}), p));
}

TEST(Witness, UnbalancedPartitionsAreViolated) {
    for (auto name : {"fig_pm_i", "fig_nd1", "fig_se", "fig_net6"}) {
        auto net = corpus(name);
        for (const auto& p : enumerate_partitions(net.cells())) {
            auto w = invariance_witness(net, p);
            EXPECT_EQ(w.has_value(), !invariant_oracle(net, p)) << name << " " << p.to_string();
            if (!w) continue;
            EXPECT_TRUE(in_polydiagonal(w->point, p));
            EXPECT_FALSE(in_polydiagonal(eval_admissible(net, w->field, w->point), p));
        }
    }
}

TEST(SampledInvariance, BalancedPartitionsStayInvariant) {
    for (auto name : {"fig_pm_i", "fig_se", "fig_meu_ex"}) {
        auto net = corpus(name);
        for (const auto& e : enumerate_synchrony_oracle(net))
            EXPECT_TRUE(sampled_invariance(net, e.partition, 17)) << name << " " << e.partition.to_string();
    }
}

TEST(SampledInvariance, UnbalancedDetectedBySampling) {
    // random nonlinear fields almost surely break an unbalanced polydiagonal
    EXPECT_FALSE(sampled_invariance(corpus("fig_pm_i"), Partition::parse("{1,2}{3}{4}{5}", 5), 3));
}

TEST(RandomAdmissible, DeterministicAndBounded) {
    std::mt19937_64 a(9), b(9);
    auto fa = random_admissible(a), fb = random_admissible(b);
    EXPECT_EQ(fa.internal, fb.internal);
    EXPECT_EQ(fa.coupling, fb.coupling);
    EXPECT_LE(fa.internal.degree(), 3);
    for (const auto& [e, c] : fa.coupling) {
        EXPECT_LE(e.first + e.second, 3u);
        EXPECT_LE(abs(c), 5);
    }
    auto p = Partition::parse("{1,2}{3}", 3);
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(in_polydiagonal(random_point(p, a), p));
}
