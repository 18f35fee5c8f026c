// Copyright 2026 The ptim-bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptim/tableau.h"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "test_util.h"

namespace ptim {
namespace {

using testing::max_abs_diff;

PauliString xs(std::initializer_list<int> qubits, int sign = +1) {
    PauliString p;
    for (int q : qubits) {
        p.xs |= uint64_t{1} << q;
    }
    p.sign = sign;
    return p;
}

TEST(Tableau, BellStateStabilizers) {
    Tableau t(InitialStateSpec::ghz(2));
    EXPECT_EQ(t.expectation(PauliString::zz(0, 1)), +1);
    EXPECT_EQ(t.expectation(PauliString::xx(0, 1)), +1);
    EXPECT_FALSE(t.expectation(PauliString::z(0)).has_value());
}

TEST(Tableau, ClassicalStabilizers) {
    Tableau t(InitialStateSpec::classical({1, 0}));
    EXPECT_EQ(t.expectation(PauliString::z(0)), -1);
    EXPECT_EQ(t.expectation(PauliString::z(1)), +1);
}

TEST(Tableau, NegativeParityGhz) {
    Tableau t(InitialStateSpec::ghz(3, -1));
    EXPECT_EQ(t.expectation(PauliString::zz(0, 1)), +1);
    EXPECT_EQ(t.expectation(PauliString::zz(1, 2)), +1);
    EXPECT_EQ(t.expectation(xs({0, 1, 2})), -1);
}

TEST(Tableau, SizeCap) { EXPECT_THROW(Tableau(Tableau::kMaxQubits + 1), std::invalid_argument); }

TEST(Tableau, MeasureExamples) {
    Tableau bell(InitialStateSpec::ghz(2));
    auto r = bell.measure(PauliString::zz(0, 1), OutcomeSource::forced(+1));
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(r.outcome, +1);
    EXPECT_THROW(bell.measure(PauliString::zz(0, 1), OutcomeSource::forced(-1)), std::logic_error);

    Tableau zero(2);
    auto r2 = zero.measure_e(0, OutcomeSource::forced(-1));
    EXPECT_FALSE(r2.deterministic);
    EXPECT_EQ(zero.expectation(PauliString::x(0)), -1);
    EXPECT_EQ(zero.expectation(PauliString::z(1)), +1);

    for (int s : {+1, -1}) {
        Tableau g(InitialStateSpec::ghz(2));
        g.measure_e(0, OutcomeSource::forced(s));
        EXPECT_EQ(g.expectation(PauliString::x(1)), s);
    }
}

TEST(Tableau, EntropyExamples) {
    Tableau g(InitialStateSpec::ghz(4));
    std::vector<int> a{0, 1};
    EXPECT_EQ(g.entanglement_entropy(a), 1);
    Tableau prod(InitialStateSpec::classical({0, 1, 1, 0}));
    EXPECT_EQ(prod.entanglement_entropy(a), 0);
}

TEST(Tableau, ReducedDensityMatrices) {
    Tableau bell(InitialStateSpec::ghz(2));
    std::vector<int> both{0, 1};
    MatrixXc expected = MatrixXc::Identity(4, 4);
    expected += pauli_string_matrix(PauliString::zz(0, 1), 2);
    expected += pauli_string_matrix(PauliString::xx(0, 1), 2);
    PauliString yy;
    yy.xs = yy.zs = 0b11;
    yy.sign = -1;
    expected += pauli_string_matrix(yy, 2);
    expected /= 4.0;
    EXPECT_LT(max_abs_diff(bell.reduced_density_matrix(both), expected), 1e-12);

    std::vector<int> one{0};
    EXPECT_LT(max_abs_diff(bell.reduced_density_matrix(one), MatrixXc::Identity(2, 2) / 2.0), 1e-12);

    Tableau plus0(2);
    plus0.measure_e(0, OutcomeSource::forced(+1));
    MatrixXc plus = (MatrixXc::Identity(2, 2) + pauli_string_matrix(PauliString::x(0), 1)) / 2.0;
    EXPECT_LT(max_abs_diff(plus0.reduced_density_matrix(one), plus), 1e-12);
}

double von_neumann_bits(const MatrixXc &rho) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(rho);
    double s = 0.0;
    for (double v : solver.eigenvalues()) {
        EXPECT_GE(v, -1e-12);
        if (v > 1e-12) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

TEST(TableauProperty, RankEntropyMatchesDensityMatrixEntropy) {
    Rng rng(99);
    for (int rep = 0; rep < 400; ++rep) {
        int n = 2 + uniform_index(rng, 6);
        Tableau t(InitialStateSpec::ghz(n, (rng() & 1) ? 1 : -1));
        for (int step = 0; step < 2 * n; ++step) {
            if (rng() & 1) {
                t.measure_e(uniform_index(rng, n), OutcomeSource::born(rng));
            } else {
                t.measure_s(uniform_index(rng, n - 1), OutcomeSource::born(rng));
            }
        }
        int a0 = uniform_index(rng, n);
        int a1 = uniform_index(rng, n);
        std::vector<int> single{a0};
        MatrixXc rho1 = t.reduced_density_matrix(single);
        EXPECT_NEAR(rho1.trace().real(), 1.0, 1e-12);
        EXPECT_LT((rho1 - rho1.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(von_neumann_bits(rho1), t.entanglement_entropy(single), 1e-10);
        if (a0 != a1) {
            std::vector<int> pair{a0, a1};
            MatrixXc rho2 = t.reduced_density_matrix(pair);
            EXPECT_NEAR(rho2.trace().real(), 1.0, 1e-12);
            EXPECT_NEAR(von_neumann_bits(rho2), t.entanglement_entropy(pair), 1e-10);
        }
    }
}

TEST(TableauProperty, MeasureTwiceEqualsOnce) {
    Rng rng(4);
    for (int rep = 0; rep < 300; ++rep) {
        int n = 2 + uniform_index(rng, 6);
        Tableau t(InitialStateSpec::ghz(n));
        for (int step = 0; step < 2 * n; ++step) {
            PauliString op = (rng() & 1) ? PauliString::x(uniform_index(rng, n))
                                         : PauliString::zz(0, 1 + uniform_index(rng, n - 1));
            auto first = t.measure(op, OutcomeSource::born(rng));
            auto stabs = t.stabilizers();
            auto second = t.measure(op, OutcomeSource::born(rng));
            ASSERT_TRUE(second.deterministic);
            ASSERT_EQ(first.outcome, second.outcome);
            ASSERT_EQ(stabs, t.stabilizers());
        }
    }
}

TEST(TableauProperty, StabilizersCommuteAndPairWithDestabilizers) {
    Rng rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + uniform_index(rng, 8);
        Tableau t(InitialStateSpec::ghz(n, 1, true));
        for (int step = 0; step < 3 * n; ++step) {
            if (rng() & 1) {
                t.measure_e(uniform_index(rng, n), OutcomeSource::born(rng));
            } else {
                t.measure_s(uniform_index(rng, n - 1), OutcomeSource::born(rng));
            }
        }
        const auto &s = t.stabilizers();
        const auto &d = t.destabilizers();
        for (size_t i = 0; i < s.size(); ++i) {
            for (size_t j = 0; j < s.size(); ++j) {
                ASSERT_TRUE(s[i].commutes(s[j]));
                ASSERT_EQ(!s[i].commutes(d[j]), i == j);
            }
        }
    }
}

}  // namespace
}  // namespace ptim
