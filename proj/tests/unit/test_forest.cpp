#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "litcomplex/error.hpp"
#include "litcomplex/forest.hpp"
#include "synthetic.hpp"

using namespace litcomplex;
namespace tu = litcomplex::testing;
using litcomplex::testing::LabeledData;

namespace {

double accuracy(const ForestModel& m, const LabeledData& d) {
    const auto p = m.predict(d.x);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < d.y.size(); ++i) hit += p.labels[i] == d.y[i];
    return static_cast<double>(hit) / static_cast<double>(d.y.size());
}

ForestConfig small(std::size_t trees, std::uint64_t seed) {
    ForestConfig c;
    c.n_trees = trees;
    c.seed = seed;
    return c;
}

double total(const std::vector<std::uint32_t>& counts) {
    return std::accumulate(counts.begin(), counts.end(), 0.0);
}

}  // namespace

TEST(Forest, SeparableBlobs) {
    const auto split = tu::holdout(tu::blobs(400, 5, 3), 0.7, 3);
    const auto m = ForestModel::fit(split.train.x, split.train.y, small(100, 1));
    EXPECT_GE(accuracy(m, split.test), 0.95);
    EXPECT_EQ(m.classes(), (std::vector<std::string>{"a", "b"}));
}

TEST(Forest, RandomLabelsNearChance) {
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto data = tu::planted_task(200, 6, {}, 0.0, seed);
        Rng rng(seed, 0x1abe1);
        rng.shuffle(data.y);
        const auto split = tu::holdout(data, 0.7, seed);
        sum += accuracy(ForestModel::fit(split.train.x, split.train.y, small(60, seed)), split.test);
    }
    const double mean = sum / 20;
    EXPECT_GE(mean, 0.4);
    EXPECT_LE(mean, 0.6);
}

TEST(Forest, ThreadCountDoesNotChangeResults) {
    const auto data = tu::planted_task(150, 8, {1, 4}, 1.0, 11);
    auto c1 = small(50, 7);
    c1.threads = 1;
    auto c4 = c1;
    c4.threads = 4;
    const auto a = ForestModel::fit(data.x, data.y, c1);
    const auto b = ForestModel::fit(data.x, data.y, c4);
    EXPECT_EQ(a.to_json(), b.to_json());
    EXPECT_EQ(a.predict(data.x).votes, b.predict(data.x).votes);
    EXPECT_EQ(a.feature_importance(), b.feature_importance());
    const auto other = ForestModel::fit(data.x, data.y, small(50, 8));
    EXPECT_NE(a.to_json(), other.to_json());
}

TEST(Tree, StumpFindsTheGap) {
    Matrix x(10, 1);
    std::vector<std::size_t> y(10), sample(10);
    for (std::size_t i = 0; i < 10; ++i) {
        x(i, 0) = static_cast<double>(i + 1);
        y[i] = i >= 5;
        sample[i] = i;
    }
    const auto t = fit_tree(x, y, 2, sample, 1, 1, 1, 0, 0);
    ASSERT_EQ(t.nodes.size(), 3u);
    EXPECT_EQ(t.nodes[0].column, 0);
    EXPECT_GE(t.nodes[0].threshold, 5.0);
    EXPECT_LT(t.nodes[0].threshold, 6.0);
    EXPECT_DOUBLE_EQ(t.nodes[0].impurity, 0.5);
    for (std::size_t i = 0; i < 10; ++i) {
        const double row[1] = {x(i, 0)};
        EXPECT_EQ(t.predict(row), y[i]);
    }
}

TEST(Tree, ImpurityNeverIncreasesAndLeavesArePure) {
    const auto data = tu::planted_task(120, 5, {0}, 1.0, 2);
    const auto m = ForestModel::fit(data.x, data.y, small(20, 3));
    for (const auto& tree : m.trees()) {
        for (const auto& node : tree.nodes) {
            if (node.column < 0) {
                EXPECT_EQ(node.impurity, 0.0);
                continue;
            }
            const auto& l = tree.nodes[static_cast<std::size_t>(node.left)];
            const auto& r = tree.nodes[static_cast<std::size_t>(node.right)];
            const double n = total(node.counts);
            EXPECT_EQ(total(l.counts) + total(r.counts), n);
            EXPECT_LE((total(l.counts) * l.impurity + total(r.counts) * r.impurity) / n, node.impurity + 1e-12);
        }
    }
}

TEST(Forest, VotesAreDistributions) {
    const auto data = tu::planted_task(100, 4, {0}, 1.0, 5);
    const auto m = ForestModel::fit(data.x, data.y, small(33, 5));
    const auto p = m.predict(data.x);
    for (const auto& v : p.votes) {
        ASSERT_EQ(v.size(), 2u);
        EXPECT_NEAR(v[0] + v[1], 1.0, 1e-12);
        EXPECT_GE(v[0], 0.0);
    }
}

TEST(Forest, InvariantToMonotoneTransform) {
    const auto data = tu::planted_task(160, 5, {0, 2}, 1.0, 13);
    auto warped = data;
    for (auto& v : warped.x.data) v = std::exp(2.0 * v) + v * v * v;
    const auto a = ForestModel::fit(data.x, data.y, small(40, 4));
    const auto b = ForestModel::fit(warped.x, warped.y, small(40, 4));
    EXPECT_EQ(a.predict(data.x).labels, b.predict(warped.x).labels);
    EXPECT_EQ(a.feature_importance(), b.feature_importance());
}

TEST(Importance, PlantedColumnRanksFirst) {
    const auto data = tu::planted_task(300, 10, {6}, 1.5, 21);
    const auto m = ForestModel::fit(data.x, data.y, small(100, 21));
    const auto imp = m.feature_importance();
    ASSERT_EQ(imp.size(), 10u);
    EXPECT_NEAR(std::accumulate(imp.begin(), imp.end(), 0.0), 1.0, 1e-12);
    EXPECT_EQ(std::max_element(imp.begin(), imp.end()) - imp.begin(), 6);
    for (double v : imp) EXPECT_GE(v, 0.0);
}

TEST(Importance, NullFeaturesAreFlat) {
    const auto data = tu::planted_task(300, 10, {}, 0.0, 31);
    const auto m = ForestModel::fit(data.x, data.y, small(200, 31));
    const auto imp = m.feature_importance();
    const double mean = 1.0 / static_cast<double>(imp.size());
    EXPECT_LT(*std::max_element(imp.begin(), imp.end()), 3.0 * mean);
}

TEST(Forest, JsonRoundTrip) {
    const auto data = tu::planted_task(80, 3, {1}, 1.0, 9);
    const auto m = ForestModel::fit(data.x, data.y, small(15, 9));
    const auto back = ForestModel::from_json(nlohmann::json::parse(m.to_json().dump()));
    EXPECT_EQ(back.to_json(), m.to_json());
    EXPECT_EQ(back.predict(data.x).votes, m.predict(data.x).votes);
    EXPECT_EQ(back.feature_importance(), m.feature_importance());
}

TEST(Forest, MoreTreesDoNotHurt) {
    double few = 0, many = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto split = tu::holdout(tu::planted_task(300, 10, {0, 1, 2}, 0.7, seed + 40), 0.7, seed);
        few += accuracy(ForestModel::fit(split.train.x, split.train.y, small(10, seed)), split.test);
        many += accuracy(ForestModel::fit(split.train.x, split.train.y, small(900, seed)), split.test);
    }
    EXPECT_GE(many, few);
}

TEST(Forest, InputErrors) {
    const auto data = tu::planted_task(20, 3, {0}, 1.0, 1);
    EXPECT_THROW(ForestModel::fit(Matrix(20, 0), data.y, small(5, 0)), UserError);
    EXPECT_THROW(ForestModel::fit(data.x, std::vector<std::string>(19, "pos"), small(5, 0)), UserError);
    EXPECT_THROW(ForestModel::fit(data.x, std::vector<std::string>(20, "pos"), small(5, 0)), UserError);
    const auto m = ForestModel::fit(data.x, data.y, small(5, 0));
    EXPECT_THROW(m.predict(Matrix(2, 4)), UserError);
}
