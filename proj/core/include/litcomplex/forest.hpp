#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace litcomplex {

// Row-major dense matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

struct ForestConfig {
    std::size_t n_trees = 900;
    std::size_t max_features = 0;    // 0: ceil(sqrt(d))
    std::size_t min_leaf = 1;
    std::size_t max_depth = 0;       // 0: unlimited
    std::size_t bootstrap_size = 0;  // 0: n
    std::uint64_t seed = 0;
    unsigned threads = 0;  // does not affect results
};

struct TreeNode {
    int column = -1;  // -1 for a leaf
    double threshold = 0;  // go left when x[column] <= threshold
    int left = -1;
    int right = -1;
    std::vector<std::uint32_t> counts;  // class counts of the node's bootstrap sample
    double impurity = 0;                // Gini
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    const TreeNode& leaf_for(std::span<const double> x) const;
    // Majority class of the reached leaf, ties to the lowest class index.
    std::size_t predict(std::span<const double> x) const;
};

struct ForestPrediction {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> votes;  // per row, per class (model class order)
};

class ForestModel {
public:
    // Throws UserError for d = 0, mismatched sizes or fewer than two classes.
    static ForestModel fit(const Matrix& x, std::span<const std::string> y, const ForestConfig& config);

    // Majority vote over trees; ties go to the lexicographically smallest
    // label. Throws UserError on a column-count mismatch.
    ForestPrediction predict(const Matrix& x) const;

    // Total Gini decrease per column, normalized to sum to 1.
    std::vector<double> feature_importance() const;

    const std::vector<std::string>& classes() const { return classes_; }
    const std::vector<DecisionTree>& trees() const { return trees_; }
    const ForestConfig& config() const { return config_; }
    std::size_t n_features() const { return n_features_; }

    nlohmann::json to_json() const;
    static ForestModel from_json(const nlohmann::json& j);

private:
    std::vector<std::string> classes_;  // sorted
    std::size_t n_features_ = 0;
    ForestConfig config_;
    std::vector<DecisionTree> trees_;
    std::vector<double> decrease_;  // unnormalized, per column
};

// Fits one tree on the given rows (with repetition). Exposed for tests.
DecisionTree fit_tree(const Matrix& x, std::span<const std::size_t> y, std::size_t n_classes,
                      std::span<const std::size_t> sample, std::size_t max_features, std::size_t min_leaf,
                      std::size_t max_depth, std::uint64_t seed, std::uint64_t stream,
                      std::vector<double>* decrease = nullptr);

}  // namespace litcomplex
