#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litcomplex/corpus.hpp"
#include "litcomplex/features.hpp"
#include "litcomplex/forest.hpp"

namespace litcomplex {

enum class Category { Canon, Prizes, Nobel, Bestseller };
inline constexpr std::array<Category, 4> kAllCategories = {Category::Canon, Category::Prizes, Category::Nobel,
                                                           Category::Bestseller};
std::string_view to_string(Category category);
bool has_category(const QualityLabels& labels, Category category);

enum class TaskKind { Binary, Rating, Multiclass };
enum class ControlPool { Complement, RestOnly };
std::string_view to_string(ControlPool pool);
ControlPool parse_control_pool(std::string_view text);

inline constexpr double kRatingThreshold = 3.8;
inline constexpr std::string_view kHighRating = "high_rating";
inline constexpr std::string_view kLowRating = "low_rating";
inline constexpr std::string_view kGoodreadsClass = "goodreads";

struct SplitOptions {
    double train_fraction = 0.8;
    ControlPool control = ControlPool::Complement;
    double rating_threshold = kRatingThreshold;
    bool exclusive = false;        // multiclass: one class per document by priority
    bool unbalanced_pool = false;  // multiclass: keep every candidate
    bool group_by_author = false;  // author-disjoint train/test
    std::size_t min_class_size = 10;
    double max_missing_fraction = 0.5;  // documents above this are not eligible
};

struct TaskSpec {
    std::string name;  // canon, prizes, nobel, bestseller, rating, multiclass
    TaskKind kind = TaskKind::Binary;
    Category category = Category::Canon;
    std::vector<FeatureGroup> removed;
    std::size_t n_runs = 10;
    std::uint64_t base_seed = 0;
    SplitOptions split;
    ForestConfig forest;
};

// The six tasks in table order.
inline constexpr std::array<std::string_view, 6> kTaskNames = {"canon", "prizes", "nobel", "bestseller", "rating",
                                                               "multiclass"};
// Throws UserError for an unknown name.
TaskSpec make_task_spec(std::string_view name);

struct Sample {
    std::size_t row;  // feature-matrix row
    std::string label;
};

struct TaskSplit {
    std::vector<std::string> classes;  // sorted
    std::string positive;              // empty for multiclass
    std::vector<Sample> train;
    std::vector<Sample> test;
    std::map<std::string, std::size_t> class_sizes;  // after balancing

    std::size_t n_samples() const { return train.size() + test.size(); }
};

// Throws UserError when a class has fewer than split.min_class_size members.
TaskSplit make_binary_task(const Dataset& dataset, const FeatureMatrix& features, Category category,
                           std::uint64_t run_seed, const SplitOptions& options = {});
TaskSplit make_rating_task(const Dataset& dataset, const FeatureMatrix& features, std::uint64_t run_seed,
                           const SplitOptions& options = {});
TaskSplit make_multiclass_task(const Dataset& dataset, const FeatureMatrix& features, std::uint64_t run_seed,
                               const SplitOptions& options = {});
TaskSplit make_task(const TaskSpec& spec, const Dataset& dataset, const FeatureMatrix& features,
                    std::uint64_t run_seed);

// Eligible rows: in the dataset, with missing fraction <= the limit.
std::vector<std::size_t> eligible_rows(const Dataset& dataset, const FeatureMatrix& features,
                                       double max_missing_fraction);

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Rows are true classes, columns predicted, both in `classes` order.
using Confusion = std::vector<std::vector<std::size_t>>;
Confusion confusion_matrix(const std::vector<std::string>& classes, const std::vector<std::string>& truth,
                           const std::vector<std::string>& predicted);
ClassMetrics class_metrics(const Confusion& confusion, std::size_t k);
double macro_f1(const Confusion& confusion);
double accuracy(const Confusion& confusion);

// Column medians over the given rows, ignoring missing cells; 0 when a
// column has no value on those rows.
std::vector<double> column_medians(const FeatureMatrix& features, const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& columns);

struct RunMetrics {
    std::uint64_t seed = 0;
    double f1 = 0;  // positive-class F1 for binary tasks, macro F1 for multiclass
    double macro_f1 = 0;
    double accuracy = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::map<std::string, std::size_t> class_sizes;
};

struct RunReport {
    TaskSpec spec;
    std::vector<std::string> classes;
    std::string positive;
    std::vector<std::string> columns;  // columns used
    std::vector<RunMetrics> runs;
    double mean_f1 = 0, sd_f1 = 0;  // sample SD over runs
    double mean_acc = 0, sd_acc = 0;
    double mean_macro_f1 = 0;
    std::size_t n_samples = 0;
    Confusion confusion;  // summed over runs
    std::vector<double> importance;  // mean over runs, per used column

    void check_invariants() const;
};

// Columns of `features` left after removing the spec's groups. Throws
// UserError if every group is removed.
std::vector<std::size_t> kept_columns(const FeatureMatrix& features, const std::vector<FeatureGroup>& removed);

RunReport run_task(const TaskSpec& spec, const Dataset& dataset, const FeatureMatrix& features);

enum class AblationMode { LeaveOut, Isolation };
std::string_view to_string(AblationMode mode);

struct AblationRow {
    std::string task;
    AblationMode mode = AblationMode::LeaveOut;
    FeatureGroup group = FeatureGroup::Stylistic;
    RunReport report;
};

// Four leave-one-group-out runs followed by four single-group runs.
std::vector<AblationRow> ablate(const TaskSpec& spec, const Dataset& dataset, const FeatureMatrix& features);

struct OverlapCell {
    unsigned mask = 0;  // bit i set for kAllCategories[i]
    std::size_t count = 0;
    std::string name() const;  // e.g. "canon+nobel"
};

struct OverlapTable {
    std::vector<OverlapCell> cells;  // all 15 non-empty combinations, exact membership
    std::map<std::string, std::size_t> totals;
    std::size_t rest = 0;  // documents in no category
    std::size_t documents = 0;
};

OverlapTable category_overlap(const Dataset& dataset);

struct DistributionRow {
    std::string group;  // canon, prizes, nobel, bestseller, high_rating, low_rating, rest
    std::string feature;
    std::size_t n = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
    double corpus_mean = 0;
};

// Includes readability_z, computed over the corpus, when the raw indices are present.
std::vector<DistributionRow> distribution_report(const Dataset& dataset, const FeatureMatrix& features,
                                                 double rating_threshold = kRatingThreshold);

struct DecadeRow {
    int decade = 0;
    std::size_t total = 0;
    std::array<std::size_t, 4> categories{};  // kAllCategories order
};

// Every decade from the earliest to the latest dated document; documents
// with year 0 are skipped.
std::vector<DecadeRow> decade_counts(const Dataset& dataset);

}  // namespace litcomplex
