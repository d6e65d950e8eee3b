// Classifiers (1NN / 3NN / Gaussian naive Bayes), stratified cross
// validation, multiclass AUC and geometric mean, and correlation statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcm/dataset.hpp"

namespace dcm {

struct ConfusionMatrix {
    std::size_t k = 0;
    std::vector<long> counts;  // k * k, true class = row, predicted = column

    explicit ConfusionMatrix(std::size_t k = 0) : k(k), counts(k * k, 0) {}
    long at(std::size_t t, std::size_t p) const { return counts[t * k + p]; }
    void add(std::size_t t, std::size_t p) { ++counts[t * k + p]; }
    long row_sum(std::size_t t) const {
        long s = 0;
        for (std::size_t p = 0; p < k; ++p) s += at(t, p);
        return s;
    }
};

// Per-instance class scores plus the true labels, as produced by a
// classifier on a test split.
struct ScoreTable {
    std::size_t k = 0;
    std::vector<double> scores;  // rows * k
    std::vector<int> labels;     // true class per row

    std::size_t rows() const { return labels.size(); }
    double at(std::size_t r, std::size_t c) const { return scores[r * k + c]; }
};

// Argmax prediction; ties resolve to the lowest class id.
int predict_row(const ScoreTable& st, std::size_t r);
ConfusionMatrix confusion_from_scores(const ScoreTable& st);

// Unweighted k-nearest-neighbour vote fractions under Euclidean distance;
// ties at the k-th distance resolve to the lowest instance index. The
// dataset must be normalized.
ScoreTable knn_scores(const Dataset& ds, const std::vector<int>& train_idx,
                      const std::vector<int>& test_idx, int k);

struct NbModel {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<double> mean;       // k * d
    std::vector<double> variance;   // k * d, floored at 1e-9
    std::vector<double> log_prior;  // k
};

// Per-class per-feature Gaussians with training-frequency priors.
// Throws DegenerateFold when any class has fewer than 2 training instances.
NbModel nb_train(const Dataset& ds, const std::vector<int>& train_idx);
// Posteriors via log-sum-exp normalization; rows sum to 1.
ScoreTable nb_scores(const NbModel& model, const Dataset& ds, const std::vector<int>& test_idx);

struct FoldAssignment {
    int folds = 0;
    std::vector<int> fold_of;  // per instance
};

// Per-class shuffled round-robin assignment; deterministic given seed.
FoldAssignment stratified_kfold(const Dataset& ds, int folds, std::uint64_t seed);

struct AucResult {
    std::optional<double> value;  // empty when no class pair was computable
    bool pairs_skipped = false;
};

// Hand & Till generalization: mean over class pairs of the symmetric
// rank-sum separability estimate (ties count 1/2). Pairs missing a class in
// the evaluated set are skipped and the mean renormalized.
AucResult auc_multiclass(const ScoreTable& st);

struct GeomResult {
    double value = 0.0;
    bool degenerate_row = false;  // some class absent from the evaluated set
};

// k-th root of the product of per-class recalls; 0 as soon as any diagonal
// entry is 0.
GeomResult geom_multiclass(const ConfusionMatrix& cm);

// Midranks (average rank for ties), 1-based.
std::vector<double> midranks(const std::vector<double>& values);

// Product-moment correlation; empty when n < 3 or either side has zero
// variance. Spearman is Pearson over midranks.
std::optional<double> pearson(const std::vector<double>& xs, const std::vector<double>& ys);
std::optional<double> spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct FoldPerf {
    std::optional<double> auc;
    double geom = 0.0;
    bool geom_flagged = false;
    ConfusionMatrix cm;
};

struct ClassifierEval {
    std::string name;
    bool ok = false;
    std::string error;
    std::optional<double> mean_auc;
    std::optional<double> mean_geom;
    std::vector<FoldPerf> folds;
};

inline const std::vector<std::string> kClassifierNames = {"1nn", "3nn", "nb"};

// 5-fold stratified CV of one classifier ("1nn" | "3nn" | "nb"). Folds that
// reject a naive Bayes model (single-instance class in training) trigger a
// re-stratification attempt; persistent failure marks the classifier failed.
ClassifierEval run_cv(const Dataset& ds, const std::string& classifier, int folds,
                      std::uint64_t seed);

struct DatasetEval {
    std::vector<ClassifierEval> classifiers;
};

DatasetEval evaluate_dataset(const Dataset& ds, std::uint64_t seed,
                             const std::vector<std::string>& classifiers = kClassifierNames);

}  // namespace dcm
