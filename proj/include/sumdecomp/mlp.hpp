#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumdecomp/multiset.hpp"

namespace sumdecomp::mlp {

struct DenseLayer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // row-major [out][in]
    std::vector<double> b;  // [out]
};

// rho(sum_x phi(x)) with phi a 3-layer MLP ending in the latent dimension
// and rho a 2-layer MLP down to a scalar. ReLU follows every layer except
// the final scalar output. Summation runs over canonically sorted elements,
// so the forward pass is bit-identical under input permutations.
struct DeepSetsModel {
    std::vector<DenseLayer> phi_layers;
    std::vector<DenseLayer> rho_layers;

    int latent_dim() const { return phi_layers.back().out; }
    std::size_t param_count() const;
};

DeepSetsModel init_model(int latent_dim, int hidden_units, Rng& rng);

double forward(const DeepSetsModel& model, const Multiset& X);

enum class Distribution { uniform, gaussian, gamma };

Distribution distribution_from_name(const std::string& name);
std::string distribution_name(Distribution d);

struct TrainConfig {
    int set_size = 4;
    int latent_dim = 4;
    int hidden_units = 64;
    int batches = 500;
    int batch_size = 32;
    double lr0 = 0.001;
    double lr_decay_per_batch = 0.99;
    double smoothing_alpha = 0.95;
    std::vector<Distribution> distributions = {Distribution::uniform, Distribution::gaussian,
                                               Distribution::gamma};
    Seed seed;
};

// Flat key=value file mirroring the TrainConfig fields; unknown keys are
// rejected. `distributions` takes a comma-separated list of names.
TrainConfig config_from_kv_file(const std::string& path, TrainConfig base = {});

// One batch of i.i.d. sets from the named distribution (clipped to [0,1])
// with sample medians as labels (midpoint convention for even sizes).
std::pair<std::vector<Multiset>, std::vector<double>> sample_task(Distribution dist, int set_size,
                                                                  int batch, Rng& rng);

double median_of_sorted(const std::vector<double>& sorted);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

AdamState make_adam_state(std::size_t n);

// One standard Adam update with bias correction; lr carries any external
// decay schedule.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr);

struct TrainResult {
    std::vector<double> raw_rmse;
    std::vector<double> smoothed_rmse;
    double final_smoothed = 0.0;
};

// Fresh samples every batch (no train/test split), MSE loss, Adam with
// per-batch exponential lr decay, exponentially smoothed RMSE trace.
// Throws NumericalDivergence (with the batch index) if the loss leaves the
// finite range.
TrainResult train(const TrainConfig& config);

// Same loop with the label function replaced; the sorted element list is
// passed to label_fn. Used for sanity-training against other targets.
TrainResult train_with_labels(const TrainConfig& config,
                              const std::function<double(const std::vector<double>&)>& label_fn);

struct SweepRow {
    int set_size;
    int latent_dim;
    std::uint64_t seed;
    double rmse_final;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> failures;  // per-run failures, sweep continues
};

// One training run per (set_size, latent_dim, repeat). Runs share nothing
// and execute on `jobs` worker threads; per-run seeds derive from
// (base.seed, M, N, repeat), so results are independent of scheduling.
SweepResult sweep(const std::vector<std::pair<int, int>>& grid, int repeats,
                  const TrainConfig& base, int jobs = 1);

struct CellStat {
    int set_size;
    int latent_dim;
    double mean_rmse;
    double stderr_rmse;
    int count;
};

std::vector<CellStat> aggregate(const SweepResult& result);

struct CriticalPoint {
    int set_size;
    int critical_latent_dim;
    double min_rmse;
    double threshold_rmse;  // 1.1 * min_rmse
};

// Smallest latent dimension whose mean RMSE stays within 10% of the per-M
// minimum. Needs at least two distinct latent dimensions per set size.
std::vector<CriticalPoint> critical_points(const SweepResult& result);

struct OodProbeResult {
    std::string name;
    double prediction;
    double true_label;
    double abs_error;
};

// The three out-of-distribution probe families scaled to the model's set
// size: all-identical ones, a zeros/ones step mixture with median zero, and
// an evenly spaced grid.
std::vector<OodProbeResult> ood_probe(const DeepSetsModel& model, int set_size);

void write_sweep_csv(const SweepResult& result, const std::string& path);
SweepResult read_sweep_csv(const std::string& path);
void write_critical_csv(const std::vector<CriticalPoint>& points, const std::string& path);

}  // namespace sumdecomp::mlp
