#include "sumdecomp/mlp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace sumdecomp::mlp {

std::size_t DeepSetsModel::param_count() const {
    std::size_t n = 0;
    for (const DenseLayer& l : phi_layers) n += l.w.size() + l.b.size();
    for (const DenseLayer& l : rho_layers) n += l.w.size() + l.b.size();
    return n;
}

namespace {

DenseLayer init_layer(int in, int out, Rng& rng) {
    DenseLayer l;
    l.in = in;
    l.out = out;
    l.w.resize(static_cast<std::size_t>(in) * out);
    l.b.assign(static_cast<std::size_t>(out), 0.0);
    double scale = 1.0 / std::sqrt(static_cast<double>(in));
    for (double& v : l.w) v = rng.uniform(-scale, scale);
    return l;
}

void dense_forward(const DenseLayer& l, const double* in, double* out, bool relu) {
    for (int o = 0; o < l.out; ++o) {
        const double* row = l.w.data() + static_cast<std::size_t>(o) * l.in;
        double acc = l.b[static_cast<std::size_t>(o)];
        for (int i = 0; i < l.in; ++i) acc += row[i] * in[i];
        out[o] = (relu && acc < 0.0) ? 0.0 : acc;
    }
}

// Backward through one dense layer: given d(out pre-activation), accumulate
// weight/bias gradients and produce d(in). `input` is the forward input.
void dense_backward(const DenseLayer& l, const double* input, const double* d_out,
                    DenseLayer& grad, double* d_in) {
    if (d_in) std::fill(d_in, d_in + l.in, 0.0);
    for (int o = 0; o < l.out; ++o) {
        double g = d_out[o];
        if (g == 0.0) continue;
        double* grow = grad.w.data() + static_cast<std::size_t>(o) * l.in;
        const double* row = l.w.data() + static_cast<std::size_t>(o) * l.in;
        for (int i = 0; i < l.in; ++i) {
            grow[i] += g * input[i];
            if (d_in) d_in[i] += row[i] * g;
        }
        grad.b[static_cast<std::size_t>(o)] += g;
    }
}

void relu_mask(const double* activation, double* delta, int n) {
    for (int i = 0; i < n; ++i) {
        if (activation[i] <= 0.0) delta[i] = 0.0;
    }
}

}  // namespace

DeepSetsModel init_model(int latent_dim, int hidden_units, Rng& rng) {
    if (latent_dim < 1 || hidden_units < 1) {
        throw PreconditionViolation("model needs latent_dim >= 1 and hidden_units >= 1");
    }
    DeepSetsModel m;
    m.phi_layers.push_back(init_layer(1, hidden_units, rng));
    m.phi_layers.push_back(init_layer(hidden_units, hidden_units, rng));
    m.phi_layers.push_back(init_layer(hidden_units, latent_dim, rng));
    m.rho_layers.push_back(init_layer(latent_dim, hidden_units, rng));
    m.rho_layers.push_back(init_layer(hidden_units, 1, rng));
    return m;
}

double forward(const DeepSetsModel& model, const Multiset& X) {
    for (std::size_t i = 0; i + 1 < model.phi_layers.size(); ++i) {
        if (model.phi_layers[i].out != model.phi_layers[i + 1].in) {
            throw ShapeMismatch("phi layer shapes do not chain");
        }
    }
    if (model.phi_layers.back().out != model.rho_layers.front().in) {
        throw ShapeMismatch("latent dimension does not match rho input");
    }
    for (std::size_t i = 0; i + 1 < model.rho_layers.size(); ++i) {
        if (model.rho_layers[i].out != model.rho_layers[i + 1].in) {
            throw ShapeMismatch("rho layer shapes do not chain");
        }
    }
    if (model.rho_layers.back().out != 1) {
        throw ShapeMismatch("rho must end in a scalar output");
    }

    std::vector<double> latent(static_cast<std::size_t>(model.latent_dim()), 0.0);
    std::vector<double> buf_a, buf_b;
    for (double x : X.elements()) {
        buf_a.assign(1, x);
        for (const DenseLayer& l : model.phi_layers) {
            buf_b.resize(static_cast<std::size_t>(l.out));
            dense_forward(l, buf_a.data(), buf_b.data(), true);
            std::swap(buf_a, buf_b);
        }
        for (std::size_t n = 0; n < latent.size(); ++n) latent[n] += buf_a[n];
    }
    buf_a = latent;
    for (std::size_t li = 0; li < model.rho_layers.size(); ++li) {
        const DenseLayer& l = model.rho_layers[li];
        buf_b.resize(static_cast<std::size_t>(l.out));
        dense_forward(l, buf_a.data(), buf_b.data(), li + 1 < model.rho_layers.size());
        std::swap(buf_a, buf_b);
    }
    return buf_a[0];
}

Distribution distribution_from_name(const std::string& name) {
    if (name == "uniform") return Distribution::uniform;
    if (name == "gaussian") return Distribution::gaussian;
    if (name == "gamma") return Distribution::gamma;
    throw UnknownDistribution("unknown distribution '" + name + "'");
}

std::string distribution_name(Distribution d) {
    switch (d) {
        case Distribution::uniform: return "uniform";
        case Distribution::gaussian: return "gaussian";
        case Distribution::gamma: return "gamma";
    }
    throw UnknownDistribution("unknown distribution id");
}

double median_of_sorted(const std::vector<double>& sorted) {
    if (sorted.empty()) throw EmptySet("median of empty sample");
    std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

namespace {

double draw_element(Distribution dist, Rng& rng) {
    switch (dist) {
        case Distribution::uniform:
            return rng.next_double();
        case Distribution::gaussian:
            return std::clamp(rng.gaussian(0.5, 0.15), 0.0, 1.0);
        case Distribution::gamma:
            return std::clamp(rng.gamma(2, 0.2), 0.0, 1.0);
    }
    throw UnknownDistribution("unknown distribution id");
}

}  // namespace

std::pair<std::vector<Multiset>, std::vector<double>> sample_task(Distribution dist, int set_size,
                                                                  int batch, Rng& rng) {
    if (set_size < 1) throw PreconditionViolation("set_size must be >= 1");
    if (batch < 1) throw PreconditionViolation("batch must be >= 1");
    std::vector<Multiset> inputs;
    std::vector<double> labels;
    inputs.reserve(static_cast<std::size_t>(batch));
    labels.reserve(static_cast<std::size_t>(batch));
    DomainInterval unit(0.0, 1.0);
    std::vector<double> elems(static_cast<std::size_t>(set_size));
    for (int s = 0; s < batch; ++s) {
        for (double& e : elems) e = draw_element(dist, rng);
        Multiset ms = canonicalize(elems, unit);
        labels.push_back(median_of_sorted(ms.elements()));
        inputs.push_back(std::move(ms));
    }
    return {std::move(inputs), std::move(labels)};
}

AdamState make_adam_state(std::size_t n) {
    AdamState s;
    s.m.assign(n, 0.0);
    s.v.assign(n, 0.0);
    return s;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size()) {
        throw ShapeMismatch("adam buffers must share one shape");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        double g = grads[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        double mhat = state.m[i] / bc1;
        double vhat = state.v[i] / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

namespace {

// Training loop internals: contiguous activation storage for one batch.
struct Trainer {
    explicit Trainer(const TrainConfig& cfg)
        : config(cfg),
          root(cfg.seed),
          init_rng(root.split()),
          data_rng(root.split()),
          model(init_model(cfg.latent_dim, cfg.hidden_units, init_rng)) {
        const int h = cfg.hidden_units;
        const int n = cfg.latent_dim;
        const int bm = cfg.batch_size * cfg.set_size;
        a1.resize(static_cast<std::size_t>(bm) * h);
        a2.resize(static_cast<std::size_t>(bm) * h);
        a3.resize(static_cast<std::size_t>(bm) * n);
        latent.resize(static_cast<std::size_t>(cfg.batch_size) * n);
        ar.resize(static_cast<std::size_t>(cfg.batch_size) * h);
        pred.resize(static_cast<std::size_t>(cfg.batch_size));
        xs.resize(static_cast<std::size_t>(bm));
        ys.resize(static_cast<std::size_t>(cfg.batch_size));
        dz1.resize(static_cast<std::size_t>(h));
        dz2.resize(static_cast<std::size_t>(h));
        dz3.resize(static_cast<std::size_t>(n));
        dzr.resize(static_cast<std::size_t>(h));
        dlat.resize(static_cast<std::size_t>(n));
        for (const DenseLayer& l : model.phi_layers) grads_phi.push_back(zero_like(l));
        for (const DenseLayer& l : model.rho_layers) grads_rho.push_back(zero_like(l));
        for (const DenseLayer& l : model.phi_layers) {
            adam_w_phi.push_back(make_adam_state(l.w.size()));
            adam_b_phi.push_back(make_adam_state(l.b.size()));
        }
        for (const DenseLayer& l : model.rho_layers) {
            adam_w_rho.push_back(make_adam_state(l.w.size()));
            adam_b_rho.push_back(make_adam_state(l.b.size()));
        }
    }

    static DenseLayer zero_like(const DenseLayer& l) {
        DenseLayer g;
        g.in = l.in;
        g.out = l.out;
        g.w.assign(l.w.size(), 0.0);
        g.b.assign(l.b.size(), 0.0);
        return g;
    }

    void sample_batch(const std::function<double(const std::vector<double>&)>& label_fn) {
        std::size_t pick = static_cast<std::size_t>(data_rng.next_double() *
                                                    static_cast<double>(config.distributions.size()));
        pick = std::min(pick, config.distributions.size() - 1);
        Distribution dist = config.distributions[pick];
        const int m = config.set_size;
        std::vector<double> elems(static_cast<std::size_t>(m));
        for (int s = 0; s < config.batch_size; ++s) {
            for (double& e : elems) e = draw_element(dist, data_rng);
            std::sort(elems.begin(), elems.end());
            std::copy(elems.begin(), elems.end(), xs.begin() + static_cast<std::size_t>(s) * m);
            ys[static_cast<std::size_t>(s)] = label_fn(elems);
        }
    }

    // Forward the whole batch; returns batch RMSE.
    double forward_batch() {
        const int h = config.hidden_units;
        const int n = config.latent_dim;
        const int m = config.set_size;
        const DenseLayer& l1 = model.phi_layers[0];
        const DenseLayer& l2 = model.phi_layers[1];
        const DenseLayer& l3 = model.phi_layers[2];
        const DenseLayer& r1 = model.rho_layers[0];
        const DenseLayer& r2 = model.rho_layers[1];
        double sq = 0.0;
        for (int s = 0; s < config.batch_size; ++s) {
            double* lat = latent.data() + static_cast<std::size_t>(s) * n;
            std::fill(lat, lat + n, 0.0);
            for (int e = 0; e < m; ++e) {
                const std::size_t idx = static_cast<std::size_t>(s) * m + e;
                double x = xs[idx];
                double* pa1 = a1.data() + idx * h;
                double* pa2 = a2.data() + idx * h;
                double* pa3 = a3.data() + idx * n;
                dense_forward(l1, &x, pa1, true);
                dense_forward(l2, pa1, pa2, true);
                dense_forward(l3, pa2, pa3, true);
                for (int j = 0; j < n; ++j) lat[j] += pa3[j];
            }
            double* par = ar.data() + static_cast<std::size_t>(s) * h;
            dense_forward(r1, lat, par, true);
            double out = r2.b[0];
            for (int j = 0; j < h; ++j) out += r2.w[static_cast<std::size_t>(j)] * par[j];
            pred[static_cast<std::size_t>(s)] = out;
            double err = out - ys[static_cast<std::size_t>(s)];
            sq += err * err;
        }
        return std::sqrt(sq / config.batch_size);
    }

    void backward_batch() {
        const int h = config.hidden_units;
        const int n = config.latent_dim;
        const int m = config.set_size;
        const DenseLayer& l2 = model.phi_layers[1];
        const DenseLayer& l3 = model.phi_layers[2];
        const DenseLayer& r1 = model.rho_layers[0];
        const DenseLayer& r2 = model.rho_layers[1];
        for (DenseLayer& g : grads_phi) {
            std::fill(g.w.begin(), g.w.end(), 0.0);
            std::fill(g.b.begin(), g.b.end(), 0.0);
        }
        for (DenseLayer& g : grads_rho) {
            std::fill(g.w.begin(), g.w.end(), 0.0);
            std::fill(g.b.begin(), g.b.end(), 0.0);
        }
        for (int s = 0; s < config.batch_size; ++s) {
            const double* lat = latent.data() + static_cast<std::size_t>(s) * n;
            const double* par = ar.data() + static_cast<std::size_t>(s) * h;
            double dout = 2.0 * (pred[static_cast<std::size_t>(s)] - ys[static_cast<std::size_t>(s)]) /
                          config.batch_size;
            // rho output layer
            dense_backward(r2, par, &dout, grads_rho[1], dzr.data());
            relu_mask(par, dzr.data(), h);
            // rho hidden layer
            dense_backward(r1, lat, dzr.data(), grads_rho[0], dlat.data());
            for (int e = 0; e < m; ++e) {
                const std::size_t idx = static_cast<std::size_t>(s) * m + e;
                const double* pa1 = a1.data() + idx * h;
                const double* pa2 = a2.data() + idx * h;
                const double* pa3 = a3.data() + idx * n;
                std::copy(dlat.begin(), dlat.end(), dz3.begin());
                relu_mask(pa3, dz3.data(), n);
                dense_backward(l3, pa2, dz3.data(), grads_phi[2], dz2.data());
                relu_mask(pa2, dz2.data(), h);
                dense_backward(l2, pa1, dz2.data(), grads_phi[1], dz1.data());
                relu_mask(pa1, dz1.data(), h);
                double x = xs[idx];
                dense_backward(model.phi_layers[0], &x, dz1.data(), grads_phi[0], nullptr);
            }
        }
    }

    void update(double lr) {
        for (std::size_t i = 0; i < model.phi_layers.size(); ++i) {
            adam_step(model.phi_layers[i].w, grads_phi[i].w, adam_w_phi[i], lr);
            adam_step(model.phi_layers[i].b, grads_phi[i].b, adam_b_phi[i], lr);
        }
        for (std::size_t i = 0; i < model.rho_layers.size(); ++i) {
            adam_step(model.rho_layers[i].w, grads_rho[i].w, adam_w_rho[i], lr);
            adam_step(model.rho_layers[i].b, grads_rho[i].b, adam_b_rho[i], lr);
        }
    }

    TrainConfig config;
    Rng root;
    Rng init_rng;
    Rng data_rng;
    DeepSetsModel model;
    std::vector<double> a1, a2, a3, latent, ar, pred, xs, ys;
    std::vector<double> dz1, dz2, dz3, dzr, dlat;
    std::vector<DenseLayer> grads_phi, grads_rho;
    std::vector<AdamState> adam_w_phi, adam_b_phi, adam_w_rho, adam_b_rho;
};

void validate_config(const TrainConfig& c) {
    if (c.set_size < 1 || c.latent_dim < 1 || c.hidden_units < 1 || c.batches < 1 ||
        c.batch_size < 1) {
        throw PreconditionViolation("train config dimensions must be >= 1");
    }
    if (!(c.lr0 > 0.0) || !(c.lr_decay_per_batch > 0.0) || c.lr_decay_per_batch > 1.0) {
        throw PreconditionViolation("learning rate schedule out of range");
    }
    if (c.smoothing_alpha < 0.0 || c.smoothing_alpha >= 1.0) {
        throw PreconditionViolation("smoothing_alpha must lie in [0, 1)");
    }
    if (c.distributions.empty()) {
        throw PreconditionViolation("at least one sampling distribution required");
    }
}

}  // namespace

TrainResult train_with_labels(const TrainConfig& config,
                              const std::function<double(const std::vector<double>&)>& label_fn) {
    validate_config(config);
    Trainer tr(config);
    TrainResult result;
    result.raw_rmse.reserve(static_cast<std::size_t>(config.batches));
    result.smoothed_rmse.reserve(static_cast<std::size_t>(config.batches));
    double smoothed = 0.0;
    for (int t = 0; t < config.batches; ++t) {
        tr.sample_batch(label_fn);
        double rmse = tr.forward_batch();
        if (!std::isfinite(rmse)) {
            throw NumericalDivergence("loss became non-finite at batch " + std::to_string(t), t);
        }
        tr.backward_batch();
        double lr = config.lr0 * std::pow(config.lr_decay_per_batch, static_cast<double>(t));
        tr.update(lr);
        smoothed = (t == 0) ? rmse
                            : (1.0 - config.smoothing_alpha) * rmse +
                                  config.smoothing_alpha * smoothed;
        result.raw_rmse.push_back(rmse);
        result.smoothed_rmse.push_back(smoothed);
    }
    result.final_smoothed = smoothed;
    return result;
}

TrainResult train(const TrainConfig& config) {
    return train_with_labels(config,
                             [](const std::vector<double>& sorted) { return median_of_sorted(sorted); });
}

SweepResult sweep(const std::vector<std::pair<int, int>>& grid, int repeats,
                  const TrainConfig& base, int jobs) {
    if (grid.empty()) throw PreconditionViolation("sweep grid must be non-empty");
    if (repeats < 1) throw PreconditionViolation("sweep needs repeats >= 1");
    jobs = std::max(1, jobs);

    struct Task {
        int set_size;
        int latent_dim;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    tasks.reserve(grid.size() * static_cast<std::size_t>(repeats));
    for (const auto& [m, n] : grid) {
        for (int r = 0; r < repeats; ++r) {
            Seed s = derive_seed(base.seed, static_cast<std::uint64_t>(m),
                                 static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
            tasks.push_back({m, n, s.value});
        }
    }

    std::vector<SweepRow> rows(tasks.size());
    std::vector<char> ok(tasks.size(), 0);
    std::vector<std::string> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            TrainConfig cfg = base;
            cfg.set_size = t.set_size;
            cfg.latent_dim = t.latent_dim;
            cfg.seed = Seed{t.seed};
            try {
                TrainResult res = train(cfg);
                rows[i] = SweepRow{t.set_size, t.latent_dim, t.seed, res.final_smoothed};
                ok[i] = 1;
            } catch (const Error& err) {
                std::scoped_lock lock(failures_mutex);
                failures.push_back("run M=" + std::to_string(t.set_size) +
                                   " N=" + std::to_string(t.latent_dim) + ": " + err.what());
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    SweepResult result;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (ok[i]) result.rows.push_back(rows[i]);
    }
    result.failures = std::move(failures);
    return result;
}

std::vector<CellStat> aggregate(const SweepResult& result) {
    std::vector<CellStat> cells;
    for (const SweepRow& row : result.rows) {
        CellStat* cell = nullptr;
        for (CellStat& c : cells) {
            if (c.set_size == row.set_size && c.latent_dim == row.latent_dim) {
                cell = &c;
                break;
            }
        }
        if (!cell) {
            cells.push_back(CellStat{row.set_size, row.latent_dim, 0.0, 0.0, 0});
            cell = &cells.back();
        }
        cell->mean_rmse += row.rmse_final;
        cell->stderr_rmse += row.rmse_final * row.rmse_final;  // accumulate sum of squares
        cell->count += 1;
    }
    for (CellStat& c : cells) {
        double mean = c.mean_rmse / c.count;
        double var = c.count > 1
                         ? std::max(0.0, (c.stderr_rmse - c.count * mean * mean) / (c.count - 1))
                         : 0.0;
        c.mean_rmse = mean;
        c.stderr_rmse = c.count > 1 ? std::sqrt(var / c.count) : 0.0;
    }
    std::sort(cells.begin(), cells.end(), [](const CellStat& a, const CellStat& b) {
        return a.set_size != b.set_size ? a.set_size < b.set_size : a.latent_dim < b.latent_dim;
    });
    return cells;
}

std::vector<CriticalPoint> critical_points(const SweepResult& result) {
    std::vector<CellStat> cells = aggregate(result);
    std::vector<CriticalPoint> points;
    for (std::size_t i = 0; i < cells.size();) {
        int m = cells[i].set_size;
        std::size_t j = i;
        while (j < cells.size() && cells[j].set_size == m) ++j;
        if (j - i < 2) {
            throw InsufficientGrid("need at least 2 latent dimensions for set size " +
                                   std::to_string(m));
        }
        double min_rmse = cells[i].mean_rmse;
        for (std::size_t k = i; k < j; ++k) min_rmse = std::min(min_rmse, cells[k].mean_rmse);
        double threshold = 1.1 * min_rmse;
        int critical = cells[i].latent_dim;
        for (std::size_t k = i; k < j; ++k) {
            if (cells[k].mean_rmse <= threshold * (1.0 + 1e-12)) {
                critical = cells[k].latent_dim;
                break;
            }
        }
        points.push_back(CriticalPoint{m, critical, min_rmse, threshold});
        i = j;
    }
    return points;
}

std::vector<OodProbeResult> ood_probe(const DeepSetsModel& model, int set_size) {
    if (set_size < 1) throw PreconditionViolation("set_size must be >= 1");
    DomainInterval unit(0.0, 1.0);
    std::vector<OodProbeResult> out;

    auto run = [&](const std::string& name, const std::vector<double>& elems) {
        Multiset ms = canonicalize(elems, unit);
        double label = median_of_sorted(ms.elements());
        double p = forward(model, ms);
        out.push_back(OodProbeResult{name, p, label, std::abs(p - label)});
    };

    run("all-identical", std::vector<double>(static_cast<std::size_t>(set_size), 1.0));

    std::vector<double> step(static_cast<std::size_t>(set_size), 1.0);
    for (int i = 0; i < set_size / 2 + 1; ++i) step[static_cast<std::size_t>(i)] = 0.0;
    run("step-mixture", step);

    std::vector<double> grid(static_cast<std::size_t>(set_size));
    for (int i = 1; i <= set_size; ++i) {
        grid[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / set_size;
    }
    run("even-grid", grid);
    return out;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "M,N,seed,rmse_final\n";
    for (const SweepRow& r : result.rows) {
        out << r.set_size << "," << r.latent_dim << "," << r.seed << ","
            << format_double(r.rmse_final) << "\n";
    }
    if (!out.good()) throw IoError("failed writing " + path);
}

SweepResult read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "M,N,seed,rmse_final") {
        throw FormatError("expected header 'M,N,seed,rmse_final' in " + path);
    }
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f1, f2, f3, f4;
        if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
            !std::getline(ss, f3, ',') || !std::getline(ss, f4)) {
            throw FormatError("malformed sweep row: '" + line + "'");
        }
        try {
            result.rows.push_back(SweepRow{std::stoi(f1), std::stoi(f2), std::stoull(f3),
                                           std::stod(f4)});
        } catch (const std::exception&) {
            throw FormatError("malformed sweep row: '" + line + "'");
        }
    }
    return result;
}

void write_critical_csv(const std::vector<CriticalPoint>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "M,critical_N,min_rmse,threshold\n";
    for (const CriticalPoint& p : points) {
        out << p.set_size << "," << p.critical_latent_dim << "," << format_double(p.min_rmse)
            << "," << format_double(p.threshold_rmse) << "\n";
    }
    if (!out.good()) throw IoError("failed writing " + path);
}

TrainConfig config_from_kv_file(const std::string& path, TrainConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t;
        for (char c : line) {
            if (c == '#') break;
            t += c;
        }
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        std::size_t start = 0;
        while (start < t.size() && std::isspace(static_cast<unsigned char>(t[start]))) ++start;
        t = t.substr(start);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw FormatError("config line " + std::to_string(lineno) + " is not key=value");
        }
        std::string key = t.substr(0, eq);
        std::string value = t.substr(eq + 1);
        try {
            if (key == "set_size") base.set_size = std::stoi(value);
            else if (key == "latent_dim") base.latent_dim = std::stoi(value);
            else if (key == "hidden_units") base.hidden_units = std::stoi(value);
            else if (key == "batches") base.batches = std::stoi(value);
            else if (key == "batch_size") base.batch_size = std::stoi(value);
            else if (key == "lr0") base.lr0 = std::stod(value);
            else if (key == "lr_decay_per_batch") base.lr_decay_per_batch = std::stod(value);
            else if (key == "smoothing_alpha") base.smoothing_alpha = std::stod(value);
            else if (key == "seed") base.seed = Seed{std::stoull(value)};
            else if (key == "distributions") {
                base.distributions.clear();
                std::stringstream ss(value);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    base.distributions.push_back(distribution_from_name(name));
                }
                if (base.distributions.empty()) {
                    throw FormatError("distributions list is empty");
                }
            } else {
                throw FormatError("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw FormatError("bad value for '" + key + "': '" + value + "'");
        } catch (const std::out_of_range&) {
            throw FormatError("bad value for '" + key + "': '" + value + "'");
        }
    }
    return base;
}

}  // namespace sumdecomp::mlp
