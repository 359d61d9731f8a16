#include "radbound/estimator.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "radbound/error.hpp"
#include "seed.hpp"

namespace radbound {

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
        if (s != 1 && s != -1) {
            throw StructuralError("sign vector entries must be +1 or -1");
        }
    }
}

SignVector SignVector::enumerate(std::size_t n, std::uint64_t index) {
    std::vector<int> signs(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if ((index >> i) & 1U) {
            signs[i] = -1;
        }
    }
    return SignVector(std::move(signs));
}

SignVector SignVector::negated() const {
    std::vector<int> signs(signs_.size());
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        signs[i] = -signs_[i];
    }
    return SignVector(std::move(signs));
}

std::string_view to_string(EstimatorMode mode) {
    return mode == EstimatorMode::Exact ? "exact" : "monte_carlo";
}

EstimatorMode parse_estimator_mode(std::string_view name) {
    if (name == "exact") return EstimatorMode::Exact;
    if (name == "mc" || name == "monte_carlo") return EstimatorMode::MonteCarlo;
    throw StructuralError("unknown estimator mode '" + std::string(name) + "'");
}

void EstimatorConfig::validate() const {
    if (restarts == 0 || steps == 0) {
        throw StructuralError("estimator needs at least one restart and one step");
    }
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        throw StructuralError("estimator step size must be positive and finite");
    }
    if (widths.empty()) {
        throw StructuralError("estimator needs at least one hidden width");
    }
    for (auto w : widths) {
        if (w < 1) {
            throw StructuralError("hidden widths must be positive");
        }
    }
    if (mode == EstimatorMode::MonteCarlo && mc_samples < 2) {
        throw StructuralError("Monte Carlo mode needs at least two sign samples");
    }
}

namespace {

using detail::mix_seed;

double correlation_of_outputs(const Eigen::RowVectorXd& outputs, const SignVector& eps) {
    double sum = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        sum += eps[i] * outputs(static_cast<Eigen::Index>(i));
    }
    return sum / static_cast<double>(eps.size());
}

void check_compatible(const InputSet& inputs, const SignVector& eps) {
    if (static_cast<Eigen::Index>(eps.size()) != inputs.size()) {
        throw ShapeError("sign vector has " + std::to_string(eps.size()) + " entries for " +
                         std::to_string(inputs.size()) + " input points");
    }
}

Matrix project_layer(const Matrix& w, double frobenius_cap, double operator_cap) {
    Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double top = sigma.size() > 0 ? sigma(0) : 0.0;
    if (top <= operator_cap && w.norm() <= frobenius_cap) {
        return w;
    }
    Matrix out = w;
    if (top > operator_cap) {
        out = svd.matrixU() * sigma.cwiseMin(operator_cap).asDiagonal() * svd.matrixV().transpose();
    }
    const double f = out.norm();
    if (f > frobenius_cap) {
        out *= frobenius_cap / f;
    }
    return out;
}

std::vector<Eigen::Index> layer_shape(Eigen::Index input_dim, Eigen::Index width, std::size_t depth) {
    std::vector<Eigen::Index> w(depth + 1, width);
    w.front() = input_dim;
    w.back() = 1;
    return w;
}

NetworkSpec zero_network(const std::vector<Eigen::Index>& widths) {
    std::vector<Matrix> layers;
    for (std::size_t m = 1; m < widths.size(); ++m) {
        layers.push_back(Matrix::Zero(widths[m], widths[m - 1]));
    }
    return NetworkSpec(std::move(layers));
}

// Forward pass that keeps what backpropagation needs.
struct ForwardCache {
    std::vector<Matrix> pre;   // pre[m] = W_m a_{m-1}, hidden layers only (index 1..D-1)
    std::vector<Matrix> post;  // post[0] = inputs, post[m] = relu(pre[m])
    Eigen::RowVectorXd outputs;
};

ForwardCache run_forward(const std::vector<Matrix>& layers, const Matrix& inputs) {
    const std::size_t depth = layers.size();
    ForwardCache cache;
    cache.pre.resize(depth);
    cache.post.resize(depth);
    cache.post[0] = inputs;
    for (std::size_t m = 1; m < depth; ++m) {
        cache.pre[m] = layers[m - 1] * cache.post[m - 1];
        cache.post[m] = cache.pre[m].cwiseMax(0.0);
    }
    cache.outputs = layers[depth - 1] * cache.post[depth - 1];
    return cache;
}

// Gradient of (1/n) sum_i eps_i f(x_i) with respect to every layer; relu'(0) = 0.
std::vector<Matrix> backward(const std::vector<Matrix>& layers, const ForwardCache& cache, const SignVector& eps) {
    const std::size_t depth = layers.size();
    const auto n = static_cast<Eigen::Index>(eps.size());
    Matrix delta(1, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        delta(0, i) = eps[static_cast<std::size_t>(i)] / static_cast<double>(n);
    }
    std::vector<Matrix> grads(depth);
    for (std::size_t m = depth; m >= 1; --m) {
        grads[m - 1] = delta * cache.post[m - 1].transpose();
        if (m > 1) {
            Matrix back = layers[m - 1].transpose() * delta;
            delta = (cache.pre[m - 1].array() > 0.0).select(back, 0.0);
        }
    }
    return grads;
}

}  // namespace

double correlation(const NetworkSpec& net, const InputSet& inputs, const SignVector& eps) {
    check_compatible(inputs, eps);
    return correlation_of_outputs(forward_batch(net, inputs.points()), eps);
}

NetworkSpec project_to_budget(const NetworkSpec& net, const NormBudget& budget) {
    if (net.depth() != budget.depth()) {
        throw StructuralError("network depth " + std::to_string(net.depth()) + " does not match budget depth " +
                              std::to_string(budget.depth()));
    }
    std::vector<Matrix> layers;
    layers.reserve(net.depth());
    for (std::size_t m = 1; m <= net.depth(); ++m) {
        layers.push_back(project_layer(net.layer(m - 1), budget.frobenius_cap(m), budget.operator_cap(m)));
    }
    return NetworkSpec(std::move(layers));
}

SupEstimate estimate_sup(const InputSet& inputs, const SignVector& eps, const NormBudget& budget,
                         const EstimatorConfig& cfg, const IterateObserver& observer) {
    cfg.validate();
    check_compatible(inputs, eps);
    const std::size_t depth = budget.depth();
    // With a single layer there are no hidden widths to search over.
    const std::size_t width_count = depth == 1 ? 1 : cfg.widths.size();

    SupEstimate best{0.0, zero_network(layer_shape(inputs.dim(), cfg.widths.front(), depth))};

    for (std::size_t wi = 0; wi < width_count; ++wi) {
        const auto shape = layer_shape(inputs.dim(), cfg.widths[wi], depth);
        for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
            std::mt19937_64 rng(mix_seed(mix_seed(cfg.seed, wi), restart));
            std::normal_distribution<double> normal(0.0, 1.0);

            std::vector<Matrix> layers;
            for (std::size_t m = 1; m <= depth; ++m) {
                Matrix w(shape[m], shape[m - 1]);
                for (Eigen::Index c = 0; c < w.cols(); ++c) {
                    for (Eigen::Index r = 0; r < w.rows(); ++r) {
                        w(r, c) = normal(rng);
                    }
                }
                const double f = w.norm();
                if (f > 0.0) {
                    w *= budget.frobenius_cap(m) / f;
                }
                layers.push_back(project_layer(w, budget.frobenius_cap(m), budget.operator_cap(m)));
            }

            for (std::size_t t = 0;; ++t) {
                const ForwardCache cache = run_forward(layers, inputs.points());
                const double value = correlation_of_outputs(cache.outputs, eps);
                if (value > best.value || observer) {
                    NetworkSpec net(layers);
                    if (observer) {
                        observer(net);
                    }
                    if (value > best.value) {
                        // Recompute through the public path so the estimate is exactly the witness's value.
                        const double witnessed = correlation(net, inputs, eps);
                        if (witnessed > best.value) {
                            best = SupEstimate{witnessed, std::move(net)};
                        }
                    }
                }
                if (t == cfg.steps) {
                    break;
                }
                const double eta = cfg.step_size * std::pow(0.99, static_cast<double>(t));
                const std::vector<Matrix> grads = backward(layers, cache, eps);
                for (std::size_t m = 1; m <= depth; ++m) {
                    const double g = grads[m - 1].norm();
                    if (g > 0.0) {
                        layers[m - 1] += (eta * budget.frobenius_cap(m) / g) * grads[m - 1];
                    }
                    layers[m - 1] = project_layer(layers[m - 1], budget.frobenius_cap(m), budget.operator_cap(m));
                }
            }
        }
    }
    return best;
}

RademacherEstimate empirical_rademacher(const InputSet& inputs, const NormBudget& budget,
                                        const EstimatorConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(inputs.size());

    std::vector<SignVector> signs;
    if (cfg.mode == EstimatorMode::Exact) {
        if (n > kExactMaxPoints) {
            throw ModeError("exact sign enumeration needs n <= " + std::to_string(kExactMaxPoints) + ", got n = " +
                            std::to_string(n) + "; use Monte Carlo mode");
        }
        const std::uint64_t count = std::uint64_t{1} << n;
        signs.reserve(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            signs.push_back(SignVector::enumerate(n, idx));
        }
    } else {
        std::mt19937_64 rng(mix_seed(cfg.seed, 0x5167'6e73ULL));
        std::bernoulli_distribution coin(0.5);
        signs.reserve(cfg.mc_samples);
        for (std::size_t s = 0; s < cfg.mc_samples; ++s) {
            std::vector<int> eps(n);
            for (auto& e : eps) {
                e = coin(rng) ? 1 : -1;
            }
            signs.emplace_back(std::move(eps));
        }
    }

    std::vector<std::optional<SupEstimate>> results(signs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t idx = next++; idx < signs.size(); idx = next++) {
            try {
                EstimatorConfig branch = cfg;
                branch.seed = mix_seed(cfg.seed, idx);
                results[idx] = estimate_sup(inputs, signs[idx], budget, branch);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::size_t threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
    threads = std::max<std::size_t>(1, std::min(threads, signs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    RademacherEstimate out;
    out.mode = cfg.mode;
    out.sign_vectors = signs.size();
    double sum = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t idx = 0; idx < results.size(); ++idx) {
        sum += results[idx]->value;
        if (results[idx]->value > results[best_idx]->value) {
            best_idx = idx;
        }
    }
    const double count = static_cast<double>(results.size());
    out.mean = sum / count;
    if (cfg.mode == EstimatorMode::MonteCarlo) {
        double sq = 0.0;
        for (const auto& r : results) {
            sq += (r->value - out.mean) * (r->value - out.mean);
        }
        out.standard_error = std::sqrt(sq / (count - 1.0)) / std::sqrt(count);
    }
    out.best_witness = std::move(results[best_idx]->witness);
    return out;
}

}  // namespace radbound
