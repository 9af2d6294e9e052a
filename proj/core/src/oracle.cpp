#include "allpay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "allpay/errors.hpp"
#include "allpay/rng.hpp"
#include "allpay/special.hpp"

namespace allpay {
namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs batch_fn over consecutive batch indices in waves of `threads`,
// feeding results to consume() in strict index order. consume returns false
// to stop; batches computed past the stopping index are discarded, so the
// merged outcome does not depend on the wave width.
template <typename Result, typename BatchFn, typename ConsumeFn>
void run_batch_waves(int threads, BatchFn&& batch_fn, ConsumeFn&& consume) {
    std::size_t next = 0;
    bool done = false;
    while (!done) {
        const int width = threads;
        std::vector<Result> results(width);
        std::vector<std::exception_ptr> errors(width);
        {
            std::vector<std::thread> pool;
            pool.reserve(width - 1);
            for (int i = 1; i < width; ++i) {
                pool.emplace_back([&, i] {
                    try {
                        results[i] = batch_fn(next + i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                });
            }
            try {
                results[0] = batch_fn(next);
            } catch (...) {
                errors[0] = std::current_exception();
            }
            for (auto& t : pool) t.join();
        }
        for (int i = 0; i < width && !done; ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            done = !consume(next + i, std::move(results[i]));
        }
        next += width;
    }
}

struct AcceptedBatch {
    std::vector<double> opponents;  // accepted records, flattened
    std::size_t records = 0;
    std::size_t trials = 0;
};

}  // namespace

std::vector<double> mc_posterior_empirical(const PosteriorParams& p, const McConfig& mc) {
    if (p.n2 < 2 || p.n2 > p.n1) throw DomainError("oracle: need 2 <= n2 <= n1");
    if (!(p.own_ability > 0.0 && p.own_ability < 1.0))
        throw DomainError("oracle: own ability must lie in (0,1)");
    if (mc.samples == 0 || mc.batch == 0)
        throw DomainError("oracle: samples and batch must be positive");

    const int opponents = p.n1 - 1;
    const int keep = p.n2 - 1;
    const CounterRng root(mc.seed);

    auto batch_fn = [&](std::size_t index) {
        const CounterRng sub = root.substream(index);
        AcceptedBatch out;
        out.trials = mc.batch;
        out.opponents.reserve(mc.batch / 4 * keep);
        std::vector<double> draw(opponents);
        for (std::size_t t = 0; t < mc.batch; ++t) {
            int above = 0;
            for (int j = 0; j < opponents; ++j) {
                draw[j] = p.prior.inverse_cdf(
                    sub.uniform_at(t * static_cast<std::size_t>(opponents) + j));
                if (draw[j] > p.own_ability) ++above;
            }
            if (above > p.n2 - 1) continue;  // own ability outside the top n2
            std::partial_sort(draw.begin(), draw.begin() + keep, draw.end(),
                              std::greater<>());
            out.opponents.insert(out.opponents.end(), draw.begin(), draw.begin() + keep);
            ++out.records;
        }
        return out;
    };

    std::vector<double> pooled;
    pooled.reserve(mc.samples * keep);
    std::size_t records = 0, trials = 0;
    run_batch_waves<AcceptedBatch>(
        resolve_threads(mc.threads), batch_fn,
        [&](std::size_t, AcceptedBatch&& b) {
            trials += b.trials;
            const std::size_t take = std::min(b.records, mc.samples - records);
            pooled.insert(pooled.end(), b.opponents.begin(),
                          b.opponents.begin() + take * keep);
            records += take;
            if (records >= mc.samples) return false;
            if (trials >= 1'000'000 &&
                static_cast<double>(records) < 1e-6 * static_cast<double>(trials))
                throw NumericError("oracle: acceptance starvation (rate below 1e-6)");
            return true;
        });
    std::sort(pooled.begin(), pooled.end());
    return pooled;
}

double ks_distance(const std::vector<double>& sorted_sample,
                   const std::function<double(double)>& cdf) {
    if (sorted_sample.empty()) throw DomainError("oracle: empty sample");
    const double n = static_cast<double>(sorted_sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
        const double c = cdf(sorted_sample[i]);
        d = std::max(d, std::max(c - i / n, (i + 1) / n - c));
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    if (n == 0 || !(alpha > 0.0 && alpha < 1.0))
        throw DomainError("oracle: bad KS parameters");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

namespace {

struct SimBatch {
    double sum_h = 0.0, sumsq_h = 0.0;
    double sum_t = 0.0, sumsq_t = 0.0;
    std::vector<std::uint64_t> bin_admitted;
    std::vector<std::uint64_t> bin_rank;  // bin * n2 + rank-1
    std::size_t trials = 0;
};

}  // namespace

ContestSimulation simulate_contest(const ContestSpec& spec, const StrategyTable& table,
                                   const McConfig& mc, int bin_count) {
    const ContestSpec s = validate_spec(spec);
    if (bin_count < 1) throw DomainError("oracle: bin_count must be positive");
    const CounterRng root(mc.seed);
    const std::size_t n1 = static_cast<std::size_t>(s.n1);

    auto batch_fn = [&](std::size_t index) {
        SimBatch out;
        out.bin_admitted.assign(bin_count, 0);
        out.bin_rank.assign(static_cast<std::size_t>(bin_count) * s.n2, 0);
        const std::size_t lo = index * mc.batch;
        if (lo >= mc.samples) return out;
        const std::size_t n_trials = std::min(mc.batch, mc.samples - lo);
        const CounterRng sub = root.substream(index);
        std::vector<double> abilities(n1);
        std::vector<int> order(n1);
        for (std::size_t t = 0; t < n_trials; ++t) {
            for (std::size_t j = 0; j < n1; ++j)
                abilities[j] = s.prior.inverse_cdf(sub.uniform_at(t * n1 + j));
            for (std::size_t j = 0; j < n1; ++j) order[j] = static_cast<int>(j);
            std::partial_sort(order.begin(), order.begin() + s.n2, order.end(),
                              [&](int a, int b) { return abilities[a] > abilities[b]; });
            // rank r (0-based) among the admitted == prize r+1; efforts are a
            // monotone map of abilities so effort ranks equal ability ranks.
            double total = 0.0;
            for (int r = 0; r < s.n2; ++r) {
                const double a = abilities[order[r]];
                total += table(a);
                const int bin = std::min(bin_count - 1,
                                         static_cast<int>(a * bin_count));
                ++out.bin_admitted[bin];
                ++out.bin_rank[static_cast<std::size_t>(bin) * s.n2 + r];
            }
            const double h = table(abilities[order[0]]);
            out.sum_h += h;
            out.sumsq_h += h * h;
            out.sum_t += total;
            out.sumsq_t += total * total;
        }
        out.trials = n_trials;
        return out;
    };

    const std::size_t n_batches = (mc.samples + mc.batch - 1) / mc.batch;
    ContestSimulation sim;
    sim.bins.resize(bin_count);
    for (int b = 0; b < bin_count; ++b) {
        sim.bins[b].lo = static_cast<double>(b) / bin_count;
        sim.bins[b].hi = static_cast<double>(b + 1) / bin_count;
        sim.bins[b].rank_counts.assign(s.n2, 0);
    }
    double sum_h = 0, sumsq_h = 0, sum_t = 0, sumsq_t = 0;
    run_batch_waves<SimBatch>(
        resolve_threads(mc.threads), batch_fn, [&](std::size_t index, SimBatch&& b) {
            sum_h += b.sum_h;
            sumsq_h += b.sumsq_h;
            sum_t += b.sum_t;
            sumsq_t += b.sumsq_t;
            sim.trials += b.trials;
            for (int bin = 0; bin < bin_count; ++bin) {
                sim.bins[bin].admitted += b.bin_admitted[bin];
                for (int r = 0; r < s.n2; ++r)
                    sim.bins[bin].rank_counts[r] +=
                        b.bin_rank[static_cast<std::size_t>(bin) * s.n2 + r];
            }
            return index + 1 < n_batches;
        });

    const double n = static_cast<double>(sim.trials);
    sim.highest_mean = sum_h / n;
    sim.total_mean = sum_t / n;
    if (sim.trials > 1) {
        sim.highest_se =
            std::sqrt(std::max(0.0, (sumsq_h / n - sim.highest_mean * sim.highest_mean) /
                                        (n - 1.0)));
        sim.total_se = std::sqrt(
            std::max(0.0, (sumsq_t / n - sim.total_mean * sim.total_mean) / (n - 1.0)));
    }
    return sim;
}

BestResponse best_response_search(double a_i, const ContestSpec& spec,
                                  const StrategyTable& table, int grid) {
    if (grid < 500) throw DomainError("oracle: best-response grid must be >= 500");
    const double e_max = table.max_effort() * 1.2;
    BestResponse best;
    best.utility = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double e = e_max * i / (grid - 1);
        const double u = expected_utility(e, a_i, spec, table);
        if (u > best.utility) best = {e, u, static_cast<std::size_t>(i)};
    }
    return best;
}

IdentityCheck min_statistic_identity_check(int n, int m, int k, double x,
                                           const Prior& prior, const McConfig& mc) {
    if (k < 1 || k > 6) throw DomainError("oracle: identity check needs 1 <= k <= 6");
    if (n - m < 0) throw DomainError("oracle: identity check needs n - m >= 0");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("oracle: x must lie in (0,1)");

    const CounterRng root(mc.seed);
    struct Acc {
        double sum = 0.0, sumsq = 0.0;
        std::size_t trials = 0;
    };
    auto batch_fn = [&](std::size_t index) {
        Acc out;
        const std::size_t lo = index * mc.batch;
        if (lo >= mc.samples) return out;
        const std::size_t n_trials = std::min(mc.batch, mc.samples - lo);
        const CounterRng sub = root.substream(index);
        for (std::size_t t = 0; t < n_trials; ++t) {
            double mn = 1.0;
            bool inside = true;
            for (int j = 0; j < k && inside; ++j) {
                const double v = prior.inverse_cdf(
                    sub.uniform_at(t * static_cast<std::size_t>(k) + j));
                if (v >= x)
                    inside = false;
                else
                    mn = std::min(mn, v);
            }
            const double y = inside ? std::pow(prior.cdf(mn), n - m) : 0.0;
            out.sum += y;
            out.sumsq += y * y;
            ++out.trials;
        }
        return out;
    };

    const std::size_t n_batches = (mc.samples + mc.batch - 1) / mc.batch;
    Acc total;
    run_batch_waves<Acc>(resolve_threads(mc.threads), batch_fn,
                         [&](std::size_t index, Acc&& a) {
                             total.sum += a.sum;
                             total.sumsq += a.sumsq;
                             total.trials += a.trials;
                             return index + 1 < n_batches;
                         });

    IdentityCheck out;
    const double N = static_cast<double>(total.trials);
    out.mc_estimate = total.sum / N;
    out.closed_form = std::pow(prior.cdf(x), n - m + k) / binomial(n - m + k, k);
    const double var = std::max(0.0, total.sumsq / N - out.mc_estimate * out.mc_estimate);
    out.std_error = std::sqrt(var / (N - 1.0));
    out.z = out.std_error > 0.0 ? (out.mc_estimate - out.closed_form) / out.std_error
                                : 0.0;
    return out;
}

}  // namespace allpay
