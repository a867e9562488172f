#ifndef BECGROWTH_SSA_HPP
#define BECGROWTH_SSA_HPP

// =====================================================================
//  becgrowth/ssa.hpp
//
//  Stochastic condensate occupation as a birth-death jump process.
//
//  The number-resolved master equation reduces, for the condensate mode
//  alone, to a chain on N = 0, 1, 2, ... with
//
//    birth  N -> N+1  at rate 2 (N+1) W+(N)
//    death  N -> N-1  at rate 2 N     W-(N)
//
//  so the mean obeys d<N>/dt = 2<(N+1) W+(N) - N W-(N)>, whose sharp-N
//  limit is the mean-field growth equation.  Death at N = 0 is
//  structurally impossible; occupations stay nonnegative.
//
//  The stationary law of the chain satisfies the exact ratio
//
//    p(N+1) / p(N) = birth(N) / death(N+1) = [W+(N)/W+(N+1)] e^((mu - mu_{N+1})/kT)
//
//  which is detailed balance with the slowly varying prefactor W+
//  carried along; stationary_distribution builds it in log space.
//
//  Trajectories are exact Gillespie draws: exponential waiting times at
//  the total rate, branch by rate ratio.  Ensembles assign each
//  trajectory its own counter-derived RNG stream keyed by trajectory
//  index, and reductions run over fixed index-ordered chunks, so means,
//  bands and latency samples are bit-identical for any thread count.
// =====================================================================

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "becgrowth/core.hpp"
#include "becgrowth/rates.hpp"
#include "becgrowth/rng.hpp"

namespace becgrowth {

struct BirthDeathChain {
    std::function<double(std::int64_t)> birth;  // rate N -> N+1
    std::function<double(std::int64_t)> death;  // rate N -> N-1
};

// Chain for the condensate mode with memoized collision rates.  W+- are
// smooth in N, so each occupation's rates are computed once and cached;
// the cache grows on demand.  Each chain owns its cache, so distinct
// trajectory workers should hold distinct copies.
inline BirthDeathChain make_condensate_chain(const RateContext& ctx) {
    struct Cache {
        RateContext ctx;
        std::vector<double> wp, wm;
        explicit Cache(const RateContext& c) : ctx(c) {}
        void grow_to(std::size_t n) {
            while (wp.size() <= n) {
                const double x = static_cast<double>(wp.size());
                wp.push_back(ctx.w_plus(x));
                wm.push_back(ctx.w_minus(x));
            }
        }
    };
    auto cache = std::make_shared<Cache>(ctx);
    BirthDeathChain chain;
    chain.birth = [cache](std::int64_t n) {
        cache->grow_to(static_cast<std::size_t>(n));
        return 2.0 * static_cast<double>(n + 1) * cache->wp[static_cast<std::size_t>(n)];
    };
    chain.death = [cache](std::int64_t n) {
        if (n <= 0) return 0.0;
        cache->grow_to(static_cast<std::size_t>(n));
        return 2.0 * static_cast<double>(n) * cache->wm[static_cast<std::size_t>(n)];
    };
    return chain;
}

struct SsaTrajectory {
    std::vector<double> t;        // output grid [s]
    std::vector<double> n;        // occupation at each grid time
    double first_passage = std::numeric_limits<double>::quiet_NaN();  // to threshold
    std::uint64_t events = 0;
};

struct SsaEvent {
    double t = 0.0;
    std::int64_t n = 0;  // occupation after the jump
    int direction = 0;   // +1 birth, -1 death
};

// Exact simulation of one trajectory, sampled on a uniform grid of
// `samples` points spanning [0, t_end].  first_passage records the
// event time at which the occupation first reaches `threshold`.  When
// `event_log` is given, every jump is appended to it.
inline SsaTrajectory ssa_trajectory(const BirthDeathChain& chain, std::int64_t n0, double t_end,
                                    std::size_t samples, RandomStream& rng,
                                    double threshold = 100.0,
                                    std::uint64_t max_events = 2'000'000'000ull,
                                    std::vector<SsaEvent>* event_log = nullptr) {
    SsaTrajectory out;
    out.t.resize(samples);
    out.n.resize(samples);
    for (std::size_t i = 0; i < samples; ++i)
        out.t[i] = t_end * (static_cast<double>(i) / static_cast<double>(samples - 1));

    std::int64_t n = n0;
    double t = 0.0;
    std::size_t gi = 0;
    if (static_cast<double>(n) >= threshold) out.first_passage = 0.0;

    while (gi < samples) {
        const double rb = chain.birth(n);
        const double rd = chain.death(n);
        const double total = rb + rd;
        if (!(total > 0.0)) break;  // absorbing state: hold n forever

        const double dt = rng.exponential(total);
        const double t_next = t + dt;
        while (gi < samples && out.t[gi] < t_next) {
            out.n[gi] = static_cast<double>(n);
            ++gi;
        }
        if (gi >= samples) break;

        t = t_next;
        const int dir = (rng.uniform() * total <= rb) ? 1 : -1;
        n += dir;
        if (event_log) event_log->push_back({t, n, dir});
        if (++out.events > max_events)
            throw NumericsError("ssa_trajectory: exceeded " + std::to_string(max_events) +
                                " events at t=" + std::to_string(t) + " s (n=" +
                                std::to_string(n) + "); rates too fast for this horizon");
        if (std::isnan(out.first_passage) && static_cast<double>(n) >= threshold)
            out.first_passage = t;
    }
    for (; gi < samples; ++gi) out.n[gi] = static_cast<double>(n);
    return out;
}

struct EnsembleStats {
    std::vector<double> t;
    std::vector<double> mean;
    std::vector<double> variance;      // unbiased, across trajectories
    std::vector<double> band_low;      // 10% quantile (nearest rank)
    std::vector<double> band_median;   // 50%
    std::vector<double> band_high;     // 90%
    std::vector<double> first_passage;  // per trajectory, NaN if unreached
    std::size_t trajectories = 0;
    std::uint64_t total_events = 0;
};

namespace detail {

// nearest-rank quantile of an already sorted vector
inline double sorted_quantile(const std::vector<double>& v, double q) {
    const std::size_t m = v.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m)));
    if (rank == 0) rank = 1;
    if (rank > m) rank = m;
    return v[rank - 1];
}

}  // namespace detail

// Ensemble of independent trajectories.  Trajectory i always draws from
// stream (master_seed, i) regardless of scheduling; mean and variance
// are merged from fixed index-ordered chunks and quantiles sort full
// per-time cross sections, so results do not depend on num_threads.
// Quantile bands require the full sample matrix (8 * M * samples
// bytes); request bands = false for very large ensembles.
inline EnsembleStats ssa_ensemble(const RateContext& ctx, std::int64_t n0, double t_end,
                                  std::size_t samples, std::size_t trajectories,
                                  std::uint64_t master_seed, unsigned num_threads = 0,
                                  bool bands = true, double threshold = 100.0) {
    if (trajectories == 0) throw std::domain_error("ssa_ensemble: need at least one trajectory");
    if (bands && trajectories * samples > 40'000'000)
        throw std::domain_error(
            "ssa_ensemble: band matrix would exceed the retention budget; disable bands");

    EnsembleStats out;
    out.trajectories = trajectories;
    out.t.resize(samples);
    for (std::size_t i = 0; i < samples; ++i)
        out.t[i] = t_end * (static_cast<double>(i) / static_cast<double>(samples - 1));
    out.first_passage.assign(trajectories, std::numeric_limits<double>::quiet_NaN());

    // fixed chunk layout, independent of thread count
    const std::size_t chunk_count = std::min<std::size_t>(64, trajectories);
    const std::size_t chunk_size = (trajectories + chunk_count - 1) / chunk_count;

    struct ChunkAccum {
        std::vector<double> mean, m2;
        std::size_t count = 0;
        std::uint64_t events = 0;
    };
    std::vector<ChunkAccum> acc(chunk_count);
    std::vector<double> matrix;
    if (bands) matrix.resize(trajectories * samples);

    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * chunk_size;
        const std::size_t hi = std::min(trajectories, lo + chunk_size);
        ChunkAccum& a = acc[c];
        a.mean.assign(samples, 0.0);
        a.m2.assign(samples, 0.0);
        BirthDeathChain chain = make_condensate_chain(ctx);  // private rate cache
        for (std::size_t i = lo; i < hi; ++i) {
            RandomStream rng(master_seed, i);
            SsaTrajectory tr = ssa_trajectory(chain, n0, t_end, samples, rng, threshold);
            a.events += tr.events;
            out.first_passage[i] = tr.first_passage;
            ++a.count;
            const double inv = 1.0 / static_cast<double>(a.count);
            for (std::size_t j = 0; j < samples; ++j) {
                const double d = tr.n[j] - a.mean[j];
                a.mean[j] += d * inv;
                a.m2[j] += d * (tr.n[j] - a.mean[j]);
            }
            if (bands)
                std::copy(tr.n.begin(), tr.n.end(), matrix.begin() + i * samples);
        }
    };

    unsigned hw = num_threads ? num_threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    hw = std::min<unsigned>(hw, static_cast<unsigned>(chunk_count));
    if (hw <= 1) {
        for (std::size_t c = 0; c < chunk_count; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < hw; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunk_count) return;
                    run_chunk(c);
                }
            });
        for (auto& th : pool) th.join();
    }

    // merge chunk moments in index order (parallel-variance combine)
    out.mean.assign(samples, 0.0);
    out.variance.assign(samples, 0.0);
    std::size_t count = 0;
    for (std::size_t c = 0; c < chunk_count; ++c) {
        const ChunkAccum& a = acc[c];
        if (a.count == 0) continue;
        out.total_events += a.events;
        if (count == 0) {
            out.mean = a.mean;
            out.variance = a.m2;
            count = a.count;
            continue;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(a.count);
        const double nab = na + nb;
        for (std::size_t j = 0; j < samples; ++j) {
            const double d = a.mean[j] - out.mean[j];
            out.mean[j] += d * nb / nab;
            out.variance[j] += a.m2[j] + d * d * na * nb / nab;
        }
        count += a.count;
    }
    for (std::size_t j = 0; j < samples; ++j)
        out.variance[j] =
            (count > 1) ? out.variance[j] / static_cast<double>(count - 1) : 0.0;

    if (bands) {
        out.band_low.resize(samples);
        out.band_median.resize(samples);
        out.band_high.resize(samples);
        std::vector<double> column(trajectories);
        for (std::size_t j = 0; j < samples; ++j) {
            for (std::size_t i = 0; i < trajectories; ++i) column[i] = matrix[i * samples + j];
            std::sort(column.begin(), column.end());
            out.band_low[j] = detail::sorted_quantile(column, 0.10);
            out.band_median[j] = detail::sorted_quantile(column, 0.50);
            out.band_high[j] = detail::sorted_quantile(column, 0.90);
        }
    }
    return out;
}

// Stationary distribution of the chain on [0, n_max], built from the
// exact ratio p(N+1)/p(N) = birth(N)/death(N+1) in log space and
// normalized.  Errors if the tail beyond n_max still carries more than
// a 1e-12 fraction estimated from the final geometric ratio.
inline std::vector<double> stationary_distribution(const BirthDeathChain& chain,
                                                   std::size_t n_max) {
    std::vector<double> logp(n_max + 1);
    logp[0] = 0.0;
    for (std::size_t n = 0; n + 1 <= n_max; ++n) {
        const double b = chain.birth(static_cast<std::int64_t>(n));
        const double d = chain.death(static_cast<std::int64_t>(n + 1));
        if (!(b > 0.0) || !(d > 0.0))
            throw NumericsError("stationary_distribution: chain not irreducible at N=" +
                                std::to_string(n));
        logp[n + 1] = logp[n] + std::log(b) - std::log(d);
    }
    const double lmax = *std::max_element(logp.begin(), logp.end());
    double total = 0.0;
    std::vector<double> p(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        p[n] = std::exp(logp[n] - lmax);
        total += p[n];
    }
    const double ratio = p[n_max] / p[n_max - 1];
    if (!(ratio < 1.0) || p[n_max] * ratio / (1.0 - ratio) > 1e-12 * total)
        throw NumericsError("stationary_distribution: truncation at n_max=" +
                            std::to_string(n_max) +
                            " leaves visible tail mass; increase n_max");
    for (double& x : p) x /= total;
    return p;
}

}  // namespace becgrowth

#endif  // BECGROWTH_SSA_HPP
