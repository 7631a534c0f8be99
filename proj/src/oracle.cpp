#include "treeldp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "treeldp/log_real.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeldp {

namespace {

// splitmix64 finalizer; counter-based substreams come from chaining it
uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

double uniform01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

int SubtreeArena::ancestor_at(int node, int level) const {
    int cur = node;
    while (nodes_[cur].level > level) cur = nodes_[cur].parent;
    if (nodes_[cur].level != level)
        throw IndexOutOfRange("ancestor level above the node");
    return cur;
}

SubtreeArena build_arena(const TransitionMatrix& m, Level depth,
                         std::int64_t node_cap) {
    if (depth < 0) throw IndexOutOfRange("negative depth");
    BigInt total = delta_count(m, depth, std::max<Level>(depth, 1));
    if (total > node_cap)
        throw SizeLimitExceeded("|Delta_" + std::to_string(depth) + "| = " +
                                total.str() + " exceeds the cap of " +
                                std::to_string(node_cap) + " nodes");
    SubtreeArena arena;
    arena.nodes_.push_back({0, -1, -1});
    arena.level_begin_ = {0, 1};
    // children in symbol order keeps each level lexicographic by word
    for (Level lev = 1; lev <= depth; ++lev) {
        int begin = arena.level_begin_[lev - 1];
        int end = arena.level_begin_[lev];
        for (int u = begin; u < end; ++u) {
            int us = arena.nodes_[u].symbol;
            for (int s = 0; s < m.dim(); ++s) {
                if (us >= 0 && !m(us, s)) continue;
                arena.nodes_.push_back({static_cast<int>(lev), s, u});
            }
        }
        arena.level_begin_.push_back(static_cast<int>(arena.nodes_.size()));
    }
    return arena;
}

HamiltonianTerms hamiltonian_terms(const ModelSpec& model,
                                   const SubtreeArena& arena, Level n) {
    HamiltonianTerms terms;
    terms.n = n;
    terms.head_cutoff = model.head_cutoff(n);
    terms.pairs_by_k.resize(n);
    for (Level k = 1; k <= n; ++k) {
        Level anchor_level = k - 1;
        Level target_level = model.target_level(k);
        if (target_level > arena.depth())
            throw DepthInsufficient("arena depth " +
                                    std::to_string(arena.depth()) +
                                    " < target level " +
                                    std::to_string(target_level));
        if (target_level == anchor_level) {
            // Type I k=1: the degenerate self-pair sigma_1 sigma_1 = 1
            terms.constant += 1;
            continue;
        }
        auto& pairs = terms.pairs_by_k[k - 1];
        for (int v = arena.level_begin(static_cast<int>(target_level));
             v < arena.level_end(static_cast<int>(target_level)); ++v)
            pairs.emplace_back(
                arena.ancestor_at(v, static_cast<int>(anchor_level)), v);
    }
    return terms;
}

std::vector<std::pair<int, int>> HamiltonianTerms::truncated_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (Level k = head_cutoff + 1; k <= n; ++k)
        out.insert(out.end(), pairs_by_k[k - 1].begin(),
                   pairs_by_k[k - 1].end());
    return out;
}

std::vector<std::pair<int, int>> HamiltonianTerms::all_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& pk : pairs_by_k) out.insert(out.end(), pk.begin(), pk.end());
    return out;
}

std::int64_t hamiltonian(const HamiltonianTerms& terms,
                         const std::vector<int>& spins, bool truncated) {
    std::int64_t s = truncated ? 0 : terms.constant;
    Level first = truncated ? terms.head_cutoff + 1 : 1;
    for (Level k = first; k <= terms.n; ++k)
        for (auto [a, v] : terms.pairs_by_k[k - 1])
            s += static_cast<std::int64_t>(spins[a]) * spins[v];
    return s;
}

namespace {

struct EnumProblem {
    SubtreeArena arena;
    std::vector<std::pair<int, int>> pairs;
    int constant = 0;
    int n_nodes = 0;
};

EnumProblem enumeration_problem(const ModelSpec& model,
                                const TransitionMatrix& m, Level n,
                                bool truncated, std::int64_t node_cap) {
    EnumProblem prob;
    prob.arena = build_arena(m, model.target_level(n), node_cap);
    HamiltonianTerms terms = hamiltonian_terms(model, prob.arena, n);
    prob.pairs = truncated ? terms.truncated_pairs() : terms.all_pairs();
    prob.constant = truncated ? 0 : terms.constant;
    prob.n_nodes = prob.arena.size();
    return prob;
}

std::int64_t pair_sum(const std::vector<std::pair<int, int>>& pairs,
                      std::uint64_t mask) {
    std::int64_t s = 0;
    for (auto [a, v] : pairs)
        s += (((mask >> a) ^ (mask >> v)) & 1u) ? -1 : 1;
    return s;
}

// log sum over masks in [begin, end) of P_p(mask) * e^{beta * S(mask)}
double mgf_chunk(const EnumProblem& prob, double beta, double p,
                 std::uint64_t begin, std::uint64_t end) {
    double log_p = std::log(p);
    double log_1p = std::log(1.0 - p);
    double acc = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        int plus = std::popcount(mask);
        std::int64_t s = prob.constant + pair_sum(prob.pairs, mask);
        double term = plus * log_p + (prob.n_nodes - plus) * log_1p +
                      beta * static_cast<double>(s);
        acc = log_sum_exp(acc, term);
    }
    return acc;
}

// Chunked enumeration with an ordered reduction: the result is bit-identical
// for any thread count, including the serial run.
double log_exact_mgf_impl(const ModelSpec& model, const TransitionMatrix& m,
                          Level n, double beta, bool truncated, bool parallel,
                          std::int64_t node_cap) {
    EnumProblem prob = enumeration_problem(model, m, n, truncated, node_cap);
    std::uint64_t total = std::uint64_t{1} << prob.n_nodes;
    std::uint64_t n_chunks = std::min<std::uint64_t>(total, 256);
    std::uint64_t chunk = total / n_chunks;
    std::vector<double> partial(n_chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c)
        partial[c] = mgf_chunk(prob, beta, model.p(), c * chunk,
                               (c + 1) * chunk);
    double acc = -std::numeric_limits<double>::infinity();
    for (double x : partial) acc = log_sum_exp(acc, x);
    return acc;
}

}  // namespace

double log_exact_mgf(const ModelSpec& model, const TransitionMatrix& m,
                     Level n, double beta, bool truncated, bool parallel,
                     std::int64_t node_cap) {
    return log_exact_mgf_impl(model, m, n, beta, truncated, parallel,
                              node_cap);
}

double log_exact_mgf_serial(const ModelSpec& model, const TransitionMatrix& m,
                            Level n, double beta, bool truncated,
                            std::int64_t node_cap) {
    // single pass, plain running reduction; the audit reference
    EnumProblem prob = enumeration_problem(model, m, n, truncated, node_cap);
    return mgf_chunk(prob, beta, model.p(), 0,
                     std::uint64_t{1} << prob.n_nodes);
}

double exact_probability(const ModelSpec& model, const TransitionMatrix& m,
                         Level n, double x, double eps,
                         std::int64_t node_cap) {
    EnumProblem prob = enumeration_problem(model, m, n, false, node_cap);
    double delta = static_cast<double>(prob.n_nodes);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prob.n_nodes);
         ++mask) {
        std::int64_t s = prob.constant + pair_sum(prob.pairs, mask);
        double avg = static_cast<double>(s) / delta;
        if (avg < x - eps || avg > x + eps) continue;
        int plus = std::popcount(mask);
        total += std::pow(model.p(), plus) *
                 std::pow(1.0 - model.p(), prob.n_nodes - plus);
    }
    return total;
}

namespace {

McHistogram mc_sample_impl(const ModelSpec& model, const TransitionMatrix& m,
                           Level n, std::uint64_t samples, std::uint64_t seed,
                           bool parallel) {
    SubtreeArena arena = build_arena(m, model.target_level(n),
                                     kMonteCarloNodeCap);
    HamiltonianTerms terms = hamiltonian_terms(model, arena, n);
    std::vector<std::pair<int, int>> pairs = terms.all_pairs();
    int n_nodes = arena.size();
    double p = model.p();

    McHistogram hist;
    hist.samples = samples;
    hist.delta_size = n_nodes;

#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        std::map<std::int64_t, std::uint64_t> local;
        std::vector<int> spins(n_nodes);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples);
             ++i) {
            std::uint64_t stream = mix64(seed ^ mix64(static_cast<std::uint64_t>(i)));
            for (int v = 0; v < n_nodes; ++v)
                spins[v] =
                    uniform01(mix64(stream + static_cast<std::uint64_t>(v)))
                            < p
                        ? 1
                        : -1;
            std::int64_t s = terms.constant;
            for (auto [a, v] : pairs)
                s += static_cast<std::int64_t>(spins[a]) * spins[v];
            ++local[s];
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            for (auto [k, v] : local) hist.counts[k] += v;
        }
    }
    return hist;
}

}  // namespace

McHistogram mc_sample(const ModelSpec& model, const TransitionMatrix& m,
                      Level n, std::uint64_t samples, std::uint64_t seed,
                      bool parallel) {
    return mc_sample_impl(model, m, n, samples, seed, parallel);
}

McHistogram mc_sample_serial(const ModelSpec& model,
                             const TransitionMatrix& m, Level n,
                             std::uint64_t samples, std::uint64_t seed) {
    return mc_sample_impl(model, m, n, samples, seed, false);
}

}  // namespace treeldp
