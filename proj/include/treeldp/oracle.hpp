#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "treeldp/model.hpp"
#include "treeldp/transition_matrix.hpp"

namespace treeldp {

inline constexpr int kEnumerationNodeCap = 25;
inline constexpr std::int64_t kMonteCarloNodeCap = 1000000;

// Explicit subtree Delta_depth with parent links. Node order is canonical:
// level-major, lexicographic by word within a level.
class SubtreeArena {
  public:
    struct Node {
        int level;
        int symbol;  // -1 for the root
        int parent;  // -1 for the root
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    int depth() const { return static_cast<int>(level_begin_.size()) - 2; }
    int size() const { return static_cast<int>(nodes_.size()); }

    int level_begin(int level) const { return level_begin_[level]; }
    int level_end(int level) const { return level_begin_[level + 1]; }
    int level_size(int level) const {
        return level_begin_[level + 1] - level_begin_[level];
    }

    // Ancestor of `node` at `level` (walking parent links).
    int ancestor_at(int node, int level) const;

    friend SubtreeArena build_arena(const TransitionMatrix& m, Level depth,
                                    std::int64_t node_cap);

  private:
    std::vector<Node> nodes_;
    std::vector<int> level_begin_;  // size depth+2, sentinel at the end
};

SubtreeArena build_arena(const TransitionMatrix& m, Level depth,
                         std::int64_t node_cap = kEnumerationNodeCap);

// All coupling pairs of S_N, grouped by term index k. The Type I k=1 term
// is the degenerate self-pair sigma_1 sigma_1 = 1, kept as a constant.
struct HamiltonianTerms {
    std::vector<std::vector<std::pair<int, int>>> pairs_by_k;  // index k-1
    int constant = 0;
    Level n = 0;
    Level head_cutoff = 0;

    // Pairs of the truncated sum only (k > head_cutoff), flattened.
    std::vector<std::pair<int, int>> truncated_pairs() const;
    std::vector<std::pair<int, int>> all_pairs() const;
};

HamiltonianTerms hamiltonian_terms(const ModelSpec& model,
                                   const SubtreeArena& arena, Level n);

// S(sigma) over the full or truncated coupling range; spins are +1/-1.
std::int64_t hamiltonian(const HamiltonianTerms& terms,
                         const std::vector<int>& spins, bool truncated);

// log E_p[e^{beta S}] by exact enumeration of all 2^{|Delta|} spin
// configurations. Deterministic regardless of thread count: fixed chunking
// with an ordered log-sum-exp reduction.
double log_exact_mgf(const ModelSpec& model, const TransitionMatrix& m,
                     Level n, double beta, bool truncated,
                     bool parallel = true,
                     std::int64_t node_cap = kEnumerationNodeCap);

// Independent serial reference for the kernel above; single-pass
// accumulation, so it agrees with the parallel kernel to rounding.
double log_exact_mgf_serial(const ModelSpec& model, const TransitionMatrix& m,
                            Level n, double beta, bool truncated,
                            std::int64_t node_cap = kEnumerationNodeCap);

// Exact P_p(S/|Delta| in [x-eps, x+eps]), full Hamiltonian.
double exact_probability(const ModelSpec& model, const TransitionMatrix& m,
                         Level n, double x, double eps,
                         std::int64_t node_cap = kEnumerationNodeCap);

// Empirical distribution of S (full Hamiltonian) under i.i.d. Bernoulli(p)
// spins. Counter-based per-sample substreams keyed on the seed make the
// histogram independent of the thread count.
struct McHistogram {
    std::map<std::int64_t, std::uint64_t> counts;  // S value -> hits
    std::uint64_t samples = 0;
    std::int64_t delta_size = 0;

    double frequency(std::int64_t s) const {
        auto it = counts.find(s);
        return it == counts.end()
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(samples);
    }
};

McHistogram mc_sample(const ModelSpec& model, const TransitionMatrix& m,
                      Level n, std::uint64_t samples, std::uint64_t seed,
                      bool parallel = true);

McHistogram mc_sample_serial(const ModelSpec& model, const TransitionMatrix& m,
                             Level n, std::uint64_t samples,
                             std::uint64_t seed);

}  // namespace treeldp
