#include "ordercsp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ordercsp {

namespace {

// Pattern index of a scope under an arbitrary rank accessor, allocation-free.
template <typename RankOf>
int scope_pattern_index(std::span<const VertexId> scope, RankOf&& rank_of) {
  const int m = static_cast<int>(scope.size());
  int locals[kMaxArity];
  Rank ranks[kMaxArity];
  for (int i = 0; i < m; ++i) {
    // insertion sort by rank; scopes are tiny
    Rank r = rank_of(scope[i]);
    int j = i;
    while (j > 0 && ranks[j - 1] > r) {
      ranks[j] = ranks[j - 1];
      locals[j] = locals[j - 1];
      --j;
    }
    ranks[j] = r;
    locals[j] = i;
  }
  return pattern_index(std::span<const int>(locals, m));
}

double value_by_ranks(const Instance& instance, const Rank* rank) {
  double total = 0.0;
  for (const Constraint& c : instance.constraints())
    total += c.payoffs[scope_pattern_index(c.scope, [&](VertexId v) { return rank[v]; })];
  return total;
}

void require_brute_size(const Instance& instance, const char* what) {
  if (instance.num_vertices() > kBruteForceLimit)
    throw GuardError(std::string(what) + ": n = " + std::to_string(instance.num_vertices()) +
                     " exceeds the exhaustive-search limit " + std::to_string(kBruteForceLimit));
}

}  // namespace

double value(const Instance& instance, const Ordering& ordering) {
  if (ordering.size() != instance.num_vertices())
    throw std::invalid_argument("value: ordering size does not match the instance");
  return value_by_ranks(instance, ordering.rank.data());
}

double average_value(const Instance& instance) {
  double total = 0.0;
  for (const Constraint& c : instance.constraints()) total += c.mean_payoff();
  return total;
}

EvalReport brute_force(const Instance& instance) {
  require_brute_size(instance, "brute_force");
  const int n = instance.num_vertices();
  EvalReport report;
  std::vector<VertexId> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  std::vector<Rank> rank(n);
  long double sum = 0.0L;
  std::uint64_t count = 0;
  bool first = true;
  do {
    for (int pos = 0; pos < n; ++pos) rank[seq[pos]] = static_cast<Rank>(pos + 1);
    double v = value_by_ranks(instance, rank.data());
    sum += v;
    ++count;
    if (first || v > report.opt) {
      report.opt = v;
      report.argmax.rank = rank;
    }
    if (first || v < report.wst) report.wst = v;
    first = false;
  } while (std::next_permutation(seq.begin(), seq.end()));
  report.avg = count ? static_cast<double>(sum / static_cast<long double>(count)) : 0.0;
  if (std::abs(report.avg - average_value(instance)) > 1e-9)
    throw std::logic_error("brute_force: enumerated average disagrees with average_value");
  return report;
}

DeltaWitness delta_u_witness(const Instance& instance, VertexId u) {
  require_brute_size(instance, "delta_u");
  const int n = instance.num_vertices();
  if (u < 0 || u >= n) throw std::invalid_argument("delta_u: vertex out of range");

  // Only the relative order of u's neighbors matters to the constraints in
  // C_u, so we enumerate orders of N(u)\{u} instead of all of V\{u}; the
  // maximum is the same and every maximizer lifts to full orderings.
  std::vector<VertexId> others = instance.neighbors_of(u);
  others.erase(std::remove(others.begin(), others.end(), u), others.end());
  const int m = static_cast<int>(others.size());

  std::vector<int> member_pos(n, -1);  // position of a neighbor within perm
  std::vector<VertexId> perm = others;

  const auto local_sum = [&](int slot) {
    // perm[j] gets rank j+1 before the slot and j+2 after; u gets slot+1
    double sum = 0.0;
    for (int ci : instance.constraints_of(u)) {
      const Constraint& c = instance.constraints()[ci];
      sum += c.payoffs[scope_pattern_index(c.scope, [&](VertexId v) -> Rank {
        if (v == u) return static_cast<Rank>(slot + 1);
        int p = member_pos[v];
        return static_cast<Rank>(p < slot ? p + 1 : p + 2);
      })];
    }
    return sum;
  };

  double best_spread = -1.0;
  std::vector<VertexId> best_perm;
  int best_hi = 0, best_lo = 0;
  do {
    for (int j = 0; j < m; ++j) member_pos[perm[j]] = j;
    double hi_val = 0.0, lo_val = 0.0;
    int hi = 0, lo = 0;
    for (int slot = 0; slot <= m; ++slot) {
      double v = local_sum(slot);
      if (slot == 0 || v > hi_val) hi_val = v, hi = slot;
      if (slot == 0 || v < lo_val) lo_val = v, lo = slot;
    }
    if (hi_val - lo_val > best_spread) {
      best_spread = hi_val - lo_val;
      best_perm = perm;
      best_hi = hi;
      best_lo = lo;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto lift = [&](int slot) {
    std::vector<VertexId> seq;
    seq.reserve(n);
    seq.insert(seq.end(), best_perm.begin(), best_perm.begin() + slot);
    seq.push_back(u);
    seq.insert(seq.end(), best_perm.begin() + slot, best_perm.end());
    std::vector<bool> is_member(n, false);
    is_member[u] = true;
    for (VertexId w : others) is_member[w] = true;
    for (VertexId v = 0; v < n; ++v)
      if (!is_member[v]) seq.push_back(v);
    return Ordering::from_sequence(seq);
  };

  DeltaWitness witness;
  witness.delta = best_spread;
  witness.plus = lift(best_hi);
  witness.minus = lift(best_lo);
  return witness;
}

double delta_u(const Instance& instance, VertexId u) { return delta_u_witness(instance, u).delta; }

PartialOrdering PartialOrdering::without(const Ordering& ordering, VertexId u) {
  PartialOrdering partial;
  partial.removed = u;
  partial.rank.resize(ordering.size());
  const Rank ur = ordering.rank[u];
  for (VertexId v = 0; v < ordering.size(); ++v)
    partial.rank[v] = v == u ? 0 : ordering.rank[v] - (ordering.rank[v] > ur ? 1 : 0);
  return partial;
}

PartialOrdering PartialOrdering::from_sequence(int n, std::span<const VertexId> seq, VertexId removed) {
  if (static_cast<int>(seq.size()) != n - 1)
    throw std::invalid_argument("partial sequence must contain n-1 vertices");
  PartialOrdering partial;
  partial.removed = removed;
  partial.rank.assign(n, 0);
  for (std::size_t pos = 0; pos < seq.size(); ++pos) {
    VertexId v = seq[pos];
    if (v < 0 || v >= n || v == removed || partial.rank[v] != 0)
      throw std::invalid_argument("partial sequence is not a permutation of the remaining vertices");
    partial.rank[v] = static_cast<Rank>(pos + 1);
  }
  return partial;
}

void sweep_insertions(const Instance& instance, const PartialOrdering& partial, VertexId u,
                      std::vector<double>& sums) {
  const int n = instance.num_vertices();
  sums.assign(n, 0.0);
  Rank other_rank[kMaxArity];
  int other_local[kMaxArity];
  double slot_payoff[kMaxArity];
  int slot_pattern[kMaxArity];
  for (int ci : instance.constraints_of(u)) {
    const Constraint& c = instance.constraints()[ci];
    const int m = c.arity();
    // scope members other than u, sorted by their rank in the partial order
    int others = 0;
    int u_local = -1;
    for (int i = 0; i < m; ++i) {
      if (c.scope[i] == u) {
        u_local = i;
        continue;
      }
      Rank r = partial.rank[c.scope[i]];
      int j = others;
      while (j > 0 && other_rank[j - 1] > r) {
        other_rank[j] = other_rank[j - 1];
        other_local[j] = other_local[j - 1];
        --j;
      }
      other_rank[j] = r;
      other_local[j] = i;
      ++others;
    }
    // payoff as a function of how many scope members precede u
    for (int slot = 0; slot <= others; ++slot) {
      int len = 0;
      for (int j = 0; j < slot; ++j) slot_pattern[len++] = other_local[j];
      slot_pattern[len++] = u_local;
      for (int j = slot; j < others; ++j) slot_pattern[len++] = other_local[j];
      slot_payoff[slot] = c.payoffs[pattern_index(std::span<const int>(slot_pattern, len))];
    }
    int slot = 0;
    for (int i = 1; i <= n; ++i) {
      while (slot < others && other_rank[slot] < i) ++slot;
      sums[i - 1] += slot_payoff[slot];
    }
  }
}

Insertion best_insertion(const Instance& instance, const PartialOrdering& partial, VertexId u) {
  const int n = instance.num_vertices();
  if (n < 1) throw std::invalid_argument("best_insertion: empty instance");
  if (u < 0 || u >= n || partial.full_size() != n || partial.rank[u] != 0)
    throw std::invalid_argument("best_insertion: partial ordering does not omit exactly u");
  {
    std::vector<bool> seen(n, false);
    for (VertexId v = 0; v < n; ++v) {
      if (v == u) continue;
      Rank r = partial.rank[v];
      if (r < 1 || r > n - 1 || seen[r - 1])
        throw std::invalid_argument("best_insertion: partial ranks are not a bijection onto [1, n-1]");
      seen[r - 1] = true;
    }
  }

  std::vector<double> sums;
  sweep_insertions(instance, partial, u, sums);
  int best = 0;
  double worst = sums[0];
  for (int i = 1; i < n; ++i) {
    if (sums[i] > sums[best]) best = i;
    if (sums[i] < worst) worst = sums[i];
  }

  // constraints not containing u keep their payoff at any insertion point
  double base = 0.0;
  for (std::size_t ci = 0; ci < instance.constraints().size(); ++ci) {
    const Constraint& c = instance.constraints()[ci];
    bool has_u = std::find(c.scope.begin(), c.scope.end(), u) != c.scope.end();
    if (!has_u)
      base += c.payoffs[scope_pattern_index(c.scope, [&](VertexId v) { return partial.rank[v]; })];
  }

  Insertion result;
  result.position = best + 1;
  result.value = base + sums[best];
  result.gain = sums[best] - worst;
  return result;
}

}  // namespace ordercsp
