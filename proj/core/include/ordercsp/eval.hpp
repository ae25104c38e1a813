#pragma once

#include <span>
#include <vector>

#include "ordercsp/model.hpp"

namespace ordercsp {

// Largest n the exhaustive oracles will enumerate (10! orderings).
inline constexpr int kBruteForceLimit = 10;

struct EvalReport {
  double opt = 0.0;
  double wst = 0.0;
  double avg = 0.0;
  Ordering argmax;
};

// val(pi, C): total payoff of all constraints under `ordering`.
double value(const Instance& instance, const Ordering& ordering);

// Expected value of a uniform random ordering. Equals the sum of per-table
// means because a uniform ordering induces a uniform relative order on every
// scope.
double average_value(const Instance& instance);

// Exact Opt/Wst/Avg by enumerating all n! orderings; argmax is the
// lexicographically first maximizing sequence. Requires n <= 10.
EvalReport brute_force(const Instance& instance);

// Maximum change in value achievable by moving only vertex u, together with
// a witnessing pair of orderings that differ only in u's position.
struct DeltaWitness {
  double delta = 0.0;
  Ordering plus;
  Ordering minus;
};

double delta_u(const Instance& instance, VertexId u);
DeltaWitness delta_u_witness(const Instance& instance, VertexId u);

// Ranks of every vertex except `removed`, which holds 0; the rest form a
// bijection onto [1, n-1].
struct PartialOrdering {
  std::vector<Rank> rank;
  VertexId removed = -1;

  int full_size() const { return static_cast<int>(rank.size()); }
  static PartialOrdering without(const Ordering& ordering, VertexId u);
  static PartialOrdering from_sequence(int n, std::span<const VertexId> seq, VertexId removed);
};

struct Insertion {
  int position = 1;      // rank the moved vertex receives, in [1, n]
  double value = 0.0;    // total instance value after the insertion
  double gain = 0.0;     // value minus the worst insertion's value
};

// Fills per-position sums of the payoffs of the constraints containing u:
// sums[i-1] is that subtotal when u is inserted at position i. Constraints
// that do not contain u are unaffected by the insertion point and are not
// evaluated. O(n + |C_u| * n) for bounded arity.
void sweep_insertions(const Instance& instance, const PartialOrdering& partial, VertexId u,
                      std::vector<double>& sums);

// Best position to insert u into `partial` (smallest index on ties).
Insertion best_insertion(const Instance& instance, const PartialOrdering& partial, VertexId u);

}  // namespace ordercsp
