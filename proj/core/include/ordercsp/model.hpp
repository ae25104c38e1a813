#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordercsp {

using VertexId = std::int32_t;
using Rank = std::int32_t;

// Largest supported constraint arity. Payoff tables are dense over the k'!
// relative orders, so anything past 8 is impractical by construction.
inline constexpr int kMaxArity = 8;

inline constexpr std::int64_t kFactorial[kMaxArity + 1] = {1,    1,    2,     6,     24,
                                                           120,  720,  5040,  40320};

// Raised on malformed instance files or invariant violations during
// construction. The message carries the offending constraint index.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exact oracle is asked for more work than its guard allows
// (brute force over n > 10, Fourier tables over more than 20 bits, ...).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An ordering assigns each vertex a rank in [1, n]; rank is a bijection.
struct Ordering {
  std::vector<Rank> rank;

  int size() const { return static_cast<int>(rank.size()); }

  static Ordering identity(int n);
  // seq[i] is the vertex at position i+1.
  static Ordering from_sequence(std::span<const VertexId> seq);
  std::vector<VertexId> sequence() const;
  bool is_valid() const;
};

// Scope-local indices listed in ascending rank. For scope (u, v, w) under an
// ordering that places w first, then u, then v, the pattern is (2, 0, 1).
struct RelativeOrder {
  std::vector<int> pattern;

  bool operator==(const RelativeOrder&) const = default;
};

// Lexicographic rank of a permutation of {0..m-1} and its inverse. These
// index payoff tables; rank 0 is the identity pattern.
int pattern_index(std::span<const int> pattern);
std::vector<int> pattern_from_index(int index, int m);
std::string pattern_key(std::span<const int> pattern);

struct Constraint {
  std::vector<VertexId> scope;   // <= kMaxArity pairwise distinct vertices
  std::vector<double> payoffs;   // arity()! entries indexed by pattern_index

  int arity() const { return static_cast<int>(scope.size()); }
  double payoff(const RelativeOrder& order) const { return payoffs[pattern_index(order.pattern)]; }
  double mean_payoff() const;
};

// Payoff 1 iff u precedes v.
Constraint mas_constraint(VertexId u, VertexId v);
// Payoff 1 iff v lies between u and w.
Constraint betweenness_constraint(VertexId u, VertexId v, VertexId w);

// An immutable instance: vertices [0, n), constraints, and the derived
// occurrence bound B and arity k. Construction validates everything, so a
// live Instance can be shared across threads freely.
class Instance {
 public:
  Instance() = default;
  Instance(int n, std::vector<Constraint> constraints);

  int num_vertices() const { return n_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int occurrence_bound() const { return occurrence_bound_; }  // B
  int arity() const { return arity_; }                        // k
  // Indices of the constraints whose scope contains v.
  const std::vector<int>& constraints_of(VertexId v) const { return by_vertex_[v]; }
  // v plus every vertex sharing a constraint with v, sorted ascending.
  std::vector<VertexId> neighbors_of(VertexId v) const;

 private:
  int n_ = 0;
  std::vector<Constraint> constraints_;
  int occurrence_bound_ = 0;
  int arity_ = 0;
  std::vector<std::vector<int>> by_vertex_;
};

// Pattern of scope-local indices sorted by ascending rank in `ordering`.
RelativeOrder relative_order(const Ordering& ordering, std::span<const VertexId> scope);

// Instance file format: JSON object {"n": int, "constraints": [...]} where
// each constraint is {"scope": [ids], "payoffs": {"0,1": x, ...}}; omitted
// pattern keys default to payoff 0.
Instance parse_instance(const std::string& text);
// Emits every pattern key explicitly, in lexicographic pattern order.
std::string serialize_instance(const Instance& instance);

}  // namespace ordercsp
