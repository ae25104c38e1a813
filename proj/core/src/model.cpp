#include "ordercsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace ordercsp {

namespace {

std::string at_constraint(int constraint_index) {
  return "constraint " + std::to_string(constraint_index) + ": ";
}

}  // namespace

Ordering Ordering::identity(int n) {
  Ordering o;
  o.rank.resize(n);
  std::iota(o.rank.begin(), o.rank.end(), 1);
  return o;
}

Ordering Ordering::from_sequence(std::span<const VertexId> seq) {
  Ordering o;
  o.rank.assign(seq.size(), 0);
  for (std::size_t pos = 0; pos < seq.size(); ++pos) {
    VertexId v = seq[pos];
    if (v < 0 || static_cast<std::size_t>(v) >= seq.size() || o.rank[v] != 0)
      throw std::invalid_argument("sequence is not a permutation of the vertex set");
    o.rank[v] = static_cast<Rank>(pos + 1);
  }
  return o;
}

std::vector<VertexId> Ordering::sequence() const {
  std::vector<VertexId> seq(rank.size());
  for (VertexId v = 0; v < size(); ++v) seq[rank[v] - 1] = v;
  return seq;
}

bool Ordering::is_valid() const {
  std::vector<bool> seen(rank.size(), false);
  for (Rank r : rank) {
    if (r < 1 || r > size() || seen[r - 1]) return false;
    seen[r - 1] = true;
  }
  return true;
}

int pattern_index(std::span<const int> pattern) {
  const int m = static_cast<int>(pattern.size());
  int index = 0;
  for (int i = 0; i < m; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < m; ++j)
      if (pattern[j] < pattern[i]) ++smaller_after;
    index += smaller_after * static_cast<int>(kFactorial[m - 1 - i]);
  }
  return index;
}

std::vector<int> pattern_from_index(int index, int m) {
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> pattern;
  pattern.reserve(m);
  for (int i = m - 1; i >= 0; --i) {
    int f = static_cast<int>(kFactorial[i]);
    int pick = index / f;
    index %= f;
    pattern.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  return pattern;
}

std::string pattern_key(std::span<const int> pattern) {
  std::string key;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(pattern[i]);
  }
  return key;
}

double Constraint::mean_payoff() const {
  double sum = 0.0;
  for (double p : payoffs) sum += p;
  return payoffs.empty() ? 0.0 : sum / static_cast<double>(payoffs.size());
}

Constraint mas_constraint(VertexId u, VertexId v) {
  if (u == v) throw std::invalid_argument("mas_constraint: u and v must differ");
  Constraint c;
  c.scope = {u, v};
  c.payoffs = {1.0, 0.0};  // pattern (0,1) means u before v
  return c;
}

Constraint betweenness_constraint(VertexId u, VertexId v, VertexId w) {
  if (u == v || u == w || v == w)
    throw std::invalid_argument("betweenness_constraint: vertices must be pairwise distinct");
  Constraint c;
  c.scope = {u, v, w};
  c.payoffs.assign(6, 0.0);
  // v (scope-local 1) must land in the middle: patterns (0,1,2) and (2,1,0).
  c.payoffs[pattern_index(std::vector<int>{0, 1, 2})] = 1.0;
  c.payoffs[pattern_index(std::vector<int>{2, 1, 0})] = 1.0;
  return c;
}

Instance::Instance(int n, std::vector<Constraint> constraints)
    : n_(n), constraints_(std::move(constraints)) {
  if (n_ < 0) throw ParseError("vertex count must be non-negative");
  by_vertex_.assign(n_, {});
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
    const Constraint& c = constraints_[ci];
    const int m = c.arity();
    if (m < 1) throw ParseError(at_constraint(ci) + "empty scope");
    if (m > kMaxArity)
      throw ParseError(at_constraint(ci) + "scope size " + std::to_string(m) + " exceeds the supported arity " +
                       std::to_string(kMaxArity));
    for (int i = 0; i < m; ++i) {
      VertexId v = c.scope[i];
      if (v < 0 || v >= n_)
        throw ParseError(at_constraint(ci) + "vertex id " + std::to_string(v) + " out of range [0, " +
                         std::to_string(n_) + ")");
      for (int j = i + 1; j < m; ++j)
        if (c.scope[j] == v) throw ParseError(at_constraint(ci) + "duplicate vertex in scope");
    }
    if (static_cast<std::int64_t>(c.payoffs.size()) != kFactorial[m])
      throw ParseError(at_constraint(ci) + "payoff table has " + std::to_string(c.payoffs.size()) +
                       " entries, expected " + std::to_string(kFactorial[m]));
    for (double p : c.payoffs) {
      if (!std::isfinite(p)) throw ParseError(at_constraint(ci) + "payoff is not finite");
      if (p < 0.0) throw ParseError(at_constraint(ci) + "negative payoff");
    }
    for (VertexId v : c.scope) by_vertex_[v].push_back(static_cast<int>(ci));
    arity_ = std::max(arity_, m);
  }
  for (VertexId v = 0; v < n_; ++v)
    occurrence_bound_ = std::max(occurrence_bound_, static_cast<int>(by_vertex_[v].size()));
}

std::vector<VertexId> Instance::neighbors_of(VertexId v) const {
  std::vector<VertexId> out;
  out.push_back(v);
  for (int ci : by_vertex_[v])
    for (VertexId w : constraints_[ci].scope) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RelativeOrder relative_order(const Ordering& ordering, std::span<const VertexId> scope) {
  const int n = ordering.size();
  RelativeOrder out;
  out.pattern.resize(scope.size());
  std::iota(out.pattern.begin(), out.pattern.end(), 0);
  for (std::size_t i = 0; i < scope.size(); ++i) {
    VertexId v = scope[i];
    if (v < 0 || v >= n) throw std::invalid_argument("relative_order: scope vertex out of range");
    for (std::size_t j = i + 1; j < scope.size(); ++j)
      if (scope[j] == v) throw std::invalid_argument("relative_order: duplicate vertex in scope");
  }
  std::sort(out.pattern.begin(), out.pattern.end(),
            [&](int a, int b) { return ordering.rank[scope[a]] < ordering.rank[scope[b]]; });
  return out;
}

namespace {

// Parses a "2,0,1" style key into a permutation of {0..m-1}; returns false on
// anything malformed.
bool parse_pattern_key(const std::string& key, int m, std::vector<int>& pattern) {
  pattern.clear();
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t comma = key.find(',', pos);
    std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
    pattern.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == key.size()) return false;  // trailing comma
  }
  if (static_cast<int>(pattern.size()) != m) return false;
  std::vector<bool> seen(m, false);
  for (int x : pattern) {
    if (x < 0 || x >= m || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("constraints"))
    throw ParseError("instance must be an object with fields 'n' and 'constraints'");
  if (!doc["n"].is_number_integer()) throw ParseError("'n' must be an integer");
  const int n = doc["n"].get<int>();
  if (!doc["constraints"].is_array()) throw ParseError("'constraints' must be an array");

  std::vector<Constraint> constraints;
  std::vector<int> pattern;
  int ci = 0;
  for (const auto& jc : doc["constraints"]) {
    if (!jc.is_object() || !jc.contains("scope"))
      throw ParseError(at_constraint(ci) + "must be an object with a 'scope'");
    Constraint c;
    for (const auto& jv : jc["scope"]) {
      if (!jv.is_number_integer()) throw ParseError(at_constraint(ci) + "scope entries must be integers");
      c.scope.push_back(jv.get<VertexId>());
    }
    const int m = c.arity();
    if (m < 1) throw ParseError(at_constraint(ci) + "empty scope");
    if (m > kMaxArity)
      throw ParseError(at_constraint(ci) + "scope size " + std::to_string(m) + " exceeds the supported arity " +
                       std::to_string(kMaxArity));
    c.payoffs.assign(kFactorial[m], 0.0);
    if (jc.contains("payoffs")) {
      if (!jc["payoffs"].is_object()) throw ParseError(at_constraint(ci) + "'payoffs' must be an object");
      for (const auto& [key, jval] : jc["payoffs"].items()) {
        if (!parse_pattern_key(key, m, pattern))
          throw ParseError(at_constraint(ci) + "payoff key '" + key + "' is not a permutation of 0.." +
                           std::to_string(m - 1) + " matching the scope size");
        if (!jval.is_number()) throw ParseError(at_constraint(ci) + "payoff values must be numbers");
        c.payoffs[pattern_index(pattern)] = jval.get<double>();
      }
    }
    constraints.push_back(std::move(c));
    ++ci;
  }
  return Instance(n, std::move(constraints));  // full validation happens here
}

std::string serialize_instance(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.num_vertices();
  doc["constraints"] = nlohmann::ordered_json::array();
  for (const Constraint& c : instance.constraints()) {
    nlohmann::ordered_json jc;
    jc["scope"] = c.scope;
    nlohmann::ordered_json payoffs = nlohmann::ordered_json::object();
    const int m = c.arity();
    for (int idx = 0; idx < kFactorial[m]; ++idx)
      payoffs[pattern_key(pattern_from_index(idx, m))] = c.payoffs[idx];
    jc["payoffs"] = std::move(payoffs);
    doc["constraints"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ordercsp
