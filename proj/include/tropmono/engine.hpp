#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropmono/builders.hpp"
#include "tropmono/certify.hpp"
#include "tropmono/graphs.hpp"
#include "tropmono/homology.hpp"
#include "tropmono/io.hpp"

namespace tropmono {

enum class Flavor { Geometric = 0, Homological = 1 };
std::string to_string(Flavor f);

// Single: tau_loop^exponent is in the image (exponent > 0).
// Composite: the product of tau_s^m(s) over the graph is in the image.
// Generates: a Humphries family is in the image, hence everything.
struct Fact {
  enum Shape { Single = 0, Composite = 1, Generates = 2 };
  Flavor flavor = Flavor::Geometric;
  Shape shape = Single;
  Loop loop;
  i64 exponent = 0;
  WeightedGraph graph;
  bool operator==(const Fact&) const = default;
};
json to_json(const Fact& f);
Fact fact_from_json(const json& j);

struct Node {
  std::string rule;
  json params;
  std::vector<int> premises;
  Fact conclusion;
  std::uint64_t digest = 0;
};

// Thrown when a rule precondition fails; the message starts with the rule name.
struct RuleError : CertificationFailure {
  using CertificationFailure::CertificationFailure;
};

// Rule applications. Every rule recomputes its conclusion from the premises and
// parameters alone, so a certificate can be replayed without the engine's state.
class Engine {
 public:
  explicit Engine(const Polygon& poly);

  const Polygon& polygon() const { return poly_; }
  const IsotopyClassifier& classifier() const { return iso_; }
  const SurfaceModel& surface() const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(id); }
  const Fact& fact(int id) const { return nodes_.at(id).conclusion; }

  int axiom_acycle(Pt v);                                                   // R1
  int axiom_rea(const AdmissibilityCertificate& cert);                      // R2
  int chase(int composite, Pt v);                                           // R3
  int absorb(int composite, int single, i64 times);                         // composite * tau^{-times*k}
  int bridge_transfer(int single, const Seg& target);                       // R4
  int gcd_combine(int a, int b);                                            // R5
  int chain_rule_square(int s1, int v1, int s2, const Seg& sigma);          // R6
  int project(int geometric);
  int merge(int composite, const Seg& from, const Seg& to);                 // same isotopy class
  int collapse(int composite);                                              // one class left
  int power(int composite, i64 k);
  int humphries(const Snake& snake, const std::vector<int>& premises);

  // Best known fact for the isotopy class of the loop (smallest exponent).
  std::optional<int> best(const Loop& l, Flavor f) const;
  i64 exponent(const Loop& l, Flavor f) const;  // 0 when unknown
  // Fact for exactly this loop with exponent dividing `divides` (0: any), using
  // transfer and projection as needed. Homological only when allowed.
  std::optional<int> obtain(const Loop& l, i64 divides, bool allow_homological);

  // Absorb known edges, merge, chase and collapse until stuck. Returns the last composite.
  int reduce(int composite, bool allow_homological);

  struct Mark {
    size_t nodes;
    std::map<std::pair<LoopKey, int>, int> store;
  };
  Mark mark() const { return {nodes_.size(), store_}; }
  void rollback(const Mark& m);

  // All nodes, or the ancestors of `root` renumbered from 0.
  json certificate(std::optional<int> root = std::nullopt) const;

 private:
  friend bool replay_certificate(const json&, std::string*);
  int add(Node n);
  void offer(int id);
  Fact conclude(const std::string& rule, const json& params, const std::vector<int>& premises) const;

  Polygon poly_;
  IsotopyClassifier iso_;
  mutable std::shared_ptr<SurfaceModel> surface_;
  std::vector<Node> nodes_;
  std::map<std::uint64_t, int> by_digest_;
  std::map<std::pair<LoopKey, int>, int> store_;  // (key, flavor) -> node
};

// FNV-1a over rule, parameters, premise digests and conclusion.
std::uint64_t node_digest(const std::string& rule, const json& params, const std::vector<std::uint64_t>& premises,
                          const Fact& conclusion);

// Re-derives every node of a certificate document; false with a reason on the first mismatch.
bool replay_certificate(const json& cert, std::string* why = nullptr);

}  // namespace tropmono
