#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opk/address.hpp"

namespace opk {

class Opetope;
using OpPtr = std::shared_ptr<const Opetope>;

/// An opetope as a decorated tree.  Dimension 0 is the point, dimension 1
/// the arrow; in dimension n >= 2 it is either the node-less tree on an
/// (n-2)-opetope or a finite table of node addresses (in A_{n-1}) decorated
/// by (n-1)-opetopes.  Values are immutable and shared; structural equality
/// is equality of canonical serializations.
class Opetope : public std::enable_shared_from_this<Opetope> {
 public:
  enum class Kind { point, arrow, degenerate, nodes };

  static OpPtr point();
  static OpPtr arrow();
  static OpPtr degenerate(const OpPtr& of);
  static OpPtr with_nodes(int dim, std::map<Address, OpPtr> table);

  static OpPtr corolla(const OpPtr& psi);
  static OpPtr opetopic_integer(int m);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_degenerate() const { return kind_ == Kind::degenerate; }
  bool is_corolla() const { return kind_ == Kind::nodes && table_.size() == 1; }
  const OpPtr& of() const;
  const std::map<Address, OpPtr>& table() const;

  /// Canonical compact serialization; doubles as equality/hash key.
  const std::string& key() const { return key_; }
  /// Total node weight: nodes at every level, summed recursively.  The
  /// arrow and the point weigh nothing; a node weighs 1 plus the weight of
  /// its decoration; a degenerate weighs what the opetope it repeats weighs.
  long weight() const { return weight_; }

  std::vector<Address> node_addresses() const;
  std::vector<Address> leaf_addresses() const;
  size_t node_count() const;

  OpPtr source(const Address& p) const;
  /// Decoration of the edge at `l` (a node-slot address, or [] on a
  /// degenerate opetope).
  OpPtr edge_decoration(const Address& l) const;
  OpPtr root_edge_decoration() const;

  OpPtr target() const;
  /// The readdressing: a bijection from leaf addresses to node addresses of
  /// the target, decoration-preserving.
  const std::map<Address, Address>& readdressing() const;

 private:
  Opetope() = default;
  Kind kind_ = Kind::point;
  int dim_ = 0;
  OpPtr of_;
  std::map<Address, OpPtr> table_;
  std::string key_;
  long weight_ = 0;
};

inline bool same(const OpPtr& a, const OpPtr& b) { return a->key() == b->key(); }

std::string print_opetope(const OpPtr& w);
OpPtr parse_opetope(const std::string& text);

/// Graft `t` onto the leaf `l` of `s` (same dimension >= 2).  Grafting a
/// node-less tree on either side is the identity on the other.
OpPtr graft(const OpPtr& s, const Address& l, const OpPtr& t);

/// Graft into several leaves at once; the result is order-independent.
OpPtr total_graft(const OpPtr& t, const std::map<Address, OpPtr>& assignment);

struct SubstResult {
  OpPtr result;
  /// Where each node of the host (except the replaced one) ended up.
  std::map<Address, Address> relocated;
};

/// Replace the node of `t` at `p` by the tree `u`, rewiring the leaves of
/// `u` onto the input slots of the removed node along `rewire` (a bijection
/// leaves(u) -> node addresses of source(t, p), decoration-compatible).
SubstResult substitute(const OpPtr& t, const Address& p, const OpPtr& u,
                       const std::map<Address, Address>& rewire);

struct Flattened {
  OpPtr result;
  /// (outer node, inner node) -> node of the result.
  std::map<std::pair<Address, Address>, Address> place;
  /// leaf of the outer tree -> leaf of the result.
  std::map<Address, Address> leaf_to;
};

/// Substitute every node of `nu` at once: node p is replaced by blocks[p],
/// whose leaves attach along its own readdressing.  This is the free-monad
/// multiplication on trees.
Flattened flatten(const OpPtr& nu, const std::map<Address, OpPtr>& blocks);

struct Violation {
  std::string identity;
  std::string detail;
};

/// Check the tree-closure and the four opetopic identities; returns the
/// first violation found, or nothing.
std::optional<Violation> validate(const OpPtr& w);

struct Decomp {
  OpPtr nu;
  Address leaf;
  OpPtr psi;
};

/// All ways of writing a tree with >= 2 nodes as nu grafted with a corolla
/// at a leaf (one per childless non-root node).
std::vector<Decomp> corolla_decompositions(const OpPtr& w);

/// Recompute the target by first detaching the childless node at `l`; used
/// to check that the recursion is confluent.
OpPtr target_via(const OpPtr& w, const Address& l);

/// All opetopes of the given dimension with weight() <= max_weight, ordered
/// by (weight, serialization).
std::vector<OpPtr> enumerate_opetopes(int dim, long max_weight);

/// Pattern-match `pattern` as a subtree of `host` rooted at node `at`
/// (host node at.q decorated like pattern's node q for every q); if it
/// matches, return the host with that pattern collapsed to a single node
/// decorated target(pattern), hanging branches readdressed through the
/// pattern's readdressing.  Degenerate patterns insert a fresh node instead
/// (`at` is then an edge address).  Inverse of substitution.
OpPtr unsubstitute(const OpPtr& host, const Address& at, const OpPtr& pattern);

/// The subtree of `w` rooted at the edge `e` (a node-slot address),
/// re-rooted at []; node-less when nothing sits above `e`.
OpPtr subtree_at_edge(const OpPtr& w, const Address& e);

}  // namespace opk
