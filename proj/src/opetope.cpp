#include "opk/opetope.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace opk {

namespace {

std::string table_key(const std::map<Address, OpPtr>& table) {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, dec] : table) {
    if (!first) out += ",";
    first = false;
    out += a.str() + "<-" + dec->key();
  }
  out += "}";
  return out;
}

struct TargetMemo {
  std::mutex mu;
  std::map<std::string, std::pair<OpPtr, std::map<Address, Address>>> memo;
};

TargetMemo& target_memo() {
  static TargetMemo m;
  return m;
}

}  // namespace

OpPtr Opetope::point() {
  static OpPtr p = [] {
    auto w = std::shared_ptr<Opetope>(new Opetope());
    w->kind_ = Kind::point;
    w->dim_ = 0;
    w->key_ = "pt";
    w->weight_ = 0;
    return w;
  }();
  return p;
}

OpPtr Opetope::arrow() {
  static OpPtr a = [] {
    auto w = std::shared_ptr<Opetope>(new Opetope());
    w->kind_ = Kind::arrow;
    w->dim_ = 1;
    w->key_ = "ar";
    w->weight_ = 0;
    return w;
  }();
  return a;
}

OpPtr Opetope::degenerate(const OpPtr& of) {
  auto w = std::shared_ptr<Opetope>(new Opetope());
  w->kind_ = Kind::degenerate;
  w->dim_ = of->dim() + 2;
  w->of_ = of;
  w->key_ = "degen(" + of->key() + ")";
  w->weight_ = of->weight();
  return w;
}

OpPtr Opetope::with_nodes(int dim, std::map<Address, OpPtr> table) {
  if (dim < 2) throw error("node tables exist in dimension >= 2 only");
  if (table.empty()) throw error("node table must be nonempty");
  for (const auto& [a, dec] : table) {
    if (a.dim() != dim - 1) throw error("node address dimension mismatch in table");
    if (dec->dim() != dim - 1) throw error("node decoration dimension mismatch in table");
  }
  Address root = Address::empty(dim - 1);
  if (!table.count(root)) throw error("node table lacks the root address []");
  for (const auto& [a, dec] : table) {
    if (a.is_empty()) continue;
    auto [p, q] = a.split_last();
    auto it = table.find(p);
    if (it == table.end())
      throw error("tree closure violated: " + a.str() + " has no parent node");
    auto slots = it->second->node_addresses();
    if (std::find(slots.begin(), slots.end(), q) == slots.end())
      throw error("tree closure violated: " + a.str() + " is not a slot of its parent");
  }
  auto w = std::shared_ptr<Opetope>(new Opetope());
  w->kind_ = Kind::nodes;
  w->dim_ = dim;
  w->table_ = std::move(table);
  w->key_ = table_key(w->table_);
  long wt = 0;
  for (const auto& [a, dec] : w->table_) wt += 1 + dec->weight();
  w->weight_ = wt;
  return w;
}

OpPtr Opetope::corolla(const OpPtr& psi) {
  if (psi->dim() == 0) return arrow();
  std::map<Address, OpPtr> t;
  t.emplace(Address::empty(psi->dim()), psi);
  return with_nodes(psi->dim() + 1, std::move(t));
}

OpPtr Opetope::opetopic_integer(int m) {
  if (m < 0) throw error("opetopic integers are indexed by naturals");
  if (m == 0) return degenerate(point());
  std::map<Address, OpPtr> t;
  std::vector<Address> word;
  for (int i = 0; i < m; ++i) {
    t.emplace(Address::list(1, word), arrow());
    word.push_back(Address::atom());
  }
  return with_nodes(2, std::move(t));
}

const OpPtr& Opetope::of() const {
  if (kind_ != Kind::degenerate) throw error("of() on a non-degenerate opetope");
  return of_;
}

const std::map<Address, OpPtr>& Opetope::table() const {
  if (kind_ != Kind::nodes) throw error("table() on an opetope without nodes");
  return table_;
}

std::vector<Address> Opetope::node_addresses() const {
  switch (kind_) {
    case Kind::point:
      throw error("the point has no node addresses");
    case Kind::arrow:
      return {Address::atom()};
    case Kind::degenerate:
      return {};
    case Kind::nodes: {
      std::vector<Address> out;
      out.reserve(table_.size());
      for (const auto& [a, dec] : table_) out.push_back(a);
      return out;
    }
  }
  throw error("unreachable");
}

std::vector<Address> Opetope::leaf_addresses() const {
  switch (kind_) {
    case Kind::point:
      throw error("the point has no leaf addresses");
    case Kind::arrow:
      return {};
    case Kind::degenerate:
      return {Address::empty(dim_ - 1)};
    case Kind::nodes: {
      std::vector<Address> out;
      for (const auto& [p, dec] : table_)
        for (const auto& q : dec->node_addresses()) {
          Address a = p.appended(q);
          if (!table_.count(a)) out.push_back(a);
        }
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw error("unreachable");
}

size_t Opetope::node_count() const {
  switch (kind_) {
    case Kind::point:
      return 0;
    case Kind::arrow:
      return 1;
    case Kind::degenerate:
      return 0;
    case Kind::nodes:
      return table_.size();
  }
  return 0;
}

OpPtr Opetope::source(const Address& p) const {
  switch (kind_) {
    case Kind::point:
      throw error("the point has no sources");
    case Kind::arrow:
      if (p == Address::atom()) return point();
      throw error("the arrow's only node address is *");
    case Kind::degenerate:
      throw error("a degenerate opetope has no sources");
    case Kind::nodes: {
      auto it = table_.find(p);
      if (it == table_.end()) throw error("no node at address " + p.str());
      return it->second;
    }
  }
  throw error("unreachable");
}

OpPtr Opetope::edge_decoration(const Address& l) const {
  if (kind_ == Kind::degenerate) {
    if (l.is_empty()) return of_;
    throw error("the only edge of a degenerate opetope is []");
  }
  if (kind_ != Kind::nodes) throw error("edge_decoration needs dimension >= 2");
  if (l.is_empty()) return root_edge_decoration();
  auto [p, q] = l.split_last();
  return source(p)->source(q);
}

OpPtr Opetope::root_edge_decoration() const {
  switch (kind_) {
    case Kind::point:
      throw error("the point has no edges");
    case Kind::arrow:
      return point();
    case Kind::degenerate:
      return of_;
    case Kind::nodes:
      return table_.at(Address::empty(dim_ - 1))->target();
  }
  throw error("unreachable");
}

namespace {

// Target and readdressing of nu composite with the corolla removed at a
// childless node l: t(nu o_l Y_psi) = (t nu) substituted at p_nu(l) by psi.
std::pair<OpPtr, std::map<Address, Address>> target_step(const OpPtr& whole, const OpPtr& nu,
                                                         const Address& l, const OpPtr& psi) {
  OpPtr tnu = nu->target();
  const auto& re_nu = nu->readdressing();
  Address at = re_nu.at(l);
  SubstResult sr = substitute(tnu, at, psi, psi->readdressing());
  std::map<Address, Address> re;
  for (const auto& [leaf, node] : re_nu) {
    if (leaf == l) continue;
    re.emplace(leaf, sr.relocated.at(node));
  }
  for (const auto& q : psi->node_addresses()) re.emplace(l.appended(q), concat(at, q));
  (void)whole;
  return {sr.result, std::move(re)};
}

void compute_target(const Opetope& w, OpPtr& t, std::map<Address, Address>& re) {
  switch (w.kind()) {
    case Opetope::Kind::point:
      throw error("the point has no target");
    case Opetope::Kind::arrow:
      t = Opetope::point();
      return;
    case Opetope::Kind::degenerate:
      t = Opetope::corolla(w.of());
      re.emplace(Address::empty(w.dim() - 1), Address::empty(w.dim() - 2));
      return;
    case Opetope::Kind::nodes: {
      auto self = std::const_pointer_cast<const Opetope>(w.shared_from_this());
      if (w.table().size() == 1) {
        OpPtr psi = w.table().begin()->second;
        t = psi;
        for (const auto& q : psi->node_addresses())
          re.emplace(Address::empty(w.dim() - 1).appended(q), q);
        return;
      }
      if (w.dim() == 2) {
        // Linear trees of arrows; contraction lands back on the arrow.
        t = Opetope::arrow();
        auto leaves = self->leaf_addresses();
        re.emplace(leaves.front(), Address::atom());
        return;
      }
      // Detach the lex-greatest childless node; confluence over the choice
      // is property-tested separately.
      auto decs = corolla_decompositions(self);
      const Decomp& d = decs.back();
      auto [tt, rr] = target_step(self, d.nu, d.leaf, d.psi);
      t = tt;
      re = std::move(rr);
      return;
    }
  }
}

}  // namespace

OpPtr Opetope::target() const {
  auto& tm = target_memo();
  {
    std::lock_guard<std::mutex> g(tm.mu);
    auto it = tm.memo.find(key_);
    if (it != tm.memo.end()) return it->second.first;
  }
  OpPtr t;
  std::map<Address, Address> re;
  compute_target(*this, t, re);
  std::lock_guard<std::mutex> g(tm.mu);
  auto [it, ok] = tm.memo.emplace(key_, std::make_pair(t, std::move(re)));
  return it->second.first;
}

const std::map<Address, Address>& Opetope::readdressing() const {
  target();
  auto& tm = target_memo();
  std::lock_guard<std::mutex> g(tm.mu);
  return tm.memo.at(key_).second;
}

OpPtr graft(const OpPtr& s, const Address& l, const OpPtr& t) {
  if (s->dim() != t->dim()) throw error("graft: dimension mismatch");
  if (s->dim() < 2) throw error("graft: dimension must be >= 2");
  if (s->is_degenerate()) {
    if (!l.is_empty()) throw error("graft: the only leaf of a degenerate opetope is []");
    if (!same(t->root_edge_decoration(), s->of()))
      throw error("graft: root edge decoration mismatch");
    return t;
  }
  auto leaves = s->leaf_addresses();
  if (std::find(leaves.begin(), leaves.end(), l) == leaves.end())
    throw error("graft: " + l.str() + " is not a leaf");
  if (!same(s->edge_decoration(l), t->root_edge_decoration()))
    throw error("graft: edge decoration mismatch at " + l.str());
  if (t->is_degenerate()) return s;
  auto table = s->table();
  for (const auto& [u, dec] : t->table()) table.emplace(concat(l, u), dec);
  return Opetope::with_nodes(s->dim(), std::move(table));
}

OpPtr total_graft(const OpPtr& t, const std::map<Address, OpPtr>& assignment) {
  OpPtr acc = t;
  // Order-independence is a tested property; evaluation is in address order.
  for (const auto& [l, u] : assignment) acc = graft(acc, l, u);
  return acc;
}

SubstResult substitute(const OpPtr& t, const Address& p, const OpPtr& u,
                       const std::map<Address, Address>& rewire) {
  if (t->dim() != u->dim()) throw error("substitute: dimension mismatch");
  OpPtr b = t->source(p);
  // rewire must be a decoration-compatible bijection leaves(u) -> nodes of b.
  {
    auto uleaves = u->leaf_addresses();
    auto bnodes = b->node_addresses();
    if (rewire.size() != uleaves.size()) throw error("substitute: rewire domain mismatch");
    std::set<std::string> seen;
    for (const auto& [ul, bn] : rewire) {
      if (std::find(uleaves.begin(), uleaves.end(), ul) == uleaves.end())
        throw error("substitute: rewire key " + ul.str() + " is not a leaf");
      if (std::find(bnodes.begin(), bnodes.end(), bn) == bnodes.end())
        throw error("substitute: rewire value " + bn.str() + " is not a slot");
      if (!seen.insert(bn.str()).second) throw error("substitute: rewire is not injective");
      if (!same(u->edge_decoration(ul), b->source(bn)))
        throw error("substitute: rewire not decoration-compatible at " + ul.str());
    }
    if (rewire.size() != bnodes.size()) throw error("substitute: rewire is not onto");
  }
  std::map<Address, Address> rewire_inv;
  for (const auto& [ul, bn] : rewire) rewire_inv.emplace(bn, ul);

  std::map<Address, OpPtr> table;
  std::map<Address, Address> relocated;
  for (const auto& [r, dec] : t->table()) {
    if (r == p) continue;
    if (p.is_prefix_of(r)) {
      Address rest = r.strip_prefix(p);
      auto [e, w] = rest.split_first();
      Address nr = concat(concat(p, rewire_inv.at(e)), w);
      table.emplace(nr, dec);
      relocated.emplace(r, nr);
    } else {
      table.emplace(r, dec);
      relocated.emplace(r, r);
    }
  }
  if (!u->is_degenerate())
    for (const auto& [q, dec] : u->table()) table.emplace(concat(p, q), dec);
  OpPtr result;
  if (table.empty()) {
    // t was the corolla at p and u node-less: the whole tree degenerates.
    result = u;
  } else {
    result = Opetope::with_nodes(t->dim(), std::move(table));
  }
  return {result, std::move(relocated)};
}

Flattened flatten(const OpPtr& nu, const std::map<Address, OpPtr>& blocks) {
  Flattened out;
  if (nu->is_degenerate()) {
    if (!blocks.empty()) throw error("flatten: degenerate tree takes no blocks");
    out.result = nu;
    out.leaf_to.emplace(Address::empty(nu->dim() - 1), Address::empty(nu->dim() - 1));
    return out;
  }
  if (nu->kind() != Opetope::Kind::nodes) throw error("flatten needs dimension >= 2");
  if (blocks.size() != nu->table().size()) throw error("flatten: one block per node required");
  if (nu->table().size() == 1) {
    const auto& [root, psi] = *nu->table().begin();
    OpPtr u = blocks.at(root);
    if (!same(u->target(), psi)) throw error("flatten: block target mismatch at []");
    out.result = u;
    if (!u->is_degenerate())
      for (const auto& [q, dec] : u->table()) out.place.emplace(std::make_pair(root, q), q);
    std::map<Address, Address> re_inv;
    for (const auto& [leaf, node] : u->readdressing()) re_inv.emplace(node, leaf);
    for (const auto& q : psi->node_addresses()) out.leaf_to.emplace(root.appended(q), re_inv.at(q));
    return out;
  }
  auto decs = corolla_decompositions(nu);
  const Decomp& d = decs.back();
  auto rest_blocks = blocks;
  OpPtr block = rest_blocks.at(d.leaf);
  rest_blocks.erase(d.leaf);
  if (!same(block->target(), d.psi)) throw error("flatten: block target mismatch at " + d.leaf.str());
  Flattened inner = flatten(d.nu, rest_blocks);
  Address g = inner.leaf_to.at(d.leaf);
  out.result = graft(inner.result, g, block);
  out.place = std::move(inner.place);
  if (!block->is_degenerate())
    for (const auto& [q, dec] : block->table())
      out.place.emplace(std::make_pair(d.leaf, q), concat(g, q));
  std::map<Address, Address> re_inv;
  for (const auto& [leaf, node] : block->readdressing()) re_inv.emplace(node, leaf);
  for (const auto& [m, pos] : inner.leaf_to)
    if (!(m == d.leaf)) out.leaf_to.emplace(m, pos);
  for (const auto& q : d.psi->node_addresses()) {
    Address bl = re_inv.at(q);
    out.leaf_to.emplace(d.leaf.appended(q), bl.is_empty() && block->is_degenerate()
                                                ? g
                                                : concat(g, bl));
  }
  return out;
}

std::vector<Decomp> corolla_decompositions(const OpPtr& w) {
  std::vector<Decomp> out;
  if (w->kind() != Opetope::Kind::nodes || w->table().size() < 2) return out;
  for (const auto& [l, psi] : w->table()) {
    bool childless = true;
    for (const auto& [r, dec] : w->table())
      if (!(r == l) && l.is_prefix_of(r)) {
        childless = false;
        break;
      }
    if (!childless || l.is_empty()) continue;
    auto table = w->table();
    table.erase(l);
    out.push_back({Opetope::with_nodes(w->dim(), std::move(table)), l, psi});
  }
  return out;
}

OpPtr target_via(const OpPtr& w, const Address& l) {
  auto decs = corolla_decompositions(w);
  for (const auto& d : decs)
    if (d.leaf == l) return target_step(w, d.nu, d.leaf, d.psi).first;
  throw error("target_via: " + l.str() + " is not a detachable node");
}

namespace {

std::optional<Violation> validate_impl(const OpPtr& w, std::set<std::string>& seen) {
  if (seen.count(w->key())) return std::nullopt;
  switch (w->kind()) {
    case Opetope::Kind::point:
    case Opetope::Kind::arrow:
      break;
    case Opetope::Kind::degenerate: {
      if (auto v = validate_impl(w->of(), seen)) return v;
      OpPtr t = w->target();
      if (!same(t->source(Address::empty(w->dim() - 2)), t->target()))
        return Violation{"Degen", "s_[] t != t t on " + w->key()};
      break;
    }
    case Opetope::Kind::nodes: {
      for (const auto& [p, dec] : w->table())
        if (auto v = validate_impl(dec, seen)) return v;
      // Inner edge: the target of a node matches the slot it hangs from.
      for (const auto& [r, dec] : w->table()) {
        if (r.is_empty()) continue;
        auto [p, q] = r.split_last();
        OpPtr above = dec->target();
        OpPtr below = w->source(p)->source(q);
        if (!same(above, below))
          return Violation{"Inner", "t s_" + r.str() + " != s_" + q.str() + " s_" + p.str() +
                                        " on " + w->key()};
      }
      OpPtr t, tt;
      std::map<Address, Address> re;
      try {
        t = w->target();
        re = w->readdressing();
        tt = t->target();
      } catch (const error& e) {
        return Violation{"Inner", std::string("target undefined: ") + e.what()};
      }
      if (w->dim() >= 2) {
        OpPtr lhs = w->source(Address::empty(w->dim() - 1))->target();
        if (!same(lhs, tt)) return Violation{"Glob1", "t s_[] != t t on " + w->key()};
      }
      auto leaves = w->leaf_addresses();
      if (re.size() != leaves.size())
        return Violation{"Glob2", "readdressing is not defined on all leaves of " + w->key()};
      std::set<std::string> hit;
      for (const auto& m : leaves) {
        auto it = re.find(m);
        if (it == re.end())
          return Violation{"Glob2", "readdressing misses leaf " + m.str() + " on " + w->key()};
        if (!hit.insert(it->second.str()).second)
          return Violation{"Glob2", "readdressing is not injective on " + w->key()};
        auto [p, q] = m.split_last();
        OpPtr lhs = w->source(p)->source(q);
        OpPtr rhs = t->source(it->second);
        if (!same(lhs, rhs))
          return Violation{"Glob2", "s_" + q.str() + " s_" + p.str() + " != s_" +
                                        it->second.str() + " t at leaf " + m.str() + " on " +
                                        w->key()};
      }
      if (hit.size() != t->node_addresses().size())
        return Violation{"Glob2", "readdressing is not onto the target's nodes of " + w->key()};
      break;
    }
  }
  seen.insert(w->key());
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const OpPtr& w) {
  std::set<std::string> seen;
  try {
    return validate_impl(w, seen);
  } catch (const error& e) {
    return Violation{"structure", e.what()};
  }
}

std::vector<OpPtr> enumerate_opetopes(int dim, long max_weight) {
  if (dim < 0) throw error("dimension must be >= 0");
  std::vector<OpPtr> out;
  if (max_weight < 0) return out;
  if (dim == 0) return {Opetope::point()};
  if (dim == 1) return {Opetope::arrow()};
  for (const auto& phi : enumerate_opetopes(dim - 2, max_weight))
    out.push_back(Opetope::degenerate(phi));
  auto pool = enumerate_opetopes(dim - 1, max_weight - 1);
  std::set<std::string> found;
  std::vector<OpPtr> work;
  for (const auto& psi : pool) {
    if (1 + psi->weight() > max_weight) continue;
    OpPtr c = Opetope::corolla(psi);
    if (found.insert(c->key()).second) work.push_back(c);
  }
  for (size_t i = 0; i < work.size(); ++i) {
    OpPtr t = work[i];
    for (const auto& l : t->leaf_addresses()) {
      OpPtr e = t->edge_decoration(l);
      for (const auto& psi : pool) {
        if (t->weight() + 1 + psi->weight() > max_weight) continue;
        if (!same(psi->target(), e)) continue;
        OpPtr g = graft(t, l, Opetope::corolla(psi));
        if (found.insert(g->key()).second) work.push_back(g);
      }
    }
  }
  for (auto& t : work) out.push_back(std::move(t));
  std::sort(out.begin(), out.end(), [](const OpPtr& a, const OpPtr& b) {
    if (a->weight() != b->weight()) return a->weight() < b->weight();
    return a->key() < b->key();
  });
  return out;
}

OpPtr unsubstitute(const OpPtr& host, const Address& at, const OpPtr& pattern) {
  if (host->dim() != pattern->dim()) throw error("unsubstitute: dimension mismatch");
  int d = host->dim();
  if (pattern->is_degenerate()) {
    // Insert a fresh node decorated with the corolla on the repeated opetope.
    OpPtr phi = pattern->of();
    if (!same(host->edge_decoration(at), phi))
      throw error("unsubstitute: edge decoration mismatch at " + at.str());
    OpPtr b = Opetope::corolla(phi);
    std::map<Address, OpPtr> table;
    Address slot = Address::empty(d - 2);
    if (host->kind() == Opetope::Kind::nodes)
      for (const auto& [r, dec] : host->table()) {
        if (at.is_prefix_of(r))
          table.emplace(concat(at.appended(slot), r.strip_prefix(at)), dec);
        else
          table.emplace(r, dec);
      }
    table.emplace(at, b);
    return Opetope::with_nodes(d, std::move(table));
  }
  if (host->kind() != Opetope::Kind::nodes)
    throw error("unsubstitute: node-less host cannot contain the pattern");
  auto pnodes = pattern->node_addresses();
  std::set<std::string> pset;
  for (const auto& q : pnodes) {
    Address h = concat(at, q);
    auto it = host->table().find(h);
    if (it == host->table().end())
      throw error("unsubstitute: host lacks a node at " + h.str());
    if (!same(it->second, pattern->source(q)))
      throw error("unsubstitute: decoration mismatch at " + h.str());
    pset.insert(h.str());
  }
  OpPtr tW = pattern->target();
  const auto& reW = pattern->readdressing();
  auto pleaves = pattern->leaf_addresses();
  std::map<Address, OpPtr> table;
  for (const auto& [r, dec] : host->table()) {
    if (pset.count(r.str())) continue;
    if (at.is_prefix_of(r)) {
      Address rest = r.strip_prefix(at);
      const Address* hit = nullptr;
      for (const auto& l : pleaves)
        if (l.is_prefix_of(rest)) {
          hit = &l;
          break;
        }
      if (!hit) throw error("unsubstitute: node " + r.str() + " does not extend a pattern leaf");
      table.emplace(concat(at.appended(reW.at(*hit)), rest.strip_prefix(*hit)), dec);
    } else {
      table.emplace(r, dec);
    }
  }
  table.emplace(at, tW);
  return Opetope::with_nodes(d, std::move(table));
}

OpPtr subtree_at_edge(const OpPtr& w, const Address& e) {
  std::map<Address, OpPtr> table;
  for (const auto& [r, dec] : w->table())
    if (e.is_prefix_of(r)) table.emplace(r.strip_prefix(e), dec);
  if (table.empty()) return Opetope::degenerate(w->edge_decoration(e));
  return Opetope::with_nodes(w->dim(), std::move(table));
}

namespace {

struct OpCursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool lit(const std::string& kw) {
    skip_ws();
    if (s.compare(i, kw.size(), kw) == 0) {
      i += kw.size();
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    if (i >= s.size()) throw parse_error("unexpected end of opetope literal");
    return s[i];
  }
  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(i));
    ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

std::string scan_address_token(OpCursor& c) {
  char ch = c.peek();
  if (ch == '*') {
    ++c.i;
    return "*";
  }
  if (ch != '[') throw parse_error("expected an address at offset " + std::to_string(c.i));
  size_t start = c.i;
  int depth = 0;
  while (c.i < c.s.size()) {
    char x = c.s[c.i];
    if (x == '[') ++depth;
    if (x == ']') {
      --depth;
      if (depth == 0) {
        ++c.i;
        return c.s.substr(start, c.i - start);
      }
    }
    ++c.i;
  }
  throw parse_error("unbalanced brackets in address at offset " + std::to_string(start));
}

OpPtr parse_op(OpCursor& c) {
  if (c.lit("pt")) return Opetope::point();
  if (c.lit("ar")) return Opetope::arrow();
  if (c.lit("degen(")) {
    OpPtr of = parse_op(c);
    c.expect(')');
    return Opetope::degenerate(of);
  }
  c.expect('{');
  std::map<Address, OpPtr> table;
  while (true) {
    std::string atext = scan_address_token(c);
    if (!c.lit("<-")) throw parse_error("expected '<-' at offset " + std::to_string(c.i));
    OpPtr dec = parse_op(c);
    Address a = Address::parse(atext, dec->dim());
    if (!table.emplace(a, dec).second)
      throw parse_error("duplicate node address " + a.str());
    char ch = c.peek();
    if (ch == ',') {
      ++c.i;
      continue;
    }
    c.expect('}');
    break;
  }
  int dim = table.begin()->second->dim() + 1;
  return Opetope::with_nodes(dim, std::move(table));
}

}  // namespace

OpPtr parse_opetope(const std::string& text) {
  OpCursor c{text};
  OpPtr w = parse_op(c);
  if (!c.done()) throw parse_error("trailing input after opetope at offset " + std::to_string(c.i));
  return w;
}

std::string print_opetope(const OpPtr& w) {
  switch (w->kind()) {
    case Opetope::Kind::point:
      return "pt";
    case Opetope::Kind::arrow:
      return "ar";
    case Opetope::Kind::degenerate:
      return "degen(" + print_opetope(w->of()) + ")";
    case Opetope::Kind::nodes: {
      std::string out = "{ ";
      bool first = true;
      for (const auto& [a, dec] : w->table()) {
        if (!first) out += ", ";
        first = false;
        out += a.str() + " <- " + print_opetope(dec);
      }
      out += " }";
      return out;
    }
  }
  throw error("unreachable");
}

}  // namespace opk
