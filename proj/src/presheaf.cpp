#include "opk/presheaf.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace opk {

std::vector<FaceGen> face_generators(const OpPtr& w) {
  std::vector<FaceGen> out;
  if (w->dim() == 0) return out;
  out.push_back(FaceGen::target());
  if (w->kind() != Opetope::Kind::degenerate)
    for (const auto& p : w->node_addresses()) out.push_back(FaceGen::source(p));
  return out;
}

OpPtr face_of(const OpPtr& w, const FaceGen& g) {
  return g.tgt ? w->target() : w->source(g.addr);
}

std::string Presheaf::akey(const std::string& shape, const std::string& cell, const FaceGen& g) {
  return shape + "|" + cell + "|" + g.str();
}

void Presheaf::add_cell(const OpPtr& shape, const std::string& name) {
  if (!in_window(shape->dim()))
    throw error("add_cell: shape dimension " + std::to_string(shape->dim()) + " outside window");
  shapes_.emplace(shape->key(), shape);
  auto& v = cells_[shape->key()];
  auto it = std::lower_bound(v.begin(), v.end(), name);
  if (it != v.end() && *it == name) throw error("duplicate cell name " + name);
  v.insert(it, name);
}

void Presheaf::set_action(const OpPtr& shape, const std::string& cell, const FaceGen& g,
                          const std::string& value) {
  if (!has_cell(shape, cell)) throw error("set_action: unknown cell " + cell);
  OpPtr f = face_of(shape, g);
  if (!in_window(f->dim())) throw error("set_action: face outside window");
  if (!has_cell(f, value)) throw error("set_action: unknown value cell " + value);
  action_[akey(shape->key(), cell, g)] = value;
}

const std::string& Presheaf::action(const OpPtr& shape, const std::string& cell,
                                    const FaceGen& g) const {
  auto it = action_.find(akey(shape->key(), cell, g));
  if (it == action_.end())
    throw error("missing action " + g.str() + " on cell " + cell + " of shape " + shape->key());
  return it->second;
}

std::string Presheaf::act_path(const OpPtr& shape, const std::string& cell,
                               const std::vector<FaceGen>& path) const {
  OpPtr s = shape;
  std::string c = cell;
  for (const auto& g : path) {
    c = action(s, c, g);
    s = face_of(s, g);
  }
  return c;
}

bool Presheaf::has_cell(const OpPtr& shape, const std::string& name) const {
  auto it = cells_.find(shape->key());
  if (it == cells_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), name);
}

const std::vector<std::string>& Presheaf::cells(const OpPtr& shape) const {
  static const std::vector<std::string> none;
  auto it = cells_.find(shape->key());
  return it == cells_.end() ? none : it->second;
}

std::vector<OpPtr> Presheaf::shapes() const {
  std::vector<OpPtr> out;
  for (const auto& [k, s] : shapes_) out.push_back(s);
  return out;
}

std::vector<OpPtr> Presheaf::shapes_of_dim(int d) const {
  std::vector<OpPtr> out;
  for (const auto& [k, s] : shapes_)
    if (s->dim() == d) out.push_back(s);
  return out;
}

size_t Presheaf::total_cells() const {
  size_t n = 0;
  for (const auto& [k, v] : cells_) n += v.size();
  return n;
}

std::optional<std::string> Presheaf::functoriality_offense() const {
  for (const auto& [k, shape] : shapes_) {
    int d = shape->dim();
    for (const auto& cell : cells(shape)) {
      // Totality first: every in-window face must act.
      if (d - 1 >= low_)
        for (const auto& g : face_generators(shape))
          if (!action_.count(akey(k, cell, g)))
            return "missing action " + g.str() + " on " + cell + " : " + k;
      if (d - 2 < low_) continue;
      if (shape->kind() == Opetope::Kind::degenerate) {
        Address slot = Address::empty(d - 2);
        auto lhs = act_path(shape, cell, {FaceGen::target(), FaceGen::target()});
        auto rhs = act_path(shape, cell, {FaceGen::target(), FaceGen::source(slot)});
        if (lhs != rhs) return "Degen square fails on " + cell + " : " + k;
        continue;
      }
      if (shape->kind() != Opetope::Kind::nodes) continue;
      {
        auto lhs = act_path(shape, cell, {FaceGen::target(), FaceGen::target()});
        auto rhs =
            act_path(shape, cell, {FaceGen::source(Address::empty(d - 1)), FaceGen::target()});
        if (lhs != rhs) return "Glob1 square fails on " + cell + " : " + k;
      }
      for (const auto& [r, dec] : shape->table()) {
        if (r.is_empty()) continue;
        auto [p, q] = r.split_last();
        auto lhs = act_path(shape, cell, {FaceGen::source(r), FaceGen::target()});
        auto rhs = act_path(shape, cell, {FaceGen::source(p), FaceGen::source(q)});
        if (lhs != rhs)
          return "Inner square fails at " + r.str() + " on " + cell + " : " + k;
      }
      const auto& re = shape->readdressing();
      for (const auto& m : shape->leaf_addresses()) {
        auto [p, q] = m.split_last();
        auto lhs = act_path(shape, cell, {FaceGen::source(p), FaceGen::source(q)});
        auto rhs = act_path(shape, cell, {FaceGen::target(), FaceGen::source(re.at(m))});
        if (lhs != rhs)
          return "Glob2 square fails at leaf " + m.str() + " on " + cell + " : " + k;
      }
    }
  }
  return std::nullopt;
}

Presheaf Presheaf::truncated(int low, int high) const {
  Presheaf out(low, high);
  for (const auto& [k, shape] : shapes_) {
    if (!out.in_window(shape->dim())) continue;
    for (const auto& cell : cells(shape)) out.add_cell(shape, cell);
  }
  for (const auto& [k, shape] : shapes_) {
    if (!out.in_window(shape->dim()) || shape->dim() - 1 < low) continue;
    for (const auto& cell : cells(shape))
      for (const auto& g : face_generators(shape)) {
        auto it = action_.find(akey(k, cell, g));
        if (it != action_.end()) out.set_action(shape, cell, g, it->second);
      }
  }
  return out;
}

std::string Presheaf::serialize() const {
  std::ostringstream os;
  os << "[" << low_ << "," << high_ << "]";
  for (const auto& [k, v] : cells_) {
    os << k << ":";
    for (const auto& c : v) os << c << ",";
    os << ";";
  }
  for (const auto& [k, v] : action_) os << k << "=" << v << ";";
  return os.str();
}

const std::string& PsMap::at(const OpPtr& shape, const std::string& cell) const {
  auto it = m.find({shape->key(), cell});
  if (it == m.end()) throw error("presheaf map undefined on " + cell + " : " + shape->key());
  return it->second;
}

void PsMap::set(const OpPtr& shape, const std::string& cell, const std::string& value) {
  m[{shape->key(), cell}] = value;
}

bool PsMap::defined(const OpPtr& shape, const std::string& cell) const {
  return m.count({shape->key(), cell}) != 0;
}

std::string PsMap::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : m) os << k.first << "/" << k.second << "->" << v << ";";
  return os.str();
}

bool natural(const Presheaf& A, const Presheaf& X, const PsMap& f) {
  for (const auto& shape : A.shapes()) {
    if (!X.in_window(shape->dim())) continue;
    for (const auto& cell : A.cells(shape)) {
      if (!f.defined(shape, cell)) return false;
      const std::string& y = f.at(shape, cell);
      if (!X.has_cell(shape, y)) return false;
      if (shape->dim() - 1 < X.low()) continue;
      for (const auto& g : face_generators(shape)) {
        OpPtr fs = face_of(shape, g);
        if (!X.in_window(fs->dim())) continue;
        if (f.at(fs, A.action(shape, cell, g)) != X.action(shape, y, g)) return false;
      }
    }
  }
  return true;
}

namespace {

struct Slot {
  OpPtr shape;
  std::string cell;
};

// Assign f(slot) := value and propagate along all face actions; returns
// false on conflict.
bool assign_propagate(const Presheaf& A, const Presheaf& X, PsMap& f, const Slot& s0,
                      const std::string& v0) {
  std::vector<std::pair<Slot, std::string>> queue{{s0, v0}};
  while (!queue.empty()) {
    auto [s, v] = queue.back();
    queue.pop_back();
    if (f.defined(s.shape, s.cell)) {
      if (f.at(s.shape, s.cell) != v) return false;
      continue;
    }
    f.set(s.shape, s.cell, v);
    if (s.shape->dim() - 1 < X.low()) continue;
    for (const auto& g : face_generators(s.shape)) {
      OpPtr fs = face_of(s.shape, g);
      if (!X.in_window(fs->dim())) continue;
      queue.push_back({Slot{fs, A.action(s.shape, s.cell, g)}, X.action(s.shape, v, g)});
    }
  }
  return true;
}

void hom_search(const Presheaf& A, const Presheaf& X, const std::vector<Slot>& slots, size_t i,
                PsMap& f, std::vector<PsMap>& out) {
  while (i < slots.size() && f.defined(slots[i].shape, slots[i].cell)) ++i;
  if (i == slots.size()) {
    out.push_back(f);
    return;
  }
  const Slot& s = slots[i];
  for (const auto& y : X.cells(s.shape)) {
    PsMap g = f;
    if (assign_propagate(A, X, g, s, y)) hom_search(A, X, slots, i + 1, g, out);
  }
}

}  // namespace

std::vector<PsMap> presheaf_hom(const Presheaf& A, const Presheaf& X, const PsMap* pinned) {
  Presheaf Aw = (A.low() == X.low() && A.high() == X.high()) ? A : A.truncated(X.low(), X.high());
  std::vector<Slot> slots;
  std::vector<OpPtr> shapes = Aw.shapes();
  std::sort(shapes.begin(), shapes.end(), [](const OpPtr& a, const OpPtr& b) {
    if (a->dim() != b->dim()) return a->dim() > b->dim();
    return a->key() < b->key();
  });
  for (const auto& s : shapes)
    for (const auto& c : Aw.cells(s)) slots.push_back({s, c});
  PsMap f;
  if (pinned)
    for (const auto& [k, v] : pinned->m) {
      auto shape_it = std::find_if(shapes.begin(), shapes.end(),
                                   [&](const OpPtr& s) { return s->key() == k.first; });
      if (shape_it == shapes.end()) throw error("pinned value on unknown shape " + k.first);
      if (!assign_propagate(Aw, X, f, Slot{*shape_it, k.second}, v)) return {};
    }
  std::vector<PsMap> out;
  hom_search(Aw, X, slots, 0, f, out);
  std::sort(out.begin(), out.end());
  return out;
}

size_t lifting_count(const PsInclusion& i, const Presheaf& X, const PsMap& f) {
  PsMap pinned;
  for (const auto& shape : i.sub.shapes()) {
    if (!X.in_window(shape->dim())) continue;
    for (const auto& cell : i.sub.cells(shape))
      pinned.set(shape, i.incl.at(shape, cell), f.at(shape, cell));
  }
  return presheaf_hom(i.whole, X, &pinned).size();
}

bool orthogonal(const PsInclusion& i, const Presheaf& X) {
  for (const auto& f : presheaf_hom(i.sub, X))
    if (lifting_count(i, X, f) != 1) return false;
  return true;
}

Presheaf extend_zero(const Presheaf& X, int up_to_dim) {
  if (up_to_dim < X.high()) throw error("extend_zero: cap below window");
  Presheaf r(X.low(), up_to_dim);
  for (const auto& s : X.shapes())
    for (const auto& c : X.cells(s)) r.add_cell(s, c);
  for (const auto& s : X.shapes()) {
    if (s->dim() - 1 < X.low()) continue;
    for (const auto& c : X.cells(s))
      for (const auto& g : face_generators(s)) r.set_action(s, c, g, X.action(s, c, g));
  }
  return r;
}

Presheaf extend_terminal(const Presheaf& X, int down_to_dim) {
  if (down_to_dim > X.low()) throw error("extend_terminal: floor above window");
  Presheaf r(down_to_dim, X.high());
  for (const auto& s : X.shapes())
    for (const auto& c : X.cells(s)) r.add_cell(s, c);
  // Materialize a singleton at every iterated face below the window.
  std::vector<OpPtr> work = X.shapes();
  std::set<std::string> seen;
  for (size_t i = 0; i < work.size(); ++i) {
    OpPtr s = work[i];
    if (!seen.insert(s->key()).second) continue;
    if (s->dim() <= down_to_dim) continue;
    for (const auto& g : face_generators(s)) work.push_back(face_of(s, g));
  }
  for (const auto& s : work)
    if (s->dim() < X.low() && s->dim() >= down_to_dim && !r.has_cell(s, "*")) r.add_cell(s, "*");
  for (const auto& s : X.shapes()) {
    if (s->dim() - 1 < down_to_dim) continue;
    for (const auto& c : X.cells(s))
      for (const auto& g : face_generators(s)) {
        OpPtr fs = face_of(s, g);
        if (fs->dim() >= X.low())
          r.set_action(s, c, g, X.action(s, c, g));
        else if (r.has_cell(fs, "*"))
          r.set_action(s, c, g, "*");
      }
  }
  for (const auto& s : r.shapes())
    if (s->dim() < X.low() && s->dim() - 1 >= down_to_dim)
      for (const auto& g : face_generators(s))
        if (r.has_cell(face_of(s, g), "*")) r.set_action(s, "*", g, "*");
  return r;
}

using nlohmann::json;

Presheaf Presheaf::from_json_text(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("window")) throw parse_error("presheaf file lacks \"window\"");
  Presheaf out(j["window"][0].get<int>(), j["window"][1].get<int>());
  std::map<std::string, OpPtr> shapes;
  for (const auto& [lit, names] : j.at("cells").items()) {
    OpPtr s = parse_opetope(lit);
    shapes[s->key()] = s;
    for (const auto& n : names) out.add_cell(s, n.get<std::string>());
  }
  if (j.contains("faces"))
    for (const auto& [lit, percell] : j.at("faces").items()) {
      OpPtr s = parse_opetope(lit);
      for (const auto& [cell, acts] : percell.items())
        for (const auto& [fk, v] : acts.items()) {
          FaceGen g;
          if (fk == "t")
            g = FaceGen::target();
          else if (fk.rfind("s@", 0) == 0)
            g = FaceGen::source(Address::parse(fk.substr(2), s->dim() - 1));
          else
            throw parse_error("bad face key " + fk);
          out.set_action(s, cell, g, v.get<std::string>());
        }
    }
  if (auto off = out.functoriality_offense())
    throw error("presheaf file rejected: " + *off);
  return out;
}

std::string Presheaf::to_json_text() const {
  json j;
  j["window"] = {low_, high_};
  json cells = json::object();
  for (const auto& [k, shape] : shapes_) {
    json names = json::array();
    for (const auto& c : cells(shape)) names.push_back(c);
    cells[print_opetope(shape)] = names;
  }
  j["cells"] = cells;
  json faces = json::object();
  for (const auto& [k, shape] : shapes_) {
    if (shape->dim() - 1 < low_) continue;
    json percell = json::object();
    for (const auto& c : cells(shape)) {
      json acts = json::object();
      for (const auto& g : face_generators(shape)) {
        auto it = action_.find(akey(k, c, g));
        if (it == action_.end()) continue;
        acts[g.tgt ? "t" : "s@" + g.addr.str()] = it->second;
      }
      percell[c] = acts;
    }
    faces[print_opetope(shape)] = percell;
  }
  j["faces"] = faces;
  return j.dump(2);
}

}  // namespace opk
