#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opk/opetope.hpp"

namespace opk {

/// A face generator of an opetope: its target or one of its sources.
struct FaceGen {
  bool tgt = true;
  Address addr = Address::atom();

  static FaceGen target() { return FaceGen{true, Address::atom()}; }
  static FaceGen source(const Address& p) { return FaceGen{false, p}; }
  std::string str() const { return tgt ? "t" : "s" + addr.str(); }
  bool operator==(const FaceGen& o) const {
    return tgt == o.tgt && (tgt || addr == o.addr);
  }
  bool operator<(const FaceGen& o) const {
    if (tgt != o.tgt) return tgt;  // t before sources
    if (tgt) return false;
    return addr < o.addr;
  }
};

/// Generators out of a shape, in canonical order (t first, then sources).
std::vector<FaceGen> face_generators(const OpPtr& w);
OpPtr face_of(const OpPtr& w, const FaceGen& g);

/// A finite presheaf over a truncation window of the category of opetopes.
/// Cells are opaque identifiers per shape; the action assigns to every cell
/// and in-window face generator a cell of the face's shape.
class Presheaf {
 public:
  Presheaf() = default;
  Presheaf(int low, int high) : low_(low), high_(high) {}

  int low() const { return low_; }
  int high() const { return high_; }
  bool in_window(int d) const { return d >= low_ && d <= high_; }

  void add_cell(const OpPtr& shape, const std::string& name);
  void set_action(const OpPtr& shape, const std::string& cell, const FaceGen& g,
                  const std::string& value);
  const std::string& action(const OpPtr& shape, const std::string& cell, const FaceGen& g) const;
  std::string act_path(const OpPtr& shape, const std::string& cell,
                       const std::vector<FaceGen>& path) const;

  bool has_shape(const OpPtr& shape) const { return shapes_.count(shape->key()) != 0; }
  bool has_cell(const OpPtr& shape, const std::string& name) const;
  const std::vector<std::string>& cells(const OpPtr& shape) const;
  std::vector<OpPtr> shapes() const;
  std::vector<OpPtr> shapes_of_dim(int d) const;
  size_t total_cells() const;

  /// Check that every required action is present and that the four relation
  /// squares act identically; returns a description of the first offense.
  std::optional<std::string> functoriality_offense() const;

  Presheaf truncated(int low, int high) const;

  std::string serialize() const;
  static Presheaf from_json_text(const std::string& text);
  std::string to_json_text() const;

 private:
  int low_ = 0, high_ = 0;
  std::map<std::string, OpPtr> shapes_;
  std::map<std::string, std::vector<std::string>> cells_;
  std::map<std::string, std::string> action_;
  static std::string akey(const std::string& shape, const std::string& cell, const FaceGen& g);
};

/// A map of presheaves: a shapewise function on cells.
struct PsMap {
  std::map<std::pair<std::string, std::string>, std::string> m;

  const std::string& at(const OpPtr& shape, const std::string& cell) const;
  void set(const OpPtr& shape, const std::string& cell, const std::string& value);
  bool defined(const OpPtr& shape, const std::string& cell) const;
  std::string serialize() const;
  bool operator==(const PsMap& o) const { return m == o.m; }
  bool operator<(const PsMap& o) const { return m < o.m; }
};

/// Does f commute with every generator action of A (valued in X)?
bool natural(const Presheaf& A, const Presheaf& X, const PsMap& f);

/// All natural maps A -> X, exhaustively; A and X over the same window
/// (truncate first if necessary).  `pinned` fixes some values in advance.
std::vector<PsMap> presheaf_hom(const Presheaf& A, const Presheaf& X,
                                const PsMap* pinned = nullptr);

/// A monic inclusion of finite presheaves, as the data of both objects and
/// the cell translation.
struct PsInclusion {
  std::string label;
  Presheaf sub;
  Presheaf whole;
  PsMap incl;
};

/// Unique lifting: every map sub -> X extends uniquely along the inclusion.
bool orthogonal(const PsInclusion& i, const Presheaf& X);
/// Number of extensions of `f : sub -> X` along the inclusion.
size_t lifting_count(const PsInclusion& i, const Presheaf& X, const PsMap& f);

/// Extension by empty above the window.
Presheaf extend_zero(const Presheaf& X, int up_to_dim);
/// Extension by singletons below the window.
Presheaf extend_terminal(const Presheaf& X, int down_to_dim);

}  // namespace opk
