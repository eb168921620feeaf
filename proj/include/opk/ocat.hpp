#pragma once

#include "opk/presheaf.hpp"

namespace opk {

/// A face path, written codomain-inward: the first generator is a face of
/// the codomain, the next a face of that face, and so on.
using FacePath = std::vector<FaceGen>;

std::string path_str(const FacePath& p);
FacePath parse_path(const std::string& text, const OpPtr& cod);
OpPtr path_domain(const OpPtr& cod, const FacePath& p);

/// A morphism of the category of opetopes: a face path modulo the four
/// relations, held in canonical (lexicographically least) form.
struct OMorphism {
  OpPtr dom;
  OpPtr cod;
  FacePath canonical;

  bool is_identity() const { return canonical.empty(); }
  std::string str() const;
  bool operator==(const OMorphism& o) const;
  bool operator<(const OMorphism& o) const;
};

OMorphism identity_morphism(const OpPtr& w);
/// The class of a path into `cod`.
OMorphism morphism_of_path(const OpPtr& cod, const FacePath& p);
/// Composition g o f for f : a -> b, g : b -> c (f applied first).
OMorphism compose(const OMorphism& f, const OMorphism& g);
bool equal_morphisms(const OMorphism& f, const OMorphism& g);
/// All morphism classes psi -> omega.
std::vector<OMorphism> om_hom(const OpPtr& psi, const OpPtr& omega);

/// Complexes inside a representable.  Cells are named by their canonical
/// path ("id" for the top cell); face actions are path extension followed
/// by canonicalization.
Presheaf representable_psh(const OpPtr& w);
Presheaf boundary_psh(const OpPtr& w);
Presheaf spine_psh(const OpPtr& w);

/// Truncations of the above to a window.
Presheaf representable_psh(const OpPtr& w, int low, int high);
Presheaf spine_psh(const OpPtr& w, int low, int high);

PsInclusion initial_inclusion(const OpPtr& w, int low, int high);
PsInclusion boundary_inclusion(const OpPtr& w, int low, int high);
PsInclusion spine_inclusion(const OpPtr& w, int low, int high);

/// Canonical cell names of a spine: the nodes (dimension-(n-1) faces of a
/// dimension-n opetope) and the edges below them.
struct SpineCells {
  std::map<Address, std::string> node;  // node address -> cell
  std::map<Address, std::string> edge;  // edge address (slot or []) -> cell
  std::map<std::string, Address> node_of_cell;
  std::map<std::string, Address> edge_of_cell;
};
SpineCells spine_cells(const OpPtr& w);

/// The boundary decomposes along the target: cells of the boundary are the
/// spine cells together with the faces through the target, glued over the
/// spine of the target.  Checks the cell-count identity, joint surjectivity
/// and exactness of the intersection.
bool check_boundary_pushout(const OpPtr& w, std::string* report);

/// The spine of a grafting is the spine of the host glued with the
/// representable of the grafted corolla over the representable of the
/// shared edge.
bool check_spine_graft_pushout(const OpPtr& nu, const Address& leaf, const OpPtr& psi,
                               std::string* report);

/// The inclusion of the target's spine into the spine is a finite composite
/// of pushouts of spine inclusions one dimension down (checked by running
/// the staged construction).
bool check_spine_staging(const OpPtr& w, std::string* report);

bool check_pushout_lemmas(const OpPtr& w, std::string* report);

/// Canonical (boundary-orthogonal) extension above the window; shapes above
/// the window are enumerated up to the given weight.
Presheaf extend_canonical(const Presheaf& X, int up_to_dim, long shape_weight_bound);

}  // namespace opk
