#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opk {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

struct capacity_error : error {
  using error::error;
};

/// A higher-dimensional address: the atom `*` in dimension 0, or a finite
/// word of (n-1)-addresses in dimension n.  The empty word exists at every
/// dimension >= 1, so the dimension is carried explicitly.
class Address {
 public:
  static Address atom();
  static Address empty(int dim);
  static Address list(int dim, std::vector<Address> entries);

  int dim() const { return dim_; }
  bool is_atom() const { return dim_ == 0; }
  bool is_empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const std::vector<Address>& entries() const;

  /// Word with one more entry (entry has dimension dim-1).
  Address appended(const Address& entry) const;
  /// Strictly: is this a (non-strict) prefix of `other`?
  bool is_prefix_of(const Address& other) const;
  /// Split a nonempty word as (all but last, last).
  std::pair<Address, Address> split_last() const;
  /// Split a nonempty word as (first, rest).
  std::pair<Address, Address> split_first() const;
  /// Drop a prefix; requires is_prefix_of.
  Address strip_prefix(const Address& prefix) const;

  std::string str() const;
  static Address parse(const std::string& text, int dim);

  bool operator==(const Address& o) const;
  bool operator!=(const Address& o) const { return !(*this == o); }
  /// Prefix-first lexicographic order (see lex_compare).
  bool operator<(const Address& o) const;

 private:
  Address(int dim, std::vector<Address> entries)
      : dim_(dim), entries_(std::move(entries)) {}
  int dim_ = 0;
  std::vector<Address> entries_;
};

/// Word concatenation on a fixed dimension >= 1.  `[]` is a two-sided unit.
Address concat(const Address& a, const Address& b);

/// Total order on each A_n: the empty word precedes every nonempty word,
/// comparison is entry-wise and recurses into entries.  Returns -1, 0, 1.
int lex_compare(const Address& a, const Address& b);

}  // namespace opk
