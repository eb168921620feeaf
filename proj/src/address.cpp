#include "opk/address.hpp"

#include <sstream>

namespace opk {

Address Address::atom() { return Address(0, {}); }

Address Address::empty(int dim) {
  if (dim < 0) throw error("address dimension must be >= 0");
  return Address(dim, {});
}

Address Address::list(int dim, std::vector<Address> entries) {
  if (dim < 1) throw error("address list form needs dim >= 1");
  for (const auto& e : entries)
    if (e.dim() != dim - 1)
      throw error("address entry dimension mismatch: expected " +
                  std::to_string(dim - 1) + ", got " + std::to_string(e.dim()));
  return Address(dim, std::move(entries));
}

const std::vector<Address>& Address::entries() const {
  if (dim_ == 0) throw error("the 0-address has no entries");
  return entries_;
}

Address Address::appended(const Address& entry) const {
  if (dim_ == 0) throw error("cannot extend the 0-address");
  if (entry.dim() != dim_ - 1) throw error("appended entry has wrong dimension");
  auto es = entries_;
  es.push_back(entry);
  return Address(dim_, std::move(es));
}

bool Address::is_prefix_of(const Address& other) const {
  if (dim_ != other.dim_) return false;
  if (entries_.size() > other.entries_.size()) return false;
  for (size_t i = 0; i < entries_.size(); ++i)
    if (!(entries_[i] == other.entries_[i])) return false;
  return true;
}

std::pair<Address, Address> Address::split_last() const {
  if (dim_ == 0 || entries_.empty()) throw error("split_last on empty address");
  auto head = entries_;
  Address last = head.back();
  head.pop_back();
  return {Address(dim_, std::move(head)), last};
}

std::pair<Address, Address> Address::split_first() const {
  if (dim_ == 0 || entries_.empty()) throw error("split_first on empty address");
  Address first = entries_.front();
  std::vector<Address> rest(entries_.begin() + 1, entries_.end());
  return {first, Address(dim_, std::move(rest))};
}

Address Address::strip_prefix(const Address& prefix) const {
  if (!prefix.is_prefix_of(*this)) throw error("strip_prefix: not a prefix");
  std::vector<Address> rest(entries_.begin() + prefix.entries_.size(), entries_.end());
  return Address(dim_, std::move(rest));
}

std::string Address::str() const {
  if (dim_ == 0) return "*";
  std::string out = "[";
  for (const auto& e : entries_) out += e.str();
  out += "]";
  return out;
}

bool Address::operator==(const Address& o) const {
  if (dim_ != o.dim_ || entries_.size() != o.entries_.size()) return false;
  for (size_t i = 0; i < entries_.size(); ++i)
    if (!(entries_[i] == o.entries_[i])) return false;
  return true;
}

bool Address::operator<(const Address& o) const { return lex_compare(*this, o) < 0; }

Address concat(const Address& a, const Address& b) {
  if (a.dim() != b.dim()) throw error("concat: dimension mismatch");
  if (a.dim() == 0) throw error("concat: undefined on 0-addresses");
  auto es = a.entries();
  for (const auto& e : b.entries()) es.push_back(e);
  return Address::list(a.dim(), std::move(es));
}

int lex_compare(const Address& a, const Address& b) {
  if (a.dim() != b.dim()) throw error("lex_compare: dimension mismatch");
  if (a.dim() == 0) return 0;
  const auto& xs = a.entries();
  const auto& ys = b.entries();
  size_t n = std::min(xs.size(), ys.size());
  for (size_t i = 0; i < n; ++i) {
    int c = lex_compare(xs[i], ys[i]);
    if (c != 0) return c;
  }
  if (xs.size() < ys.size()) return -1;
  if (xs.size() > ys.size()) return 1;
  return 0;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    if (i >= s.size()) throw parse_error("unexpected end of address at offset " + std::to_string(i));
    return s[i];
  }
  char take() {
    char c = peek();
    ++i;
    return c;
  }
};

Address parse_at(Cursor& c, int dim) {
  char ch = c.peek();
  if (ch == '*') {
    c.take();
    if (dim != 0)
      throw parse_error("atom '*' where a " + std::to_string(dim) + "-address was expected (offset " +
                        std::to_string(c.i) + ")");
    return Address::atom();
  }
  if (ch != '[')
    throw parse_error(std::string("expected '*' or '[', got '") + ch + "' at offset " + std::to_string(c.i));
  if (dim < 1)
    throw parse_error("bracketed address where the atom was expected (offset " + std::to_string(c.i) + ")");
  c.take();
  std::vector<Address> entries;
  while (c.peek() != ']') entries.push_back(parse_at(c, dim - 1));
  c.take();
  return Address::list(dim, std::move(entries));
}

}  // namespace

Address Address::parse(const std::string& text, int dim) {
  Cursor c{text};
  Address a = parse_at(c, dim);
  if (!c.done()) throw parse_error("trailing input after address at offset " + std::to_string(c.i));
  return a;
}

}  // namespace opk
