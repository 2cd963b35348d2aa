#pragma once

#include <span>
#include <string>
#include <vector>

#include "mifkit/ring.hpp"

namespace mifkit {

// Dense d x d matrix of ring elements, row-major.
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(unsigned d, const RingCtx& ctx);

  static MatPoly identity(unsigned d, const RingCtx& ctx);

  unsigned dim() const { return d_; }
  const RingElement& at(unsigned i, unsigned j) const { return e_[i * d_ + j]; }
  RingElement& at(unsigned i, unsigned j) { return e_[i * d_ + j]; }

  MatPoly operator*(const MatPoly& o) const;
  bool operator==(const MatPoly& o) const { return d_ == o.d_ && e_ == o.e_; }

  bool is_identity() const;
  RingElement determinant() const;  // cofactor expansion; fine for small d
  MatPoly adjugate() const;

  // canonical serialization, used for hashing/deduplication
  std::string key(const RingCtx& ctx) const;

 private:
  unsigned d_ = 0;
  std::vector<RingElement> e_;
};

// A matrix together with the generator word that produced it (signed 1-based
// generator indices, freely reduced). Elements built from raw matrices carry
// no word; asking for their length is an error rather than 0.
struct GroupElement {
  MatPoly mat;
  std::vector<int> word;
  bool has_word = false;

  uint64_t length() const;  // freely reduced word length
};

std::vector<int> free_reduce(std::span<const int> word);

GroupElement ge_external(MatPoly m);                      // no word
GroupElement ge_identity(unsigned d, const RingCtx& ctx); // empty word
GroupElement mat_mul(const GroupElement& a, const GroupElement& b);
GroupElement mat_inv(const GroupElement& a);  // requires det = 1

}  // namespace mifkit
