#pragma once

#include <span>
#include <string>
#include <vector>

#include "mifkit/matrix.hpp"

namespace mifkit {

// A parsed group document: SL_d generators over Z[1/N][x_1..x_t], their
// inverses, and the localizer r. The symmetric set X lists each named
// generator followed by its inverse, so |X| = 2 * (number of names).
struct GroupSpec {
  RingCtx ctx;
  unsigned d = 2;
  std::vector<std::string> names;
  std::vector<GroupElement> gens;      // word {+(i+1)}
  std::vector<GroupElement> gens_inv;  // word {-(i+1)}
  RingElement localizer;
  bool density_asserted = true;

  unsigned sym_size() const { return static_cast<unsigned>(2 * gens.size()); }
  // j in [0, sym_size): even -> generator j/2, odd -> its inverse
  const GroupElement& sym(unsigned j) const { return j % 2 == 0 ? gens[j / 2] : gens_inv[j / 2]; }
  int sym_letter(unsigned j) const {
    int base = static_cast<int>(j / 2) + 1;
    return j % 2 == 0 ? base : -base;
  }

  const GroupElement& letter(int s) const;  // s = ±(i+1)
  GroupElement element_of_word(std::span<const int> word) const;
  std::string word_to_string(std::span<const int> word) const;

  uint64_t content_hash() const { return content_hash_; }

  uint64_t content_hash_ = 0;
};

GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec load_group_spec(const std::string& path);

}  // namespace mifkit
