#include "mifkit/groupspec.hpp"

#include <json.hpp>

#include <cctype>
#include <numeric>
#include <sstream>

#include "mifkit/error.hpp"
#include "mifkit/util.hpp"

namespace mifkit {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Smallest base >= 2 whose powers clear every denominator seen in the raw
// coefficient strings: the radical of their lcm, with 2 as the floor.
unsigned normalize_base(const std::vector<mpz_class>& denoms) {
  mpz_class lcm(1);
  for (const auto& d : denoms) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  if (lcm == 1) return 2;
  mpz_class rad(1), rest = lcm;
  for (mpz_class f(2); f * f <= rest; ++f) {
    if (rest % f == 0) {
      rad *= f;
      while (rest % f == 0) rest /= f;
    }
  }
  if (rest > 1) rad *= rest;
  if (rad < 2) rad = 2;
  if (!rad.fits_uint_p()) fail_parse("group spec: denominator base too large");
  unsigned r = static_cast<unsigned>(rad.get_ui());
  return r < 2 ? 2 : r;
}

// Collect all "/den" substrings so the base can be normalized before the
// polynomials are parsed for real.
void scan_denominators(const std::string& poly, std::vector<mpz_class>& out) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] != '/') continue;
    std::size_t j = i + 1;
    while (j < poly.size() && std::isspace(static_cast<unsigned char>(poly[j]))) ++j;
    std::size_t start = j;
    while (j < poly.size() && std::isdigit(static_cast<unsigned char>(poly[j]))) ++j;
    if (start == j) fail_parse("group spec: malformed denominator in '" + poly + "'");
    out.emplace_back(poly.substr(start, j - start));
  }
}

}  // namespace

const GroupElement& GroupSpec::letter(int s) const {
  if (s == 0) fail_domain("letter: zero index");
  unsigned i = static_cast<unsigned>(std::abs(s)) - 1;
  if (i >= gens.size()) fail_domain("letter: generator index out of range");
  return s > 0 ? gens[i] : gens_inv[i];
}

GroupElement GroupSpec::element_of_word(std::span<const int> word) const {
  GroupElement r = ge_identity(d, ctx);
  for (int s : word) r = mat_mul(r, letter(s));
  return r;
}

std::string GroupSpec::word_to_string(std::span<const int> word) const {
  std::ostringstream out;
  bool first = true;
  std::size_t i = 0;
  while (i < word.size()) {
    int s = word[i];
    std::size_t j = i;
    while (j < word.size() && word[j] == s) ++j;
    long run = static_cast<long>(j - i) * (s > 0 ? 1 : -1);
    if (!first) out << " ";
    out << names[static_cast<unsigned>(std::abs(s)) - 1];
    if (run != 1) out << "^" << run;
    first = false;
    i = j;
  }
  return out.str();
}

GroupSpec parse_group_spec(const std::string& json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    fail_parse(std::string("group spec: invalid JSON: ") + e.what());
  }

  GroupSpec g;
  g.content_hash_ = fnv1a(json_text);

  unsigned declared_N = doc.value("N", 1u);
  g.ctx.t = doc.value("t", 0u);
  if (doc.contains("vars")) {
    for (const auto& v : doc["vars"]) g.ctx.vars.push_back(v.get<std::string>());
  } else {
    for (unsigned i = 0; i < g.ctx.t; ++i) g.ctx.vars.push_back("x" + std::to_string(i + 1));
  }
  g.d = doc.value("d", 2u);
  if (g.d < 2) fail_parse("group spec: d must be >= 2");
  if (g.d > 8) fail_parse("group spec: d larger than 8 is not supported");
  if (!doc.contains("generators") || !doc["generators"].is_object() || doc["generators"].empty())
    fail_parse("group spec: missing generators");

  // First pass over the raw strings: decide the base N.
  std::vector<mpz_class> denoms;
  for (const auto& [name, rows] : doc["generators"].items()) {
    (void)name;
    for (const auto& row : rows) {
      for (const auto& cell : row) scan_denominators(cell.get<std::string>(), denoms);
    }
  }
  g.ctx.N = normalize_base(denoms);
  if (declared_N >= 2) {
    // declared denominators must stay clearable under the declared base
    mpz_class base(declared_N), acc(1);
    for (const auto& den : denoms) {
      mpz_class a(1);
      unsigned k = 0;
      while (a % den != 0 && k <= 64) {
        a *= base;
        ++k;
      }
      if (a % den != 0)
        fail_parse("group spec: denominator " + den.get_str() + " is not a power of declared N");
    }
  }
  g.ctx.validate();

  auto parse_matrix = [&](const nlohmann::ordered_json& rows, const std::string& name) {
    if (rows.size() != g.d) fail_parse("group spec: generator " + name + " has wrong row count");
    MatPoly m(g.d, g.ctx);
    for (unsigned i = 0; i < g.d; ++i) {
      if (rows[i].size() != g.d) fail_parse("group spec: generator " + name + " has wrong column count");
      for (unsigned j = 0; j < g.d; ++j) m.at(i, j) = parse_poly(rows[i][j].get<std::string>(), g.ctx);
    }
    return m;
  };

  nlohmann::ordered_json inverses = doc.value("inverses", nlohmann::ordered_json::object());
  int index = 1;
  unsigned denom_exp_content = 0;
  for (const auto& [name, rows] : doc["generators"].items()) {
    if (!valid_ident(name)) fail_parse("group spec: invalid generator name '" + name + "'");
    if (name == "x") fail_parse("group spec: generator name 'x' is reserved");
    MatPoly m = parse_matrix(rows, name);
    if (!m.determinant().is_one())
      fail_parse("group spec: generator " + name + " does not have determinant 1");
    for (unsigned i = 0; i < g.d; ++i) {
      for (unsigned j = 0; j < g.d; ++j) {
        for (const auto& [mono, coeff] : m.at(i, j).terms()) {
          (void)mono;
          denom_exp_content = std::max(denom_exp_content, coeff.exp);
        }
      }
    }
    GroupElement ge{m, {index}, true};
    GroupElement inv;
    if (inverses.contains(name)) {
      MatPoly mi = parse_matrix(inverses[name], name + "^-1");
      if (!(m * mi).is_identity())
        fail_parse("group spec: listed inverse pair for " + name + " does not multiply to the identity (asymmetric set)");
      inv = GroupElement{mi, {-index}, true};
    } else {
      inv = GroupElement{m.adjugate(), {-index}, true};
    }
    g.names.push_back(name);
    g.gens.push_back(std::move(ge));
    g.gens_inv.push_back(std::move(inv));
    ++index;
  }

  if (doc.contains("localizer")) {
    g.localizer = parse_poly(doc["localizer"].get<std::string>(), g.ctx);
    if (g.localizer.is_zero()) fail_parse("group spec: localizer must be nonzero");
  } else {
    // det = 1 is enforced, so only denominator content contributes; that is a
    // power of N, a unit in Z[1/N].
    g.localizer = RingElement::from_int(g.ctx, 1);
    if (denom_exp_content > 0) {
      NLocInt pw = canonical_scalar(1, -static_cast<long>(denom_exp_content), g.ctx.N);
      g.localizer = RingElement::constant(g.ctx, pw);
    }
  }
  g.density_asserted = doc.value("density_asserted", true);
  return g;
}

GroupSpec load_group_spec(const std::string& path) { return parse_group_spec(read_file(path)); }

}  // namespace mifkit
