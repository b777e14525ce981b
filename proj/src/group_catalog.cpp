#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

#include "multicat/fingroup.hpp"

namespace multicat {

namespace {

using Table = std::vector<std::vector<Element>>;

Table square(std::size_t n) { return Table(n, std::vector<Element>(n)); }

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw DomainError(std::string(what) + " parameter must be positive");
}

}  // namespace

GroupRef cyclic_group(std::size_t n) {
  require_positive(n, "cyclic");
  Table t = square(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  return make_group(n, t, "cyclic:" + std::to_string(n));
}

GroupRef dihedral_group(std::size_t n) {
  require_positive(n, "dihedral");
  // r^k s^e stored at k + n*e; s r^k = r^-k s.
  Table t = square(2 * n);
  for (std::size_t k1 = 0; k1 < n; ++k1)
    for (std::size_t e1 = 0; e1 < 2; ++e1)
      for (std::size_t k2 = 0; k2 < n; ++k2)
        for (std::size_t e2 = 0; e2 < 2; ++e2) {
          const std::size_t k = e1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
          t[k1 + n * e1][k2 + n * e2] = static_cast<Element>(k + n * (e1 ^ e2));
        }
  return make_group(2 * n, t, "dihedral:" + std::to_string(n));
}

GroupRef dicyclic_group(std::size_t n) {
  require_positive(n, "dicyclic");
  // a^k x^e stored at k + 2n*e; a^(2n) = 1, x^2 = a^n, x a = a^-1 x.
  const std::size_t m = 2 * n;
  Table t = square(2 * m);
  for (std::size_t k1 = 0; k1 < m; ++k1)
    for (std::size_t e1 = 0; e1 < 2; ++e1)
      for (std::size_t k2 = 0; k2 < m; ++k2)
        for (std::size_t e2 = 0; e2 < 2; ++e2) {
          std::size_t k = 0, e = 0;
          if (e1 == 0) {
            k = (k1 + k2) % m;
            e = e2;
          } else if (e2 == 0) {
            k = (k1 + m - k2) % m;
            e = 1;
          } else {
            k = (k1 + m - k2 + n) % m;
            e = 0;
          }
          t[k1 + m * e1][k2 + m * e2] = static_cast<Element>(k + m * e);
        }
  return make_group(2 * m, t, "dicyclic:" + std::to_string(n));
}

GroupRef direct_product(const GroupRef& a, const GroupRef& b) {
  const std::size_t na = a->order(), nb = b->order();
  Table t = square(na * nb);
  for (Element x1 = 0; x1 < na; ++x1)
    for (Element y1 = 0; y1 < nb; ++y1)
      for (Element x2 = 0; x2 < na; ++x2)
        for (Element y2 = 0; y2 < nb; ++y2)
          t[x1 * nb + y1][x2 * nb + y2] =
              static_cast<Element>(a->mul(x1, x2) * nb + b->mul(y1, y2));
  return make_group(na * nb, t, "product:" + a->name() + "," + b->name());
}

GroupRef klein_four_group() {
  auto c2 = cyclic_group(2);
  auto g = std::make_shared<FiniteGroup>(*direct_product(c2, c2));
  g->set_name("klein4");
  return g;
}

GroupRef quaternion_group() {
  auto g = std::make_shared<FiniteGroup>(*dicyclic_group(2));
  g->set_name("q8");
  return g;
}

GroupRef alternating_group_4() {
  std::vector<std::array<Element, 4>> perms;
  std::array<Element, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::array<Element, 4>, Element> index;
  for (Element i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  Table t = square(perms.size());
  for (Element i = 0; i < perms.size(); ++i)
    for (Element j = 0; j < perms.size(); ++j) {
      std::array<Element, 4> c{};
      for (int k = 0; k < 4; ++k) c[k] = perms[i][perms[j][k]];
      t[i][j] = index.at(c);
    }
  return make_group(perms.size(), t, "a4");
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : text_(text) {}

  GroupRef parse() {
    GroupRef g = group();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group spec '" + text_ + "': " + what, pos_);
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a group name");
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a positive integer");
    const std::string digits = text_.substr(start, pos_ - start);
    if (digits.size() > 6) fail("parameter too large");
    const std::size_t n = std::stoul(digits);
    if (n == 0) fail("parameter must be positive");
    return n;
  }

  GroupRef group() {
    const std::string name = identifier();
    if (name == "klein4") return klein_four_group();
    if (name == "q8") return quaternion_group();
    if (name == "a4") return alternating_group_4();
    if (name == "product") {
      expect(':');
      GroupRef a = group();
      expect(',');
      GroupRef b = group();
      return direct_product(a, b);
    }
    if (name == "cyclic" || name == "dihedral" || name == "dicyclic") {
      expect(':');
      const std::size_t n = number();
      if (name == "cyclic") return cyclic_group(n);
      if (name == "dihedral") return dihedral_group(n);
      return dicyclic_group(n);
    }
    pos_ -= name.size();
    fail("unknown group '" + name + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRef group_from_spec(const std::string& spec) { return SpecParser(spec).parse(); }

GroupRef parse_group(std::istream& in, std::string name) {
  std::vector<long long> values;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> value_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        values.push_back(v);
        value_line.push_back(line_no);
      } catch (const std::exception&) {
        throw ParseError("expected a non-negative integer, got '" + tok + "'", line_no);
      }
    }
  }
  if (values.empty()) throw ParseError("missing group order", line_no);
  const auto n = static_cast<std::size_t>(values[0]);
  if (n == 0 || n > 4096) throw ParseError("group order must be in 1..4096", value_line[0]);
  if (values.size() != 1 + n * n)
    throw ParseError("expected " + std::to_string(n * n) + " table entries, found " +
                         std::to_string(values.size() - 1),
                     line_no);
  Table t = square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const long long v = values[1 + i * n + j];
      if (static_cast<std::size_t>(v) >= n)
        throw ParseError("table entry " + std::to_string(v) + " is not an element",
                         value_line[1 + i * n + j]);
      t[i][j] = static_cast<Element>(v);
    }
  return make_group(n, t, std::move(name));
}

std::vector<GroupRef> small_group_corpus(std::size_t max_order) {
  if (max_order > 12) throw DomainError("the built-in corpus covers orders up to 12");
  static const std::vector<std::string> specs = {
      "cyclic:1",
      "cyclic:2",
      "cyclic:3",
      "cyclic:4",
      "klein4",
      "cyclic:5",
      "cyclic:6",
      "dihedral:3",
      "cyclic:7",
      "cyclic:8",
      "product:cyclic:4,cyclic:2",
      "product:product:cyclic:2,cyclic:2,cyclic:2",
      "dihedral:4",
      "q8",
      "cyclic:9",
      "product:cyclic:3,cyclic:3",
      "cyclic:10",
      "dihedral:5",
      "cyclic:11",
      "cyclic:12",
      "product:cyclic:6,cyclic:2",
      "dihedral:6",
      "a4",
      "dicyclic:3",
  };
  std::vector<GroupRef> out;
  for (const auto& s : specs) {
    GroupRef g = group_from_spec(s);
    if (g->order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace multicat
