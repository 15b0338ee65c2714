#include "grig/group_expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "grig/family.hpp"
#include "grig/tree_wreath.hpp"

namespace grig {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  GroupPtr group_expr() {
    skip();
    std::size_t start = pos_;
    std::string name = identifier();
    expect('(');
    GroupPtr g;
    try {
      g = dispatch(name, start);
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
    expect(')');
    return g;
  }

  std::set<std::size_t> j_expr(std::size_t bound) {
    std::set<std::size_t> out;
    for (;;) {
      skip();
      if (peek() == '{') {
        ++pos_;
        skip();
        if (peek() != '}') {
          for (;;) {
            std::size_t at = pos_;
            std::size_t v = integer();
            if (v == 0) throw ParseError("J members must be positive", at);
            if (v <= bound) out.insert(v);
            skip();
            if (peek() == ',') {
              ++pos_;
              continue;
            }
            break;
          }
        }
        expect('}');
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        std::size_t at = pos_;
        std::string name = identifier();
        if (name != "geom") throw ParseError("unknown J rule '" + name + "' (expected geom)", at);
        expect('(');
        std::size_t a = integer();
        expect(',');
        std::size_t r = integer();
        expect(')');
        if (a == 0 || r < 2) throw ParseError("geom(a, r) needs a >= 1 and r >= 2", at);
        for (std::size_t v = a; v <= bound; v *= r) out.insert(v);
      } else {
        throw ParseError("expected '{' or geom(...) in J", pos_);
      }
      skip();
      if (peek() == '+') {
        ++pos_;
        continue;
      }
      return out;
    }
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  GroupPtr dispatch(const std::string& name, std::size_t start) {
    if (name == "free") return std::make_shared<const FreeGroup>(positive());
    if (name == "cycle") return std::make_shared<const CycleGroup>(positive());
    if (name == "grid") return std::make_shared<const GridGroup>(positive());
    if (name == "trivial") return std::make_shared<const TrivialGroup>(4);
    if (name == "gamma_free") return std::make_shared<const GammaFreeGroup>();
    if (name == "matrix_h") return shared_matrix_h();
    if (name == "grig") {
      OmegaWord omega = omega_arg();
      expect(',');
      return grigorchuk_quotient(omega, integer());
    }
    if (name == "functor") {
      OmegaWord omega = omega_arg();
      expect(',');
      std::size_t k = integer();
      expect(',');
      GroupPtr base = group_expr();
      return iterate_functor(omega, k, base);
    }
    if (name == "gj") {
      GJSpec spec;
      spec.omega = omega_arg();
      expect(',');
      std::size_t j_start = pos_;
      // J is parsed after the radius is known; remember where it is
      skip_j();
      std::size_t j_end = pos_;
      expect(',');
      spec.radius = integer();
      std::size_t resume = pos_;
      pos_ = j_start;
      auto members = j_expr(truncation_level(spec.radius));
      if (pos_ != j_end) {
        skip();
        if (pos_ != j_end) throw ParseError("malformed J", pos_);
      }
      pos_ = resume;
      spec.J.assign(members.begin(), members.end());
      return build_GJ(spec).group;
    }
    if (name == "product") {
      std::vector<GroupPtr> parts{group_expr()};
      skip();
      while (peek() == ',') {
        ++pos_;
        parts.push_back(group_expr());
        skip();
      }
      return product(std::move(parts));
    }
    throw ParseError("unknown group '" + name + "'", start);
  }

  void skip_j() {
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '{' || c == '(') ++depth;
      if (c == '}' || c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
  }

  OmegaWord omega_arg() {
    skip();
    std::size_t start = pos_;
    std::string text;
    if (peek() == '(') {
      while (pos_ < s_.size() && s_[pos_] != ')') text.push_back(s_[pos_++]);
      if (pos_ == s_.size()) throw ParseError("unterminated omega period", start);
      text.push_back(s_[pos_++]);
      if (peek() != '*') throw ParseError("expected '*' after omega period", pos_);
      text.push_back(s_[pos_++]);
    } else {
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '|'))
        text.push_back(s_[pos_++]);
    }
    try {
      return OmegaWord::parse(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad omega: ") + e.what(), start);
    }
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) throw ParseError("expected a name", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t integer() {
    skip();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > 100'000'000) throw ParseError("integer too large", start);
      v = v * 10 + static_cast<std::size_t>(s_[pos_++] - '0');
    }
    if (start == pos_) throw ParseError("expected an integer", start);
    return v;
  }

  std::size_t positive() {
    std::size_t at = pos_;
    std::size_t v = integer();
    if (v == 0) throw ParseError("expected a positive integer", at);
    return v;
  }

  void expect(char c) {
    skip();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupPtr parse_group(std::string_view text) {
  Parser p(text);
  GroupPtr g = p.group_expr();
  p.finish();
  return g;
}

std::vector<std::size_t> parse_j_set(std::string_view text, std::size_t bound) {
  Parser p(text);
  auto s = p.j_expr(bound);
  p.finish();
  return {s.begin(), s.end()};
}

}  // namespace grig
