#include "grig/word.hpp"

#include <stdexcept>

namespace grig {

namespace {

bool is_klein(Gen g) { return g != Gen::a; }

// Product of two distinct letters of {b,c,d}.
Gen klein_product(Gen x, Gen y) {
  // b=1, c=2, d=3 and the product of two distinct ones is the third.
  return static_cast<Gen>(6 - index_of(x) - index_of(y));
}

Gen phi_letter(Gen g, int x) {
  if (g == Gen::a) return g;
  int r = ((x % 3) + 3) % 3;
  int i = index_of(g) - 1;
  return static_cast<Gen>(1 + (i + r) % 3);
}

template <class F>
Word substitute(const Word& w, F image) {
  Word out;
  out.reserve(w.size() * 2);
  for (Gen g : w) {
    const Word& img = image(g);
    out.insert(out.end(), img.begin(), img.end());
  }
  return reduce(out);
}

}  // namespace

char to_char(Gen g) { return static_cast<char>('a' + index_of(g)); }

Word parse_word(std::string_view text) {
  if (text == "e") return {};
  Word w;
  w.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch < 'a' || ch > 'd') {
      throw std::invalid_argument("invalid generator '" + std::string(1, ch) +
                                  "' at position " + std::to_string(i));
    }
    w.push_back(static_cast<Gen>(ch - 'a'));
  }
  return w;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  s.reserve(w.size());
  for (Gen g : w) s.push_back(to_char(g));
  return s;
}

Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Word inverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word reduce(const Word& w) {
  Word st;
  st.reserve(w.size());
  for (Gen g : w) {
    if (st.empty()) {
      st.push_back(g);
    } else if (g == Gen::a) {
      if (st.back() == Gen::a) {
        st.pop_back();
      } else {
        st.push_back(g);
      }
    } else if (is_klein(st.back())) {
      Gen top = st.back();
      st.pop_back();
      if (top != g) st.push_back(klein_product(top, g));
    } else {
      st.push_back(g);
    }
  }
  return st;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == Gen::a && w[i - 1] == Gen::a) return false;
    if (is_klein(w[i]) && is_klein(w[i - 1])) return false;
  }
  return true;
}

Word phi_twist(const Word& w, int x) {
  Word out;
  out.reserve(w.size());
  for (Gen g : w) out.push_back(phi_letter(g, x));
  return reduce(out);
}

Word sigma_sub(const Word& w) {
  static const Word aca = {Gen::a, Gen::c, Gen::a};
  static const Word single[4] = {{}, {Gen::b}, {Gen::c}, {Gen::d}};
  return substitute(w, [&](Gen g) -> const Word& {
    return g == Gen::a ? aca : single[index_of(g)];
  });
}

Word tau_sub(const Word& w) {
  static const Word images[4] = {{Gen::c}, {Gen::a}, {Gen::a}, {}};
  return substitute(w, [&](Gen g) -> const Word& { return images[index_of(g)]; });
}

Word sigma_twisted(const Word& w, int x) {
  return phi_twist(sigma_sub(phi_twist(w, -x)), x);
}

Word tau_twisted(const Word& w, int x) {
  return phi_twist(tau_sub(phi_twist(w, -x)), x);
}

Word commutator(const Word& x, const Word& y, CommutatorOrder order) {
  Word out;
  if (order == CommutatorOrder::inverse_first) {
    out = concat(concat(inverse(x), inverse(y)), concat(x, y));
  } else {
    out = concat(concat(x, y), concat(inverse(x), inverse(y)));
  }
  return reduce(out);
}

Word base_relator() {
  constexpr auto order = CommutatorOrder::direct_first;
  Word ad4;
  for (int i = 0; i < 4; ++i) {
    ad4.push_back(Gen::a);
    ad4.push_back(Gen::d);
  }
  Word inner = commutator({Gen::b}, ad4, order);
  Word middle = commutator({Gen::d}, inner, order);
  return commutator({Gen::c}, middle, order);
}

OmegaWord::OmegaWord(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period)
    : pre_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("omega: period must be nonempty");
  for (auto x : pre_)
    if (x > 2) throw std::invalid_argument("omega: letters must be 0, 1 or 2");
  for (auto x : period_)
    if (x > 2) throw std::invalid_argument("omega: letters must be 0, 1 or 2");
}

OmegaWord OmegaWord::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char ch = s[i];
      if (ch < '0' || ch > '2') {
        throw std::invalid_argument("omega: invalid letter '" + std::string(1, ch) +
                                    "' (expected 0, 1 or 2)");
      }
      out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
  };
  if (text.size() >= 3 && text.front() == '(' && text.substr(text.size() - 2) == ")*") {
    return OmegaWord({}, digits(text.substr(1, text.size() - 3)));
  }
  auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw std::invalid_argument("omega: expected \"(period)*\" or \"pre|period\", got \"" +
                                std::string(text) + "\"");
  }
  return OmegaWord(digits(text.substr(0, bar)), digits(text.substr(bar + 1)));
}

std::uint8_t OmegaWord::letter_at(std::size_t i) const {
  if (i == 0) throw std::out_of_range("omega letters are 1-based");
  std::size_t j = i - 1;
  if (j < pre_.size()) return pre_[j];
  return period_[(j - pre_.size()) % period_.size()];
}

OmegaWord OmegaWord::shifted(std::size_t offset) const {
  if (offset <= pre_.size()) {
    return OmegaWord({pre_.begin() + static_cast<std::ptrdiff_t>(offset), pre_.end()}, period_);
  }
  std::size_t rot = (offset - pre_.size()) % period_.size();
  std::vector<std::uint8_t> p(period_.begin() + static_cast<std::ptrdiff_t>(rot), period_.end());
  p.insert(p.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(rot));
  return OmegaWord({}, std::move(p));
}

std::string OmegaWord::to_string() const {
  std::string out;
  for (auto x : pre_) out.push_back(static_cast<char>('0' + x));
  std::string per;
  for (auto x : period_) per.push_back(static_cast<char>('0' + x));
  if (pre_.empty()) return "(" + per + ")*";
  return out + "|" + per;
}

Word eta_word(const OmegaWord& omega, std::size_t k) {
  Word w = phi_twist(base_relator(), -static_cast<int>(omega.letter_at(k + 1)));
  for (std::size_t i = 0; i < k; ++i) {
    w = sigma_twisted(w, -static_cast<int>(omega.letter_at(k - i)));
  }
  return w;
}

}  // namespace grig
