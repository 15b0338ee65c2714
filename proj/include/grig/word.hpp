#pragma once

// Words over the free Grigorchuk group  G = Z2 * (Z2 x Z2)  with generators
// a, b, c, d subject to a^2 = b^2 = c^2 = d^2 = bcd = 1, the twist
// automorphism phi, the substitutions sigma / tau and the separating words
// eta_{omega,k}.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

enum class Gen : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

using Word = std::vector<Gen>;

/// Generator index as used by MarkedGroup (a=0, b=1, c=2, d=3).
constexpr std::uint8_t index_of(Gen g) { return static_cast<std::uint8_t>(g); }

char to_char(Gen g);

/// Parses a word over {a,b,c,d}; "e" and "" both denote the identity.
/// Throws std::invalid_argument on any other character.
Word parse_word(std::string_view text);

/// ASCII form; the empty word prints as "e".
std::string to_string(const Word& w);

Word concat(const Word& u, const Word& v);

/// Inverse word. Every generator is an involution, so this is the reversal.
Word inverse(const Word& w);

/// Unique normal form: letters alternate between `a` and a single letter of
/// {b,c,d}; runs in {b,c,d} collapse through the Klein four-group table.
Word reduce(const Word& w);

/// Checks the normal-form invariant without reducing.
bool is_reduced(const Word& w);

/// phi^x applied letterwise (a fixed, b -> c -> d -> b), result reduced.
/// x is taken mod 3 and may be negative.
Word phi_twist(const Word& w, int x);

/// sigma: a -> aca, b,c,d fixed.
Word sigma_sub(const Word& w);

/// tau: a -> c, b -> a, c -> a, d -> 1.
Word tau_sub(const Word& w);

/// phi^x o sigma o phi^-x.
Word sigma_twisted(const Word& w, int x);

/// phi^x o tau o phi^-x.
Word tau_twisted(const Word& w, int x);

enum class CommutatorOrder {
  inverse_first,  // [x,y] = x^-1 y^-1 x y
  direct_first,   // [x,y] = x y x^-1 y^-1
};

Word commutator(const Word& x, const Word& y,
                CommutatorOrder order = CommutatorOrder::inverse_first);

/// The relator r = [c,[d,[b,(ad)^4]]], reduced. Built with the
/// x y x^-1 y^-1 order, which is the one whose image in PSL(2, Z[i,1/2]) is
/// the matrix h = ((-1,2),(2,-5)).
Word base_relator();

/// Eventually periodic word over {0,1,2}: preperiod followed by period^inf.
class OmegaWord {
 public:
  OmegaWord(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period);

  /// "(012)*" for a purely periodic word, or the general "pre|period" form
  /// (e.g. "0|12", "|012").
  static OmegaWord parse(std::string_view text);

  /// 1-based letter access; x_1 is the first letter.
  std::uint8_t letter_at(std::size_t i) const;

  /// x_{offset+1} x_{offset+2} ...
  OmegaWord shifted(std::size_t offset) const;

  const std::vector<std::uint8_t>& preperiod() const { return pre_; }
  const std::vector<std::uint8_t>& period() const { return period_; }

  std::string to_string() const;

  bool operator==(const OmegaWord&) const = default;

 private:
  std::vector<std::uint8_t> pre_;
  std::vector<std::uint8_t> period_;
};

/// eta_{omega,k} = w_k where w_0 = phi^{-x_{k+1}}(r) and
/// w_{i+1} = sigma_twisted(w_i, -x_{k-i}).
///
/// The twists run through phi^{-x} because the generator table of F_x leaves
/// the left decoration of phi^{-x}(d) trivial; with that sign sigma lifts a
/// word into the right-most copy of the base group and (ad')^4 dies one level
/// down. See the tests in test_tree_wreath.cpp for the three properties.
Word eta_word(const OmegaWord& omega, std::size_t k);

}  // namespace grig
