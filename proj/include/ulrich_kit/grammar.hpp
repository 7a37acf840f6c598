#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ulrich_kit/bridgeland.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/rational.hpp"
#include "ulrich_kit/ulrich.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

namespace detail {

// sum  := term ('+' term)*
// term := [int '*'] atom
// atom := '(' sum ')' | O['(' int [',' int] ')'] | S[+|-]['(' int ')'] | ss(r,d[,triv|nontriv])
//       | ulrich(r) | box(sum ; sum)
class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  SheafDescriptor parse(const VarietyModel& model) {
    SheafDescriptor out = sum(model);
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    validate(out, model);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  bool at_digit() {
    skip();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-');
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer");
    try {
      return std::stoi(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  SheafDescriptor sum(const VarietyModel& model) {
    std::vector<DirectSumTerm> terms{{term(model), 1}};
    while (accept('+')) terms.push_back({term(model), 1});
    return terms.size() == 1 ? terms.front().sheaf : make_sum(terms);
  }

  SheafDescriptor term(const VarietyModel& model) {
    if (at_digit()) {
      const int m = integer();
      if (m < 1) fail("multiplicity must be >= 1");
      expect('*');
      return m * atom(model);
    }
    return atom(model);
  }

  SheafDescriptor atom(const VarietyModel& model) {
    if (accept('(')) {
      SheafDescriptor inner = sum(model);
      expect(')');
      return inner;
    }
    if (accept_word("box(")) {
      if (!model.is<ProductProj>()) fail("box() needs a product model");
      SheafDescriptor l = sum(detail::left_factor(model));
      expect(';');
      SheafDescriptor r = sum(detail::right_factor(model));
      expect(')');
      return box(std::move(l), std::move(r));
    }
    if (accept_word("ss(")) {
      const int r = integer();
      expect(',');
      const int d = integer();
      std::optional<bool> trivial;
      if (accept(',')) {
        if (accept_word("nontriv")) trivial = false;
        else if (accept_word("triv")) trivial = true;
        else fail("expected triv or nontriv");
      }
      expect(')');
      return SemistableEC{r, d, trivial};
    }
    if (accept_word("ulrich(")) {
      const int r = integer();
      expect(')');
      return abstract_ulrich_sheaf(model, r);
    }
    if (accept('O')) {
      if (!accept('(')) return model.is<ProductProj>() ? line(0, 0) : line(0);
      const int a = integer();
      if (accept(',')) {
        const int b = integer();
        expect(')');
        return line(a, b);
      }
      expect(')');
      return model.is<ProductProj>() ? line(a, a) : line(a);
    }
    if (accept('S')) {
      SpinorSign sign = SpinorSign::none;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        const char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
        if (next == '\0' || next == '(' || next == ')' || next == '+' || next == ';' || next == ',') {
          sign = text_[pos_] == '+' ? SpinorSign::plus : SpinorSign::minus;
          ++pos_;
        }
      }
      int twist = 0;
      if (accept('(')) {
        twist = integer();
        expect(')');
      }
      return Spinor{sign, twist};
    }
    fail("expected a sheaf");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SheafDescriptor parse_descriptor(std::string_view text, const VarietyModel& model) {
  return detail::DescriptorParser(text).parse(model);
}

/// Splits on top-level ';' (outside parentheses).
inline std::vector<std::string> split_descriptor_list(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ';' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty() || out.empty()) out.push_back(current);
  return out;
}

/// "lo..hi:step" or a single rational; step must be positive.
inline std::vector<Rational> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return {parse_rational(text)};
  const auto colon = text.find(':', dots);
  const Rational lo = parse_rational(text.substr(0, dots));
  const Rational hi = parse_rational(text.substr(dots + 2, colon == std::string_view::npos ? std::string_view::npos : colon - dots - 2));
  const Rational step = colon == std::string_view::npos ? Rational(1) : parse_rational(text.substr(colon + 1));
  if (step <= 0) throw Error(ErrorKind::Parse, "range step must be positive");
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

/// Integer window "lo..hi".
inline Window parse_window(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) throw Error(ErrorKind::Parse, "window must be lo..hi");
  const Rational lo = parse_rational(text.substr(0, dots));
  const Rational hi = parse_rational(text.substr(dots + 2));
  if (!is_integer(lo) || !is_integer(hi) || lo > hi) throw Error(ErrorKind::Parse, "window bounds must be integers lo <= hi");
  return Window{static_cast<int>(boost::multiprecision::numerator(lo)), static_cast<int>(boost::multiprecision::numerator(hi))};
}

/// "s=<range>,t=<range>".
inline Grid parse_grid(std::string_view text) {
  Grid grid;
  bool seen_s = false, seen_t = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (part.size() < 2 || part[1] != '=') throw Error(ErrorKind::Parse, "grid entries look like s=<range> or t=<range>");
    if (part[0] == 's') {
      grid.s = parse_range(part.substr(2));
      seen_s = true;
    } else if (part[0] == 't') {
      grid.t = parse_range(part.substr(2));
      seen_t = true;
    } else {
      throw Error(ErrorKind::Parse, "unknown grid axis");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!seen_s || !seen_t) throw Error(ErrorKind::Parse, "grid needs both s and t");
  return grid;
}

}  // namespace ulrich_kit
