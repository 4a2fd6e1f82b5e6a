#ifndef POLYBOUND_SRC_TEXT_SCAN_H_
#define POLYBOUND_SRC_TEXT_SCAN_H_

#include <cctype>
#include <istream>
#include <string>
#include <string_view>

#include "polybound/attr_set.h"
#include "polybound/errors.h"
#include "polybound/rational.h"

namespace polybound::detail {

// Cursor over one line of a line-oriented input file. Columns are 1-based.
class LineScanner {
 public:
  LineScanner(std::string_view text, int line) : text_(text), line_(line) {}

  int line() const { return line_; }
  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, column(), message);
  }

  // Reads a run of non-space characters.
  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  // Reads an identifier-like keyword ([A-Za-z_][A-Za-z0-9_]*).
  std::string_view keyword() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  long long integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::string_view digits = text_.substr(start, pos_ - start);
    if (digits.empty() || digits == "-") {
      pos_ = start;
      fail("expected an integer");
    }
    if (digits.size() > 12) {
      pos_ = start;
      fail("integer out of range");
    }
    return std::stoll(std::string(digits));
  }

  // A set literal; attributes must lie in 1..max_attr when max_attr > 0.
  AttrSet attr_set(int max_attr) {
    skip_space();
    expect("{");
    AttrSet s;
    if (consume("}")) return s;
    while (true) {
      skip_space();
      int col = column();
      long long a = integer();
      if (a < 1 || a > kMaxAttributes || (max_attr > 0 && a > max_attr)) {
        throw ParseError(line_, col,
                         "attribute " + std::to_string(a) + " out of range 1.." +
                             std::to_string(max_attr > 0 ? max_attr
                                                         : kMaxAttributes));
      }
      s = s.with(static_cast<int>(a));
      if (consume("}")) return s;
      expect(",");
    }
  }

  Rational rational() {
    skip_space();
    int col = column();
    std::string_view w = word();
    Rational r;
    if (w.empty() || !Rational::try_parse(w, &r)) {
      throw ParseError(line_, col,
                       "invalid rational literal '" + std::string(w) + "'");
    }
    return r;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

// Strips a '#' comment.
inline std::string_view strip_comment(std::string_view line) {
  std::size_t hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool is_blank(std::string_view line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Iterates significant lines, calling fn(LineScanner&).
template <typename Fn>
void for_each_significant_line(std::istream& in, Fn&& fn) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_comment(raw);
    if (is_blank(line)) continue;
    LineScanner scan(line, line_no);
    fn(scan);
  }
}

}  // namespace polybound::detail

#endif  // POLYBOUND_SRC_TEXT_SCAN_H_
