#pragma once

// Reader for the line-oriented presentation format:
//
//   # comment
//   gens: x, y, z
//   rel: x^3
//   rel: (x*y)^3
//   rel: [x, y^-1] z
//
// A word is a sequence of terms, optionally joined by '*'. A term is a
// generator name, a parenthesised word, or a commutator [u, v] = u^-1 v^-1
// u v, optionally raised to an integer power. The atom 1 denotes the empty
// word, and "gens:" may be empty, so every Presentation has a printable
// form.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pdef/error.hpp"
#include "pdef/presentation.hpp"
#include "pdef/word.hpp"

namespace pdef {

  struct ParseWarning {
    std::size_t line;
    std::size_t column;
    std::string message;
  };

  namespace detail {

    class WordParser {
     public:
      WordParser(std::string_view                text,
                 std::vector<std::string> const& names,
                 std::size_t                     line,
                 std::size_t                     column_offset,
                 std::vector<ParseWarning>*      warnings)
          : text_(text),
            names_(names),
            line_(line),
            offset_(column_offset),
            warnings_(warnings) {}

      Word parse_all() {
        Word w = word();
        skip_space();
        if (pos_ != text_.size()) {
          fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return w;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError(what, line_, offset_ + pos_ + 1);
      }

      void warn(std::string message, std::size_t at) {
        if (warnings_ != nullptr) {
          warnings_->push_back({line_, offset_ + at + 1, std::move(message)});
        }
      }

      void skip_space() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool at_term_start() {
        skip_space();
        if (pos_ >= text_.size()) {
          return false;
        }
        char c = text_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '('
               || c == '[' || c == '1';
      }

      Word word() {
        if (!at_term_start()) {
          fail(pos_ < text_.size() ? "expected a term" : "expected a word");
        }
        Word result = term();
        while (true) {
          skip_space();
          if (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            if (!at_term_start()) {
              fail("expected a term after '*'");
            }
            result = std::move(result) * term();
          } else if (at_term_start()) {
            result = std::move(result) * term();
          } else {
            return result;
          }
        }
      }

      Word term() {
        Word base = atom();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          skip_space();
          std::size_t start = pos_;
          long long   n     = integer();
          if (n == 0) {
            warn("zero exponent yields the empty word", start);
          }
          return word_power(base, n);
        }
        return base;
      }

      long long integer() {
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') {
          ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (digits == pos_) {
          pos_ = start;
          fail("expected an integer exponent");
        }
        long long value = 0;
        auto [ptr, ec]  = std::from_chars(
            text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc()) {
          pos_ = start;
          fail("exponent out of range");
        }
        return value;
      }

      Word atom() {
        skip_space();
        char c = text_[pos_];
        if (c == '(') {
          ++pos_;
          Word w = word();
          expect(')');
          return w;
        }
        if (c == '[') {
          ++pos_;
          Word u = word();
          expect(',');
          Word v = word();
          expect(']');
          return u.inverse() * v.inverse() * u * v;
        }
        if (c == '1') {
          ++pos_;
          if (pos_ < text_.size()
              && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
            fail("unexpected digit");
          }
          return Word();
        }
        std::size_t start = pos_;
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_')) {
          ++pos_;
        }
        std::string name(text_.substr(start, pos_ - start));
        for (std::size_t i = 0; i < names_.size(); ++i) {
          if (names_[i] == name) {
            return Word::letter(static_cast<Letter>(i + 1));
          }
        }
        pos_ = start;
        fail("unknown generator \"" + name + "\"");
      }

      void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos_;
      }

      std::string_view                text_;
      std::vector<std::string> const& names_;
      std::size_t                     line_;
      std::size_t                     offset_;
      std::vector<ParseWarning>*      warnings_;
      std::size_t                     pos_ = 0;
    };

    inline std::string_view strip_comment(std::string_view line) {
      auto hash = line.find('#');
      return hash == std::string_view::npos ? line : line.substr(0, hash);
    }

    inline bool is_blank(std::string_view s) {
      for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
          return false;
        }
      }
      return true;
    }

    inline std::size_t first_non_space(std::string_view s) {
      std::size_t i = 0;
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      return i;
    }

  }  // namespace detail

  // Parses a single word over `names`. Columns in errors are 1-based
  // within `text`.
  inline Word parse_word(std::string_view                text,
                         std::vector<std::string> const& names,
                         std::vector<ParseWarning>*      warnings = nullptr) {
    return detail::WordParser(text, names, 1, 0, warnings).parse_all();
  }

  inline Presentation
  parse_presentation(std::string_view           text,
                     std::vector<ParseWarning>* warnings = nullptr) {
    Presentation P;
    bool         have_gens = false;
    std::size_t  line_no   = 0;
    std::size_t  start     = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++line_no;
      std::string_view line = detail::strip_comment(text.substr(start, end - start));
      start = end + 1;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (detail::is_blank(line)) {
        continue;
      }
      std::size_t      col  = detail::first_non_space(line);
      std::string_view rest = line.substr(col);
      if (rest.starts_with("gens:")) {
        if (have_gens) {
          throw ParseError("second gens line", line_no, col + 1);
        }
        have_gens        = true;
        std::size_t pos  = col + 5;
        std::string body(line.substr(pos));
        if (detail::is_blank(body)) {
          continue;
        }
        std::size_t i = 0;
        while (true) {
          while (i < body.size()
                 && std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
          }
          std::size_t name_start = i;
          while (i < body.size()
                 && (std::isalnum(static_cast<unsigned char>(body[i]))
                     || body[i] == '_')) {
            ++i;
          }
          std::string name = body.substr(name_start, i - name_start);
          if (!is_identifier(name)) {
            throw ParseError("expected a generator name", line_no,
                             pos + name_start + 1);
          }
          if (P.generator_index(name) != 0) {
            throw ParseError("duplicate generator \"" + name + "\"", line_no,
                             pos + name_start + 1);
          }
          P.generator_names.push_back(name);
          while (i < body.size()
                 && std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
          }
          if (i == body.size()) {
            break;
          }
          if (body[i] != ',') {
            throw ParseError("expected ','", line_no, pos + i + 1);
          }
          ++i;
        }
      } else if (rest.starts_with("rel:")) {
        if (!have_gens) {
          throw ParseError("rel line before gens line", line_no, col + 1);
        }
        std::size_t offset = col + 4;
        Word        r      = detail::WordParser(line.substr(offset),
                                       P.generator_names,
                                       line_no,
                                       offset,
                                       warnings)
                     .parse_all();
        if (r.empty() && warnings != nullptr) {
          warnings->push_back(
              {line_no, col + 1, "relator reduces to the empty word"});
        }
        P.relators.push_back(std::move(r));
      } else {
        throw ParseError("expected \"gens:\" or \"rel:\"", line_no, col + 1);
      }
    }
    if (!have_gens) {
      throw ParseError("missing gens line", line_no, 1);
    }
    return P;
  }

}  // namespace pdef
