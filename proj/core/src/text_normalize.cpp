#include "sivr/text_normalize.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace sivr {

namespace {

// LaTeX commands with a spoken form. Commands mapping to "" are silently
// removed (layout-only).
const std::map<std::string, std::string, std::less<>>& command_words() {
  static const std::map<std::string, std::string, std::less<>> kWords = {
      {"pi", "pi"},       {"alpha", "alpha"},   {"beta", "beta"},
      {"gamma", "gamma"}, {"theta", "theta"},   {"lambda", "lambda"},
      {"mu", "mu"},       {"sigma", "sigma"},   {"times", "times"},
      {"cdot", "times"},  {"div", "divided by"},
      {"leq", "less than or equal to"},  {"le", "less than or equal to"},
      {"geq", "greater than or equal to"}, {"ge", "greater than or equal to"},
      {"neq", "not equal to"}, {"ne", "not equal to"},
      {"pm", "plus or minus"}, {"infty", "infinity"},
      {"degree", "degrees"},   {"circ", "degrees"},
      {"approx", "approximately"}, {"sim", "approximately"},
      {"sum", "the sum of"},   {"int", "the integral of"},
      {"sin", "sine"}, {"cos", "cosine"}, {"tan", "tangent"},
      {"log", "log"},  {"ln", "natural log"},
      {"left", ""}, {"right", ""}, {"text", ""}, {"mathrm", ""}, {"mathbf", ""},
  };
  return kWords;
}

// Multi-byte UTF-8 symbols with a spoken form.
const std::map<std::string, std::string, std::less<>>& unicode_words() {
  static const std::map<std::string, std::string, std::less<>> kWords = {
      {"≥", "greater than or equal to"},  // >=
      {"≤", "less than or equal to"},     // <=
      {"≠", "not equal to"},              // !=
      {"±", "plus or minus"},
      {"×", "times"},
      {"÷", "divided by"},
      {"°", "degrees"},
      {"π", "pi"},
      {"µ", "micro"},
      {"μ", "micro"},
      {"√", "the square root of"},
      {"∞", "infinity"},
      {"−", "minus"},
  };
  return kWords;
}

bool is_keep_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '.' || c == ',' ||
         c == '?' || c == '!';
}

bool is_sentence_punct(char c) { return c == '.' || c == ',' || c == '?' || c == '!'; }

struct Rewriter {
  const std::string& in;
  std::string out;
  int dropped = 0;

  explicit Rewriter(const std::string& raw) : in(raw) { out.reserve(raw.size() + 16); }

  void emit_word(std::string_view word) {
    if (word.empty()) return;
    out.push_back(' ');
    out.append(word);
    out.push_back(' ');
  }

  // Reads a balanced {...} group starting at pos (which must point at '{')
  // and returns the content span; advances pos past the group.
  std::string_view brace_group(std::size_t& pos) {
    std::size_t depth = 0;
    const std::size_t start = pos + 1;
    for (std::size_t i = pos; i < in.size(); ++i) {
      if (in[i] == '{') ++depth;
      if (in[i] == '}') {
        --depth;
        if (depth == 0) {
          pos = i + 1;
          return std::string_view(in).substr(start, i - start);
        }
      }
    }
    pos = in.size();  // unbalanced: consume the rest
    return std::string_view(in).substr(start);
  }

  // Next superscript/subscript argument: a brace group or one character.
  std::string argument(std::size_t& pos) {
    if (pos < in.size() && in[pos] == '{') {
      return std::string(brace_group(pos));
    }
    if (pos < in.size()) {
      std::string one(1, in[pos]);
      ++pos;
      return one;
    }
    return {};
  }

  void command(std::size_t& pos) {
    ++pos;  // backslash
    if (pos >= in.size()) return;
    const char first = in[pos];
    if (std::isalpha(static_cast<unsigned char>(first)) == 0) {
      // Single-character escapes: \% \& \$ etc. behave like the bare symbol.
      ascii_symbol(first);
      ++pos;
      return;
    }
    std::size_t end = pos;
    while (end < in.size() && std::isalpha(static_cast<unsigned char>(in[end])) != 0) ++end;
    const std::string_view name = std::string_view(in).substr(pos, end - pos);
    pos = end;
    if (name == "frac") {
      std::string a, b;
      skip_spaces(pos);
      if (pos < in.size() && in[pos] == '{') a = std::string(brace_group(pos));
      skip_spaces(pos);
      if (pos < in.size() && in[pos] == '{') b = std::string(brace_group(pos));
      NormalizeResult na = normalize_text(a);
      NormalizeResult nb = normalize_text(b);
      dropped += na.dropped + nb.dropped;
      emit_word(na.text + " over " + nb.text);
      return;
    }
    if (name == "sqrt") {
      skip_spaces(pos);
      std::string a;
      if (pos < in.size() && in[pos] == '{') a = std::string(brace_group(pos));
      NormalizeResult na = normalize_text(a);
      dropped += na.dropped;
      emit_word("the square root of " + na.text);
      return;
    }
    auto it = command_words().find(name);
    if (it != command_words().end()) {
      emit_word(it->second);
    } else {
      ++dropped;  // unknown command
    }
  }

  void skip_spaces(std::size_t& pos) {
    while (pos < in.size() && in[pos] == ' ') ++pos;
  }

  void superscript(std::size_t& pos) {
    ++pos;
    const std::string arg = argument(pos);
    NormalizeResult na = normalize_text(arg);
    dropped += na.dropped;
    if (na.text == "2") {
      emit_word("squared");
    } else if (na.text == "3") {
      emit_word("cubed");
    } else {
      emit_word("to the power of " + na.text);
    }
  }

  void subscript(std::size_t& pos) {
    ++pos;
    const std::string arg = argument(pos);
    NormalizeResult na = normalize_text(arg);
    dropped += na.dropped;
    emit_word("sub " + na.text);
  }

  void ascii_symbol(char c) {
    switch (c) {
      case '%': emit_word("percent"); break;
      case '&': emit_word("and"); break;
      case '+': emit_word("plus"); break;
      case '=': emit_word("equals"); break;
      case '/': emit_word("over"); break;
      case '<': emit_word("less than"); break;
      case '>': emit_word("greater than"); break;
      case '*': emit_word("times"); break;
      case '@': emit_word("at"); break;
      case '#': emit_word("number"); break;
      case ';':
      case ':': out.push_back(','); break;
      // Delimiters and quotes carry no spoken content.
      case '$': case '"': case '\'': case '`':
      case '(': case ')': case '[': case ']':
      case '{': case '}': case '|': break;
      case '~': out.push_back(' '); break;
      default: ++dropped; break;
    }
  }

  void hyphen(std::size_t pos) {
    const bool digit_before = pos > 0 && std::isdigit(static_cast<unsigned char>(in[pos - 1]));
    const bool digit_after =
        pos + 1 < in.size() && std::isdigit(static_cast<unsigned char>(in[pos + 1]));
    if (digit_before || digit_after) {
      emit_word("minus");
    } else {
      out.push_back(' ');
    }
  }

  void unicode(std::size_t& pos) {
    const auto lead = static_cast<unsigned char>(in[pos]);
    std::size_t len = 1;
    if ((lead >> 5) == 0x6) len = 2;
    else if ((lead >> 4) == 0xe) len = 3;
    else if ((lead >> 3) == 0x1e) len = 4;
    if (pos + len > in.size()) len = in.size() - pos;
    const std::string_view seq = std::string_view(in).substr(pos, len);
    pos += len;
    auto it = unicode_words().find(seq);
    if (it != unicode_words().end()) {
      emit_word(it->second);
    } else if (seq == "…") {
      out.push_back('.');
    } else if (seq == "–" || seq == "—") {
      out.push_back(' ');
    } else if (seq == "‘" || seq == "’" || seq == "“" || seq == "”") {
      // quotes: silent
    } else {
      ++dropped;
    }
  }

  void run() {
    std::size_t pos = 0;
    while (pos < in.size()) {
      const char c = in[pos];
      const auto uc = static_cast<unsigned char>(c);
      if (uc >= 0x80) {
        unicode(pos);
      } else if (c == '\\') {
        command(pos);
      } else if (c == '^') {
        superscript(pos);
      } else if (c == '_') {
        subscript(pos);
      } else if (c == '-') {
        hyphen(pos);
        ++pos;
      } else if (is_keep_char(c)) {
        out.push_back(c);
        ++pos;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        out.push_back(' ');
        ++pos;
      } else if (std::isprint(uc) != 0) {
        ascii_symbol(c);
        ++pos;
      } else {
        ++dropped;  // control characters
        ++pos;
      }
    }
  }
};

// Collapses whitespace runs, removes space before sentence punctuation, and
// collapses punctuation runs to their first character.
std::string cleanup(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ') {
      if (out.empty() || out.back() == ' ') continue;
      out.push_back(' ');
      continue;
    }
    if (is_sentence_punct(c)) {
      while (!out.empty() && out.back() == ' ') out.pop_back();
      if (!out.empty() && is_sentence_punct(out.back())) continue;
      out.push_back(c);
      continue;
    }
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  std::size_t start = 0;
  while (start < out.size() && out[start] == ' ') ++start;
  return out.substr(start);
}

}  // namespace

NormalizeResult normalize_text(const std::string& raw) {
  Rewriter rw(raw);
  rw.run();
  return NormalizeResult{cleanup(rw.out), rw.dropped};
}

}  // namespace sivr
