#pragma once

#include <string>

namespace sivr {

struct NormalizeResult {
  std::string text;
  int dropped = 0;  // count of unknown symbols that were dropped
};

/// Rewrites raw text (possibly containing LaTeX fragments and non-standard
/// symbols) into speakable form: ASCII words, digits, and the sentence
/// punctuation set {. , ? !} with single spaces. The finite rule table is
/// documented in docs/vocalization_rules.md. Unknown symbols are dropped and
/// counted in the result; the function never fails and is idempotent.
NormalizeResult normalize_text(const std::string& raw);

}  // namespace sivr
