#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "samac/distribution.hpp"

namespace samac {

enum class CodebookKind { constant_composition, iid };

/// M codewords of length n for one user. No codeword equals the all-idle
/// sequence; the i.i.d. generator enforces this by rejection.
struct Codebook {
  std::vector<std::vector<Symbol>> codewords;
  CodebookKind kind = CodebookKind::iid;
  int user_id = 0;
  std::optional<TypeComposition> composition;  // constant-composition books
  std::optional<Distribution> source;          // i.i.d. books
  int redraw_count = 0;                        // all-idle rejections (i.i.d. only)

  int message_count() const { return static_cast<int>(codewords.size()); }
  int block_length() const {
    return codewords.empty() ? 0 : static_cast<int>(codewords[0].size());
  }
};

/// Constant-composition codebook: each codeword is an independent uniform
/// draw from the type class of round_to_type(p, n). Deterministic given
/// the seed.
Codebook gen_codebook_cc(const Distribution& p, int n, int m, int user_id, Symbol idle,
                         std::uint64_t seed);

/// i.i.d. codebook according to p. All-idle codewords are redrawn and the
/// redraw count recorded. Deterministic given the seed.
Codebook gen_codebook_iid(const Distribution& p, int n, int m, int user_id, Symbol idle,
                          std::uint64_t seed);

}  // namespace samac
