#include "samac/codebook.hpp"

#include <algorithm>
#include <stdexcept>

#include "samac/rng.hpp"

namespace samac {

namespace {
void check_gen_args(const Distribution& p, int n, int m, Symbol idle) {
  if (n < 1) throw std::invalid_argument("gen_codebook: n must be >= 1");
  if (m < 1) throw std::invalid_argument("gen_codebook: M must be >= 1");
  if (p.alphabet_size() > 256) throw std::invalid_argument("gen_codebook: alphabet too large");
  if (idle >= p.alphabet_size()) throw std::invalid_argument("gen_codebook: idle out of alphabet");
}
}  // namespace

Codebook gen_codebook_cc(const Distribution& p, int n, int m, int user_id, Symbol idle,
                         std::uint64_t seed) {
  check_gen_args(p, n, m, idle);
  TypeComposition comp = round_to_type(p, n);
  if (comp.counts[idle] == n)
    throw std::invalid_argument("gen_codebook_cc: composition is all-idle");

  std::vector<Symbol> base;
  base.reserve(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < comp.counts.size(); ++a)
    base.insert(base.end(), static_cast<std::size_t>(comp.counts[a]), static_cast<Symbol>(a));

  Rng rng(seed);
  Codebook book;
  book.kind = CodebookKind::constant_composition;
  book.user_id = user_id;
  book.composition = comp;
  book.codewords.reserve(static_cast<std::size_t>(m));
  for (int msg = 0; msg < m; ++msg) {
    std::vector<Symbol> word = base;
    rng.shuffle(word);  // uniform over the type class
    book.codewords.push_back(std::move(word));
  }
  return book;
}

Codebook gen_codebook_iid(const Distribution& p, int n, int m, int user_id, Symbol idle,
                          std::uint64_t seed) {
  check_gen_args(p, n, m, idle);
  if (p[idle] == 1.0)
    throw std::invalid_argument("gen_codebook_iid: point mass on the idle symbol");

  Rng rng(seed);
  Codebook book;
  book.kind = CodebookKind::iid;
  book.user_id = user_id;
  book.source = p;
  book.codewords.reserve(static_cast<std::size_t>(m));
  const auto probs = p.probs();
  for (int msg = 0; msg < m; ++msg) {
    std::vector<Symbol> word(static_cast<std::size_t>(n));
    while (true) {
      bool all_idle = true;
      for (auto& s : word) {
        s = static_cast<Symbol>(rng.sample(probs));
        all_idle = all_idle && s == idle;
      }
      if (!all_idle) break;
      ++book.redraw_count;
    }
    book.codewords.push_back(std::move(word));
  }
  return book;
}

}  // namespace samac
