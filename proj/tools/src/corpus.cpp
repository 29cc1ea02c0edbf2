#include "goedel/cli/corpus.hpp"

#include "goedel/interpolation.hpp"
#include "goedel/syntax.hpp"

namespace goedel::cli {

std::vector<Formula> semantic_corpus(const std::vector<std::string>& atoms, bool g_only,
                                     std::size_t depth) {
  CloneOptions options;
  options.max_depth = depth;
  return clone_closure(atoms, !g_only, options)->witnesses;
}

std::vector<Formula> syntactic_corpus(const std::vector<std::string>& atoms, bool g_only,
                                      std::size_t depth) {
  Signature sig;
  for (const auto& a : atoms) sig.add_relation(a, 0);
  return enumerate_closed_formulas(sig, depth, !g_only);
}

}  // namespace goedel::cli
