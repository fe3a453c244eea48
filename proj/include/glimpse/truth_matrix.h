#ifndef GLIMPSE_TRUTH_MATRIX_H_
#define GLIMPSE_TRUTH_MATRIX_H_

#include <string>
#include <vector>

#include "glimpse/matrix.h"

namespace glimpse {

// N x K log-likelihoods (nats): rows are documents, columns are candidates.
// Entry (d, s) approximates ln LM(s | d). Every entry is finite.
struct TruthMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> cand_ids;
  Matrix values;
  std::vector<std::string> warnings;

  std::size_t num_docs() const { return doc_ids.size(); }
  std::size_t num_candidates() const { return cand_ids.size(); }
};

// Throws DataError if the shape disagrees with the id lists or an entry is
// not finite.
void validate(const TruthMatrix& m);

}  // namespace glimpse

#endif  // GLIMPSE_TRUTH_MATRIX_H_
