#ifndef GLIMPSE_TFIDF_H_
#define GLIMPSE_TFIDF_H_

#include <map>
#include <string>
#include <vector>

namespace glimpse {

// Sparse term -> weight vector. std::map keeps dot products in a fixed
// summation order.
using SparseVector = std::map<std::string, double>;

// TF-IDF weights with raw term counts and smoothed inverse document frequency
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
// fitted on a set of tokenized documents. Terms never seen during fitting get
// df = 0.
class TfidfModel {
 public:
  explicit TfidfModel(const std::vector<std::vector<std::string>>& documents);

  double idf(const std::string& term) const;
  SparseVector vectorize(const std::vector<std::string>& tokens) const;
  std::size_t num_documents() const { return num_documents_; }

 private:
  std::size_t num_documents_;
  std::map<std::string, std::size_t> document_frequency_;
};

double dot(const SparseVector& a, const SparseVector& b);
double norm(const SparseVector& v);
// Cosine similarity; 0 when either vector is zero.
double cosine(const SparseVector& a, const SparseVector& b);

}  // namespace glimpse

#endif  // GLIMPSE_TFIDF_H_
