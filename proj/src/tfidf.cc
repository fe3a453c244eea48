#include "glimpse/tfidf.h"

#include <cmath>
#include <set>

namespace glimpse {

TfidfModel::TfidfModel(const std::vector<std::vector<std::string>>& documents)
    : num_documents_(documents.size()) {
  for (const auto& doc : documents) {
    std::set<std::string> unique(doc.begin(), doc.end());
    for (const auto& term : unique) ++document_frequency_[term];
  }
}

double TfidfModel::idf(const std::string& term) const {
  auto it = document_frequency_.find(term);
  double df = it == document_frequency_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + static_cast<double>(num_documents_)) / (1.0 + df)) + 1.0;
}

SparseVector TfidfModel::vectorize(const std::vector<std::string>& tokens) const {
  SparseVector v;
  for (const auto& t : tokens) v[t] += 1.0;
  for (auto& [term, weight] : v) weight *= idf(term);
  return v;
}

double dot(const SparseVector& a, const SparseVector& b) {
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [term, w] : small) {
    auto it = large.find(term);
    if (it != large.end()) sum += w * it->second;
  }
  return sum;
}

double norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& [term, w] : v) sum += w * w;
  return std::sqrt(sum);
}

double cosine(const SparseVector& a, const SparseVector& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

}  // namespace glimpse
