#pragma once

#include <cstddef>
#include <vector>

#include "beliefs/stochastic.hpp"

namespace beliefs {

// Index sequence into a MatrixFamily; the product it denotes is
// members[w[0]] * members[w[1]] * ... (left to right).
using Word = std::vector<std::size_t>;

// Finite set of same-shape stochastic matrices with strictly positive
// sampling weights that sum to one.
class MatrixFamily {
 public:
  // Weights must be positive and sum to one within 1e-6; they are rescaled
  // to sum to one exactly. Throws ShapeMismatch on mixed shapes.
  MatrixFamily(std::vector<StochMatrix> members, std::vector<double> weights);

  static MatrixFamily uniform(std::vector<StochMatrix> members);
  static MatrixFamily singleton(StochMatrix member);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t rows() const noexcept { return members_.front().rows(); }
  std::size_t cols() const noexcept { return members_.front().cols(); }
  bool is_square() const noexcept { return rows() == cols(); }

  const StochMatrix& member(std::size_t i) const { return members_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<StochMatrix>& members() const noexcept { return members_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<StochMatrix> members_;
  std::vector<double> weights_;
};

// Real-valued product of the family members named by the word.
StochMatrix word_product(const MatrixFamily& family, const Word& word);

}  // namespace beliefs
