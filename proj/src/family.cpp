#include "beliefs/family.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "beliefs/error.hpp"

namespace beliefs {

MatrixFamily::MatrixFamily(std::vector<StochMatrix> members, std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidArgument, "family has no members");
  if (weights_.size() != members_.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(members_.size()) + " members but " +
                                                std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i].rows() != rows() || members_[i].cols() != cols()) {
      throw Error(ErrorCode::ShapeMismatch, "member " + std::to_string(i) + " is " +
                                                std::to_string(members_[i].rows()) + "x" +
                                                std::to_string(members_[i].cols()));
    }
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "weight " + std::to_string(i) + " is not positive");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::fabs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::InvalidArgument, "weights sum to " + std::to_string(total));
  }
  for (double& w : weights_) w /= total;
}

MatrixFamily MatrixFamily::uniform(std::vector<StochMatrix> members) {
  const std::size_t n = members.size();
  return MatrixFamily(std::move(members), std::vector<double>(n, n ? 1.0 / double(n) : 0.0));
}

MatrixFamily MatrixFamily::singleton(StochMatrix member) {
  std::vector<StochMatrix> members;
  members.push_back(std::move(member));
  return MatrixFamily(std::move(members), {1.0});
}

StochMatrix word_product(const MatrixFamily& family, const Word& word) {
  if (word.empty()) return StochMatrix::identity(family.rows());
  StochMatrix acc = family.member(word.front());
  for (std::size_t k = 1; k < word.size(); ++k) acc = multiply(acc, family.member(word[k]));
  return acc;
}

}  // namespace beliefs
