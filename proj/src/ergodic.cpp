#include "beliefs/ergodic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "beliefs/chain_structure.hpp"
#include "beliefs/error.hpp"
#include "beliefs/homogeneous.hpp"
#include "beliefs/kernels.hpp"
#include "linalg.hpp"

namespace beliefs {
namespace {

void require_square(const StochMatrix& p) {
  if (!p.is_square()) {
    throw Error(ErrorCode::NotSquare, std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  }
}

// Positivity pattern: bit j of rows[i] is set iff entry (i,j) > 0.
struct Pattern {
  std::array<std::uint16_t, kMaxPatternDim> rows{};
  bool operator==(const Pattern&) const = default;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint16_t r : p.rows) {
      h ^= r;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

Pattern pattern_of(const StochMatrix& m) {
  Pattern p;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) > 0.0) p.rows[i] |= static_cast<std::uint16_t>(1U << j);
    }
  }
  return p;
}

Pattern boolean_product(const Pattern& a, const Pattern& b, std::size_t n) {
  Pattern c;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint16_t acc = 0;
    for (std::uint16_t bits = a.rows[i]; bits != 0; bits &= static_cast<std::uint16_t>(bits - 1)) {
      acc |= b.rows[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    c.rows[i] = acc;
  }
  return c;
}

bool pattern_scrambling(const Pattern& p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((p.rows[i] & p.rows[j]) == 0) return false;
    }
  }
  return true;
}

bool pattern_sia(const Pattern& p, std::size_t n) {
  TransitionGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p.rows[i] & (1U << j)) g.successors[i].push_back(j);
    }
  }
  const ChainStructure cs = analyze(g);
  return cs.is_indecomposable() && cs.is_aperiodic();
}

// Breadth-first enumeration of the pattern semigroup generated by the
// family. Patterns are visited in order of their shortest word, ties broken
// lexicographically, so witnesses do not depend on hashing.
class PatternSemigroup {
 public:
  PatternSemigroup(const MatrixFamily& family, std::size_t budget)
      : n_(family.rows()), budget_(budget) {
    if (!family.is_square()) throw Error(ErrorCode::ShapeMismatch, "family members are not square");
    if (n_ > kMaxPatternDim) {
      throw Error(ErrorCode::BudgetExceeded,
                  "dimension " + std::to_string(n_) + " exceeds pattern limit " +
                      std::to_string(kMaxPatternDim));
    }
    for (const auto& m : family.members()) gens_.push_back(pattern_of(m));
  }

  std::size_t dim() const { return n_; }
  std::size_t visited() const { return pats_.size(); }

  // Calls visit(pattern, id) on each new pattern until it returns true.
  // Returns the id of the stopping pattern, if any.
  template <class Visit>
  std::optional<std::size_t> explore(Visit visit) {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (auto id = add(gens_[k], kNoParent, k); id && visit(pats_[*id], *id)) return id;
    }
    for (std::size_t head = 0; head < pats_.size(); ++head) {
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        const Pattern next = boolean_product(pats_[head], gens_[k], n_);
        if (auto id = add(next, head, k); id && visit(pats_[*id], *id)) return id;
      }
    }
    return std::nullopt;
  }

  Word word(std::size_t id) const {
    Word w;
    for (std::size_t at = id; at != kNoParent; at = parent_[at]) w.push_back(letter_[at]);
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

  std::optional<std::size_t> add(const Pattern& p, std::size_t parent, std::size_t letter) {
    if (index_.contains(p)) return std::nullopt;
    if (pats_.size() >= budget_) {
      throw Error(ErrorCode::BudgetExceeded, std::to_string(pats_.size()) + " patterns");
    }
    index_.emplace(p, pats_.size());
    pats_.push_back(p);
    parent_.push_back(parent);
    letter_.push_back(letter);
    return pats_.size() - 1;
  }

  std::size_t n_;
  std::size_t budget_;
  std::vector<Pattern> gens_;
  std::vector<Pattern> pats_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> letter_;
  std::unordered_map<Pattern, std::size_t, PatternHash> index_;
};

double subdominant_of(const Matrix& p) {
  if (p.rows() == 1) return 0.0;
  const auto ev = linalg::eigenvalues(p);
  std::size_t unit = 0;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    if (std::abs(ev[k] - 1.0) < std::abs(ev[unit] - 1.0)) unit = k;
  }
  double best = 0.0;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    if (k != unit) best = std::max(best, std::abs(ev[k]));
  }
  return std::min(best, 1.0);
}

double spectral_radius(const Matrix& a) {
  double best = 0.0;
  for (const auto& v : linalg::eigenvalues(a)) best = std::max(best, std::abs(v));
  return best;
}

struct Factor {
  double lambda = 0.0;
  double transient = 0.0;
};

// Slowest closed-class rate and the transient decay of one structure.
Factor structure_factor(const StochMatrix& p) {
  const ChainStructure cs = analyze(p);
  const auto& cond = cs.condensation;
  Factor f;
  for (std::size_t c : cond.leaf_classes) {
    if (cs.class_period(c) != 1) {
      throw Error(ErrorCode::NotSIA, "closed class " + std::to_string(c) + " has period " +
                                         std::to_string(cs.class_period(c)));
    }
    f.lambda = std::max(f.lambda, subdominant_of(linalg::restrict(p.matrix(), cond.classes[c])));
  }
  std::vector<std::size_t> transient;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (cs.states.kind[i] == StateKind::Transient) transient.push_back(i);
  }
  if (!transient.empty()) f.transient = spectral_radius(linalg::restrict(p.matrix(), transient));
  return f;
}

double row_sum_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::fabs(v);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double ergodic_coefficient(const StochMatrix& p) {
  require_square(p);
  if (p.rows() < 2) throw Error(ErrorCode::TooSmall, "ergodic coefficient needs two rows");
  const auto& k = kernels::active();
  double gamma = 1.0;
  for (std::size_t a = 0; a < p.rows(); ++a) {
    for (std::size_t b = a + 1; b < p.rows(); ++b) {
      gamma = std::min(gamma, k.min_overlap(p.row(a).data(), p.row(b).data(), p.cols()));
    }
  }
  return std::clamp(gamma, 0.0, 1.0);
}

double scrambling_lambda(const StochMatrix& p) { return 1.0 - ergodic_coefficient(p); }

bool is_scrambling(const StochMatrix& p) { return scrambling_lambda(p) < 1.0; }

bool is_sia(const StochMatrix& p) {
  const ChainStructure cs = analyze(p);
  return cs.is_indecomposable() && cs.is_aperiodic();
}

SiaVerdict all_products_sia(const MatrixFamily& family, std::size_t budget) {
  PatternSemigroup sg(family, budget);
  const std::size_t n = sg.dim();
  SiaVerdict v;
  const auto bad = sg.explore([n](const Pattern& p, std::size_t) { return !pattern_sia(p, n); });
  v.pattern_count = sg.visited();
  if (bad) {
    v.all_sia = false;
    v.counterexample = sg.word(*bad);
  }
  return v;
}

std::optional<Word> exists_scrambling_product(const MatrixFamily& family, std::size_t budget) {
  PatternSemigroup sg(family, budget);
  const std::size_t n = sg.dim();
  const auto hit = sg.explore([n](const Pattern& p, std::size_t) { return pattern_scrambling(p, n); });
  if (!hit) return std::nullopt;
  return sg.word(*hit);
}

double subdominant_modulus(const StochMatrix& p) {
  require_square(p);
  const ChainStructure cs = analyze(p);
  if (!cs.is_indecomposable() || !cs.is_aperiodic()) {
    throw Error(ErrorCode::NotSIA, cs.is_indecomposable() ? "periodic" : "decomposable");
  }
  return subdominant_of(p.matrix());
}

double subdominant_modulus_by_powers(const StochMatrix& p, std::size_t squarings) {
  require_square(p);
  if (!is_sia(p)) throw Error(ErrorCode::NotSIA, "power estimate");
  const std::vector<double> pi = stationary_distribution(p);
  const std::size_t n = p.rows();
  Matrix x = p.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x(i, j) -= pi[j];
  }
  // x holds B^k / exp(log_scale) with k = 2^s; compare norms of B^k and B^2k.
  double estimate = 0.0;
  double log_scale = 0.0;
  double k = 1.0;
  for (std::size_t s = 0; s < squarings; ++s) {
    const double norm_k = row_sum_norm(x);
    if (norm_k == 0.0) return 0.0;
    const double log_k = log_scale + std::log(norm_k);
    for (std::size_t i = 0; i < n; ++i) {
      for (double& v : x.row(i)) v /= norm_k;
    }
    x = matmul(x, x);
    log_scale = 2.0 * log_k;
    const double norm_2k = row_sum_norm(x);
    if (norm_2k == 0.0) return 0.0;
    estimate = std::exp((log_scale + std::log(norm_2k) - log_k) / k);
    k *= 2.0;
  }
  return estimate;
}

std::uint64_t nu_star(std::size_t n) {
  if (n == 0 || n > 40) throw Error(ErrorCode::InvalidArgument, "nu* defined here for 1 <= N <= 40");
  std::uint64_t three = 1;
  for (std::size_t i = 0; i < n; ++i) three *= 3;
  const std::uint64_t two = std::uint64_t{1} << (n + 1);
  return (three - two + 1) / 2;
}

double RateCertificate::bound(std::size_t n) const {
  const double c = constant_hint.value_or(1.0);
  return c * std::pow(base, static_cast<double>(n / block));
}

RateCertificate homogeneous_rate_certificate(const StochMatrix& p, const StochMatrix& h,
                                             const std::optional<BeliefMatrix>& probe,
                                             std::size_t fit_horizon) {
  require_square(p);
  require_square(h);
  const Factor fp = structure_factor(p);
  const Factor fh = structure_factor(h);

  RateCertificate cert;
  cert.kind = CertificateKind::Homogeneous;
  cert.block = 1;
  cert.base = fp.lambda * fh.lambda;
  cert.factor_bases = {fp.lambda, fh.lambda};
  cert.transient_decay = fp.transient;

  BeliefMatrix m = probe ? *probe : [&] {
    Matrix unit(p.rows(), h.rows(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i) unit(i, i % h.rows()) = 1.0;
    return BeliefMatrix(validate_stochastic(std::move(unit)));
  }();
  const Matrix lim = limit_q(p, m, h).limit.matrix();
  const EvolutionTrace trace = evolve(p, m, h, fit_horizon);
  double c = 0.0;
  for (std::size_t n = 0; n <= fit_horizon; ++n) {
    const double scale = std::pow(cert.base, static_cast<double>(n));
    if (scale < 1e-300) break;
    c = std::max(c, max_abs_diff(trace.snapshots[n].matrix(), lim) / scale);
  }
  cert.constant_hint = c;
  cert.constant_is_fitted = true;
  return cert;
}

RateCertificate inhomogeneous_rate_certificate(const MatrixFamily& family,
                                               std::optional<std::size_t> nu,
                                               std::size_t budget) {
  const SiaVerdict verdict = all_products_sia(family, budget);
  if (!verdict.all_sia) {
    throw Error(ErrorCode::NotConvergentFamily, "a product of length " +
                                                    std::to_string(verdict.counterexample->size()) +
                                                    " is not SIA");
  }
  const std::size_t n = family.rows();
  const std::uint64_t star = nu_star(n);

  if (!nu) {
    // Layer k holds the distinct patterns of all words of length k.
    std::vector<Pattern> gens;
    for (const auto& m : family.members()) gens.push_back(pattern_of(m));
    std::unordered_set<Pattern, PatternHash> layer(gens.begin(), gens.end());
    for (std::uint64_t k = 1; k <= star; ++k) {
      if (std::all_of(layer.begin(), layer.end(),
                      [n](const Pattern& p) { return pattern_scrambling(p, n); })) {
        nu = static_cast<std::size_t>(k);
        break;
      }
      std::unordered_set<Pattern, PatternHash> next;
      for (const Pattern& p : layer) {
        for (const Pattern& g : gens) next.insert(boolean_product(p, g, n));
      }
      if (next.size() > budget) throw Error(ErrorCode::BudgetExceeded, "pattern layer");
      layer.swap(next);
    }
    if (!nu) throw Error(ErrorCode::NotConvergentFamily, "no scrambling block length up to nu*");
  }
  if (*nu == 0) throw Error(ErrorCode::InvalidArgument, "block length must be positive");

  const std::size_t letters = family.size();
  double words = 1.0;
  for (std::size_t i = 0; i < *nu; ++i) words *= double(letters);
  if (words > double(budget)) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(letters) + "^" + std::to_string(*nu) +
                                               " words of block length");
  }

  // Depth-first over words with shared prefix products.
  double gamma = 2.0;
  Word worst;
  Word word;
  std::vector<Matrix> prefix{Matrix::identity(n)};
  auto dfs = [&](auto&& self) -> void {
    if (word.size() == *nu) {
      const double g = ergodic_coefficient(revalidate_product(prefix.back(), kDefaultTolerance));
      if (g < gamma) {
        gamma = g;
        worst = word;
      }
      return;
    }
    for (std::size_t k = 0; k < letters; ++k) {
      word.push_back(k);
      prefix.push_back(matmul(prefix.back(), family.member(k).matrix()));
      self(self);
      prefix.pop_back();
      word.pop_back();
    }
  };
  dfs(dfs);

  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "block length " + std::to_string(*nu) + " admits a non-scrambling product");
  }
  RateCertificate cert;
  cert.kind = CertificateKind::Inhomogeneous;
  cert.base = 1.0 - gamma;
  cert.block = *nu;
  cert.constant_hint = 1.0;
  cert.constant_is_fitted = false;
  cert.witness_word = worst;
  cert.nu_star = star;
  return cert;
}

}  // namespace beliefs
