#include "ecd/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecd/error.hpp"
#include "ecd/metrics.hpp"
#include "ecd/parallel.hpp"

namespace ecd {
namespace {

/// Index of the largest score not yet taken; ties go to the lower index.
std::size_t best_remaining(const std::vector<double>& score, const std::vector<char>& taken) {
  std::size_t best = score.size();
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (taken[i]) continue;
    if (best == score.size() || score[i] > score[best]) best = i;
  }
  return best;
}

/// Greedy loop shared by the diversity and combined strategies: the seed is
/// the top-quality solution, each later pick maximizes gain(candidate, chosen).
template <typename Gain>
std::vector<std::size_t> greedy(const SolutionScoreboard& sb, std::size_t s, Gain gain) {
  const auto total = sb.size();
  s = std::min(s, total);
  std::vector<std::size_t> chosen;
  if (s == 0) return chosen;
  std::vector<char> taken(total, 0);
  chosen.push_back(best_remaining(sb.quality, taken));
  taken[chosen.back()] = 1;
  std::vector<double> score(total);
  while (chosen.size() < s) {
    for (std::size_t i = 0; i < total; ++i) score[i] = taken[i] ? 0.0 : gain(i, chosen);
    chosen.push_back(best_remaining(score, taken));
    taken[chosen.back()] = 1;
  }
  return chosen;
}

std::vector<std::size_t> top_by(const std::vector<double>& score, std::size_t s) {
  std::vector<std::size_t> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  idx.resize(std::min(s, idx.size()));
  return idx;
}

}  // namespace

SolutionScoreboard scoreboard_from_similarity(DenseMatrix similarity) {
  if (similarity.rows != similarity.cols) throw InvalidArgument("scoreboard: similarity matrix must be square");
  SolutionScoreboard sb;
  sb.quality.assign(similarity.rows, 0.0);
  for (std::size_t i = 0; i < similarity.rows; ++i) {
    for (std::size_t j = 0; j < similarity.cols; ++j) {
      if (i != j) sb.quality[i] += similarity(i, j);
    }
  }
  sb.similarity = std::move(similarity);
  return sb;
}

SolutionScoreboard score_solutions(std::span<const Partition> solutions, std::size_t threads) {
  const auto total = solutions.size();
  if (total == 0) throw InvalidArgument("score_solutions: no solutions");
  DenseMatrix sim(total, total, 1.0);
  parallel_for(total, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < total; ++j) sim(i, j) = nmi(solutions[i], solutions[j]);
  });
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) sim(j, i) = sim(i, j);
  }
  return scoreboard_from_similarity(std::move(sim));
}

std::vector<double> quality_scores(std::span<const Partition> solutions, std::size_t threads) {
  return score_solutions(solutions, threads).quality;
}

std::vector<std::size_t> select_quality(const SolutionScoreboard& sb, std::size_t s) { return top_by(sb.quality, s); }

std::vector<std::size_t> select_diversity(const SolutionScoreboard& sb, std::size_t s) {
  return greedy(sb, s, [&](std::size_t i, const std::vector<std::size_t>& chosen) {
    double sim = 0.0;
    for (auto c : chosen) sim += sb.similarity(i, c);
    return -sim;
  });
}

std::vector<std::size_t> select_combined(const SolutionScoreboard& sb, std::size_t s, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("select_combined: alpha must lie in [0, 1]");
  return greedy(sb, s, [&](std::size_t i, const std::vector<std::size_t>& chosen) {
    double diversity = 0.0;
    for (auto c : chosen) diversity += 1.0 - sb.similarity(i, c);
    return alpha * sb.quality[i] + (1.0 - alpha) * diversity;
  });
}

VrrwResult select_vrrw(const SolutionScoreboard& sb, std::size_t s, const VrrwOptions& options) {
  const auto total = sb.size();
  if (total == 0) throw InvalidArgument("select_vrrw: no solutions");
  if (!(options.lambda >= 0.0 && options.lambda <= 1.0)) throw InvalidArgument("select_vrrw: lambda must lie in [0, 1]");
  if (!(options.alpha >= 0.0 && options.alpha <= 1.0)) throw InvalidArgument("select_vrrw: alpha must lie in [0, 1]");

  // Prior proportional to quality.
  std::vector<double> prior(sb.quality);
  const double qsum = std::accumulate(prior.begin(), prior.end(), 0.0);
  for (auto& p : prior) p = qsum > 0.0 ? p / qsum : 1.0 / static_cast<double>(total);

  // Organic transitions: diversity-weighted moves plus a lazy self-loop.
  DenseMatrix organic(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    double wdeg = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      if (j != i) wdeg += 1.0 - sb.similarity(i, j);
    }
    for (std::size_t j = 0; j < total; ++j) {
      if (j == i) {
        organic(i, j) = total == 1 ? 1.0 : 1.0 - options.alpha;
      } else if (wdeg > 0.0) {
        organic(i, j) = options.alpha * (1.0 - sb.similarity(i, j)) / wdeg;
      } else {
        organic(i, j) = options.alpha / static_cast<double>(total - 1);
      }
    }
  }

  VrrwResult r;
  std::vector<double> occ(total, 1.0 / static_cast<double>(total)), next(total);
  const double lambda = options.lambda;
  for (r.iterations = 1; r.iterations <= options.max_iterations; ++r.iterations) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < total; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < total; ++k) d += organic(i, k) * occ[k];
      for (std::size_t j = 0; j < total; ++j) {
        const double reinforced = d > 0.0 ? organic(i, j) * occ[j] / d : organic(i, j);
        next[j] += ((1.0 - lambda) * prior[j] + lambda * reinforced) * occ[i];
      }
    }
    const double sum = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
      next[k] /= sum;
      change = std::max(change, std::abs(next[k] - occ[k]));
    }
    r.max_normalization_error =
        std::max(r.max_normalization_error, std::abs(std::accumulate(next.begin(), next.end(), 0.0) - 1.0));
    occ.swap(next);
    if (change < options.tolerance) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, options.max_iterations);
  r.occupancy = occ;
  r.selected = top_by(occ, s);
  return r;
}

}  // namespace ecd
