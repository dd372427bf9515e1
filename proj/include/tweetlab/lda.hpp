#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tweetlab/content.hpp"

namespace tweetlab {

enum class LdaWeighting { bow, tfidf_scaled };

struct LdaOptions {
  int topics = 10;
  double alpha = 0.0;  // <= 0 picks the 50/K default
  double beta = 0.01;
  int passes = 500;
  std::uint64_t seed = 1;
  LdaWeighting weighting = LdaWeighting::tfidf_scaled;
  // When > 0, rebuild the count matrices from the assignments every this-many
  // sweeps and compare with the incrementally maintained ones.
  int bookkeeping_interval = 0;
};

struct TopicModel {
  int K = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<std::vector<std::uint32_t>> topic_word_counts;  // K x V
  std::vector<std::vector<std::uint32_t>> doc_topic_counts;   // D x K
  std::vector<std::uint32_t> topic_totals;                    // K
  std::vector<std::vector<int>> tokens;        // expanded token ids per doc
  std::vector<std::vector<int>> assignments;   // same shape as tokens
  std::vector<size_t> kept_docs;               // corpus doc index per model doc
  std::uint64_t bookkeeping_checks = 0;

  // Row-normalized distributions (plain count normalization; an empty row
  // falls back to uniform so rows always sum to 1).
  std::vector<std::vector<double>> topic_word() const;
  std::vector<std::vector<double>> doc_topic() const;
  // Top-n term ids per topic, by count descending, ties toward lower ids.
  std::vector<std::vector<int>> top_words(int n) const;
};

// Collapsed Gibbs sampling over token-topic assignments. Deterministic for a
// fixed seed. With tfidf_scaled weighting each (doc, term) multiplicity is
// max(1, round(10 * tfidf)). Documents that end up with zero tokens are
// dropped (tracked via kept_docs).
TopicModel train_lda(const Corpus& corpus, const LdaOptions& options);

// Throws std::logic_error when the incremental counts diverge from the
// assignments (used by the bookkeeping checks and tests).
void verify_bookkeeping(const TopicModel& model);

struct CoherenceResult {
  std::vector<double> per_topic;  // each in [-1, 1]
  double mean = 0.0;
  std::uint64_t missing_top_words = 0;  // top words absent from the corpus
};

// C_v-style coherence: boolean sliding-window co-occurrence, NPMI vectors
// (one word versus the topic's top-n set, self included), cosine similarity,
// arithmetic means. Documents shorter than the window form one window.
CoherenceResult coherence_cv(const Corpus& corpus,
                             const std::vector<std::vector<int>>& topic_top_words,
                             int window = 110);
CoherenceResult coherence_cv(const TopicModel& model, const Corpus& corpus,
                             int top_n = 10, int window = 110);

struct TopicCountSelection {
  int chosen = 0;
  std::vector<std::pair<int, double>> curve;  // K -> mean coherence
};

// Mean coherence over `repeats` seeded runs per candidate; picks the smallest
// K whose relative gain to the next candidate drops below the threshold, the
// last candidate when the curve keeps climbing.
TopicCountSelection select_topic_count(const Corpus& corpus,
                                       std::span<const int> candidates, int repeats,
                                       const LdaOptions& base,
                                       double elbow_threshold = 0.05, int workers = 1);

}  // namespace tweetlab
