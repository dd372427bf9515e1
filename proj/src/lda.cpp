#include "tweetlab/lda.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "tweetlab/util.hpp"

namespace tweetlab {

// --- training ---------------------------------------------------------------

namespace {

std::vector<std::vector<int>> expand_tokens(const Corpus& corpus,
                                            const LdaOptions& options,
                                            std::vector<size_t>& kept_docs) {
  std::vector<std::vector<int>> docs;
  kept_docs.clear();
  if (options.weighting == LdaWeighting::bow) {
    for (size_t d = 0; d < corpus.doc_count(); ++d) {
      if (corpus.documents[d].empty()) continue;
      docs.push_back(corpus.documents[d]);
      kept_docs.push_back(d);
    }
    return docs;
  }
  const auto weights = tfidf(corpus);
  for (size_t d = 0; d < corpus.doc_count(); ++d) {
    std::vector<int> expanded;
    for (const auto& [term, weight] : weights[d]) {
      const auto mult =
          std::max<std::int64_t>(1, std::llround(weight * 10.0));
      expanded.insert(expanded.end(), static_cast<size_t>(mult), term);
    }
    if (expanded.empty()) continue;
    docs.push_back(std::move(expanded));
    kept_docs.push_back(d);
  }
  return docs;
}

}  // namespace

void verify_bookkeeping(const TopicModel& model) {
  const size_t K = static_cast<size_t>(model.K);
  const size_t V = model.topic_word_counts.empty() ? 0 : model.topic_word_counts[0].size();
  std::vector<std::vector<std::uint32_t>> word_counts(K, std::vector<std::uint32_t>(V, 0));
  std::vector<std::vector<std::uint32_t>> doc_counts(
      model.tokens.size(), std::vector<std::uint32_t>(K, 0));
  std::vector<std::uint32_t> totals(K, 0);

  for (size_t d = 0; d < model.tokens.size(); ++d) {
    for (size_t n = 0; n < model.tokens[d].size(); ++n) {
      const int w = model.tokens[d][n];
      const int z = model.assignments[d][n];
      ++word_counts[static_cast<size_t>(z)][static_cast<size_t>(w)];
      ++doc_counts[d][static_cast<size_t>(z)];
      ++totals[static_cast<size_t>(z)];
    }
  }
  if (word_counts != model.topic_word_counts || doc_counts != model.doc_topic_counts ||
      totals != model.topic_totals)
    throw std::logic_error("LDA bookkeeping mismatch");
}

TopicModel train_lda(const Corpus& corpus, const LdaOptions& options) {
  if (options.topics < 1) throw std::invalid_argument("topic count must be >= 1");
  if (corpus.doc_count() == 0) throw std::invalid_argument("empty corpus");

  TopicModel model;
  model.K = options.topics;
  model.alpha = options.alpha > 0.0 ? options.alpha : 50.0 / options.topics;
  model.beta = options.beta;
  model.tokens = expand_tokens(corpus, options, model.kept_docs);
  if (model.tokens.empty()) throw std::invalid_argument("no non-empty documents");

  const size_t K = static_cast<size_t>(model.K);
  const size_t V = corpus.vocab_size();
  const size_t D = model.tokens.size();
  const double v_beta = static_cast<double>(V) * model.beta;

  model.topic_word_counts.assign(K, std::vector<std::uint32_t>(V, 0));
  model.doc_topic_counts.assign(D, std::vector<std::uint32_t>(K, 0));
  model.topic_totals.assign(K, 0);
  model.assignments.resize(D);

  Rng rng(options.seed);

  for (size_t d = 0; d < D; ++d) {
    model.assignments[d].resize(model.tokens[d].size());
    for (size_t n = 0; n < model.tokens[d].size(); ++n) {
      const int z = static_cast<int>(rng.uniform(K));
      model.assignments[d][n] = z;
      ++model.topic_word_counts[static_cast<size_t>(z)]
                               [static_cast<size_t>(model.tokens[d][n])];
      ++model.doc_topic_counts[d][static_cast<size_t>(z)];
      ++model.topic_totals[static_cast<size_t>(z)];
    }
  }

  std::vector<double> cdf(K);
  for (int pass = 1; pass <= options.passes; ++pass) {
    for (size_t d = 0; d < D; ++d) {
      auto& doc_topics = model.doc_topic_counts[d];
      for (size_t n = 0; n < model.tokens[d].size(); ++n) {
        const size_t w = static_cast<size_t>(model.tokens[d][n]);
        const size_t old_z = static_cast<size_t>(model.assignments[d][n]);
        --model.topic_word_counts[old_z][w];
        --doc_topics[old_z];
        --model.topic_totals[old_z];

        double sum = 0.0;
        for (size_t z = 0; z < K; ++z) {
          sum += (model.topic_word_counts[z][w] + model.beta) /
                 (model.topic_totals[z] + v_beta) * (doc_topics[z] + model.alpha);
          cdf[z] = sum;
        }
        const double u = rng.next_double() * sum;
        size_t new_z = 0;
        while (new_z + 1 < K && cdf[new_z] < u) ++new_z;

        ++model.topic_word_counts[new_z][w];
        ++doc_topics[new_z];
        ++model.topic_totals[new_z];
        model.assignments[d][n] = static_cast<int>(new_z);
      }
    }
    if (options.bookkeeping_interval > 0 && pass % options.bookkeeping_interval == 0) {
      verify_bookkeeping(model);
      ++model.bookkeeping_checks;
    }
  }
  return model;
}

// --- derived distributions -----------------------------------------------------

std::vector<std::vector<double>> TopicModel::topic_word() const {
  std::vector<std::vector<double>> phi(topic_word_counts.size());
  for (size_t z = 0; z < topic_word_counts.size(); ++z) {
    const auto& row = topic_word_counts[z];
    const double total = static_cast<double>(topic_totals[z]);
    phi[z].resize(row.size());
    for (size_t w = 0; w < row.size(); ++w) {
      phi[z][w] = total > 0.0 ? row[w] / total : 1.0 / static_cast<double>(row.size());
    }
  }
  return phi;
}

std::vector<std::vector<double>> TopicModel::doc_topic() const {
  std::vector<std::vector<double>> theta(doc_topic_counts.size());
  for (size_t d = 0; d < doc_topic_counts.size(); ++d) {
    const auto& row = doc_topic_counts[d];
    double total = 0.0;
    for (const auto c : row) total += c;
    theta[d].resize(row.size());
    for (size_t z = 0; z < row.size(); ++z) {
      theta[d][z] = total > 0.0 ? row[z] / total : 1.0 / static_cast<double>(row.size());
    }
  }
  return theta;
}

std::vector<std::vector<int>> TopicModel::top_words(int n) const {
  std::vector<std::vector<int>> top(topic_word_counts.size());
  for (size_t z = 0; z < topic_word_counts.size(); ++z) {
    const auto& row = topic_word_counts[z];
    std::vector<int> ids(row.size());
    for (size_t w = 0; w < row.size(); ++w) ids[w] = static_cast<int>(w);
    const size_t keep = std::min<size_t>(static_cast<size_t>(n), ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep),
                      ids.end(), [&row](int a, int b) {
                        const auto ca = row[static_cast<size_t>(a)];
                        const auto cb = row[static_cast<size_t>(b)];
                        if (ca != cb) return ca > cb;
                        return a < b;
                      });
    ids.resize(keep);
    top[z] = std::move(ids);
  }
  return top;
}

// --- coherence --------------------------------------------------------------------

CoherenceResult coherence_cv(const Corpus& corpus,
                             const std::vector<std::vector<int>>& topic_top_words,
                             int window) {
  if (window < 1) throw std::invalid_argument("window must be positive");

  // Compact ids for the union of all top words.
  std::vector<int> union_words;
  std::vector<int> compact(corpus.vocab_size(), -1);
  for (const auto& topic : topic_top_words) {
    for (const int w : topic) {
      if (compact[static_cast<size_t>(w)] < 0) {
        compact[static_cast<size_t>(w)] = static_cast<int>(union_words.size());
        union_words.push_back(w);
      }
    }
  }
  const size_t U = union_words.size();

  // Boolean sliding-window co-occurrence counts.
  std::vector<std::uint64_t> occur(U, 0);
  std::vector<std::vector<std::uint64_t>> cooccur(U, std::vector<std::uint64_t>(U, 0));
  std::uint64_t windows = 0;

  std::vector<int> present;  // compact ids present in the current window
  std::vector<std::uint32_t> in_window(U, 0);
  for (const auto& doc : corpus.documents) {
    const size_t len = doc.size();
    if (len == 0) continue;
    const size_t win = std::min<size_t>(static_cast<size_t>(window), len);
    const size_t num_windows = len - win + 1;
    for (size_t start = 0; start < num_windows; ++start) {
      present.clear();
      for (size_t i = start; i < start + win; ++i) {
        const int c = compact[static_cast<size_t>(doc[i])];
        if (c >= 0 && in_window[static_cast<size_t>(c)] == 0) {
          in_window[static_cast<size_t>(c)] = 1;
          present.push_back(c);
        }
      }
      ++windows;
      for (size_t a = 0; a < present.size(); ++a) {
        const size_t ca = static_cast<size_t>(present[a]);
        ++occur[ca];
        for (size_t b = 0; b < present.size(); ++b)
          ++cooccur[ca][static_cast<size_t>(present[b])];
        in_window[ca] = 0;
      }
    }
  }

  constexpr double kEps = 1e-12;
  const double total = static_cast<double>(windows);
  const auto npmi = [&](size_t a, size_t b) -> double {
    const double pa = occur[a] / total;
    const double pb = occur[b] / total;
    if (pa <= 0.0 || pb <= 0.0) return 0.0;  // absent word, counted separately
    const double pab = cooccur[a][b] / total + kEps;
    const double value = std::log(pab / (pa * pb)) / -std::log(pab);
    return std::clamp(value, -1.0, 1.0);
  };

  CoherenceResult result;
  double sum = 0.0;
  for (const auto& topic : topic_top_words) {
    const size_t n = topic.size();
    std::vector<size_t> ids(n);
    for (size_t i = 0; i < n; ++i) {
      ids[i] = static_cast<size_t>(compact[static_cast<size_t>(topic[i])]);
      if (occur[ids[i]] == 0) ++result.missing_top_words;
    }
    // Per-word NPMI vectors against the topic's own word set (self included);
    // the set vector is their sum.
    std::vector<std::vector<double>> vectors(n, std::vector<double>(n, 0.0));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) vectors[a][b] = npmi(ids[a], ids[b]);
    std::vector<double> set_vec(n, 0.0);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) set_vec[b] += vectors[a][b];

    double topic_sum = 0.0;
    for (size_t a = 0; a < n; ++a) {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (size_t b = 0; b < n; ++b) {
        dot += vectors[a][b] * set_vec[b];
        na += vectors[a][b] * vectors[a][b];
        nb += set_vec[b] * set_vec[b];
      }
      const double denom = std::sqrt(na) * std::sqrt(nb);
      topic_sum += denom > 0.0 ? std::clamp(dot / denom, -1.0, 1.0) : 0.0;
    }
    const double score = n > 0 ? topic_sum / static_cast<double>(n) : 0.0;
    result.per_topic.push_back(score);
    sum += score;
  }
  result.mean =
      result.per_topic.empty() ? 0.0 : sum / static_cast<double>(result.per_topic.size());
  return result;
}

CoherenceResult coherence_cv(const TopicModel& model, const Corpus& corpus, int top_n,
                             int window) {
  return coherence_cv(corpus, model.top_words(top_n), window);
}

// --- topic-count selection ------------------------------------------------------------

TopicCountSelection select_topic_count(const Corpus& corpus,
                                       std::span<const int> candidates, int repeats,
                                       const LdaOptions& base, double elbow_threshold,
                                       int workers) {
  if (candidates.empty()) throw std::invalid_argument("no candidate topic counts");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");

  const auto run_one = [&corpus, &base](int k, std::uint64_t seed) {
    LdaOptions opts = base;
    opts.topics = k;
    opts.alpha = 0.0;  // re-derive 50/K per candidate
    opts.seed = seed;
    const TopicModel model = train_lda(corpus, opts);
    return coherence_cv(model, corpus).mean;
  };

  TopicCountSelection sel;
  for (const int k : candidates) {
    double sum = 0.0;
    if (workers > 1) {
      std::vector<std::future<double>> futures;
      futures.reserve(static_cast<size_t>(repeats));
      for (int rep = 0; rep < repeats; ++rep) {
        const std::uint64_t seed =
            derive_seed(base.seed, static_cast<std::uint64_t>(k),
                        static_cast<std::uint64_t>(rep));
        futures.push_back(
            std::async(std::launch::async, run_one, k, seed));
      }
      for (auto& f : futures) sum += f.get();
    } else {
      for (int rep = 0; rep < repeats; ++rep) {
        sum += run_one(k, derive_seed(base.seed, static_cast<std::uint64_t>(k),
                                      static_cast<std::uint64_t>(rep)));
      }
    }
    sel.curve.emplace_back(k, sum / repeats);
  }

  sel.chosen = sel.curve.back().first;
  for (size_t i = 0; i + 1 < sel.curve.size(); ++i) {
    const double here = sel.curve[i].second;
    const double next = sel.curve[i + 1].second;
    const double gain = (next - here) / std::max(std::fabs(here), 1e-12);
    if (gain < elbow_threshold) {
      sel.chosen = sel.curve[i].first;
      break;
    }
  }
  return sel;
}

}  // namespace tweetlab
