#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tweetlab/record.hpp"

namespace tweetlab {

// --- hashtags / mentions -------------------------------------------------------

enum class TagKind { hashtag, mention };

// Tags are \w+ runs after the sigil, lowercased, duplicates kept, order
// preserved. Mentions skip sigils preceded by a word character so e-mail
// addresses don't count.
std::vector<std::string> extract_tags(std::string_view text, TagKind kind);

struct TagTable {
  TagKind kind = TagKind::hashtag;
  std::map<std::string, std::uint64_t> entries;
  std::uint64_t total = 0;
};

TagTable build_tag_table(std::span<const TweetRecord> records, TagKind kind);

// Folds the variant spellings (and the canonical itself) into one entry.
TagTable variant_group(TagTable table, const std::string& canonical,
                       std::span<const std::string> variants);

// --- preprocessing ----------------------------------------------------------------

// Classic Porter (1980) suffix stripper. Input must be lowercase ASCII.
std::string porter_stem(std::string word);

class StopwordSet {
 public:
  static StopwordSet load(const std::string& path);  // one word per line
  static StopwordSet from_words(std::span<const std::string> words);

  bool contains(std::string_view word) const;
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercase; strip URLs, @mentions and the # sigil (keeping the tag word);
// split on non-alphanumerics; drop stop words and tokens shorter than
// min_len; Porter-stem the rest.
std::vector<std::string> preprocess(std::string_view text, const StopwordSet& stopwords,
                                    size_t min_len = 2);

// --- corpus / tf-idf -----------------------------------------------------------------

struct Corpus {
  std::vector<std::vector<int>> documents;  // token ids
  std::vector<std::string> doc_ids;
  std::vector<std::string> vocabulary;  // id -> token
  std::unordered_map<std::string, int> token_ids;
  std::uint64_t dropped_empty = 0;  // documents empty after preprocessing

  size_t vocab_size() const { return vocabulary.size(); }
  size_t doc_count() const { return documents.size(); }
};

struct CorpusOptions {
  size_t min_token_len = 2;
  bool dedup_by_text = false;
};

Corpus build_corpus(std::span<const TweetRecord> records, const StopwordSet& stopwords,
                    const CorpusOptions& options = {});

// weight(t, d) = tf(t, d) * ln(D / df(t)), raw term counts. A term present in
// every document weighs zero. Throws on an empty vocabulary.
std::vector<std::vector<std::pair<int, double>>> tfidf(const Corpus& corpus);

}  // namespace tweetlab
