#include "tweetlab/content.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "tweetlab/util.hpp"

namespace tweetlab {

// --- hashtags / mentions -------------------------------------------------------

namespace {
inline bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}
}  // namespace

std::vector<std::string> extract_tags(std::string_view text, TagKind kind) {
  const char sigil = kind == TagKind::hashtag ? '#' : '@';
  std::vector<std::string> tags;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != sigil) continue;
    // "a@b.com" must not yield a mention
    if (kind == TagKind::mention && i > 0 && is_word_char(text[i - 1])) continue;
    size_t j = i + 1;
    while (j < text.size() && is_word_char(text[j])) ++j;
    if (j > i + 1) tags.push_back(to_lower_ascii(text.substr(i + 1, j - i - 1)));
    i = j - 1;
  }
  return tags;
}

TagTable build_tag_table(std::span<const TweetRecord> records, TagKind kind) {
  TagTable table;
  table.kind = kind;
  for (const auto& r : records) {
    for (auto& tag : extract_tags(r.text, kind)) {
      ++table.entries[tag];
      ++table.total;
    }
  }
  return table;
}

TagTable variant_group(TagTable table, const std::string& canonical,
                       std::span<const std::string> variants) {
  TagTable out;
  out.kind = table.kind;
  out.total = table.total;
  const std::string canon = to_lower_ascii(canonical);
  for (const auto& [tag, count] : table.entries) {
    bool fold = tag == canon;
    for (const auto& v : variants) {
      if (fold) break;
      fold = tag == to_lower_ascii(v);
    }
    out.entries[fold ? canon : tag] += count;
  }
  return out;
}

// --- Porter stemmer ---------------------------------------------------------------
// Port of the reference algorithm; b[0..k] is the live word, j marks the
// candidate stem end during suffix tests.

namespace {

class Porter {
 public:
  explicit Porter(std::string word) : b(std::move(word)), k(static_cast<int>(b.size()) - 1) {}

  std::string run() {
    if (k <= 1) return b;
    step1ab();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return b.substr(0, static_cast<size_t>(k + 1));
  }

 private:
  std::string b;
  int k;
  int j = 0;

  bool cons(int i) const {
    switch (b[static_cast<size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  int m() const {
    int n = 0, i = 0;
    for (;;) {
      if (i > j) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int at) const {
    if (at < 1) return false;
    if (b[static_cast<size_t>(at)] != b[static_cast<size_t>(at - 1)]) return false;
    return cons(at);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b[static_cast<size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(const char* s) {
    const int len = static_cast<int>(std::strlen(s));
    if (len > k + 1) return false;
    if (b.compare(static_cast<size_t>(k - len + 1), static_cast<size_t>(len), s) != 0)
      return false;
    j = k - len;
    return true;
  }

  void setto(const char* s) {
    b.resize(static_cast<size_t>(j + 1));
    b += s;
    k = static_cast<int>(b.size()) - 1;
  }

  void r(const char* s) {
    if (m() > 0) setto(s);
  }

  void step1ab() {
    if (b[static_cast<size_t>(k)] == 's') {
      if (ends("sses"))
        k -= 2;
      else if (ends("ies"))
        setto("i");
      else if (b[static_cast<size_t>(k - 1)] != 's')
        --k;
    }
    if (ends("eed")) {
      if (m() > 0) --k;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k = j;
      if (ends("at"))
        setto("ate");
      else if (ends("bl"))
        setto("ble");
      else if (ends("iz"))
        setto("ize");
      else if (doublec(k)) {
        --k;
        const char ch = b[static_cast<size_t>(k)];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k;
      } else if (m() == 1 && cvc(k)) {
        setto("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b[static_cast<size_t>(k)] = 'i';
  }

  void step2() {
    if (k < 1) return;
    switch (b[static_cast<size_t>(k - 1)]) {
      case 'a':
        if (ends("ational")) { r("ate"); break; }
        if (ends("tional")) { r("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { r("ence"); break; }
        if (ends("anci")) { r("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { r("ize"); break; }
        break;
      case 'l':
        if (ends("bli")) { r("ble"); break; }
        if (ends("alli")) { r("al"); break; }
        if (ends("entli")) { r("ent"); break; }
        if (ends("eli")) { r("e"); break; }
        if (ends("ousli")) { r("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { r("ize"); break; }
        if (ends("ation")) { r("ate"); break; }
        if (ends("ator")) { r("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { r("al"); break; }
        if (ends("iveness")) { r("ive"); break; }
        if (ends("fulness")) { r("ful"); break; }
        if (ends("ousness")) { r("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { r("al"); break; }
        if (ends("iviti")) { r("ive"); break; }
        if (ends("biliti")) { r("ble"); break; }
        break;
      case 'g':
        if (ends("logi")) { r("log"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b[static_cast<size_t>(k)]) {
      case 'e':
        if (ends("icate")) { r("ic"); break; }
        if (ends("ative")) { r(""); break; }
        if (ends("alize")) { r("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { r("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { r("ic"); break; }
        if (ends("ful")) { r(""); break; }
        break;
      case 's':
        if (ends("ness")) { r(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (k < 1) return;
    switch (b[static_cast<size_t>(k - 1)]) {
      case 'a': if (ends("al")) break; return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e': if (ends("er")) break; return;
      case 'i': if (ends("ic")) break; return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j >= 0 &&
            (b[static_cast<size_t>(j)] == 's' || b[static_cast<size_t>(j)] == 't'))
          break;
        if (ends("ou")) break;
        return;
      case 's': if (ends("ism")) break; return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u': if (ends("ous")) break; return;
      case 'v': if (ends("ive")) break; return;
      case 'z': if (ends("ize")) break; return;
      default: return;
    }
    if (m() > 1) k = j;
  }

  void step5() {
    j = k;
    if (b[static_cast<size_t>(k)] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k - 1))) --k;
    }
    if (b[static_cast<size_t>(k)] == 'l' && doublec(k) && m() > 1) --k;
  }
};

}  // namespace

std::string porter_stem(std::string word) { return Porter(std::move(word)).run(); }

// --- stopwords / preprocessing ------------------------------------------------------

StopwordSet StopwordSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword list: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    const std::string w = to_lower_ascii(trim(line));
    if (!w.empty()) set.words_.insert(w);
  }
  return set;
}

StopwordSet StopwordSet::from_words(std::span<const std::string> words) {
  StopwordSet set;
  for (const auto& w : words) set.words_.insert(to_lower_ascii(w));
  return set;
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

namespace {

inline bool is_url_start(std::string_view s, size_t i) {
  return s.compare(i, 7, "http://") == 0 || s.compare(i, 8, "https://") == 0 ||
         s.compare(i, 4, "www.") == 0;
}

inline bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

std::vector<std::string> preprocess(std::string_view text, const StopwordSet& stopwords,
                                    size_t min_len) {
  const std::string lower = to_lower_ascii(text);
  std::vector<std::string> tokens;
  std::string current;
  size_t i = 0;
  const auto flush = [&] {
    if (current.size() >= min_len && !stopwords.contains(current))
      tokens.push_back(porter_stem(std::move(current)));
    current.clear();
  };
  while (i < lower.size()) {
    if (is_url_start(lower, i)) {
      flush();
      while (i < lower.size() && !std::isspace(static_cast<unsigned char>(lower[i]))) ++i;
      continue;
    }
    if (lower[i] == '@') {
      flush();
      ++i;
      while (i < lower.size() && is_word_char(lower[i])) ++i;
      continue;
    }
    if (is_token_char(lower[i])) {
      current.push_back(lower[i]);
    } else {
      flush();
    }
    ++i;
  }
  flush();
  return tokens;
}

// --- corpus / tf-idf ------------------------------------------------------------------

Corpus build_corpus(std::span<const TweetRecord> records, const StopwordSet& stopwords,
                    const CorpusOptions& options) {
  Corpus corpus;
  std::unordered_set<std::string> seen_texts;
  for (const auto& r : records) {
    if (options.dedup_by_text && !seen_texts.insert(r.text).second) continue;
    auto tokens = preprocess(r.text, stopwords, options.min_token_len);
    if (tokens.empty()) {
      ++corpus.dropped_empty;
      continue;
    }
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (auto& tok : tokens) {
      auto [it, inserted] =
          corpus.token_ids.emplace(tok, static_cast<int>(corpus.vocabulary.size()));
      if (inserted) corpus.vocabulary.push_back(tok);
      ids.push_back(it->second);
    }
    corpus.documents.push_back(std::move(ids));
    corpus.doc_ids.push_back(r.tweet_id);
  }
  return corpus;
}

std::vector<std::vector<std::pair<int, double>>> tfidf(const Corpus& corpus) {
  if (corpus.vocab_size() == 0) throw std::runtime_error("empty vocabulary");
  const size_t d_count = corpus.doc_count();

  std::vector<std::uint32_t> df(corpus.vocab_size(), 0);
  std::vector<std::map<int, std::uint32_t>> tf(d_count);
  for (size_t d = 0; d < d_count; ++d) {
    for (const int t : corpus.documents[d]) ++tf[d][t];
    for (const auto& [t, n] : tf[d]) ++df[static_cast<size_t>(t)];
  }

  std::vector<std::vector<std::pair<int, double>>> weights(d_count);
  for (size_t d = 0; d < d_count; ++d) {
    weights[d].reserve(tf[d].size());
    for (const auto& [t, n] : tf[d]) {
      const double idf = std::log(static_cast<double>(d_count) /
                                  static_cast<double>(df[static_cast<size_t>(t)]));
      weights[d].emplace_back(t, static_cast<double>(n) * idf);
    }
  }
  return weights;
}

}  // namespace tweetlab
