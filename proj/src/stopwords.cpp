#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "absreuse/fnv.hpp"
#include "absreuse/text.hpp"

namespace absreuse {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// The 33-word core list used by most IR toolkits, followed by common
// English function words and pronouns.
constexpr const char* kBuiltinWords[] = {
    // core
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in", "into",
    "is", "it", "no", "not", "of", "on", "or", "such", "that", "the", "their", "then",
    "there", "these", "they", "this", "to", "was", "will", "with",
    // function words
    "about", "above", "after", "again", "against", "all", "also", "am", "any", "been",
    "before", "being", "below", "between", "both", "can", "could", "did", "do", "does",
    "doing", "down", "during", "each", "few", "from", "further", "had", "has", "have",
    "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "its", "itself", "may", "me", "might", "more", "most", "must", "my", "myself",
    "nor", "now", "off", "once", "only", "other", "our", "ours", "ourselves", "out",
    "over", "own", "same", "she", "should", "so", "some", "than", "them", "themselves",
    "those", "through", "too", "under", "until", "up", "upon", "very", "we", "were",
    "what", "when", "where", "whether", "which", "while", "who", "whom", "why", "would",
    "you", "your", "yours", "yourself", "yourselves", "via", "within", "without",
};

}  // namespace

StopWordList::StopWordList(std::vector<std::string> words, std::string version_tag)
    : version_tag_(std::move(version_tag)) {
  for (auto& w : words) words_.insert(lower(w));
}

const StopWordList& StopWordList::builtin() {
  static const StopWordList list = [] {
    std::vector<std::string> words(std::begin(kBuiltinWords), std::end(kBuiltinWords));
    return StopWordList(std::move(words), "en-core33-fn-v1");
  }();
  return list;
}

StopWordList StopWordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read stop-word file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(b, e - b + 1));
  }
  std::vector<std::string> sorted;
  for (const auto& w : words) sorted.push_back(lower(w));
  std::sort(sorted.begin(), sorted.end());
  std::string joined;
  for (const auto& w : sorted) joined += w + '\n';
  return StopWordList(std::move(words),
                      "file:" + path.filename().string() + ":" + hex64(fnv1a64(joined)));
}

bool StopWordList::contains(std::string_view word) const {
  return words_.count(lower(word)) > 0;
}

}  // namespace absreuse
