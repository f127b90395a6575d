// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "msq/pipeline.hpp"
#include "msq/scoring.hpp"
#include "msq/util.hpp"
#include "support/oracles.hpp"

using namespace msq;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// 1. build_graph keeps exactly the pairs at or above 0.5
Outcome threshold_fidelity() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::string> words;
  for (int i = 0; i < 100; ++i) words.push_back("w" + std::to_string(1000 + i));
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) all.emplace_back(i, j);
  }
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<SimilarityPair> pairs;
    std::map<std::pair<std::string, std::string>, double> expected;
    for (std::size_t k = 0; k < 1000; ++k) {
      // every 50th pair sits exactly on the threshold
      const double sim = k % 50 == 0 ? 0.5 : unit(rng);
      const auto& [a, b] = all[k];
      pairs.push_back({words[a], words[b], sim});
      if (sim >= 0.5) expected[{words[a], words[b]}] = sim;
    }
    const auto g = build_graph(pairs, 0.5);
    std::map<std::pair<std::string, std::string>, double> got;
    for (const auto& e : g.edges()) {
      auto a = g.nodes()[e.u], b = g.nodes()[e.v];
      if (b < a) std::swap(a, b);
      got[{a, b}] = e.weight;
    }
    if (got != expected) ++mismatches;
  }
  return {mismatches == 0, "100 trials x 1000 pairs, " + std::to_string(mismatches) + " mismatching"};
}

// 2. louvain within 0.9 of the exhaustive optimum on a fixed suite
Outcome louvain_optimality() {
  const auto t0 = Clock::now();
  const auto suite = oracle::small_graph_suite(2024, 300, 8);
  std::size_t below = 0;
  double worst = 1.0;
  std::string worst_family;
  for (const auto& g : suite) {
    const double best = oracle::exhaustive_best_modularity(g.n, g.edges);
    const double got = louvain(WordGraph::from_edges(g.n, g.edges)).modularity;
    if (best > 1e-9 && got / best < worst) {
      worst = got / best;
      worst_family = g.family + " n=" + std::to_string(g.n);
    }
    if (got < 0.9 * best - 1e-12) ++below;
  }

  bool cliques_exact = true;
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{
           {3, 3}, {2, 2}, {4, 4}, {3, 3, 3}, {2, 3, 3}, {4, 2, 2}, {5, 3}, {2, 2, 2, 2}}) {
    const auto edges = oracle::disjoint_cliques(sizes);
    std::size_t n = 0;
    for (const auto s : sizes) n += s;
    const auto r = louvain(WordGraph::from_edges(n, edges));
    const double best = oracle::exhaustive_best_modularity(n, edges);
    cliques_exact &= std::abs(r.modularity - best) <= 1e-12 &&
                     r.partition.community_count() == sizes.size();
  }
  const auto two = oracle::disjoint_cliques({3, 3});
  const auto r = louvain(WordGraph::from_edges(6, two));
  const bool triangles = std::abs(r.modularity - 0.5) <= 1e-12 && r.partition.community_count() == 2;

  const double elapsed = seconds_since(t0);
  return {below == 0 && cliques_exact && triangles && elapsed < 60.0,
          std::to_string(suite.size()) + " graphs, " + std::to_string(below) +
              " below 0.9 x optimum (worst ratio " + fmt(worst) + ", " + worst_family +
              "); cliques exact: " + (cliques_exact && triangles ? "yes" : "no") + "; " +
              fmt(elapsed) + " s"};
}

// 3. modularity agrees with a dense double loop
Outcome modularity_oracle() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const auto edges = oracle::random_connected_graph(n, 0.3, rng);
    const std::size_t k = 1 + rng() % n;
    std::vector<std::int64_t> labels(n);
    for (auto& l : labels) l = static_cast<std::int64_t>(rng() % k);
    const double got = modularity(WordGraph::from_edges(n, edges), Partition::from_labels(labels));
    worst = std::max(worst, std::abs(got - oracle::brute_modularity(n, edges, labels)));
  }
  return {worst <= 1e-9, "100 instances, max deviation " + fmt(worst)};
}

struct ScoringSetup {
  AspectModel model{oracle::synthetic_aspects()};
  DimensionModel dims = map_dimensions(
      model, parse_dimension_mapping(
                 R"({"Inside": {"aspects": ["Host", "Facility", "Sleeping"]},
                     "Outside": {"aspects": ["Transportation"]}})"));
  LexiconSentimentModel sentiment{default_sentiment_lexicon()};
  VocabularyRecognizer recognizer{[] {
    EntityVocabulary v;
    for (const auto& e : oracle::synthetic_entities()) v.entries[e] = 1;
    return v;
  }()};
};

std::vector<oracle::SyntheticCorpus> scoring_corpora() {
  std::mt19937_64 rng(4);
  std::vector<oracle::SyntheticCorpus> out;
  for (int i = 0; i < 50; ++i) out.push_back(oracle::synthetic_corpus(rng, 50, 6));
  return out;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9; }

// 4. score_corpus against the straight-line recomputation, both modes
Outcome scoring_oracle(const std::vector<oracle::SyntheticCorpus>& corpora) {
  ScoringSetup s;
  std::size_t bad = 0, compared = 0;
  std::string first_problem;
  for (const auto& c : corpora) {
    const auto processed = preprocess_corpus(ReviewCorpus(c.reviews), TextConfig{});
    for (std::size_t i = 0; i < processed.size(); ++i) {
      std::vector<std::vector<std::string>> tokens;
      for (const auto& sentence : processed[i].sentences) tokens.push_back(sentence.tokens);
      if (tokens != c.tokens[i]) {
        ++bad;
        if (first_problem.empty()) first_problem = "preprocessing changed " + c.reviews[i].text;
      }
    }
    for (const bool compat : {false, true}) {
      ScoringOptions opts;
      opts.literal_rescaling = compat;
      opts.sum_listing = compat;
      const auto table = score_corpus(processed, s.recognizer, s.sentiment, s.model, s.dims, opts);
      const auto want = oracle::score(c.labeled, compat, compat);
      for (std::size_t i = 0; i < want.reviews.size(); ++i) {
        const auto& got = table.reviews[i].aspects;
        ++compared;
        bool ok = got.size() == want.reviews[i].size();
        for (const auto& [a, v] : want.reviews[i]) ok = ok && got.contains(a) && close(got.at(a), v);
        if (!ok) ++bad;
      }
      for (const auto& [listing, aspects] : want.listings) {
        ++compared;
        const auto it = table.listings.find(listing);
        if (it == table.listings.end()) {
          ++bad;
          continue;
        }
        bool ok = it->second.aspects.size() == aspects.size() &&
                  it->second.review_count == want.review_counts.at(listing);
        for (const auto& [a, v] : aspects) {
          ok = ok && it->second.aspects.contains(a) && close(it->second.aspects.at(a), v);
        }
        // dimension rollup recomputed from the oracle's listing scores
        for (const auto& [label, d] : s.dims.dimensions) {
          double sum = 0.0;
          bool present = false;
          for (const auto& a : d.aspects) {
            if (aspects.contains(a)) {
              sum += aspects.at(a);
              present = true;
            }
          }
          const auto& dims = it->second.dimensions;
          ok = ok && (present ? dims.contains(label) && close(dims.at(label), sum) : !dims.contains(label));
        }
        if (!ok) ++bad;
      }
      if (table.listings.size() != want.listings.size()) ++bad;
    }
  }
  return {bad == 0, "50 corpora x 2 modes, " + std::to_string(compared) + " rows compared, " +
                        std::to_string(bad) + " mismatching" +
                        (first_problem.empty() ? "" : "; " + first_problem)};
}

// 5. per-sentence sums of rescaled polarity equal the sentence polarity exactly
Outcome sentence_identity(const std::vector<oracle::SyntheticCorpus>& corpora) {
  ScoringSetup s;
  std::size_t sentences = 0, bad = 0;
  for (const auto& c : corpora) {
    const auto processed = preprocess_corpus(ReviewCorpus(c.reviews), TextConfig{});
    for (std::size_t i = 0; i < processed.size(); ++i) {
      const auto mentions = s.recognizer.extract(processed[i]);
      const auto rescaled =
          rescale_review(assign_polarities(processed[i], mentions, s.sentiment, s.model));
      std::map<std::size_t, CompensatedSum> sums;
      for (const auto& e : rescaled) sums[e.sentence_index].add(e.rescaled);
      for (const auto& [index, sum] : sums) {
        ++sentences;
        const int polarity = s.sentiment.polarity(processed[i].sentences[index]);
        if (sum.value() != static_cast<double>(polarity) ||
            polarity != c.labeled[i].sentences[index].polarity) {
          ++bad;
        }
      }
    }
  }
  return {bad == 0 && sentences > 0,
          std::to_string(sentences) + " sentences with mentions, " + std::to_string(bad) + " off"};
}

// 6. shipped aspect and dimension models
Outcome default_model() {
  const auto model = load_default_model();
  const auto dims = load_default_dimensions(model);
  std::set<std::string> covered;
  bool six_each = dims.size() == 3;
  std::size_t total = 0;
  for (const auto& [label, d] : dims.dimensions) {
    six_each &= d.aspects.size() == 6;
    total += d.aspects.size();
    covered.insert(d.aspects.begin(), d.aspects.end());
  }
  bool partition = total == 18 && covered.size() == 18;
  for (const auto& [label, seeds] : model.aspects()) partition &= covered.contains(label);
  return {model.size() == 18 && six_each && partition,
          std::to_string(model.size()) + " aspects, " + std::to_string(dims.size()) +
              " dimensions, partition " + (partition ? "ok" : "broken")};
}

// 7. cmd_cluster recovers four planted groups for ten seeds
Outcome planted_recovery() {
  testutil::TempDir dir("accept7");
  std::mt19937_64 rng(7);
  const auto f = testutil::write_planted_fixture(dir.path(), 4, rng);
  if (f.min_intra < 0.7 || f.max_inter > 0.2) {
    return {false, "fixture outside its similarity bounds"};
  }
  std::size_t recovered = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PipelineConfig c;
    c.corpus = f.corpus;
    c.vectors = f.vectors;
    c.min_count = 1;
    c.seed = seed;
    c.shuffle = true;
    c.quiet = true;
    c.output_dir = dir.path() / ("out" + std::to_string(seed));
    Reporter rep(true);
    cmd_ingest(c, rep);
    cmd_cluster(c, rep);
    const auto partition = nlohmann::json::parse(
        testutil::read_text(c.output_dir / "cluster" / "partition.json"));
    std::set<int> ids;
    bool ok = partition.size() == 20;
    for (const auto& g : f.groups) {
      const auto& first = partition.at(g.front());
      if (first.is_null()) {
        ok = false;
        continue;
      }
      ids.insert(first.get<int>());
      for (const auto& w : g) ok = ok && partition.at(w) == first;
    }
    if (ok && ids.size() == 4) ++recovered;
  }
  return {recovered == 10, std::to_string(recovered) + "/10 seeds recovered 4 groups (intra cos >= " +
                               fmt(f.min_intra) + ", inter <= " + fmt(f.max_inter) + ")"};
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = testutil::read_text(e.path());
  }
  return out;
}

// 8. golden fixture, byte for byte, across runs and thread counts
Outcome golden_run() {
  const fs::path golden = fs::path(MSQ_FIXTURES) / "golden";
  const auto expected = tree(golden / "expected");
  testutil::TempDir dir("accept8");
  std::size_t runs = 0, identical = 0;
  for (const unsigned threads : {1u, 2u, 4u}) {
    for (int repeat = 0; repeat < 2; ++repeat) {
      auto c = load_config(golden / "config.json");
      c.output_dir = dir.path() / ("t" + std::to_string(threads) + "r" + std::to_string(repeat));
      c.threads = threads;
      c.quiet = true;
      Reporter rep(true);
      cmd_run(c, rep);
      ++runs;
      if (tree(c.output_dir) == expected) ++identical;
    }
  }
  return {identical == runs && !expected.empty(),
          std::to_string(identical) + "/" + std::to_string(runs) + " runs identical to " +
              std::to_string(expected.size()) + " golden files"};
}

// 9. scoring 100,000 generated reviews
Outcome scale_smoke() {
  testutil::TempDir dir("accept9");
  const auto model = load_default_model();
  const auto seed_set = model.seeds();
  const std::vector<std::string> seeds(seed_set.begin(), seed_set.end());
  const std::vector<std::string> opinion{"great", "lovely", "terrible", "awful", "fine", "dirty",
                                         "not bad", "quiet", "noisy", "helpful"};
  const std::vector<std::string> filler{"the", "our", "a", "very", "really", "and", "was", "is"};
  std::mt19937_64 rng(9);
  std::ostringstream corpus;
  for (int r = 0; r < 100000; ++r) {
    std::string text;
    for (std::size_t s = 1 + rng() % 4; s > 0; --s) {
      std::string sentence;
      for (std::size_t w = 3 + rng() % 8; w > 0; --w) {
        const auto kind = rng() % 4;
        const auto& pool = kind == 0 ? seeds : kind == 1 ? opinion : filler;
        sentence += (sentence.empty() ? "" : " ") + pool[rng() % pool.size()];
      }
      text += sentence + ". ";
    }
    corpus << R"({"listing_id":"L)" << rng() % 2000 << R"(","review_id":"r)" << r
           << R"(","text":")" << text << "\"}\n";
  }
  testutil::write_text(dir.path() / "big.jsonl", corpus.str());

  PipelineConfig c;
  c.corpus = dir.path() / "big.jsonl";
  c.aspect_model = "default";
  c.dimension_model = "default";
  c.output_dir = dir.path() / "out";
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  c.quiet = true;
  Reporter rep(true);
  cmd_ingest(c, rep);
  const auto t0 = Clock::now();
  const auto r = cmd_score(c, rep);
  const double elapsed = seconds_since(t0);
  return {elapsed < 60.0 && r.report["reviews"] == 100000,
          "100000 reviews scored in " + fmt(elapsed) + " s with " + std::to_string(c.threads) +
              " threads, " + r.report["mentions"].dump() + " mentions"};
}

}  // namespace

int main() {
  const auto corpora = scoring_corpora();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"threshold fidelity", threshold_fidelity},
      {"louvain optimality on small graphs", louvain_optimality},
      {"modularity oracle", modularity_oracle},
      {"scoring oracle equivalence", [&] { return scoring_oracle(corpora); }},
      {"sentence-sum identity", [&] { return sentence_identity(corpora); }},
      {"default model fidelity", default_model},
      {"planted-community recovery", planted_recovery},
      {"end-to-end golden run", golden_run},
      {"scale smoke test", scale_smoke},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
