#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace stylefmt;
using testing::parse;
using testing::variant_a;
using testing::variant_b;

namespace {

// Full-matrix Levenshtein, independent of the two-row implementation.
std::size_t brute_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
    }
  }
  return d[a.size()][b.size()];
}

std::vector<SourceFile> small_corpus(int n, std::uint64_t seed = 3) {
  return generate_corpus(StyleConfig{}, n, seed, GeneratorOptions{2, 4, 0, true});
}

// Variant A that refuses any file containing `refuse`.
class PickyProvider : public TreeProvider {
 public:
  std::string_view id() const override { return "picky"; }
  const Vocabulary& token_vocabulary() const override { return variant_a().token_vocabulary(); }
  const Vocabulary& rule_vocabulary() const override { return variant_a().rule_vocabulary(); }
  std::vector<Token> tokenize(std::string_view text) const override {
    auto tokens = variant_a().tokenize(text);
    for (const Token& t : tokens) {
      if (t.text == "refuse") throw SyntaxError("refused", t.line, t.col);
    }
    return tokens;
  }
  ParseTree parse(std::span<const Token> tokens) const override { return variant_a().parse(tokens); }
};

}  // namespace

TEST_CASE("edit distance examples") {
  CHECK(normalized_edit_distance("abc", "abc") == 0.0);
  CHECK(normalized_edit_distance("abc", "abd") == doctest::Approx(1.0 / 3.0));
  CHECK(normalized_edit_distance("", "ab") == 1.0);
  CHECK(normalized_edit_distance("", "") == 0.0);
  CHECK(levenshtein("kitten", "sitting") == 3);
}

TEST_CASE("property: two-row Levenshtein matches the full matrix") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a = testing::random_string(rng, 12, "abc");
    std::string b = testing::random_string(rng, 12, "abcd");
    CHECK(levenshtein(a, b) == brute_levenshtein(a, b));
    double d = normalized_edit_distance(a, b);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(d == normalized_edit_distance(b, a));
    CHECK((d == 0.0) == (a == b));
  }
}

TEST_CASE("median") {
  CHECK(median({}) == 0.0);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("error rate formula") {
  DocumentEval e;
  e.ws_errors = 2;
  e.hpos_errors = 1;
  e.ws_decisions = 10;
  e.hpos_decisions = 4;
  CHECK(e.error() == doctest::Approx(3.0 / 14.0));
  CHECK(DocumentEval{}.error() == 0.0);
}

TEST_CASE("memorized document has no errors") {
  const auto& files = testing::fixture_corpus();
  std::vector<Document> docs;
  for (const SourceFile& f : files) docs.push_back(parse(f.text));
  FormattingModel m = testing::train_on(docs);
  Classifier c(m);
  DocumentEval e = evaluate_document(c, docs[1], variant_a());
  CHECK(e.error() == 0.0);
  CHECK(e.edit_distance == 0.0);
  CHECK(e.ws_decisions == docs[1].size() - 1);
  CHECK(e.formatted == files[1].text);
}

TEST_CASE("leave-one-out on a consistent corpus") {
  EvalResult r = leave_one_out(small_corpus(10), variant_a(), 4);
  CHECK(r.documents.size() == 10);
  CHECK(r.median_error <= 0.02);
  for (const auto& d : r.documents) {
    CHECK(d.error() >= 0.0);
    CHECK(d.error() <= 1.0);
  }
}

TEST_CASE("leave-one-out never sees the held-out style") {
  std::vector<SourceFile> files{
      {"a.bl", "func f() {\n    x = 1;\n}\n"},
      {"b.bl", "func f()\n{\n  x=1;\n}\n"},
  };
  EvalResult r = leave_one_out(files, variant_a(), 4);
  for (const auto& d : r.documents) CHECK(d.error() > 0.0);
}

TEST_CASE("leave-one-out needs two files") {
  CHECK_THROWS_WITH_AS(leave_one_out(small_corpus(1), variant_a(), 4), "corpus too small",
                       DataError);
}

TEST_CASE("unparsable files are reported by name") {
  std::vector<SourceFile> files{{"ok.bl", "x = 1;\n"}, {"bad.bl", "x = ;\n"}};
  CHECK_THROWS_WITH_AS(leave_one_out(files, variant_a(), 4),
                       doctest::Contains("bad.bl"), DataError);
}

TEST_CASE("grammar invariance with identical providers is zero") {
  InvarianceResult r = grammar_invariance(small_corpus(4), variant_a(), variant_a(), 4);
  CHECK(r.median == 0.0);
  CHECK(r.documents.size() == 4);
}

TEST_CASE("grammar invariance requires both providers to accept every file") {
  auto files = small_corpus(3);
  files[1].text += "refuse;\n";
  PickyProvider picky;
  CHECK_THROWS_WITH_AS(grammar_invariance(files, variant_a(), picky, 4),
                       doctest::Contains("rejected by picky"), DataError);
}

TEST_CASE("corpus size experiment") {
  auto files = small_corpus(6);
  auto a = corpus_size_experiment(files, variant_a(), 4, {1, 3, 5}, 3, 99);
  auto b = corpus_size_experiment(files, variant_a(), 4, {1, 3, 5}, 3, 99);
  REQUIRE(a.size() == 3);
  for (std::size_t s = 0; s < a.size(); ++s) {
    CHECK(a[s].size == b[s].size);
    CHECK(a[s].median_error == b[s].median_error);
    CHECK(a[s].trials == 3);
  }
  CHECK_THROWS_AS(corpus_size_experiment(files, variant_a(), 4, {6}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(corpus_size_experiment(files, variant_a(), 4, {0}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(corpus_size_experiment(files, variant_a(), 4, {2}, 0, 1), std::invalid_argument);
}

TEST_CASE("training on all other files matches leave-one-out") {
  auto files = small_corpus(5);
  EvalResult loo = leave_one_out(files, variant_a(), 4);
  auto points = corpus_size_experiment(files, variant_a(), 4, {4}, 1, 5);
  bool found = false;
  for (const auto& d : loo.documents) found = found || d.error() == points[0].median_error;
  CHECK(found);
}

TEST_CASE("k sweep") {
  auto points = k_sweep(small_corpus(5), variant_a(), 4, {1, 11, 21});
  REQUIRE(points.size() == 3);
  CHECK(points[0].k == 1);
  CHECK(points[1].median_error <= 0.05);
  CHECK(points[0].median_error <= 0.05);
  std::ostringstream csv;
  write_k_csv(csv, points);
  CHECK(csv.str().rfind("k,median_error,default\n", 0) == 0);
  CHECK(csv.str().find("11,") != std::string::npos);
  CHECK(csv.str().find(",yes\n") != std::string::npos);
}

TEST_CASE("csv writers") {
  EvalResult r;
  DocumentEval d;
  d.name = "odd,name.bl";
  d.ws_decisions = 4;
  d.ws_errors = 1;
  r.documents.push_back(d);
  std::ostringstream eval;
  write_eval_csv(eval, r);
  CHECK(eval.str() ==
        "file,ws_errors,ws_decisions,hpos_errors,hpos_decisions,error,edit_distance\n"
        "\"odd,name.bl\",1,4,0,0,0.25,0\n");
  std::ostringstream size;
  write_size_csv(size, {{10, 5, 0.5}});
  CHECK(size.str() == "corpus_size,trials,median_error\n10,5,0.5\n");
  std::ostringstream inv;
  write_invariance_csv(inv, {{{"a.bl", 0.25}}, 0.25});
  CHECK(inv.str() == "file,edit_distance\na.bl,0.25\n");
}

TEST_CASE("corpus reading") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "stylefmt_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir / "sub");
  std::ofstream(dir / "b.bl") << "y;\n";
  std::ofstream(dir / "sub" / "a.bl") << "x;\n";
  std::ofstream(dir / "notes.txt") << "skip";
  auto files = read_corpus(dir);
  REQUIRE(files.size() == 2);
  CHECK(files[0].name == "b.bl");
  CHECK(files[1].name == "sub/a.bl");
  CHECK(files[1].text == "x;\n");
  fs::remove_all(dir);
  CHECK_THROWS_AS(read_corpus(dir), DataError);
}

TEST_CASE("generator is seeded and follows its style") {
  StyleConfig four;
  StyleConfig two;
  two.indent = 2;
  auto a = generate_corpus(four, 3, 8);
  auto b = generate_corpus(four, 3, 8);
  auto c = generate_corpus(two, 3, 8);
  for (int f = 0; f < 3; ++f) {
    CHECK(a[f].text == b[f].text);
    CHECK(a[f].text != c[f].text);
  }
  CHECK(a[0].name == "file00.bl");
  CHECK_THROWS_AS(generate_corpus(four, 0, 1), std::invalid_argument);
}

TEST_CASE("generated corpus covers lists, else chains and comments") {
  const auto& files = testing::fixture_corpus();
  bool oversize = false, regular = false, chain = false, comment = false;
  for (const auto& f : files) {
    Document a = parse(f.text, variant_a());
    CHECK_NOTHROW(parse(f.text, variant_b()));
    for (const auto& list : find_lists(a)) (spans_lines(a, list) ? oversize : regular) = true;
    chain = chain || f.text.find("} else if") != std::string::npos;
    comment = comment || !testing::comment_texts(a).empty();
  }
  CHECK(oversize);
  CHECK(regular);
  CHECK(chain);
  CHECK(comment);
}

TEST_CASE("generated minimum length") {
  SourceFile f = generate_file(StyleConfig{}, 4, GeneratorOptions{1, 1, 300, false});
  CHECK(std::count(f.text.begin(), f.text.end(), '\n') >= 300);
  CHECK(testing::comment_texts(parse(f.text)).empty());
}
