#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace stylefmt;
using testing::parse;
using testing::variant_a;

namespace {

const FormattingModel& fixture_model() {
  static const FormattingModel model = [] {
    std::vector<Document> docs;
    for (const auto& f : testing::fixture_corpus()) docs.push_back(parse(f.text));
    return testing::train_on(docs);
  }();
  return model;
}

std::string fmt(std::string_view text, const FormatOptions& options = {}) {
  return format(fixture_model(), text, variant_a(), options);
}

bool has_trailing_spaces(const std::string& text) {
  return text.find(" \n") != std::string::npos ||
         (!text.empty() && text.back() == ' ');
}

}  // namespace

TEST_CASE("memorized files format back to themselves") {
  const auto& files = testing::fixture_corpus();
  for (int d = 0; d < 3; ++d) {
    Document doc = parse(files[d].text);
    CHECK(fmt(testing::flatten(doc)) == files[d].text);
  }
}

TEST_CASE("empty document formats to empty output") {
  CHECK(fmt("") == "");
  CHECK(fmt("   \n\n ") == "");
}

TEST_CASE("flat input is laid out in the corpus style") {
  std::string out = fmt("func f(x) { if (x > 1) { return x; } return 0; }");
  CHECK(out ==
        "func f(x) {\n"
        "    if (x > 1) {\n"
        "        return x;\n"
        "    }\n"
        "    return 0;\n"
        "}\n");
}

TEST_CASE("line comments are kept and followed by a newline") {
  std::string out = fmt("func f() { x = 1; // note\n y = 2; }");
  CHECK(out.find("x = 1; // note\n") != std::string::npos);
  std::string squeezed = fmt("func f() { // note\n y = 2; }");
  CHECK(squeezed.find("// note\n") != std::string::npos);
}

TEST_CASE("block comment keeps its original preceding space") {
  std::string out = fmt("func f() { x = 1; /* why */ y = 2; }");
  CHECK(out.find("; /* why */") != std::string::npos);
}

TEST_CASE("line comment forcing can be disabled") {
  FormattingModel one_line = testing::train_on(std::vector<Document>{parse("x = 1; y = 2; z = 3;")});
  CHECK(format(one_line, "x = 1; // c\ny = 2;", variant_a()) == "x = 1; // c\ny = 2;");
  FormatOptions options;
  options.line_comment = std::optional<int>{};
  CHECK(format(one_line, "x = 1; // c\ny = 2;", variant_a(), options) == "x = 1; // c y = 2;");
}

TEST_CASE("leading comments are emitted verbatim") {
  std::string out = fmt("/* header */\n\nfunc f() { return 1; }");
  CHECK(out.rfind("/* header */\n\nfunc f() {", 0) == 0);
}

TEST_CASE("adjacent tokens never merge") {
  FormattingModel m = testing::train_on(std::vector<Document>{parse("x=-y;\nz=a<b;\n")});
  const char* text = "var q = a < b; return - - q; var w = ! ! q;";
  std::string out = format(m, text, variant_a());
  CHECK(testing::token_texts(parse(out)) == testing::token_texts(parse(text)));
}

TEST_CASE("format rejects mismatched vocabularies and bad input") {
  CHECK_THROWS_AS(format(fixture_model(), "x = 1;", testing::variant_b()), ModelError);
  CHECK_THROWS_AS(fmt("x = ;"), SyntaxError);
}

TEST_CASE("format result records the executed directives") {
  Document doc = parse("func f() { x = 1; }");
  Classifier c(fixture_model());
  FormatResult r = format_document(c, doc, variant_a());
  REQUIRE(r.ws.size() == static_cast<std::size_t>(doc.size()));
  for (int i = 1; i < doc.size(); ++i) {
    CHECK(r.hpos[i].has_value() == (r.ws[i].kind == WsKind::kNewline));
    CHECK(r.layout[i] > r.layout[i - 1]);
  }
}

TEST_CASE("property: formatting preserves tokens and comments and is idempotent") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    StyleConfig style;
    SourceFile f = generate_file(style, rng(), GeneratorOptions{1, 3, 0, true});
    Document original = parse(f.text);
    std::string once = fmt(f.text);
    Document formatted = parse(once);
    CHECK(testing::token_texts(formatted) == testing::token_texts(original));
    CHECK(testing::comment_texts(formatted) == testing::comment_texts(original));
    CHECK_FALSE(has_trailing_spaces(once));
    CHECK(fmt(once) == once);
    CHECK(fmt(f.text) == once);
  }
}
