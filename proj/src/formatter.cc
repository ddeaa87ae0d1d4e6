#include "stylefmt/formatter.hpp"

#include "stylefmt/features.hpp"

namespace stylefmt {

namespace {

class Emitter {
 public:
  void text(std::string_view s) {
    for (char c : s) {
      if (c == '\n') {
        ++line_;
        col_ = 0;
      } else {
        ++col_;
      }
    }
    out_ += s;
  }
  void newlines(int n) { text(std::string(static_cast<std::size_t>(n), '\n')); }
  void spaces(int n) { text(std::string(static_cast<std::size_t>(n), ' ')); }

  // Original whitespace before a comment, minus spaces that would end a line.
  void whitespace_run(std::string_view ws) {
    std::string clean;
    for (char c : ws) {
      if (c == '\n') {
        while (!clean.empty() && clean.back() == ' ') clean.pop_back();
      }
      clean.push_back(c);
    }
    text(clean);
  }

  Position here() const { return {line_, col_}; }
  bool empty() const { return out_.empty(); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
  int line_ = 0;
  int col_ = 0;
};

// Emits the comments in `hidden`, each after its original whitespace run.
// Returns the last comment emitted, if any.
const Token* emit_comments(Emitter& out, const std::vector<Token>& hidden) {
  const Token* last = nullptr;
  std::string_view pending;
  for (const Token& h : hidden) {
    if (h.is_whitespace()) {
      pending = h.text;
    } else if (h.is_comment()) {
      out.whitespace_run(pending);
      out.text(h.text);
      pending = {};
      last = &h;
    }
  }
  return last;
}

// Whether printing `a` directly followed by `b` would lex as those two tokens.
bool lexes_apart(const TreeProvider& provider, const Token& a, const Token& b) {
  try {
    std::vector<Token> tokens = provider.tokenize(a.text + b.text);
    return tokens.size() == 2 && tokens[0].text == a.text && tokens[1].text == b.text &&
           !tokens[0].is_hidden() && !tokens[1].is_hidden();
  } catch (const SyntaxError&) {
    return false;
  }
}

}  // namespace

FormatResult format_document(const Classifier& classifier, const Document& doc,
                             const TreeProvider& provider, const FormatOptions& options) {
  const FormattingModel& model = classifier.model();
  const int n = doc.size();
  FormatResult result;
  result.layout.resize(n);
  result.ws.resize(n);
  result.hpos.resize(n);
  Emitter out;

  if (n == 0) {
    if (emit_comments(out, doc.hidden[0]) && model.final_newline) out.text("\n");
    result.text = out.take();
    return result;
  }

  DocumentAnalysis analysis = analyze(doc, model.pairs, &model.list_stats);
  FeatureContext ctx{doc, analysis.tags, analysis.paired, result.layout};
  const std::optional<int> line_comment =
      options.line_comment ? *options.line_comment : provider.line_comment_type();

  // Text before the first token is kept as written.
  if (emit_comments(out, doc.hidden[0])) {
    const auto& lead = doc.hidden[0];
    if (lead.back().is_whitespace()) out.whitespace_run(lead.back().text);
  }

  for (int i = 0; i < n; ++i) {
    const Token& t = doc.tokens[i];
    if (i > 0) {
      const Token* comment = emit_comments(out, doc.hidden[i]);
      FeatureVector v = compute_features(ctx, i);
      WsDirective ws = classifier.predict_ws(v);
      if (comment && line_comment && comment->type == *line_comment &&
          ws.kind != WsKind::kNewline) {
        ws = WsDirective::newline(1);
      }
      if (ws.kind == WsKind::kNone && !comment && !lexes_apart(provider, doc.tokens[i - 1], t)) {
        ws = WsDirective::space(1);
      }
      if (ws.kind == WsKind::kNewline || options.trace_hpos) {
        result.hpos[i] = classifier.predict_hpos(v);
      }
      if (ws.kind == WsKind::kNewline) {
        out.newlines(ws.n);
        out.spaces(resolve_column(doc.tree, i, *result.hpos[i], result.layout, model.indent_size));
      } else if (ws.kind == WsKind::kSpace) {
        out.spaces(ws.n);
      }
      result.ws[i] = ws;
    }
    result.layout[i] = out.here();
    out.text(t.text);
  }

  emit_comments(out, doc.hidden[n]);
  if (model.final_newline) out.text("\n");
  result.text = out.take();
  return result;
}

std::string format(const FormattingModel& model, std::string_view text,
                   const TreeProvider& provider, const FormatOptions& options) {
  check_vocabulary(model, provider);
  Document doc = parse_document(provider, "<input>", text);
  Classifier classifier(model);
  return format_document(classifier, doc, provider, options).text;
}

}  // namespace stylefmt
