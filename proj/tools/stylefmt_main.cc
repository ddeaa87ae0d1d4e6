// stylefmt command-line entry point.
//
// Exit status: 0 success, 1 usage error, 2 data error (unparsable input,
// model mismatch, unreadable corpus or model).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stylefmt/blocklang.hpp"
#include "stylefmt/evaluation.hpp"
#include "stylefmt/formatter.hpp"
#include "stylefmt/generator.hpp"
#include "stylefmt/model.hpp"

namespace fs = std::filesystem;
using namespace stylefmt;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const TreeProvider& provider_for(const std::string& id) {
  const TreeProvider* p = find_provider(id);
  if (!p) {
    std::string known;
    for (const auto& k : provider_ids()) known += (known.empty() ? "" : ", ") + k;
    throw UsageError("unknown language '" + id + "' (known: " + known + ")");
  }
  return *p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw DataError("cannot write " + path.string());
}

// Writes to `path`, or standard output when it is empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ostringstream s;
  fn(s);
  write_file(path, s.str());
}

std::vector<SourceFile> load_corpus(const std::string& dir, const std::string& ext) {
  auto files = read_corpus(dir, ext);
  if (files.empty()) throw DataError("no " + ext + " files under " + dir);
  return files;
}

struct Options {
  std::string language = std::string(blocklang::kVariantAId);
  std::string corpus;
  std::string extension = ".bl";
  int indent = 4;
  std::string out;
  std::string model;
  int k = kDefaultK;
  double threshold = kDefaultThreshold;
  std::string comment_token;
  std::uint64_t seed = 1;
  bool in_place = false;
  std::vector<std::string> inputs;
  std::vector<int> sizes{1, 5, 10};
  int trials = 10;
  std::vector<int> ks{1, 5, 11, 21, 51};
  std::string other_language = std::string(blocklang::kVariantBId);
  int files = 15;
  int lines = 0;
  bool brace_on_new_line = false;
  int wrap = 40;
  int blank_lines = 1;
  bool no_comments = false;
  bool k_given = false;
  bool threshold_given = false;
};

int run_train(const Options& o) {
  const TreeProvider& provider = provider_for(o.language);
  auto files = load_corpus(o.corpus, o.extension);
  std::vector<Document> docs = parse_corpus(files, provider);
  std::vector<const Document*> corpus;
  std::size_t tokens = 0;
  for (const auto& d : docs) {
    corpus.push_back(&d);
    tokens += d.tokens.size();
  }
  FormattingModel model = train(corpus, provider, o.indent);
  model.k = o.k;
  model.threshold = o.threshold;
  save_model(model, o.out);
  std::cout << "files " << docs.size() << ", tokens " << tokens << ", exemplars "
            << model.exemplars.size() << " -> " << o.out << '\n';
  return 0;
}

FormattingModel open_model(const Options& o) {
  std::string path = o.model;
  if (path.empty()) {
    if (const char* env = std::getenv("STYLEFMT_MODEL")) path = env;
  }
  if (path.empty()) throw UsageError("no model given (--model or STYLEFMT_MODEL)");
  return load_model(path);
}

int run_format(const Options& o) {
  FormattingModel model = open_model(o);
  if (o.k_given) model.k = o.k;
  if (o.threshold_given) model.threshold = o.threshold;
  const TreeProvider& provider = provider_for(o.language.empty() ? model.provider_id : o.language);
  check_vocabulary(model, provider);
  Classifier classifier(model);

  FormatOptions options;
  if (!o.comment_token.empty()) {
    if (o.comment_token == "none") {
      options.line_comment = std::optional<int>{};
    } else {
      auto type = provider.token_vocabulary().find(o.comment_token);
      if (!type) throw UsageError("unknown token type '" + o.comment_token + "'");
      options.line_comment = type;
    }
  }
  auto format_text = [&](const std::string& name, const std::string& text) {
    try {
      Document doc = parse_document(provider, name, text);
      return format_document(classifier, doc, provider, options).text;
    } catch (const SyntaxError& e) {
      throw DataError(name + ": " + e.what());
    }
  };

  if (o.inputs.empty()) {
    if (o.in_place) throw UsageError("--in-place needs input files");
    std::ostringstream s;
    s << std::cin.rdbuf();
    std::string formatted = format_text("<stdin>", s.str());
    with_output(o.out, [&](std::ostream& out) { out << formatted; });
    return 0;
  }

  // Expand directories; outputs are ordered by input path.
  struct Job {
    fs::path input;
    fs::path relative;
  };
  std::vector<Job> jobs;
  bool any_directory = false;
  for (const auto& in : o.inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      any_directory = true;
      for (const auto& f : read_corpus(p, o.extension)) jobs.push_back({p / f.name, f.name});
    } else {
      jobs.push_back({p, p.filename()});
    }
  }
  if ((any_directory || jobs.size() > 1) && !o.in_place && o.out.empty()) {
    throw UsageError("formatting several files needs --out DIR or --in-place");
  }
  for (const Job& job : jobs) {
    std::string formatted = format_text(job.input.string(), read_file(job.input));
    if (o.in_place) {
      write_file(job.input, formatted);
    } else if (jobs.size() == 1 && !any_directory) {
      with_output(o.out, [&](std::ostream& out) { out << formatted; });
    } else {
      write_file(fs::path(o.out) / job.relative, formatted);
    }
  }
  return 0;
}

int run_eval(const Options& o) {
  const TreeProvider& provider = provider_for(o.language);
  auto files = load_corpus(o.corpus, o.extension);
  EvalResult r = leave_one_out(files, provider, o.indent, o.k, o.threshold);
  with_output(o.out, [&](std::ostream& out) { write_eval_csv(out, r); });
  std::cerr << "median error " << r.median_error << ", median edit distance "
            << r.median_edit_distance << " over " << r.documents.size() << " files\n";
  return 0;
}

int run_stats(const Options& o) {
  FormattingModel model = open_model(o);
  ModelStats s = model_stats(model);
  std::cout << "language              " << model.provider_id << '\n'
            << "indent size           " << model.indent_size << '\n'
            << "documents             " << model.documents.size() << '\n'
            << "exemplars (N)         " << s.exemplars << '\n'
            << "line-start exemplars  " << s.line_start_exemplars << '\n'
            << "unique ws contexts    " << s.unique_ws_contexts << " (" << s.unique_ws_percent
            << "%)\n"
            << "unique hpos contexts  " << s.unique_hpos_contexts << " ("
            << s.unique_hpos_percent << "%)\n"
            << "ambiguous ws          " << s.ambiguous_ws_percent << "%\n"
            << "ambiguous hpos        " << s.ambiguous_hpos_percent << "%\n";
  return 0;
}

int run_experiment(const std::string& which, const Options& o) {
  const TreeProvider& provider = provider_for(o.language);
  auto files = load_corpus(o.corpus, o.extension);
  if (which == "corpus-size") {
    auto points = corpus_size_experiment(files, provider, o.indent, o.sizes, o.trials, o.seed);
    with_output(o.out, [&](std::ostream& out) { write_size_csv(out, points); });
  } else if (which == "k-sweep") {
    auto points = k_sweep(files, provider, o.indent, o.ks, o.threshold);
    with_output(o.out, [&](std::ostream& out) { write_k_csv(out, points); });
  } else {
    const TreeProvider& other = provider_for(o.other_language);
    auto r = grammar_invariance(files, provider, other, o.indent);
    with_output(o.out, [&](std::ostream& out) { write_invariance_csv(out, r); });
    std::cerr << "median edit distance " << r.median << '\n';
  }
  return 0;
}

int run_generate(const Options& o) {
  StyleConfig style{o.indent, o.brace_on_new_line, o.wrap, o.blank_lines};
  GeneratorOptions gen;
  gen.min_lines = o.lines;
  gen.comments = !o.no_comments;
  auto files = generate_corpus(style, o.files, o.seed, gen);
  for (const auto& f : files) write_file(fs::path(o.out) / f.name, f.text);
  std::cout << files.size() << " files -> " << o.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylefmt: learns a code layout style from a corpus and applies it"};
  app.require_subcommand(1);
  Options o;

  auto language = [&](CLI::App* cmd) {
    cmd->add_option("--language", o.language, "Parser id")->capture_default_str();
  };
  auto corpus = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", o.corpus, "Corpus directory")->required();
    cmd->add_option("--ext", o.extension, "Source file extension")->capture_default_str();
  };
  auto knn = [&](CLI::App* cmd) {
    cmd->add_option("-k,--k", o.k, "Neighbours per vote")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threshold", o.threshold, "Maximum neighbour distance")
        ->capture_default_str()->check(CLI::Range(1e-9, 1.0));
  };
  auto indent = [&](CLI::App* cmd) {
    cmd->add_option("--indent", o.indent, "Corpus indentation size")->capture_default_str()
        ->check(CLI::PositiveNumber);
  };

  auto* train_cmd = app.add_subcommand("train", "Train a model from a corpus");
  language(train_cmd);
  corpus(train_cmd);
  indent(train_cmd);
  knn(train_cmd);
  train_cmd->add_option("--out", o.out, "Model file to write")->required();

  auto* format_cmd = app.add_subcommand("format", "Format files with a trained model");
  format_cmd->add_option("--model", o.model, "Model file (default: $STYLEFMT_MODEL)");
  format_cmd->add_option("--language", o.language, "Parser id (default: the model's)");
  knn(format_cmd);
  format_cmd->add_option("--comment-token", o.comment_token,
                         "Single-line comment token type, or 'none'");
  format_cmd->add_option("--out,-o", o.out, "Output file or directory (default: stdout)");
  format_cmd->add_option("--ext", o.extension, "Extension of files inside directories");
  format_cmd->add_flag("--in-place", o.in_place, "Rewrite the input files");
  format_cmd->add_option("inputs", o.inputs, "Files or directories (default: stdin)");

  auto* eval_cmd = app.add_subcommand("eval", "Leave-one-out evaluation; per-file CSV");
  language(eval_cmd);
  corpus(eval_cmd);
  indent(eval_cmd);
  knn(eval_cmd);
  eval_cmd->add_option("--out", o.out, "CSV file (default: stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "Context and directive statistics of a model");
  stats_cmd->add_option("--model", o.model, "Model file (default: $STYLEFMT_MODEL)");

  auto* exp_cmd = app.add_subcommand("experiment", "Corpus-size, k-sweep and invariance CSVs");
  exp_cmd->require_subcommand(1);
  std::string which;
  const std::pair<const char*, const char*> experiments[] = {
      {"corpus-size", "Median held-out error by training corpus size"},
      {"k-sweep", "Median leave-one-out error by k"},
      {"invariance", "Edit distance between two parsers' leave-one-out outputs"},
  };
  for (const auto& [name, description] : experiments) {
    auto* sub = exp_cmd->add_subcommand(name, description);
    language(sub);
    corpus(sub);
    indent(sub);
    sub->add_option("--out", o.out, "CSV file (default: stdout)");
    sub->callback([&which, name] { which = name; });
  }
  auto* size_cmd = exp_cmd->get_subcommand("corpus-size");
  size_cmd->add_option("--sizes", o.sizes, "Corpus sizes")->delimiter(',');
  size_cmd->add_option("--trials", o.trials, "Trials per size")->capture_default_str();
  size_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  auto* k_cmd = exp_cmd->get_subcommand("k-sweep");
  k_cmd->add_option("--ks", o.ks, "Values of k")->delimiter(',');
  k_cmd->add_option("--threshold", o.threshold, "Maximum neighbour distance")
      ->capture_default_str();
  exp_cmd->get_subcommand("invariance")
      ->add_option("--other-language", o.other_language, "Second parser id")
      ->capture_default_str();

  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic, consistently styled corpus");
  gen_cmd->add_option("--out", o.out, "Output directory")->required();
  gen_cmd->add_option("--files", o.files, "Number of files")->capture_default_str();
  gen_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  indent(gen_cmd);
  gen_cmd->add_flag("--brace-new-line", o.brace_on_new_line, "Opening braces on their own line");
  gen_cmd->add_option("--wrap", o.wrap, "List wrap threshold")->capture_default_str();
  gen_cmd->add_option("--blank-lines", o.blank_lines, "Blank lines between functions")
      ->capture_default_str();
  gen_cmd->add_option("--lines", o.lines, "Minimum lines per file (large files)");
  gen_cmd->add_flag("--no-comments", o.no_comments, "Omit comments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*train_cmd) return run_train(o);
    if (*format_cmd) {
      if (format_cmd->count("--language") == 0) o.language.clear();
      o.k_given = format_cmd->count("--k") > 0;
      o.threshold_given = format_cmd->count("--threshold") > 0;
      return run_format(o);
    }
    if (*eval_cmd) return run_eval(o);
    if (*stats_cmd) return run_stats(o);
    if (*exp_cmd) return run_experiment(which, o);
    if (*gen_cmd) return run_generate(o);
  } catch (const UsageError& e) {
    std::cerr << "stylefmt: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "stylefmt: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "stylefmt: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
