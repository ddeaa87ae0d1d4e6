#include "stylefmt/generator.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stylefmt {

namespace {

constexpr std::array<std::string_view, 16> kVariables{
    "x",     "y",     "count", "total", "index", "value", "limit", "delta",
    "result", "flag", "items", "size",  "offset", "step", "acc",   "buf"};
// Callee and function names are at least four characters long so that a
// wrapped argument never lands exactly one indent right of its callee.
constexpr std::array<std::string_view, 12> kCallees{
    "compute", "render", "update", "lookup", "print", "merge",
    "scale",   "clamp",  "apply",  "fetch",  "store", "notify"};
constexpr std::array<std::string_view, 10> kFunctions{
    "process", "handle", "visit", "build", "check",
    "reduce",  "parse",  "setup", "drain", "finish"};
constexpr std::array<std::string_view, 8> kLongNames{
    "threshold",   "previous_total", "current_index", "retry_count",
    "max_entries", "window_size",    "last_offset",   "pending_items"};
constexpr std::array<std::string_view, 4> kTypes{"int", "str", "bool", "list"};
constexpr std::array<std::string_view, 10> kWords{
    "adjust", "the", "value", "before", "use", "keep", "state", "in", "sync", "cache"};
constexpr std::array<std::string_view, 6> kStrings{
    "\"ok\"", "\"done\"", "\"error\"", "\"a\\\"b\"", "\"value_x\"", "\"ready\""};
constexpr std::array<std::string_view, 4> kArith{"+", "-", "*", "/"};
constexpr std::array<std::string_view, 6> kCompare{"<", ">", "<=", ">=", "==", "!="};

int visible_length(std::string_view s) {
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](char c) { return c != ' '; }));
}

class Generator {
 public:
  Generator(const StyleConfig& style, std::uint64_t seed, const GeneratorOptions& options)
      : style_(style), options_(options), rng_(seed) {}

  std::string file() {
    if (options_.comments && chance(50)) {
      put("/* module " + std::string(pick(kFunctions)) + " */");
      out_ += "\n\n";
    }
    int functions = uniform(options_.min_functions, options_.max_functions);
    for (int f = 0; ; ++f) {
      bool more = options_.min_lines > 0 ? lines() < options_.min_lines : f < functions;
      if (!more) break;
      if (f > 0) out_ += std::string(static_cast<std::size_t>(1 + style_.blank_lines_between_functions), '\n');
      function(f);
    }
    out_ += '\n';
    return std::move(out_);
  }

 private:
  // Modulo sampling keeps generation reproducible across standard libraries.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }
  template <std::size_t N>
  std::string_view pick(const std::array<std::string_view, N>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<int>(N) - 1))];
  }

  void put(std::string_view s) { out_ += s; }
  void newline_at(int col) {
    out_ += '\n';
    out_.append(static_cast<std::size_t>(col), ' ');
  }
  int column() const {
    auto nl = out_.rfind('\n');
    return static_cast<int>(nl == std::string::npos ? out_.size() : out_.size() - nl - 1);
  }
  int lines() const { return static_cast<int>(std::count(out_.begin(), out_.end(), '\n')); }

  std::string comment_text() {
    std::string s = "//";
    int words = uniform(2, 5);
    for (int w = 0; w < words; ++w) {
      s += ' ';
      s += pick(kWords);
    }
    return s;
  }

  // Members either fit comfortably on one line or clearly need wrapping.
  void list(const std::vector<std::string>& members) {
    int length = static_cast<int>(members.size()) - 1;
    for (const auto& m : members) length += visible_length(m);
    const bool wrap = length >= style_.wrap_threshold;
    const int anchor = column();
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (m > 0) {
        put(",");
        if (wrap) {
          newline_at(anchor);
        } else {
          put(" ");
        }
      }
      put(members[m]);
    }
  }

  std::vector<std::string> members(bool long_list, auto&& member) {
    const int lo = long_list ? style_.wrap_threshold * 3 / 2 : 0;
    const int hi = long_list ? style_.wrap_threshold * 2 : style_.wrap_threshold / 2;
    while (true) {
      std::vector<std::string> out;
      int count = long_list ? uniform(3, 6) : uniform(2, 3);
      int length = count - 1;
      for (int m = 0; m < count; ++m) {
        out.push_back(member());
        length += visible_length(out.back());
      }
      if (long_list && length < lo) {
        // Pad with more members until the list is clearly long.
        while (length < lo) {
          out.push_back(member());
          length += 1 + visible_length(out.back());
        }
      }
      if (length >= lo && length <= hi) return out;
    }
  }

  std::string atom() {
    switch (uniform(0, 5)) {
      case 0:
      case 1: return std::string(pick(kVariables));
      case 2: return std::to_string(uniform(0, 999));
      case 3: return std::string(pick(kStrings));
      case 4: return "-" + std::string(pick(kVariables));
      default: return "!" + std::string(pick(kVariables));
    }
  }

  std::string simple_member() {
    if (chance(25)) return std::string(pick(kVariables)) + " + " + std::to_string(uniform(1, 9));
    return atom();
  }

  std::string long_member() {
    if (chance(30)) return simple_member();
    return std::string(pick(kLongNames));
  }

  std::string short_call(int depth) {
    std::string s(pick(kCallees));
    s += "(";
    int n = uniform(0, 3);
    if (n == 1) {
      s += expr(depth - 1);
    } else if (n >= 2) {
      auto ms = members(false, [&] { return depth > 1 ? operand(depth - 1) : atom(); });
      for (std::size_t m = 0; m < ms.size(); ++m) s += (m ? ", " : "") + ms[m];
    }
    return s + ")";
  }

  std::string operand(int depth) {
    if (depth > 0) {
      int r = uniform(0, 9);
      if (r == 0) return short_call(depth);
      if (r == 1) return "(" + binary(depth - 1) + ")";
    }
    return atom();
  }

  std::string binary(int depth) {
    std::string s = operand(depth);
    int terms = uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
      s += " ";
      s += pick(kArith);
      s += " ";
      s += operand(depth);
    }
    return s;
  }

  std::string expr(int depth) { return chance(50) ? operand(depth) : binary(depth); }

  std::string condition() {
    std::string s = operand(1) + " " + std::string(pick(kCompare)) + " " + operand(1);
    if (chance(30)) {
      s += chance(50) ? " && " : " || ";
      s += operand(1) + " " + std::string(pick(kCompare)) + " " + operand(0);
    }
    return s;
  }

  // A call whose argument list may be long enough to wrap.
  void call() {
    put(pick(kCallees));
    put("(");
    int kind = uniform(0, 9);
    if (kind < 4) {
      list(members(true, [&] { return long_member(); }));
    } else if (kind < 8) {
      list(members(false, [&] { return operand(1); }));
    } else if (kind == 8) {
      put(expr(1));
    }
    put(")");
  }

  void value() {
    if (chance(35)) {
      call();
    } else {
      put(expr(2));
    }
  }

  void block(int indent, int depth, bool function_body) {
    if (style_.brace_on_new_line) {
      newline_at(indent);
    } else {
      put(" ");
    }
    put("{");
    int n = depth == 0 ? uniform(2, 6) : uniform(1, 3);
    for (int s = 0; s < n; ++s) {
      const bool last = s == n - 1;
      if (options_.comments && chance(12)) {
        newline_at(indent + style_.indent);
        put(comment_text());
      }
      newline_at(indent + style_.indent);
      statement(indent + style_.indent, depth + 1, function_body && last);
    }
    newline_at(indent);
    put("}");
  }

  void statement(int indent, int depth, bool last_in_function) {
    if (last_in_function && chance(60)) {
      put("return ");
      value();
      put(";");
      trailing_comment();
      return;
    }
    int r = uniform(0, 9);
    if (depth >= 3 && r >= 7) r = uniform(0, 6);
    switch (r) {
      case 0:
      case 1:
        put("var ");
        put(pick(kVariables));
        put(" = ");
        value();
        put(";");
        trailing_comment();
        break;
      case 2:
      case 3:
        put(pick(kVariables));
        put(" = ");
        put(expr(2));
        put(";");
        trailing_comment();
        break;
      case 4:
      case 5:
      case 6:
        call();
        put(";");
        trailing_comment();
        break;
      case 7:
        put("while (");
        put(condition());
        put(")");
        block(indent, depth, false);
        break;
      default:
        if_chain(indent, depth);
        break;
    }
  }

  void trailing_comment() {
    if (options_.comments && chance(8)) {
      put(" ");
      put(comment_text());
    }
  }

  void if_chain(int indent, int depth) {
    // Plain if, if/else, or a three-arm else-if chain.
    int arms = uniform(1, 3);
    bool final_else = arms >= 2 && chance(60);
    int conditional = final_else ? arms - 1 : arms;
    for (int a = 0; a < arms; ++a) {
      if (a > 0) {
        if (style_.brace_on_new_line) {
          newline_at(indent);
        } else {
          put(" ");
        }
        put("else");
        if (a < conditional) put(" ");
      }
      if (a < conditional) {
        put("if (");
        put(condition());
        put(")");
      }
      block(indent, depth, false);
    }
  }

  void function(int f) {
    put("func ");
    put(pick(kFunctions));
    put(std::to_string(f));
    put("(");
    int kind = uniform(0, 9);
    auto param = [&] {
      std::string p(chance(50) ? pick(kVariables) : pick(kLongNames));
      if (chance(50)) p += ": " + std::string(pick(kTypes));
      return p;
    };
    if (kind < 3) {
      list(members(true, param));
    } else if (kind < 7) {
      list(members(false, param));
    } else if (kind < 9) {
      put(param());
    }
    put(")");
    block(0, 0, true);
  }

  StyleConfig style_;
  GeneratorOptions options_;
  std::mt19937_64 rng_;
  std::string out_;
};

}  // namespace

SourceFile generate_file(const StyleConfig& style, std::uint64_t seed,
                         const GeneratorOptions& options) {
  return {"gen_" + std::to_string(seed) + ".bl", Generator(style, seed, options).file()};
}

std::vector<SourceFile> generate_corpus(const StyleConfig& style, int n_files,
                                        std::uint64_t seed, const GeneratorOptions& options) {
  if (n_files < 1) throw std::invalid_argument("n_files must be at least 1");
  std::mt19937_64 seeds(seed);
  std::vector<SourceFile> files;
  for (int f = 0; f < n_files; ++f) {
    SourceFile file = generate_file(style, seeds(), options);
    std::string index = std::to_string(f);
    file.name = "file" + std::string(index.size() < 2 ? 2 - index.size() : 0, '0') + index + ".bl";
    files.push_back(std::move(file));
  }
  return files;
}

}  // namespace stylefmt
