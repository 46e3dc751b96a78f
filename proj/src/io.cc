#include "pk/io.hh"

#include <fstream>
#include <set>
#include <sstream>

#include "pk/errors.hh"

namespace pk {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_count(const std::string& tok, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw parse_error("trailing junk in " + what);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("expected an integer for " + what + ", got '" + tok +
                      "'");
  }
}

/* Lines with comments stripped; blank lines dropped unless kept_blank. */
std::vector<std::string> content_lines(const std::string& text,
                                       bool keep_blank) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (!keep_blank && tokens_of(line).empty()) continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Int> parse_knapsack_text(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok)) throw parse_error("knapsack file: empty");
  long count = parse_count(tok, "the knapsack entry count");
  if (count < 1) throw parse_error("knapsack file: entry count must be >= 1");
  std::vector<Int> out;
  for (long i = 0; i < count; ++i) {
    if (!(in >> tok))
      throw parse_error("knapsack file: expected " + std::to_string(count) +
                        " entries");
    Int v;
    try {
      v = Int(tok);
    } catch (const std::exception&) {
      throw parse_error("knapsack file: bad entry '" + tok + "'");
    }
    if (v <= 0) throw parse_error("knapsack file: entries must be positive");
    out.push_back(v);
  }
  if (in >> tok) throw parse_error("knapsack file: trailing junk '" + tok + "'");
  return out;
}

std::vector<std::vector<int>> parse_set_partition(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw parse_error("set-partition file: empty");
  auto head = tokens_of(line);
  if (head.size() != 2)
    throw parse_error("set-partition file: first line must be 'R V'");
  long rows = parse_count(head[0], "the row count");
  long vars = parse_count(head[1], "the variable count");
  if (rows < 1 || vars < 0)
    throw parse_error("set-partition file: bad counts");

  std::vector<std::vector<int>> out;
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw parse_error("set-partition file: expected " +
                        std::to_string(rows) + " rows");
    std::vector<int> row;
    for (const auto& tok : tokens_of(line)) {
      long v = parse_count(tok, "a variable id");
      if (v < 1 || v > vars)
        throw parse_error("set-partition file: variable id " +
                          std::to_string(v) + " out of range 1.." +
                          std::to_string(vars));
      row.push_back(static_cast<int>(v));
    }
    out.push_back(std::move(row));
  }
  while (std::getline(in, line))
    if (!tokens_of(line).empty())
      throw parse_error("set-partition file: trailing junk");
  return out;
}

Rational parse_rational_token(const std::string& tok) {
  mpq_class q;
  try {
    q = mpq_class(tok);
  } catch (const std::exception&) {
    throw parse_error("bad rational '" + tok + "'");
  }
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + tok + "'");
  q.canonicalize();
  return Rational(q);
}

Milp parse_milp(const std::string& text) {
  Milp m;
  bool saw_nx = false, saw_ny = false, saw_obj = false, saw_int = false;

  auto split_blocks = [&](const std::vector<std::string>& toks, size_t from,
                          const std::string& where)
      -> std::pair<std::vector<Rational>, std::vector<Rational>> {
    if (!saw_nx || !saw_ny)
      throw parse_error("milp file: NX and NY must precede " + where);
    std::vector<Rational> xs, ys;
    size_t i = from;
    for (; i < toks.size() && toks[i] != "|"; ++i)
      xs.push_back(parse_rational_token(toks[i]));
    if (i == toks.size())
      throw parse_error("milp file: missing '|' in " + where);
    for (++i; i < toks.size(); ++i) ys.push_back(parse_rational_token(toks[i]));
    if (static_cast<long>(xs.size()) != m.nx)
      throw parse_error("milp file: expected " + std::to_string(m.nx) +
                        " x coefficients in " + where);
    if (static_cast<long>(ys.size()) != m.ny)
      throw parse_error("milp file: expected " + std::to_string(m.ny) +
                        " y coefficients in " + where);
    return {xs, ys};
  };

  for (const auto& line : content_lines(text, false)) {
    auto toks = tokens_of(line);
    const std::string& tag = toks[0];
    if (tag == "NX" || tag == "NY") {
      if (toks.size() != 2)
        throw parse_error("milp file: " + tag + " takes one count");
      long v = parse_count(toks[1], tag);
      if (v < 0) throw parse_error("milp file: negative " + tag);
      (tag == "NX" ? m.nx : m.ny) = v;
      (tag == "NX" ? saw_nx : saw_ny) = true;
    } else if (tag == "OBJECTIVE") {
      if (saw_obj) throw parse_error("milp file: repeated OBJECTIVE");
      saw_obj = true;
      auto [xs, ys] = split_blocks(toks, 1, "OBJECTIVE");
      m.cx = std::move(xs);
      m.cy = std::move(ys);
    } else if (tag == "CONSTRAINT") {
      if (toks.size() < 3 || toks[toks.size() - 2] != "<=")
        throw parse_error("milp file: CONSTRAINT needs '<= rhs'");
      Rational rhs = parse_rational_token(toks.back());
      std::vector<std::string> body(toks.begin(), toks.end() - 2);
      auto [xs, ys] = split_blocks(body, 1, "CONSTRAINT");
      m.A.push_back(std::move(xs));
      m.B.push_back(std::move(ys));
      m.b.push_back(rhs);
    } else if (tag == "PARTITION") {
      if (!saw_ny) throw parse_error("milp file: NY must precede PARTITION");
      std::vector<int> row;
      for (size_t i = 1; i < toks.size(); ++i) {
        long v = parse_count(toks[i], "a PARTITION id");
        if (v < 1 || v > m.ny)
          throw parse_error("milp file: PARTITION id out of range");
        row.push_back(static_cast<int>(v));
      }
      m.partition.push_back(std::move(row));
    } else if (tag == "INTEGERS") {
      if (!saw_nx) throw parse_error("milp file: NX must precede INTEGERS");
      if (saw_int) throw parse_error("milp file: repeated INTEGERS");
      saw_int = true;
      std::set<int> seen;
      for (size_t i = 1; i < toks.size(); ++i) {
        long v = parse_count(toks[i], "an INTEGERS id");
        if (v < 1 || v > m.nx)
          throw parse_error("milp file: INTEGERS id out of range");
        if (!seen.insert(static_cast<int>(v)).second)
          throw parse_error("milp file: repeated INTEGERS id");
        m.integer_x.push_back(static_cast<int>(v));
      }
    } else {
      throw parse_error("milp file: unknown tag '" + tag + "'");
    }
  }

  if (!saw_nx || !saw_ny) throw parse_error("milp file: missing NX or NY");
  if (!saw_obj) throw parse_error("milp file: missing OBJECTIVE");
  return m;
}

}  // namespace pk
