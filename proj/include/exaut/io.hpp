#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "exaut/error.hpp"
#include "exaut/exaut.hpp"
#include "exaut/finite_group.hpp"
#include "exaut/fraisse.hpp"
#include "exaut/group.hpp"
#include "exaut/perm.hpp"
#include "exaut/structure.hpp"

// Text formats. Blank lines and anything after '#' are ignored.
//
//   group:      degree 5            structure:  domain 4       graph 4
//               (0 1)(2 3)                      rel E 2        0 1
//               (0 1 2 3 4)                     0 1            1 2
//                                               1 0
//   table:      order 2
//               0 1                 spec:       name triangle_free
//               1 0                             sig
//                                               E 2
//   iso:        degree 3                        end
//               (0 1) -> (1 2)                  symmetric_irreflexive E
//               (0 1 2) -> (0 2 1)              forbid
//                                               graph 3
//                                               0 1
//                                               1 2
//                                               0 2
//                                               end
//
// A spec may also have `partition P0 P1 ...` and
// `symmetric_irreflexive R sorts P0 P1`.

namespace exaut::io {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
  std::string text;
};

inline std::vector<Line> lines_of(std::istream& in)
{
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::erase(raw, '\r');
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}, raw};
    for (std::string w; words >> w;)
      line.words.push_back(w);
    if (!line.words.empty())
      out.push_back(std::move(line));
  }
  return out;
}

inline std::vector<Line> lines_of(const std::string& text)
{
  std::istringstream in(text);
  return lines_of(in);
}

[[noreturn]] inline void fail(const Line& line, const std::string& what)
{
  throw Error(ErrorKind::Parse, "line " + std::to_string(line.number) + ": " + what);
}

inline std::size_t number(const Line& line, const std::string& word)
{
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(word, &pos);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + word + "'");
  }
  if (pos != word.size() || word[0] == '-')
    fail(line, "expected a number, got '" + word + "'");
  return static_cast<std::size_t>(v);
}

inline std::size_t header(const std::vector<Line>& lines, const std::string& keyword)
{
  if (lines.empty() || lines[0].words.size() != 2 || lines[0].words[0] != keyword)
    throw Error(ErrorKind::Parse, "expected a '" + keyword + " n' header");
  return number(lines[0], lines[0].words[1]);
}

inline std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Usage, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Point> points(const Line& line, std::size_t from, std::size_t degree)
{
  std::vector<Point> out;
  for (std::size_t i = from; i < line.words.size(); ++i) {
    auto p = number(line, line.words[i]);
    if (p >= degree)
      throw Error(ErrorKind::PointOutOfRange,
                  "line " + std::to_string(line.number) + ": point " + std::to_string(p) +
                    " >= " + std::to_string(degree));
    out.push_back(static_cast<Point>(p));
  }
  return out;
}

inline FinStructure structure_from(const std::vector<Line>& lines)
{
  if (lines.empty())
    throw Error(ErrorKind::Parse, "empty structure");
  const auto& head = lines[0];
  if (head.words.size() != 2 || (head.words[0] != "domain" && head.words[0] != "graph"))
    fail(head, "expected 'domain n' or 'graph n'");
  const std::size_t n = number(head, head.words[1]);
  if (head.words[0] == "graph") {
    std::vector<std::pair<Point, Point>> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto p = points(lines[i], 0, n);
      if (p.size() != 2)
        fail(lines[i], "an edge needs two points");
      if (p[0] == p[1])
        fail(lines[i], "loops are not allowed in a graph");
      edges.emplace_back(p[0], p[1]);
    }
    return graph_structure(n, edges);
  }
  std::vector<Symbol> symbols;
  std::vector<std::vector<Tuple>> tables;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.words[0] == "rel") {
      if (line.words.size() != 3)
        fail(line, "expected 'rel <name> <arity>'");
      symbols.push_back({line.words[1], static_cast<unsigned>(number(line, line.words[2]))});
      tables.emplace_back();
      continue;
    }
    if (symbols.empty())
      fail(line, "tuple before any 'rel' line");
    auto t = points(line, 0, n);
    if (t.size() != symbols.back().arity)
      fail(line, "tuple length differs from the arity of " + symbols.back().name);
    tables.back().push_back(Tuple(t.begin(), t.end()));
  }
  return FinStructure(n, Signature(symbols), std::move(tables));
}

/// Re-expresses m over `sig`, matching relations by name.
inline FinStructure over_signature(const FinStructure& m, const Signature& sig)
{
  std::vector<std::vector<Tuple>> tables(sig.size());
  for (std::size_t s = 0; s < m.signature().size(); ++s) {
    const auto& sym = m.signature()[s];
    auto idx = sig.index_of(sym.name);
    if (!idx || sig[*idx].arity != sym.arity)
      throw Error(ErrorKind::SignatureMismatch, "relation " + sym.name + " is not in the signature");
    tables[*idx] = m.tuples(s);
  }
  return FinStructure(m.size(), sig, std::move(tables));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Groups and tables.

inline PermGroup parse_group(const std::string& text)
{
  auto lines = detail::lines_of(text);
  const std::size_t n = detail::header(lines, "degree");
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < lines.size(); ++i)
    gens.push_back(Permutation::parse(n, lines[i].text));
  return generate_or_trivial(std::move(gens), n);
}

inline std::string format_group(const PermGroup& g)
{
  std::string out = "degree " + std::to_string(g.degree()) + "\n";
  for (const auto& x : g.generators())
    if (!x.is_identity())
      out += x.to_string() + "\n";
  return out;
}

inline FiniteGroup parse_table(const std::string& text)
{
  auto lines = detail::lines_of(text);
  const std::size_t n = detail::header(lines, "order");
  if (lines.size() != n + 1)
    throw Error(ErrorKind::InvalidTable, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::size_t> row;
    for (const auto& w : lines[i].words)
      row.push_back(detail::number(lines[i], w));
    if (row.size() != n)
      throw Error(ErrorKind::InvalidTable, "row " + std::to_string(i - 1) + " has the wrong length");
    table.push_back(std::move(row));
  }
  return FiniteGroup(std::move(table));
}

inline std::string format_table(const FiniteGroup& g)
{
  std::string out = "order " + std::to_string(g.order()) + "\n";
  for (const auto& row : g.table()) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out += (j ? " " : "") + std::to_string(row[j]);
    out += "\n";
  }
  return out;
}

/// A built-in name (Z1..Z8, V4, S3, D4, Q8) or a Cayley table file.
inline FiniteGroup finite_group_ref(const std::string& ref)
{
  if (auto g = groups::by_name(ref))
    return *g;
  return parse_table(detail::slurp(ref));
}

// ---------------------------------------------------------------------------
// Structures.

inline FinStructure parse_structure(const std::string& text)
{
  return detail::structure_from(detail::lines_of(text));
}

inline std::string format_structure(const FinStructure& m)
{
  std::string out = "domain " + std::to_string(m.size()) + "\n";
  for (std::size_t s = 0; s < m.signature().size(); ++s) {
    out += "rel " + m.signature()[s].name + " " + std::to_string(m.signature()[s].arity) + "\n";
    for (const auto& t : m.tuples(s)) {
      for (std::size_t i = 0; i < t.size(); ++i)
        out += (i ? " " : "") + std::to_string(t[i]);
      out += "\n";
    }
  }
  return out;
}

/// Edge-list shorthand for a symmetric binary relation.
inline std::string format_graph(const FinStructure& g)
{
  if (g.signature().size() != 1 || g.signature()[0].arity != 2)
    throw Error(ErrorKind::SignatureMismatch, "not a graph");
  std::string out = "graph " + std::to_string(g.size()) + "\n";
  for (const auto& t : g.tuples(0))
    if (t[0] < t[1])
      out += std::to_string(t[0]) + " " + std::to_string(t[1]) + "\n";
  return out;
}

/// `pureset:n`, `edgeless:n`, `cycle:n`, `path:n`, `complete:n`, `rook:m`,
/// `cliques:cxs`, or a structure file.
inline FinStructure playground_ref(const std::string& ref)
{
  auto colon = ref.find(':');
  if (colon != std::string::npos) {
    const std::string kind = ref.substr(0, colon), arg = ref.substr(colon + 1);
    detail::Line line{0, {arg}, ref};
    if (kind == "cliques") {
      auto x = arg.find('x');
      if (x == std::string::npos)
        throw Error(ErrorKind::Usage, "cliques needs countxsize, e.g. cliques:2x3");
      return playground::cliques(detail::number(line, arg.substr(0, x)),
                                 detail::number(line, arg.substr(x + 1)));
    }
    const std::size_t n = detail::number(line, arg);
    if (kind == "pureset")
      return playground::pure_set(n);
    if (kind == "edgeless")
      return playground::edgeless(n);
    if (kind == "cycle")
      return playground::cycle(n);
    if (kind == "path")
      return playground::path(n);
    if (kind == "complete")
      return playground::complete(n);
    if (kind == "rook")
      return playground::rook(n);
    throw Error(ErrorKind::Usage, "unknown playground " + kind);
  }
  return parse_structure(detail::slurp(ref));
}

// ---------------------------------------------------------------------------
// Class specs.

inline ClassSpec parse_spec(const std::string& text)
{
  auto lines = detail::lines_of(text);
  ClassSpec spec;
  spec.name = "spec";
  std::vector<Symbol> symbols;
  bool have_sig = false;
  std::vector<std::pair<detail::Line, std::vector<detail::Line>>> forbids;
  std::vector<detail::Line> deferred;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& w = line.words;
    if (w[0] == "name" && w.size() == 2) {
      spec.name = w[1];
    } else if (w[0] == "sig") {
      have_sig = true;
      for (++i; i < lines.size() && lines[i].words[0] != "end"; ++i) {
        if (lines[i].words.size() != 2)
          detail::fail(lines[i], "expected '<name> <arity>'");
        symbols.push_back({lines[i].words[0],
                           static_cast<unsigned>(detail::number(lines[i], lines[i].words[1]))});
      }
      if (i == lines.size())
        detail::fail(line, "unterminated sig block");
    } else if (w[0] == "forbid") {
      std::vector<detail::Line> body;
      std::size_t start = i;
      for (++i; i < lines.size() && lines[i].words[0] != "end"; ++i)
        body.push_back(lines[i]);
      if (i == lines.size())
        detail::fail(lines[start], "unterminated forbid block");
      forbids.emplace_back(lines[start], std::move(body));
    } else if (w[0] == "partition" || w[0] == "symmetric_irreflexive") {
      deferred.push_back(line);
    } else {
      detail::fail(line, "unknown directive '" + w[0] + "'");
    }
  }
  if (!have_sig)
    throw Error(ErrorKind::Parse, "spec has no sig block");
  spec.signature = Signature(symbols);
  auto symbol = [&](const detail::Line& line, const std::string& name) {
    auto idx = spec.signature.index_of(name);
    if (!idx)
      detail::fail(line, "unknown symbol '" + name + "'");
    return *idx;
  };
  for (const auto& line : deferred) {
    const auto& w = line.words;
    if (w[0] == "partition") {
      for (std::size_t j = 1; j < w.size(); ++j)
        spec.partition.push_back(symbol(line, w[j]));
    } else if (w.size() == 2) {
      spec.symmetric_irreflexive.push_back({symbol(line, w[1]), std::nullopt});
    } else if (w.size() == 5 && w[2] == "sorts") {
      spec.symmetric_irreflexive.push_back(
        {symbol(line, w[1]), std::make_pair(symbol(line, w[3]), symbol(line, w[4]))});
    } else {
      detail::fail(line, "expected 'symmetric_irreflexive R [sorts P Q]'");
    }
  }
  for (const auto& [line, body] : forbids) {
    if (body.empty())
      detail::fail(line, "empty forbid block");
    spec.forbidden.push_back(detail::over_signature(detail::structure_from(body), spec.signature));
  }
  spec.validate();
  return spec;
}

inline std::string format_spec(const ClassSpec& spec)
{
  const auto& sig = spec.signature;
  std::string out = "name " + spec.name + "\nsig\n";
  for (const auto& s : sig.symbols())
    out += s.name + " " + std::to_string(s.arity) + "\n";
  out += "end\n";
  if (!spec.partition.empty()) {
    out += "partition";
    for (auto p : spec.partition)
      out += " " + sig[p].name;
    out += "\n";
  }
  for (const auto& r : spec.symmetric_irreflexive) {
    out += "symmetric_irreflexive " + sig[r.symbol].name;
    if (r.sorts)
      out += " sorts " + sig[r.sorts->first].name + " " + sig[r.sorts->second].name;
    out += "\n";
  }
  for (const auto& f : spec.forbidden)
    out += "forbid\n" + format_structure(f) + "end\n";
  return out;
}

/// `pure_set`, `graphs`, `kn_free:n`, `colored_graph:n`, `gamma:<playground>`,
/// or a spec file.
inline ClassSpec class_ref(const std::string& ref)
{
  if (ref == "pure_set")
    return classes::pure_set();
  if (ref == "graphs")
    return classes::graphs();
  auto colon = ref.find(':');
  if (colon != std::string::npos) {
    const std::string kind = ref.substr(0, colon), arg = ref.substr(colon + 1);
    detail::Line line{0, {arg}, ref};
    if (kind == "kn_free")
      return classes::kn_free(detail::number(line, arg));
    if (kind == "colored_graph")
      return classes::colored_graph(detail::number(line, arg));
    if (kind == "gamma")
      return classes::gamma_class(playground_ref(arg));
  }
  return parse_spec(detail::slurp(ref));
}

/// `dcl`, `threshold:t` or `class:<class ref>`.
inline Closure closure_ref(const std::string& ref)
{
  if (ref == "dcl")
    return Closure::dcl();
  if (ref.rfind("threshold:", 0) == 0) {
    detail::Line line{0, {}, ref};
    return Closure::threshold_of(detail::number(line, ref.substr(10)));
  }
  if (ref.rfind("class:", 0) == 0)
    return Closure::class_level(class_ref(ref.substr(6)));
  throw Error(ErrorKind::Usage, "unknown closure '" + ref + "'");
}

// ---------------------------------------------------------------------------
// Generator images: `degree n`, then lines `<source> -> <image>`.

struct GeneratorImages {
  std::size_t degree = 0;
  std::vector<Permutation> sources;
  std::vector<Permutation> images;
};

inline GeneratorImages parse_iso(const std::string& text)
{
  auto lines = detail::lines_of(text);
  GeneratorImages out;
  out.degree = detail::header(lines, "degree");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].text;
    auto arrow = t.find("->");
    if (arrow == std::string::npos)
      detail::fail(lines[i], "expected '<source> -> <image>'");
    out.sources.push_back(Permutation::parse(out.degree, t.substr(0, arrow)));
    out.images.push_back(Permutation::parse(out.degree, t.substr(arrow + 2)));
  }
  if (out.sources.empty())
    throw Error(ErrorKind::Parse, "no generator images");
  return out;
}

inline std::string format_iso(const std::vector<Permutation>& sources,
                              const std::vector<Permutation>& images)
{
  std::string out = "degree " + std::to_string(sources.empty() ? 0 : sources[0].degree()) + "\n";
  for (std::size_t i = 0; i < sources.size(); ++i)
    out += sources[i].to_string() + " -> " + images[i].to_string() + "\n";
  return out;
}

} // namespace exaut::io
