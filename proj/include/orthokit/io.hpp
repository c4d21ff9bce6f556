#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "orthokit/map.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"
#include "orthokit/report.hpp"

namespace orthokit {

namespace detail {

inline std::string trim(std::string s) {
  if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg, {line});
}

inline Index parse_index(std::size_t line, const std::string& w) {
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line, "expected an index, got '" + w + "'");
  return static_cast<Index>(std::stoull(w));
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// --- .orth -------------------------------------------------------------------

/// Parses the .orth format:
///
///     orthoset 5
///     label 1 a
///     1: 2        # a ⊥ a'
///
/// Partners are listed once, above the diagonal; the falsity row is implicit.
inline Orthoset parse_orth(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0, n = 0;
  bool header = false;
  std::vector<Bits> rows;
  std::vector<std::string> labels;
  bool labelled = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty()) continue;
    if (!header) {
      const auto w = detail::words(s);
      if (w.size() != 2 || w[0] != "orthoset") detail::parse_fail(line, "expected header 'orthoset <n>'");
      n = detail::parse_index(line, w[1]);
      if (n == 0) detail::parse_fail(line, "size must be at least 1");
      rows.assign(n, Bits(n));
      for (Index i = 0; i < n; ++i) {
        rows[0].set(i);
        rows[i].set(0);
      }
      labels.resize(n);
      for (Index i = 0; i < n; ++i) labels[i] = std::to_string(i);
      header = true;
      continue;
    }
    if (s.rfind("label", 0) == 0 && (s.size() == 5 || s[5] == ' ' || s[5] == '\t')) {
      const auto w = detail::words(s);
      if (w.size() != 3) detail::parse_fail(line, "expected 'label <i> <name>'");
      const Index i = detail::parse_index(line, w[1]);
      if (i >= n) detail::parse_fail(line, "label index " + w[1] + " out of range");
      labels[i] = w[2];
      labelled = true;
      continue;
    }
    const auto colon = s.find(':');
    if (colon == std::string::npos) detail::parse_fail(line, "expected 'i: j ...'");
    const Index i = detail::parse_index(line, detail::trim(s.substr(0, colon)));
    if (i == 0 || i >= n) detail::parse_fail(line, "row index " + std::to_string(i) + " out of range 1.." + std::to_string(n - 1));
    for (const auto& w : detail::words(s.substr(colon + 1))) {
      const Index j = detail::parse_index(line, w);
      if (j == i) detail::parse_fail(line, "element " + std::to_string(i) + " listed as orthogonal to itself");
      if (j >= n) detail::parse_fail(line, "partner " + w + " out of range");
      if (j < i) detail::parse_fail(line, "partner " + w + " is below the diagonal");
      rows[i].set(j);
      rows[j].set(i);
    }
  }
  if (!header) detail::parse_fail(line, "missing header 'orthoset <n>'");
  if (labelled) {
    std::map<std::string, Index> seen;
    for (Index i = 0; i < n; ++i)
      if (!seen.emplace(labels[i], i).second) detail::parse_fail(line, "duplicate label '" + labels[i] + "'");
  }
  return Orthoset::validate(std::move(rows), labelled ? std::move(labels) : std::vector<std::string>{});
}

inline Orthoset read_orth(const std::filesystem::path& p) { return parse_orth(detail::read_file(p)); }

inline std::string emit_orth(const Orthoset& x) {
  std::ostringstream out;
  out << "orthoset " << x.size() << "\n";
  if (x.has_labels())
    for (Index i = 0; i < x.size(); ++i)
      if (x.label(i) != std::to_string(i)) out << "label " << i << " " << x.label(i) << "\n";
  for (Index i = 1; i < x.size(); ++i) {
    std::string partners;
    x.row(i).for_each([&](Index j) {
      if (j > i) partners += " " + std::to_string(j);
    });
    if (!partners.empty()) out << i << ":" << partners << "\n";
  }
  return out.str();
}

// --- .map --------------------------------------------------------------------

/// Parses "map <dom> <cod>" followed by "i -> j" lines; indices or labels.
/// Paths are resolved relative to `base`. Unmapped 0 defaults to 0.
inline OrthoMap parse_map(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::optional<Orthoset> dom, cod;
  std::vector<std::optional<Index>> table;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = detail::trim(raw);
    if (s.empty()) continue;
    if (!dom) {
      const auto w = detail::words(s);
      if (w.size() != 3 || w[0] != "map") detail::parse_fail(line, "expected header 'map <dom> <cod>'");
      dom = read_orth(base / w[1]);
      cod = read_orth(base / w[2]);
      table.assign(dom->size(), std::nullopt);
      continue;
    }
    const auto arrow = s.find("->");
    if (arrow == std::string::npos) detail::parse_fail(line, "expected 'i -> j'");
    const auto a = detail::trim(s.substr(0, arrow));
    const auto b = detail::trim(s.substr(arrow + 2));
    const auto i = dom->find(a);
    const auto j = cod->find(b);
    if (!i || *i >= dom->size()) detail::parse_fail(line, "unknown domain element '" + a + "'");
    if (!j || *j >= cod->size()) detail::parse_fail(line, "unknown codomain element '" + b + "'");
    if (table[*i]) detail::parse_fail(line, "element '" + a + "' mapped twice");
    table[*i] = *j;
  }
  if (!dom) detail::parse_fail(line, "missing header 'map <dom> <cod>'");
  std::vector<Index> t(dom->size());
  if (!table[0]) table[0] = 0;
  for (Index i = 0; i < t.size(); ++i) {
    if (!table[i]) detail::parse_fail(line, "element '" + dom->label(i) + "' is unmapped");
    t[i] = *table[i];
  }
  return OrthoMap(*dom, *cod, std::move(t));
}

inline OrthoMap read_map(const std::filesystem::path& p) {
  return parse_map(detail::read_file(p), p.parent_path());
}

// --- lattices ----------------------------------------------------------------

/// Keys: complement, covers, elements (set-based only), labels, members
/// (set-based only), size.
inline Json lattice_json(const Ortholattice& l) {
  Json j;
  Json comp = Json::array();
  for (Index a = 0; a < l.size(); ++a) comp.push_back(l.comp(a));
  j["complement"] = comp;
  Json covers = Json::array();
  for (auto [a, b] : l.covers()) covers.push_back({a, b});
  j["covers"] = covers;
  if (l.set_based()) {
    Json elements = Json::array(), members = Json::array();
    for (Index a = 0; a < l.size(); ++a) {
      elements.push_back(l.set(a).members());
      members.push_back(labels_json(l.carrier(), l.set(a)));
    }
    j["elements"] = elements;
    j["members"] = members;
  }
  j["labels"] = l.labels();
  j["size"] = l.size();
  return j;
}

inline Ortholattice parse_lattice_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
    const std::size_t n = j.at("size").get<std::size_t>();
    std::vector<std::pair<Index, Index>> covers;
    for (const auto& c : j.at("covers")) covers.emplace_back(c.at(0).get<Index>(), c.at(1).get<Index>());
    auto comp = j.at("complement").get<std::vector<Index>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    if (comp.size() != n) throw Error(ErrorCode::ParseError, "complement table has wrong length");
    for (Index c : comp)
      if (c >= n) throw Error(ErrorCode::ParseError, "complement out of range", {c});
    return Ortholattice::from_covers(n, covers, std::move(comp), std::move(labels));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("lattice JSON: ") + e.what());
  }
}

inline Ortholattice read_lattice(const std::filesystem::path& p) { return parse_lattice_json(detail::read_file(p)); }

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Hasse diagram; nodes in index order, edges are covering pairs.
inline std::string emit_dot(const Ortholattice& l) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n";
  for (Index a = 0; a < l.size(); ++a) out << "  n" << a << " [label=" << dot_quote(l.label(a)) << "];\n";
  for (auto [a, b] : l.covers()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace orthokit
