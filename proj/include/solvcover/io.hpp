#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "solvcover/constructions.hpp"
#include "solvcover/cover_solver.hpp"
#include "solvcover/error.hpp"
#include "solvcover/permutation.hpp"
#include "solvcover/theorems.hpp"

namespace solvcover {

inline constexpr const char* kEngineVersion = "1.0.0";

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : s_(text) {}

  GroupSpec parse() {
    GroupSpec g = spec();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group spec: " + what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    std::string out(s_.substr(start, pos_ - start));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  }
  std::uint32_t number() {
    skip();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  /// One permutation in cycle notation, e.g. (1,2)(3,4) or ().
  Permutation permutation(std::size_t degree) {
    skip();
    const std::size_t start = pos_;
    while (peek('(')) {
      const auto close = s_.find(')', pos_);
      if (close == std::string_view::npos) fail("unterminated cycle");
      pos_ = close + 1;
    }
    if (start == pos_) fail("expected a permutation");
    return parse_cycles(s_.substr(start, pos_ - start), degree);
  }

  std::vector<Permutation> permutation_list(std::size_t degree) {
    expect('[');
    std::vector<Permutation> out;
    if (peek(']')) {
      ++pos_;
      return out;
    }
    for (;;) {
      out.push_back(permutation(degree));
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }

  GroupSpec spec() {
    const std::string name = ident();
    if (name == "m10") {
      if (peek('(')) {
        ++pos_;
        expect(')');
      }
      return GroupSpec::m10();
    }
    expect('(');
    GroupSpec out;
    if (name == "product" || name == "direct_product") {
      std::vector<GroupSpec> parts{spec()};
      while (peek(',')) {
        ++pos_;
        parts.push_back(spec());
      }
      out = GroupSpec::product(std::move(parts));
    } else if (name == "squished") {
      GroupSpec a = spec();
      expect(',');
      out = GroupSpec::squished(std::move(a), spec());
    } else if (name == "wreath") {
      GroupSpec base = spec();
      expect(',');
      const std::uint32_t n = number();
      expect(',');
      if (peek('[')) {
        out = GroupSpec::wreath(std::move(base), n, permutation_list(n));
      } else {
        out = GroupSpec::wreath(std::move(base), n, ident());
      }
    } else if (name == "raw") {
      std::size_t degree = 0;
      if (!peek('[')) {
        degree = number();
        expect(';');
      }
      auto perms = permutation_list(degree);
      if (perms.empty()) fail("raw needs at least one generator");
      std::size_t d = degree;
      for (const auto& p : perms) d = std::max(d, p.degree());
      for (auto& p : perms)
        if (p.degree() < d) p = p.extended(d);
      out = GroupSpec::raw(std::move(perms));
    } else {
      const std::uint32_t v = number();
      if (name == "symmetric" || name == "sym") out = GroupSpec::symmetric(v);
      else if (name == "alternating" || name == "alt") out = GroupSpec::alternating(v);
      else if (name == "dihedral") out = GroupSpec::dihedral(v);
      else if (name == "psl2") out = GroupSpec::psl2(v);
      else if (name == "pgl2") out = GroupSpec::pgl2(v);
      else if (name == "pgammal2") out = GroupSpec::pgammal2(v);
      else if (name == "gl2") out = GroupSpec::gl2(v);
      else if (name == "sl2") out = GroupSpec::sl2(v);
      else if (name == "sz" || name == "suzuki") out = GroupSpec::suzuki(v);
      else fail("unknown group family '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GroupSpec parse_group_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

/// Conventional name, e.g. PSL(2,7) for psl2(7).
inline std::string display_name(const GroupSpec& spec) {
  using K = GroupSpec::Kind;
  const std::string q = std::to_string(spec.param);
  switch (spec.kind) {
    case K::Symmetric: return "S" + q;
    case K::Alternating: return "A" + q;
    case K::Dihedral: return "D" + std::to_string(2 * spec.param);
    case K::Psl2: return "PSL(2," + q + ")";
    case K::Pgl2: return "PGL(2," + q + ")";
    case K::Pgammal2: return "PGammaL(2," + q + ")";
    case K::Gl2: return "GL(2," + q + ")";
    case K::Sl2: return "SL(2," + q + ")";
    case K::M10: return "M10";
    case K::Suzuki: return "Sz(" + q + ")";
    case K::Product: {
      std::string s;
      for (std::size_t i = 0; i < spec.children.size(); ++i) s += (i ? " x " : "") + display_name(spec.children[i]);
      return s;
    }
    case K::Wreath: return display_name(spec.children.front()) + " wr " + std::to_string(spec.param);
    case K::Squished: return display_name(spec.children[0]) + " Yup " + display_name(spec.children[1]);
    case K::Raw: break;
  }
  return spec.to_string();
}

inline const char* mode_name(Mode m) { return m == Mode::All ? "all" : "involutions"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "all") return Mode::All;
  if (s == "involutions" || s == "inv") return Mode::Involutions;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::size_t parse_size(std::string_view s, const std::string& what) {
  std::size_t v = 0;
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Certificate text: one permutation per line in 1-based cycle notation.
/// Blank lines and lines starting with '#' are ignored, except that
/// "# group:", "# mode:" and "# size:" comments carry metadata.
inline Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = detail::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = detail::trim(line.substr(1));
      auto take = [&](std::string_view key) -> std::optional<std::string_view> {
        if (body.substr(0, key.size()) != key) return std::nullopt;
        return detail::trim(body.substr(key.size()));
      };
      if (auto v = take("group:")) cert.group = std::string(*v);
      else if (auto v = take("mode:")) cert.mode = parse_mode(*v);
      else if (auto v = take("size:")) cert.claimed_size = detail::parse_size(*v, "size");
      continue;
    }
    try {
      cert.elements.push_back(parse_cycles(line));
    } catch (const ParseError& e) {
      throw ParseError("certificate line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cert;
}

inline Certificate read_certificate(const std::filesystem::path& path) { return parse_certificate(detail::read_file(path)); }

inline std::string write_certificate(const Certificate& cert) {
  std::string out;
  if (!cert.group.empty()) out += "# group: " + cert.group + "\n";
  out += std::string("# mode: ") + mode_name(cert.mode) + "\n";
  if (cert.claimed_size) out += "# size: " + std::to_string(*cert.claimed_size) + "\n";
  for (const auto& p : cert.elements) out += to_cycle_string(p) + "\n";
  return out;
}

/// Everything one solve run reports about a group.
struct ResultRecord {
  std::string group;  // spec text
  std::uint64_t order = 0;
  std::optional<CoverOutcome> alpha;
  std::optional<CoverOutcome> alpha_inv;
  std::vector<std::string> log;
  double seconds = 0;
  std::string engine = kEngineVersion;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0;
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number '" + std::string(s) + "'");
  return v;
}

inline const char* status_text(CoverOutcome::Status s) {
  switch (s) {
    case CoverOutcome::Status::Exact: return "exact";
    case CoverOutcome::Status::Interval: return "interval";
    case CoverOutcome::Status::Infeasible: break;
  }
  return "infeasible";
}

inline CoverOutcome::Status parse_status(std::string_view s) {
  if (s == "exact") return CoverOutcome::Status::Exact;
  if (s == "interval") return CoverOutcome::Status::Interval;
  if (s == "infeasible") return CoverOutcome::Status::Infeasible;
  throw ParseError("unknown status '" + std::string(s) + "'");
}

inline void write_list(std::string& out, const std::string& key, const std::vector<std::string>& items) {
  out += key + ":\n";
  for (const auto& i : items) out += "  - " + i + "\n";
}

inline void write_outcome(std::string& out, const std::string& p, const CoverOutcome& o) {
  out += p + ".status: " + status_text(o.status) + "\n";
  out += p + ".lower: " + std::to_string(o.lower) + "\n";
  out += p + ".upper: " + (o.upper ? std::to_string(*o.upper) : "none") + "\n";
  out += p + ".involutions_only: " + (o.involutions_only ? "true" : "false") + "\n";
  out += p + ".via_quotient: " + (o.via_quotient ? "true" : "false") + "\n";
  out += p + ".nodes: " + std::to_string(o.stats.nodes) + "\n";
  out += p + ".lp_solves: " + std::to_string(o.stats.lp_solves) + "\n";
  out += p + ".seconds: " + format_double(o.stats.seconds) + "\n";
  if (o.certificate) {
    std::vector<std::string> idx;
    for (auto i : *o.certificate) idx.push_back(std::to_string(i));
    write_list(out, p + ".certificate_indices", idx);
  }
  std::vector<std::string> perms;
  for (const auto& e : o.elements) perms.push_back(to_cycle_string(e));
  if (!perms.empty() || o.certificate) write_list(out, p + ".certificate", perms);
  write_list(out, p + ".notes", o.notes);
}

}  // namespace detail

/// Line-oriented "key: value" text; list values follow their key as
/// "  - item" lines.
inline std::string serialize(const ResultRecord& r) {
  std::string out = "solvcover-result 1\n";
  out += "group: " + r.group + "\n";
  out += "order: " + std::to_string(r.order) + "\n";
  out += "engine: " + r.engine + "\n";
  out += "seconds: " + detail::format_double(r.seconds) + "\n";
  if (r.alpha) detail::write_outcome(out, "alpha", *r.alpha);
  if (r.alpha_inv) detail::write_outcome(out, "alpha_inv", *r.alpha_inv);
  detail::write_list(out, "log", r.log);
  return out;
}

inline ResultRecord parse_result(std::string_view text) {
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::vector<std::string>> lists;
  std::string current_list;
  bool header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (detail::trim(raw).empty()) continue;
    if (!header) {
      if (detail::trim(raw) != "solvcover-result 1") throw ParseError("not a result record");
      header = true;
      continue;
    }
    if (raw.substr(0, 4) == "  - ") {
      if (current_list.empty()) throw ParseError("list item outside a list");
      lists[current_list].emplace_back(raw.substr(4));
      continue;
    }
    const auto colon = raw.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value' in '" + std::string(raw) + "'");
    const std::string key(detail::trim(raw.substr(0, colon)));
    std::string_view value = raw.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (value.empty()) {
      current_list = key;
      lists[key];
    } else {
      current_list.clear();
      scalars[key] = std::string(value);
    }
  }
  if (!header) throw ParseError("empty result record");
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = scalars.find(k);
    if (it == scalars.end()) throw ParseError("result record lacks '" + k + "'");
    return it->second;
  };
  ResultRecord r;
  r.group = get("group");
  r.order = detail::parse_size(get("order"), "order");
  r.engine = get("engine");
  r.seconds = detail::parse_double(get("seconds"));
  r.log = lists["log"];
  for (const std::string p : {"alpha", "alpha_inv"}) {
    if (!scalars.contains(p + ".status")) continue;
    CoverOutcome o;
    o.status = detail::parse_status(get(p + ".status"));
    o.lower = detail::parse_size(get(p + ".lower"), "lower");
    if (get(p + ".upper") != "none") o.upper = detail::parse_size(get(p + ".upper"), "upper");
    o.involutions_only = get(p + ".involutions_only") == "true";
    o.via_quotient = get(p + ".via_quotient") == "true";
    o.stats.nodes = detail::parse_size(get(p + ".nodes"), "nodes");
    o.stats.lp_solves = detail::parse_size(get(p + ".lp_solves"), "lp_solves");
    o.stats.seconds = detail::parse_double(get(p + ".seconds"));
    if (lists.contains(p + ".certificate_indices")) {
      std::vector<Index> idx;
      for (const auto& s : lists[p + ".certificate_indices"])
        idx.push_back(static_cast<Index>(detail::parse_size(s, "index")));
      o.certificate = std::move(idx);
    }
    for (const auto& s : lists[p + ".certificate"]) o.elements.push_back(parse_cycles(s));
    o.notes = lists[p + ".notes"];
    (p == "alpha" ? r.alpha : r.alpha_inv) = std::move(o);
  }
  return r;
}

inline ResultRecord read_result(const std::filesystem::path& path) { return parse_result(detail::read_file(path)); }

/// Table cell: a number when exact, [a,b] for an interval, the infinity sign
/// when no cover exists.
inline std::string render_cell(const std::optional<CoverOutcome>& o) {
  return o ? detail::outcome_text(*o) : "-";
}

struct TableRow {
  std::uint64_t order = 0;
  std::string name;
  std::string group;
  std::string alpha;
  std::string alpha_inv;
};

inline std::vector<TableRow> table_rows(std::vector<ResultRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.order != b.order ? a.order < b.order : a.group < b.group;
  });
  std::vector<TableRow> rows;
  for (const auto& r : records) {
    std::string name = r.group;
    try {
      name = display_name(parse_group_spec(r.group));
    } catch (const ParseError&) {
    }
    rows.push_back({r.order, name, r.group, render_cell(r.alpha), render_cell(r.alpha_inv)});
  }
  return rows;
}

namespace detail {

inline std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

}  // namespace detail

inline std::string render_table(const std::vector<TableRow>& rows) {
  std::vector<std::vector<std::string>> cells = {{"Order", "Name", "alpha", "alpha_inv"}};
  for (const auto& r : rows) cells.push_back({std::to_string(r.order), r.name, r.alpha, r.alpha_inv});
  std::vector<std::size_t> width(4, 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], detail::display_width(row[i]));
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) line += " | ";
      const std::string pad(width[i] - detail::display_width(row[i]), ' ');
      line += i == 0 ? pad + row[i] : row[i] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  emit(cells.front());
  std::string rule;
  for (std::size_t i = 0; i < 4; ++i) rule += (i ? "-+-" : "") + std::string(width[i], '-');
  out += rule + "\n";
  for (std::size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
  return out;
}

/// Tab-separated rows with a header line, for scripts.
inline std::string render_table_tsv(const std::vector<TableRow>& rows) {
  std::string out = "order\tname\tgroup\talpha\talpha_inv\n";
  for (const auto& r : rows)
    out += std::to_string(r.order) + "\t" + r.name + "\t" + r.group + "\t" + r.alpha + "\t" + r.alpha_inv + "\n";
  return out;
}

/// Every *.result file in `dir`.
inline std::vector<ResultRecord> read_results(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".result") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ResultRecord> out;
  for (const auto& f : files) out.push_back(read_result(f));
  return out;
}

}  // namespace solvcover
