#pragma once

#include <filesystem>
#include <fstream>
#include <map>

#include "verlagerung/mackey.hpp"

namespace vlg {

// Malformed input file; the message carries the 1-based line number.
class FormatError : public PreconditionError {
 public:
  FormatError(std::size_t line, const std::string& what)
      : PreconditionError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Line {
  std::size_t number;
  std::string text;
};

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Non-blank lines with '#' comments removed.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    std::string_view raw = text.substr(pos, nl - pos);
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    auto t = trim(raw);
    if (!t.empty()) out.push_back({number, t});
    pos = nl + 1;
  }
  return out;
}

inline std::string first_token(const std::string& s) { return s.substr(0, s.find_first_of(" \t=")); }

inline std::string rest_after_token(const std::string& s) {
  auto k = s.find_first_of(" \t");
  return k == std::string::npos ? std::string() : trim(s.substr(k));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Splits lines into keyword-headed blocks; the header line is kept.
inline std::vector<std::pair<Line, std::vector<Line>>> split_blocks(const std::vector<Line>& lines,
                                                                     const std::vector<std::string>& keywords) {
  std::vector<std::pair<Line, std::vector<Line>>> out;
  for (const auto& l : lines) {
    const auto tok = first_token(l.text);
    if (std::find(keywords.begin(), keywords.end(), tok) != keywords.end()) {
      out.push_back({l, {}});
    } else {
      if (out.empty()) throw FormatError(l.number, "expected one of the section keywords, got '" + l.text + "'");
      out.back().second.push_back(l);
    }
  }
  return out;
}

inline IntMatrix block_matrix(const Line& header, const std::vector<Line>& body) {
  std::string text;
  for (const auto& l : body) text += l.text + "\n";
  try {
    std::istringstream in(text);
    IntMatrix m = read_matrix(in);
    std::string extra;
    if (in >> extra) throw PreconditionError("matrix: unexpected trailing entry '" + extra + "'");
    return m;
  } catch (const FormatError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw FormatError(header.number, header.text + ": " + e.what());
  }
}

inline Integer parse_integer(const std::string& tok, std::size_t line) {
  Integer z;
  if (tok.empty() || z.set_str(tok, 10) != 0) throw FormatError(line, "bad integer '" + tok + "'");
  return z;
}

inline FgAbGroup block_group(const Line& header, const std::vector<Line>& body) {
  Vector torsion;
  std::size_t free_rank = 0;
  for (const auto& l : body) {
    std::istringstream in(l.text);
    std::string key, tok;
    in >> key;
    if (key == "torsion") {
      while (in >> tok) torsion.push_back(parse_integer(tok, l.number));
    } else if (key == "free") {
      if (!(in >> tok)) throw FormatError(l.number, "free: missing rank");
      Integer r = parse_integer(tok, l.number);
      if (r < 0 || !r.fits_ulong_p()) throw FormatError(l.number, "free: bad rank");
      free_rank = r.get_ui();
      if (in >> tok) throw FormatError(l.number, "free: trailing input");
    } else {
      throw FormatError(l.number, "expected 'torsion' or 'free' in " + header.text + " block");
    }
  }
  try {
    return FgAbGroup(torsion, free_rank);
  } catch (const PreconditionError& e) {
    throw FormatError(header.number, e.what());
  }
}

}  // namespace detail

// ---- group files ------------------------------------------------------------
//
//   perm degree=4            fp
//   (0 1 2 3)                < a, b | b*a*b^-1*a >
//   (0 2)                    subgroup K
//   subgroup rotations       a, b^2
//   (0 1 2 3)

struct SubgroupSpec {
  std::string label;
  std::vector<Permutation> permutations;  // perm backend
  std::vector<Word> words;                // fp backend
};

struct GroupSpec {
  std::string name;
  Backend backend = Backend::perm;
  PermGroup perm;
  FpGroup fp;
  std::vector<SubgroupSpec> subgroups;
  std::string note;

  const SubgroupSpec& subgroup(const std::string& label) const {
    for (const auto& s : subgroups)
      if (s.label == label) return s;
    throw PreconditionError("no subgroup labelled '" + label + "' in " + (name.empty() ? "group" : name));
  }

  GroupPair pair(const SubgroupSpec& U, std::size_t max_cosets = kDefaultMaxCosets) const {
    if (backend == Backend::perm) return GroupPair::from_perm(perm, U.permutations);
    return GroupPair::from_fp(fp, U.words, max_cosets);
  }

  GroupPair pair(const std::string& label, std::size_t max_cosets = kDefaultMaxCosets) const {
    return pair(subgroup(label), max_cosets);
  }
};

inline GroupSpec parse_group_spec(std::string_view text, std::string name = {}) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw FormatError(1, "empty group file");
  GroupSpec spec;
  spec.name = std::move(name);
  const auto& head = lines.front();
  std::size_t k = 1;
  const auto kind = detail::first_token(head.text);
  if (kind == "perm") {
    spec.backend = Backend::perm;
    auto rest = detail::rest_after_token(head.text);
    if (rest.rfind("degree=", 0) != 0) throw FormatError(head.number, "expected 'perm degree=<d>'");
    auto d = detail::parse_integer(detail::trim(rest.substr(7)), head.number);
    if (d < 1 || d > 100000) throw FormatError(head.number, "degree out of range");
    const std::size_t degree = d.get_ui();
    auto parse_perm = [&](const detail::Line& l) {
      try {
        return Permutation::from_cycles(l.text, degree);
      } catch (const PreconditionError& e) {
        throw FormatError(l.number, e.what());
      }
    };
    std::vector<Permutation> gens;
    for (; k < lines.size() && detail::first_token(lines[k].text) != "subgroup"; ++k) gens.push_back(parse_perm(lines[k]));
    spec.perm = PermGroup(degree, gens);
    while (k < lines.size()) {
      SubgroupSpec s;
      s.label = detail::rest_after_token(lines[k].text);
      for (++k; k < lines.size() && detail::first_token(lines[k].text) != "subgroup"; ++k)
        s.permutations.push_back(parse_perm(lines[k]));
      spec.subgroups.push_back(std::move(s));
    }
  } else if (kind == "fp") {
    spec.backend = Backend::fp;
    std::string pres;
    std::size_t pres_line = k < lines.size() ? lines[k].number : head.number;
    for (; k < lines.size() && detail::first_token(lines[k].text) != "subgroup"; ++k) pres += lines[k].text + " ";
    try {
      spec.fp = parse_presentation(pres);
    } catch (const ParseError& e) {
      throw FormatError(pres_line, e.what());
    }
    while (k < lines.size()) {
      SubgroupSpec s;
      s.label = detail::rest_after_token(lines[k].text);
      const std::size_t at = lines[k].number;
      std::string words;
      for (++k; k < lines.size() && detail::first_token(lines[k].text) != "subgroup"; ++k)
        words += (words.empty() ? "" : ",") + lines[k].text;
      try {
        s.words = parse_word_list(words, spec.fp.generator_names);
      } catch (const ParseError& e) {
        throw FormatError(at, e.what());
      }
      spec.subgroups.push_back(std::move(s));
    }
  } else {
    throw FormatError(head.number, "expected 'perm degree=<d>' or 'fp'");
  }
  std::size_t unnamed = 0;
  for (auto& s : spec.subgroups)
    if (s.label.empty()) s.label = "U" + std::to_string(++unnamed);
  for (std::size_t i = 0; i < spec.subgroups.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (spec.subgroups[i].label == spec.subgroups[j].label)
        throw PreconditionError("duplicate subgroup label '" + spec.subgroups[i].label + "'");
  return spec;
}

inline GroupSpec load_group_spec(const std::filesystem::path& path) {
  return parse_group_spec(detail::read_file(path), path.stem().string());
}

inline std::string format_group_spec(const GroupSpec& g) {
  std::ostringstream os;
  if (g.backend == Backend::perm) {
    os << "perm degree=" << g.perm.degree() << '\n';
    for (const auto& p : g.perm.generators()) os << p.to_cycles() << '\n';
    for (const auto& s : g.subgroups) {
      os << "subgroup " << s.label << '\n';
      for (const auto& p : s.permutations) os << p.to_cycles() << '\n';
    }
  } else {
    os << "fp\n" << g.fp.to_string() << '\n';
    for (const auto& s : g.subgroups) {
      os << "subgroup " << s.label << '\n';
      for (std::size_t i = 0; i < s.words.size(); ++i) os << (i ? ", " : "") << g.fp.format(s.words[i]);
      os << '\n';
    }
  }
  return os.str();
}

// ---- module and datum files -------------------------------------------------
//
//   n=3
//   group
//   torsion 2
//   free 1
//   sigma
//   2 2
//   1 0
//   0 1
//
// Datum files add an 'XG' group block and 'i' (XG -> module) and 't'
// (module -> XG) matrices. Matrices act on column vectors: column j holds the
// image of generator j.

namespace detail {

struct ModuleBlocks {
  std::optional<std::size_t> n;
  std::map<std::string, std::pair<Line, std::vector<Line>>> blocks;
};

inline ModuleBlocks read_module_blocks(std::string_view text, const std::vector<std::string>& keywords) {
  auto lines = content_lines(text);
  if (lines.empty()) throw FormatError(1, "empty file");
  ModuleBlocks mb;
  std::vector<Line> rest;
  for (const auto& l : lines) {
    if (l.text.rfind("n=", 0) == 0 || l.text.rfind("n =", 0) == 0) {
      if (mb.n) throw FormatError(l.number, "duplicate n=");
      auto v = parse_integer(trim(l.text.substr(l.text.find('=') + 1)), l.number);
      if (v < 1 || !v.fits_ulong_p()) throw FormatError(l.number, "n must be positive");
      mb.n = v.get_ui();
    } else {
      rest.push_back(l);
    }
  }
  if (!mb.n) throw FormatError(lines.front().number, "missing n=<order>");
  for (auto& b : split_blocks(rest, keywords)) {
    auto key = first_token(b.first.text);
    if (mb.blocks.count(key)) throw FormatError(b.first.number, "duplicate '" + key + "' block");
    mb.blocks.emplace(key, std::move(b));
  }
  for (const auto& k : keywords)
    if (!mb.blocks.count(k)) throw FormatError(lines.back().number, "missing '" + k + "' block");
  return mb;
}

inline CyclicModule module_from_blocks(const ModuleBlocks& mb) {
  const auto& [gh, gb] = mb.blocks.at("group");
  const auto& [sh, sb] = mb.blocks.at("sigma");
  FgAbGroup M = block_group(gh, gb);
  IntMatrix S = block_matrix(sh, sb);
  if (S.rows() != M.dim() || S.cols() != M.dim())
    throw FormatError(sh.number, "sigma must be " + std::to_string(M.dim()) + "x" + std::to_string(M.dim()));
  try {
    return CyclicModule(M, AbHom(M, M, S), *mb.n);
  } catch (const FormatError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw FormatError(sh.number, e.what());
  }
}

}  // namespace detail

inline CyclicModule parse_module(std::string_view text) {
  return detail::module_from_blocks(detail::read_module_blocks(text, {"group", "sigma"}));
}

inline CyclicModule load_module(const std::filesystem::path& path) { return parse_module(detail::read_file(path)); }

inline void write_group_block(std::ostream& os, const char* key, const FgAbGroup& A) {
  os << key << '\n';
  if (A.torsion_rank()) {
    os << "torsion";
    for (const auto& d : A.torsion()) os << ' ' << d.get_str();
    os << '\n';
  }
  os << "free " << A.free_rank() << '\n';
}

inline std::string format_module(const CyclicModule& X) {
  std::ostringstream os;
  os << "n=" << X.order() << '\n';
  write_group_block(os, "group", X.module());
  os << "sigma\n" << X.sigma().matrix();
  return os.str();
}

// Parses a datum without checking the axioms; run validate_datum on it.
inline SectionMackeyDatum parse_datum(std::string_view text) {
  auto mb = detail::read_module_blocks(text, {"group", "sigma", "XG", "i", "t"});
  CyclicModule X = detail::module_from_blocks(mb);
  const auto& [gh, gb] = mb.blocks.at("XG");
  FgAbGroup XG = detail::block_group(gh, gb);
  auto hom = [&](const char* key, const FgAbGroup& from, const FgAbGroup& to) {
    const auto& [h, b] = mb.blocks.at(key);
    IntMatrix m = detail::block_matrix(h, b);
    if (m.rows() != to.dim() || m.cols() != from.dim())
      throw FormatError(h.number, std::string(key) + " must be " + std::to_string(to.dim()) + "x" +
                                      std::to_string(from.dim()));
    try {
      return AbHom(from, to, m);
    } catch (const PreconditionError& e) {
      throw FormatError(h.number, std::string(key) + ": " + e.what());
    }
  };
  AbHom i = hom("i", XG, X.module());
  AbHom t = hom("t", X.module(), XG);
  return {X, XG, i, t};
}

inline SectionMackeyDatum load_datum(const std::filesystem::path& path) { return parse_datum(detail::read_file(path)); }

inline std::string format_datum(const SectionMackeyDatum& X) {
  std::ostringstream os;
  os << format_module(X.X1);
  write_group_block(os, "XG", X.XG);
  os << "i\n" << X.i.matrix() << "t\n" << X.t.matrix();
  return os.str();
}

}  // namespace vlg
