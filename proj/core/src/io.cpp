#include "annmat/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "annmat/errors.hpp"

namespace annmat {

namespace {

struct line_rec {
  int no = 0;
  std::vector<std::string> toks;
};

// Tokenized view of a text file: comments stripped, blank lines dropped,
// original line numbers kept for diagnostics.
struct cursor {
  std::string path;
  std::vector<line_rec> lines;
  std::size_t li = 0;
  int last_line = 0;

  explicit cursor(const std::string& p) : path(p) {
    std::ifstream in(p);
    if (!in) throw parse_error(p, 0, "cannot open file");
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
      std::istringstream ss(raw);
      line_rec rec{no, {}};
      std::string t;
      while (ss >> t) rec.toks.push_back(t);
      if (!rec.toks.empty()) lines.push_back(std::move(rec));
    }
    last_line = no;
  }

  [[noreturn]] void fail(int line_no, const std::string& msg) const {
    throw parse_error(path, line_no, msg);
  }
  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw parse_error(path, last_line, msg);
  }
  bool done() const { return li == lines.size(); }
  const line_rec& peek() const { return lines[li]; }
  line_rec next() {
    if (done()) fail_eof("unexpected end of file");
    return lines[li++];
  }
};

int64_t to_int(const cursor& c, int line_no, const std::string& tok) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    c.fail(line_no, "expected an integer, got '" + tok + "'");
  return v;
}

int64_t to_nonneg(const cursor& c, int line_no, const std::string& tok) {
  int64_t v = to_int(c, line_no, tok);
  if (v < 0) c.fail(line_no, "expected a nonnegative integer, got '" + tok + "'");
  return v;
}

grade_t to_death(const cursor& c, int line_no, const std::string& tok) {
  if (tok == "inf") return kInf;
  return to_nonneg(c, line_no, tok);
}

int32_t to_prime(const cursor& c, int line_no, const std::string& tok) {
  int64_t p = to_int(c, line_no, tok);
  if (p < 2 || p > INT32_MAX || !is_prime(int32_t(p)))
    c.fail(line_no, "field order " + tok + " is not prime");
  return int32_t(p);
}

// Reads rows*cols residues across whole lines; a line may carry several
// entries, but may not run past the end of the matrix.
dense_mat read_matrix(cursor& c, const fp_field& F, int rows, int cols,
                      const std::string& what) {
  dense_mat M(rows, cols);
  long need = long(rows) * cols, got = 0;
  while (got < need) {
    if (c.done())
      c.fail_eof(what + " is missing entries (" + std::to_string(rows) + "x" +
                 std::to_string(cols) + " expected)");
    line_rec ln = c.next();
    if (got + long(ln.toks.size()) > need)
      c.fail(ln.no, what + " overruns its " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " shape");
    for (const auto& t : ln.toks) {
      M.at(int(got / cols), int(got % cols)) = F.norm(to_int(c, ln.no, t));
      ++got;
    }
  }
  return M;
}

std::string simplex_str(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

// "0,2,5" -> {0,2,5}; vertices must be strictly increasing
std::vector<int> parse_simplex(const cursor& c, int line_no, const std::string& tok) {
  std::vector<int> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = tok.find(',', start);
    std::string part =
        comma == std::string::npos ? tok.substr(start) : tok.substr(start, comma - start);
    if (part.empty()) c.fail(line_no, "malformed simplex '" + tok + "'");
    out.push_back(int(to_nonneg(c, line_no, part)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] >= out[i + 1])
      c.fail(line_no,
             "simplex '" + tok + "' must list vertices in strictly increasing order");
  return out;
}

bool is_codim1_face(const std::vector<int>& face, const std::vector<int>& cof) {
  return face.size() + 1 == cof.size() &&
         std::includes(cof.begin(), cof.end(), face.begin(), face.end());
}

std::vector<int> read_dims_line(cursor& c, const std::string& label, int count) {
  if (c.done()) c.fail_eof("missing '" + label + "' line");
  line_rec ln = c.next();
  if (ln.toks[0] != label)
    c.fail(ln.no, "expected '" + label + "' line, got '" + ln.toks[0] + "'");
  if (int(ln.toks.size()) != count + 1)
    c.fail(ln.no, "'" + label + "' needs exactly " + std::to_string(count) + " entries");
  std::vector<int> dims;
  for (int i = 0; i < count; ++i)
    dims.push_back(int(to_nonneg(c, ln.no, ln.toks[1 + i])));
  return dims;
}

struct block_spec {
  std::string name;
  int count;  // valid indices are 0..count-1
  std::vector<std::pair<int, int>> shapes;
  std::vector<dense_mat>* dst;
};

// Labeled matrix blocks "<name> <index>" in any order, each exactly once.
void read_blocks(cursor& c, const fp_field& F, std::vector<block_spec> specs) {
  std::map<std::string, std::vector<char>> seen;
  for (auto& sp : specs) {
    sp.dst->assign(sp.count, dense_mat());
    seen[sp.name].assign(sp.count, 0);
  }
  while (!c.done()) {
    line_rec ln = c.next();
    const block_spec* sp = nullptr;
    for (const auto& s : specs)
      if (s.name == ln.toks[0]) sp = &s;
    if (!sp) c.fail(ln.no, "unknown block '" + ln.toks[0] + "'");
    if (ln.toks.size() != 2)
      c.fail(ln.no, "block header needs exactly one index");
    int i = int(to_nonneg(c, ln.no, ln.toks[1]));
    if (i >= sp->count)
      c.fail(ln.no, "block " + sp->name + " " + std::to_string(i) + " is out of range");
    if (seen[sp->name][i])
      c.fail(ln.no, "duplicate block " + sp->name + " " + std::to_string(i));
    seen[sp->name][i] = 1;
    (*sp->dst)[i] = read_matrix(c, F, sp->shapes[i].first, sp->shapes[i].second,
                                "block " + sp->name + " " + std::to_string(i));
  }
  for (const auto& sp : specs)
    for (int i = 0; i < sp.count; ++i)
      if (!seen[sp.name][i])
        c.fail_eof("missing block " + sp.name + " " + std::to_string(i));
}

line_rec read_header(cursor& c, const std::string& tag, std::size_t ntoks,
                     const std::string& usage) {
  if (c.done()) c.fail_eof("empty file, expected '" + usage + "' header");
  line_rec h = c.next();
  if (h.toks[0] != tag || h.toks.size() != ntoks)
    c.fail(h.no, "expected '" + usage + "' header");
  return h;
}

// Shared event loop of the tower and block-tower formats; data != nullptr
// additionally accepts interleaved stalk/ext declarations.
tower_script parse_tower_like(cursor& c, int max_dim, cosheaf_data* data) {
  line_rec h = read_header(c, "tower", 2, "tower p");
  tower_script s;
  s.p = to_prime(c, h.no, h.toks[1]);
  fp_field F(s.p);
  while (!c.done()) {
    line_rec ln = c.next();
    const std::string& d = ln.toks[0];
    if (d == "i") {
      if (ln.toks.size() < 3)
        c.fail(ln.no, "include event needs a time and at least one vertex");
      int64_t t = to_nonneg(c, ln.no, ln.toks[1]);
      if (t != int64_t(s.events.size()))
        c.fail(ln.no, "event carries time " + ln.toks[1] + ", expected " +
                          std::to_string(s.events.size()));
      std::vector<int> verts;
      for (std::size_t q = 2; q < ln.toks.size(); ++q)
        verts.push_back(int(to_nonneg(c, ln.no, ln.toks[q])));
      std::sort(verts.begin(), verts.end());
      if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        c.fail(ln.no, "include event repeats a vertex");
      if (max_dim >= 0 && int(verts.size()) - 1 > max_dim)
        c.fail(ln.no, "simplex of dimension " + std::to_string(verts.size() - 1) +
                          " exceeds the requested maximum dimension " +
                          std::to_string(max_dim));
      s.events.push_back({grade_t(t), true, std::move(verts), -1, -1});
    } else if (d == "c") {
      if (ln.toks.size() != 4)
        c.fail(ln.no, "collapse event needs a time and two vertices");
      int64_t t = to_nonneg(c, ln.no, ln.toks[1]);
      if (t != int64_t(s.events.size()))
        c.fail(ln.no, "event carries time " + ln.toks[1] + ", expected " +
                          std::to_string(s.events.size()));
      int from = int(to_nonneg(c, ln.no, ln.toks[2]));
      int to = int(to_nonneg(c, ln.no, ln.toks[3]));
      if (from == to) c.fail(ln.no, "collapse needs two distinct vertices");
      s.events.push_back({grade_t(t), false, {}, from, to});
    } else if (data && d == "stalk") {
      if (ln.toks.size() != 3)
        c.fail(ln.no, "stalk line needs a simplex and a dimension");
      auto sx = parse_simplex(c, ln.no, ln.toks[1]);
      if (data->stalk.count(sx))
        c.fail(ln.no, "duplicate stalk line for simplex " + ln.toks[1]);
      data->stalk[sx] = int(to_nonneg(c, ln.no, ln.toks[2]));
    } else if (data && d == "ext") {
      if (ln.toks.size() != 3)
        c.fail(ln.no, "ext line needs a face and a cofacet");
      auto face = parse_simplex(c, ln.no, ln.toks[1]);
      auto cof = parse_simplex(c, ln.no, ln.toks[2]);
      if (!is_codim1_face(face, cof))
        c.fail(ln.no, "simplex " + ln.toks[1] + " is not a codimension-one face of " +
                          ln.toks[2]);
      for (const auto& sx : {face, cof})
        if (!data->stalk.count(sx))
          c.fail(ln.no, "no stalk declared for simplex " + simplex_str(sx));
      auto key = std::make_pair(face, cof);
      if (data->ext.count(key))
        c.fail(ln.no, "duplicate ext line for " + ln.toks[1] + " -> " + ln.toks[2]);
      data->ext[key] =
          read_matrix(c, F, data->stalk.at(face), data->stalk.at(cof),
                      "ext matrix " + ln.toks[1] + " -> " + ln.toks[2]);
    } else {
      c.fail(ln.no, "unknown directive '" + d + "'");
    }
  }
  return s;
}

}  // namespace

annotated_matrix read_annmat(const std::string& path) {
  cursor c(path);
  line_rec h = read_header(c, "annmat", 4, "annmat R C p");
  int R = int(to_nonneg(c, h.no, h.toks[1]));
  int C = int(to_nonneg(c, h.no, h.toks[2]));
  int32_t p = to_prime(c, h.no, h.toks[3]);
  std::vector<bar> rows, cols;
  for (int r = 0; r < R; ++r) {
    if (c.done()) c.fail_eof("missing row annotation " + std::to_string(r));
    line_rec ln = c.next();
    if (ln.toks[0] != "r" || ln.toks.size() != 3)
      c.fail(ln.no, "expected row annotation 'r <birth> <death>'");
    rows.push_back({to_nonneg(c, ln.no, ln.toks[1]), to_death(c, ln.no, ln.toks[2])});
  }
  for (int cc = 0; cc < C; ++cc) {
    if (c.done()) c.fail_eof("missing column annotation " + std::to_string(cc));
    line_rec ln = c.next();
    if (ln.toks[0] != "c" || ln.toks.size() != 3)
      c.fail(ln.no, "expected column annotation 'c <birth> <death>'");
    cols.push_back({to_nonneg(c, ln.no, ln.toks[1]), to_death(c, ln.no, ln.toks[2])});
  }
  fp_field F(p);
  dense_mat M(R, C);
  if (R > 0 && C > 0) {
    for (int r = 0; r < R; ++r) {
      if (c.done()) c.fail_eof("missing matrix row " + std::to_string(r));
      line_rec ln = c.next();
      if (int(ln.toks.size()) != C)
        c.fail(ln.no, "matrix row " + std::to_string(r) + " needs exactly " +
                          std::to_string(C) + " entries");
      for (int cc = 0; cc < C; ++cc)
        M.at(r, cc) = F.norm(to_int(c, ln.no, ln.toks[cc]));
    }
  }
  if (!c.done()) c.fail(c.peek().no, "unexpected trailing content");
  return annotated_matrix::from_dense(p, M, std::move(rows), std::move(cols));
}

raw_module_morphism read_rawmod(const std::string& path) {
  cursor c(path);
  line_rec h = read_header(c, "rawmod", 3, "rawmod m p");
  int m = int(to_nonneg(c, h.no, h.toks[1]));
  int32_t p = to_prime(c, h.no, h.toks[2]);
  raw_module_morphism raw;
  raw.F = fp_field(p);
  raw.m = m;
  raw.dimsM = read_dims_line(c, "dimsM", m + 1);
  raw.dimsN = read_dims_line(c, "dimsN", m + 1);
  auto shapes = [&](const std::vector<int>& dims, bool internal) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < (internal ? m : m + 1); ++i)
      out.push_back(internal ? std::make_pair(dims[i + 1], dims[i])
                             : std::make_pair(raw.dimsN[i], raw.dimsM[i]));
    return out;
  };
  read_blocks(c, raw.F,
              {{"A", m, shapes(raw.dimsM, true), &raw.A},
               {"B", m, shapes(raw.dimsN, true), &raw.B},
               {"C", m + 1, shapes({}, false), &raw.C}});
  return raw;
}

raw_complex read_rawcplx(const std::string& path) {
  cursor c(path);
  line_rec h = read_header(c, "rawcplx", 3, "rawcplx m p");
  int m = int(to_nonneg(c, h.no, h.toks[1]));
  int32_t p = to_prime(c, h.no, h.toks[2]);
  raw_complex raw;
  raw.F = fp_field(p);
  raw.m = m;
  raw.dimsL = read_dims_line(c, "dimsL", m + 1);
  raw.dimsM = read_dims_line(c, "dimsM", m + 1);
  raw.dimsN = read_dims_line(c, "dimsN", m + 1);
  auto internal = [&](const std::vector<int>& dims) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m; ++i) out.emplace_back(dims[i + 1], dims[i]);
    return out;
  };
  auto connecting = [&](const std::vector<int>& to, const std::vector<int>& from) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= m; ++i) out.emplace_back(to[i], from[i]);
    return out;
  };
  read_blocks(c, raw.F,
              {{"D", m, internal(raw.dimsL), &raw.D},
               {"A", m, internal(raw.dimsM), &raw.A},
               {"B", m, internal(raw.dimsN), &raw.B},
               {"E", m + 1, connecting(raw.dimsM, raw.dimsL), &raw.E},
               {"C", m + 1, connecting(raw.dimsN, raw.dimsM), &raw.C}});
  return raw;
}

tower_script read_tower(const std::string& path, int max_dim) {
  cursor c(path);
  return parse_tower_like(c, max_dim, nullptr);
}

cosheaf_instance read_cosheaf(const std::string& path, int max_dim) {
  cursor c(path);
  cosheaf_instance inst;
  inst.script = parse_tower_like(c, max_dim, &inst.data);
  return inst;
}

sheaf_instance read_sheaf(const std::string& path, int32_t p) {
  cursor c(path);
  read_header(c, "complex", 1, "complex");
  fp_field F(p);
  std::vector<std::vector<int>> maximal;
  auto directive = [](const std::string& t) {
    return t == "m" || t == "stalk" || t == "res" || t == "step";
  };
  while (!c.done() && !directive(c.peek().toks[0])) {
    line_rec ln = c.next();
    std::vector<int> sx;
    for (const auto& t : ln.toks) sx.push_back(int(to_nonneg(c, ln.no, t)));
    for (std::size_t i = 0; i + 1 < sx.size(); ++i)
      if (sx[i] >= sx[i + 1])
        c.fail(ln.no, "simplex must list vertices in strictly increasing order");
    maximal.push_back(std::move(sx));
  }
  sheaf_instance S;
  S.p = p;
  S.K = simplicial_complex::from_maximal(maximal);
  bool have_m = false;
  bool past_stalks = false;
  std::set<std::tuple<std::vector<int>, std::vector<int>, int>> seen_res;
  std::set<std::pair<std::vector<int>, int>> seen_step;
  auto require_in_complex = [&](const line_rec& ln, const std::vector<int>& sx,
                                const std::string& tok) {
    if (!S.K.has(sx)) c.fail(ln.no, "simplex " + tok + " is not in the complex");
  };
  while (!c.done()) {
    line_rec ln = c.next();
    const std::string& d = ln.toks[0];
    if (!directive(d)) c.fail(ln.no, "unknown directive '" + d + "'");
    if (d == "m") {
      if (have_m) c.fail(ln.no, "duplicate m line");
      if (ln.toks.size() != 2) c.fail(ln.no, "expected 'm <grades>'");
      S.m = int(to_nonneg(c, ln.no, ln.toks[1]));
      have_m = true;
      continue;
    }
    if (!have_m) c.fail(ln.no, "m must be declared before '" + d + "' lines");
    if (d == "stalk") {
      if (past_stalks)
        c.fail(ln.no, "stalk lines must come before res and step lines");
      if (int(ln.toks.size()) != 2 + S.m + 1)
        c.fail(ln.no, "stalk line needs a simplex and " + std::to_string(S.m + 1) +
                          " dimensions");
      auto sx = parse_simplex(c, ln.no, ln.toks[1]);
      require_in_complex(ln, sx, ln.toks[1]);
      if (S.stalk.count(sx))
        c.fail(ln.no, "duplicate stalk line for simplex " + ln.toks[1]);
      std::vector<int> dims;
      for (int i = 0; i <= S.m; ++i)
        dims.push_back(int(to_nonneg(c, ln.no, ln.toks[2 + i])));
      S.stalk[sx] = std::move(dims);
    } else if (d == "res") {
      past_stalks = true;
      if (ln.toks.size() != 4)
        c.fail(ln.no, "res line needs a face, a cofacet, and a grade");
      auto face = parse_simplex(c, ln.no, ln.toks[1]);
      auto cof = parse_simplex(c, ln.no, ln.toks[2]);
      require_in_complex(ln, face, ln.toks[1]);
      require_in_complex(ln, cof, ln.toks[2]);
      if (!is_codim1_face(face, cof))
        c.fail(ln.no, "simplex " + ln.toks[1] + " is not a codimension-one face of " +
                          ln.toks[2]);
      int i = int(to_nonneg(c, ln.no, ln.toks[3]));
      if (i > S.m) c.fail(ln.no, "grade " + ln.toks[3] + " is out of range");
      if (!seen_res.insert({face, cof, i}).second)
        c.fail(ln.no, "duplicate res line for " + ln.toks[1] + " -> " + ln.toks[2] +
                          " at grade " + ln.toks[3]);
      auto dface = S.dims_of(face), dcof = S.dims_of(cof);
      auto key = std::make_pair(face, cof);
      if (!S.res.count(key)) {
        std::vector<dense_mat> fam;
        for (int q = 0; q <= S.m; ++q) fam.emplace_back(dcof[q], dface[q]);
        S.res[key] = std::move(fam);
      }
      S.res[key][i] = read_matrix(c, F, dcof[i], dface[i],
                                  "res matrix " + ln.toks[1] + " -> " + ln.toks[2]);
    } else {  // step
      past_stalks = true;
      if (ln.toks.size() != 3)
        c.fail(ln.no, "step line needs a simplex and a grade");
      auto sx = parse_simplex(c, ln.no, ln.toks[1]);
      require_in_complex(ln, sx, ln.toks[1]);
      int i = int(to_nonneg(c, ln.no, ln.toks[2]));
      if (i >= S.m) c.fail(ln.no, "grade " + ln.toks[2] + " is out of range");
      if (!seen_step.insert({sx, i}).second)
        c.fail(ln.no, "duplicate step line for " + ln.toks[1] + " at grade " +
                          ln.toks[2]);
      auto dims = S.dims_of(sx);
      if (!S.step.count(sx)) {
        std::vector<dense_mat> fam;
        for (int q = 0; q < S.m; ++q) fam.emplace_back(dims[q + 1], dims[q]);
        S.step[sx] = std::move(fam);
      }
      S.step[sx][i] = read_matrix(c, F, dims[i + 1], dims[i],
                                  "step matrix " + ln.toks[1] + " at grade " +
                                      ln.toks[2]);
    }
  }
  if (!have_m) c.fail_eof("missing m line");
  return S;
}

poset_sheaf read_poset(const std::string& path, int32_t p) {
  cursor c(path);
  read_header(c, "poset", 1, "poset");
  fp_field F(p);
  std::vector<std::string> labels;
  std::map<std::string, int> idx;
  std::vector<std::pair<int, int>> covers;
  std::set<std::pair<int, int>> cover_set;
  poset_sheaf S;
  bool have_m = false;
  std::set<int> seen_stalk;
  std::set<std::tuple<int, int, int>> seen_res;
  std::set<std::pair<int, int>> seen_step;
  // section order: elem, cover, m, stalk, then res/step
  int phase = 0;
  auto enter = [&](int ph, const line_rec& ln) {
    if (phase > ph)
      c.fail(ln.no, "'" + ln.toks[0] +
                        "' line out of order; sections go elem, cover, m, stalk, "
                        "then res/step");
    phase = ph;
  };
  auto lookup = [&](const line_rec& ln, const std::string& tok) {
    auto it = idx.find(tok);
    if (it == idx.end()) c.fail(ln.no, "unknown element '" + tok + "'");
    return it->second;
  };
  while (!c.done()) {
    line_rec ln = c.next();
    const std::string& d = ln.toks[0];
    if (d == "elem") {
      enter(0, ln);
      if (ln.toks.size() != 2) c.fail(ln.no, "expected 'elem <label>'");
      if (idx.count(ln.toks[1])) c.fail(ln.no, "duplicate element '" + ln.toks[1] + "'");
      idx[ln.toks[1]] = int(labels.size());
      labels.push_back(ln.toks[1]);
    } else if (d == "cover") {
      enter(1, ln);
      if (ln.toks.size() != 3) c.fail(ln.no, "expected 'cover <lower> <higher>'");
      int lo = lookup(ln, ln.toks[1]), hi = lookup(ln, ln.toks[2]);
      covers.emplace_back(lo, hi);
      cover_set.insert({lo, hi});
    } else if (d == "m") {
      if (have_m) c.fail(ln.no, "duplicate m line");
      enter(2, ln);
      if (ln.toks.size() != 2) c.fail(ln.no, "expected 'm <grades>'");
      int m = int(to_nonneg(c, ln.no, ln.toks[1]));
      S = make_poset_sheaf(p, m, finite_poset{labels, covers});
      have_m = true;
    } else if (d == "stalk") {
      enter(3, ln);
      if (!have_m) c.fail(ln.no, "m must be declared before 'stalk' lines");
      if (int(ln.toks.size()) != 2 + S.m + 1)
        c.fail(ln.no, "stalk line needs an element and " + std::to_string(S.m + 1) +
                          " dimensions");
      int e = lookup(ln, ln.toks[1]);
      if (!seen_stalk.insert(e).second)
        c.fail(ln.no, "duplicate stalk line for element '" + ln.toks[1] + "'");
      for (int i = 0; i <= S.m; ++i)
        S.stalk[e][i] = int(to_nonneg(c, ln.no, ln.toks[2 + i]));
      for (int i = 0; i < S.m; ++i)
        S.step[e][i] = dense_mat(S.stalk[e][i + 1], S.stalk[e][i]);
    } else if (d == "res") {
      enter(4, ln);
      if (!have_m) c.fail(ln.no, "m must be declared before 'res' lines");
      if (ln.toks.size() != 4)
        c.fail(ln.no, "res line needs two elements and a grade");
      int lo = lookup(ln, ln.toks[1]), hi = lookup(ln, ln.toks[2]);
      if (!cover_set.count({lo, hi}))
        c.fail(ln.no, "no cover declared between '" + ln.toks[1] + "' and '" +
                          ln.toks[2] + "'");
      int i = int(to_nonneg(c, ln.no, ln.toks[3]));
      if (i > S.m) c.fail(ln.no, "grade " + ln.toks[3] + " is out of range");
      if (!seen_res.insert({lo, hi, i}).second)
        c.fail(ln.no, "duplicate res line for '" + ln.toks[1] + "' -> '" + ln.toks[2] +
                          "' at grade " + ln.toks[3]);
      auto key = std::make_pair(lo, hi);
      if (!S.res.count(key)) {
        std::vector<dense_mat> fam;
        for (int q = 0; q <= S.m; ++q) fam.emplace_back(S.stalk[hi][q], S.stalk[lo][q]);
        S.res[key] = std::move(fam);
      }
      S.res[key][i] = read_matrix(c, F, S.stalk[hi][i], S.stalk[lo][i],
                                  "res matrix '" + ln.toks[1] + "' -> '" + ln.toks[2] +
                                      "'");
    } else if (d == "step") {
      enter(4, ln);
      if (!have_m) c.fail(ln.no, "m must be declared before 'step' lines");
      if (ln.toks.size() != 3)
        c.fail(ln.no, "step line needs an element and a grade");
      int e = lookup(ln, ln.toks[1]);
      int i = int(to_nonneg(c, ln.no, ln.toks[2]));
      if (i >= S.m) c.fail(ln.no, "grade " + ln.toks[2] + " is out of range");
      if (!seen_step.insert({e, i}).second)
        c.fail(ln.no, "duplicate step line for '" + ln.toks[1] + "' at grade " +
                          ln.toks[2]);
      S.step[e][i] = read_matrix(c, F, S.stalk[e][i + 1], S.stalk[e][i],
                                 "step matrix '" + ln.toks[1] + "' at grade " +
                                     ln.toks[2]);
    } else {
      c.fail(ln.no, "unknown directive '" + d + "'");
    }
  }
  if (!have_m) c.fail_eof("missing m line");
  return S;
}

namespace {

void write_grade(std::ostream& out, grade_t g) {
  if (g == kInf)
    out << "inf";
  else
    out << g;
}

}  // namespace

void write_annmat(std::ostream& out, const annotated_matrix& f) {
  out << "annmat " << f.nrows() << ' ' << f.ncols() << ' ' << f.p << '\n';
  for (const auto& b : f.row_ann) {
    out << "r " << b.birth << ' ';
    write_grade(out, b.death);
    out << '\n';
  }
  for (const auto& b : f.col_ann) {
    out << "c " << b.birth << ' ';
    write_grade(out, b.death);
    out << '\n';
  }
  if (f.nrows() > 0 && f.ncols() > 0) {
    dense_mat M = f.to_dense();
    for (int r = 0; r < M.rows; ++r) {
      for (int cc = 0; cc < M.cols; ++cc) out << (cc ? " " : "") << M.at(r, cc);
      out << '\n';
    }
  }
}

void write_barcode(std::ostream& out, const barcode& bc) {
  barcode b = bc;
  b.canonicalize();
  for (const auto& db : b.bars) {
    out << db.degree << ' ' << db.iv.birth << ' ';
    write_grade(out, db.iv.death);
    out << '\n';
  }
}

}  // namespace annmat
