// Command-line front end: parses a line-oriented algebra description, runs
// the requested homology computation, and prints a report.
//
// Machine format (--format tsv) is a prefix-stable grammar: numeric lines are
// `<INVARIANT> <degree> <dim>`, extended with a fourth column carrying the
// trusted-degree bound whenever the computation is truncated; verdict lines
// are `VERDICT <name> <value>`.  Exit codes: 0 success, 1 verdict failure,
// 2 input error, 3 size budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homalg/algebra.hpp"
#include "homalg/cartier.hpp"
#include "homalg/cube.hpp"
#include "homalg/cyclic.hpp"
#include "homalg/errors.hpp"
#include "homalg/tate.hpp"

using namespace homalg;

namespace {

struct CliParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string subcommand;
  uint32_t max_degree = 6;
  std::optional<uint32_t> prime;
  uint32_t dim = 1;
  uint64_t budget = 10'000'000;
  bool tsv = false;
  std::optional<std::string> input;
};

struct InputLine {
  uint32_t number = 0;
  std::vector<std::string> tokens;
};

struct Section {
  std::string name;
  uint32_t line = 0;
  std::vector<InputLine> body;
};

[[noreturn]] void fail_at(uint32_t line, const std::string& msg) {
  throw CliParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Section> read_sections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliParseError("cannot open input file: " + path);
  std::vector<Section> sections;
  std::string raw;
  uint32_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0].front() == '[') {
      if (toks.size() != 1 || toks[0].back() != ']') fail_at(number, "malformed section header");
      sections.push_back({toks[0].substr(1, toks[0].size() - 2), number, {}});
    } else {
      if (sections.empty()) fail_at(number, "content before any section header");
      sections.back().body.push_back({number, toks});
    }
  }
  return sections;
}

int64_t parse_int(const InputLine& l, const std::string& tok) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail_at(l.number, "expected an integer, got '" + tok + "'");
  }
}

FieldSpec parse_field(const Section& s) {
  for (const auto& l : s.body) {
    if (l.tokens[0] == "rationals") return FieldSpec::rationals();
    if (l.tokens[0] == "p" && l.tokens.size() == 2) {
      int64_t p = parse_int(l, l.tokens[1]);
      if (p < 2 || !is_prime_u32(static_cast<uint32_t>(p))) fail_at(l.number, "p must be prime");
      return FieldSpec::gf(static_cast<uint32_t>(p));
    }
    fail_at(l.number, "expected 'p <prime>' or 'rationals'");
  }
  throw CliParseError("empty [field] section at line " + std::to_string(s.line));
}

Algebra parse_algebra(const Section& s, FieldSpec f, const std::vector<Algebra>& prior) {
  std::string kind;
  uint32_t size = 0, n = 0, order = 0, vertices = 0;
  std::vector<std::vector<uint32_t>> table;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint32_t> args;
  for (const auto& l : s.body) {
    const std::string& key = l.tokens[0];
    if (key == "kind" && l.tokens.size() == 2) {
      kind = l.tokens[1];
    } else if (key == "size" && l.tokens.size() == 2) {
      size = static_cast<uint32_t>(parse_int(l, l.tokens[1]));
    } else if (key == "n" && l.tokens.size() == 2) {
      n = static_cast<uint32_t>(parse_int(l, l.tokens[1]));
    } else if (key == "order" && l.tokens.size() == 2) {
      order = static_cast<uint32_t>(parse_int(l, l.tokens[1]));
    } else if (key == "vertices" && l.tokens.size() == 2) {
      vertices = static_cast<uint32_t>(parse_int(l, l.tokens[1]));
    } else if (key == "row") {
      std::vector<uint32_t> row;
      for (size_t i = 1; i < l.tokens.size(); ++i)
        row.push_back(static_cast<uint32_t>(parse_int(l, l.tokens[i])));
      table.push_back(std::move(row));
    } else if (key == "edge" && l.tokens.size() == 3) {
      edges.emplace_back(static_cast<uint32_t>(parse_int(l, l.tokens[1])),
                         static_cast<uint32_t>(parse_int(l, l.tokens[2])));
    } else if (key == "args") {
      for (size_t i = 1; i < l.tokens.size(); ++i) {
        int64_t a = parse_int(l, l.tokens[i]);
        if (a < 0 || static_cast<size_t>(a) >= prior.size())
          fail_at(l.number, "args index out of range");
        args.push_back(static_cast<uint32_t>(a));
      }
    } else {
      fail_at(l.number, "unrecognized key '" + key + "'");
    }
  }
  try {
    if (kind == "group") {
      if (table.size() != size) fail_at(s.line, "group table needs 'size' rows");
      return group_algebra(f, table);
    }
    if (kind == "matrix") return matrix_algebra(f, n);
    if (kind == "truncpoly") return trunc_poly(f, order);
    if (kind == "path") return path_algebra(f, vertices, edges);
    if (kind == "product" || kind == "tensor") {
      if (args.size() != 2) fail_at(s.line, kind + " needs 'args <i> <j>'");
      return kind == "product" ? product_algebra(prior[args[0]], prior[args[1]])
                               : tensor_algebra(prior[args[0]], prior[args[1]]);
    }
    if (kind == "opposite") {
      if (args.size() != 1) fail_at(s.line, "opposite needs 'args <i>'");
      return opposite_algebra(prior[args[0]]);
    }
  } catch (const CliParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail_at(s.line, std::string("invalid algebra: ") + e.what());
  }
  fail_at(s.line, "unknown or missing algebra kind '" + kind + "'");
}

struct ParsedInput {
  FieldSpec field = FieldSpec::rationals();
  bool has_field = false;
  std::vector<Algebra> algebras;
  std::optional<CpModule> module;
};

ParsedInput parse_input(const std::string& path, std::optional<uint32_t> prime) {
  ParsedInput in;
  for (const auto& s : read_sections(path)) {
    if (s.name == "field") {
      in.field = parse_field(s);
      in.has_field = true;
    } else if (s.name == "algebra") {
      if (!in.has_field) fail_at(s.line, "[algebra] before [field]");
      in.algebras.push_back(parse_algebra(s, in.field, in.algebras));
    } else if (s.name == "module") {
      if (!prime) fail_at(s.line, "[module] requires --prime");
      for (const auto& l : s.body) {
        CpModule part = [&] {
          if (l.tokens[0] == "trivial" && l.tokens.size() == 2)
            return cp_trivial(*prime, static_cast<uint32_t>(parse_int(l, l.tokens[1])));
          if (l.tokens[0] == "regular" && l.tokens.size() == 2)
            return cp_regular(*prime, static_cast<uint32_t>(parse_int(l, l.tokens[1])));
          fail_at(l.number, "expected 'trivial <dim>' or 'regular <copies>'");
        }();
        in.module = in.module ? cp_direct_sum(*in.module, part) : part;
      }
    } else {
      fail_at(s.line, "unknown section [" + s.name + "]");
    }
  }
  return in;
}

const Algebra& need_algebra(const ParsedInput& in) {
  if (in.algebras.empty()) throw CliParseError("this subcommand needs an [algebra] section");
  return in.algebras.back();
}

// ---------------------------------------------------------------------------

class Report {
 public:
  explicit Report(bool tsv) : tsv_(tsv) {}

  void dim_line(const std::string& inv, int degree, uint64_t value,
                std::optional<uint32_t> trusted = std::nullopt) {
    if (tsv_) {
      std::cout << inv << '\t' << degree << '\t' << value;
      if (trusted) std::cout << '\t' << *trusted;
      std::cout << '\n';
    } else {
      std::cout << inv << "_" << degree << " = " << value;
      if (trusted) std::cout << "   (trusted through degree " << *trusted << ")";
      std::cout << '\n';
    }
  }
  void verdict(const std::string& name, const std::string& value) {
    if (tsv_)
      std::cout << "VERDICT\t" << name << '\t' << value << '\n';
    else
      std::cout << "verdict: " << name << " = " << value << '\n';
  }

 private:
  bool tsv_;
};

void list_dims(Report& rep, const std::string& inv, const std::vector<uint32_t>& dims,
               uint32_t trusted) {
  for (size_t i = 0; i < dims.size(); ++i)
    rep.dim_line(inv, static_cast<int>(i), dims[i], trusted);
}

// The Hochschild pipeline sizes grow as (dim A)^level; refuse up front when
// the deepest level would blow the cell budget.
void check_chain_budget(const Algebra& a, uint32_t top_level, uint64_t budget) {
  uint64_t cells = 1;
  for (uint32_t i = 0; i < top_level; ++i) {
    if (a.n != 0 && cells > budget / a.n)
      throw SizeBudgetExceeded("chain level " + std::to_string(top_level) + " needs more than " +
                               std::to_string(budget) + " cells");
    cells *= a.n;
  }
}

int run(const Options& opt) {
  Report rep(opt.tsv);
  const uint32_t D = opt.max_degree;

  auto algebra_input = [&]() -> Algebra {
    if (!opt.input) throw CliParseError("this subcommand needs an input file");
    return need_algebra(parse_input(*opt.input, opt.prime));
  };
  auto sharp = [&](const Algebra& a, uint32_t trunc) {
    check_chain_budget(a, trunc, opt.budget);
    return a_sharp(a, trunc);
  };

  if (opt.subcommand == "hh") {
    Algebra a = algebra_input();
    check_chain_budget(a, D + 1, opt.budget);
    list_dims(rep, "HH", hh_dims(a, D + 1), D);
    return 0;
  }
  if (opt.subcommand == "hc") {
    Algebra a = algebra_input();
    list_dims(rep, "HC", hc_dims(sharp(a, D + 2), D), D);
    return 0;
  }
  if (opt.subcommand == "hp") {
    Algebra a = algebra_input();
    HPReport hp = hp_window(sharp(a, D + 2), D);
    list_dims(rep, "HC", hp.hc, D);
    bool stabilized = hp.hp[0] && hp.hp[1];
    for (int r = 0; r < 2; ++r)
      if (hp.hp[r]) rep.dim_line("HP", r, *hp.hp[r], D);
    rep.verdict("stabilized", stabilized ? "yes" : "no");
    return stabilized ? 0 : 1;
  }
  if (opt.subcommand == "hodge") {
    Algebra a = algebra_input();
    HodgeReport h = hodge_report(sharp(a, D + 2), D);
    list_dims(rep, "HH", h.hh, D);
    list_dims(rep, "E1", h.e1, D);
    list_dims(rep, "HC", h.hc, D);
    rep.verdict("degenerate", h.degenerate ? std::to_string(D) : "no");
    return h.degenerate ? 0 : 1;
  }
  if (opt.subcommand == "connes") {
    Algebra a = algebra_input();
    check_chain_budget(a, D + 2, opt.budget);
    CyclicComputation comp(sharp(a, D + 2), D);
    bool exact = true;
    for (uint32_t i = 0; i <= D; ++i) {
      uint32_t inc_rank = rank(comp.hh_to_hc(i));
      uint32_t u_rank = i >= 2 ? rank(comp.u(i)) : 0;
      rep.dim_line("HH", static_cast<int>(i), comp.hh_dim(i), D);
      rep.dim_line("HC", static_cast<int>(i), comp.hc_dim(i), D);
      rep.dim_line("URANK", static_cast<int>(i), u_rank, D);
      exact = exact && inc_rank == comp.hc_dim(i) - u_rank;
      if (i >= 2) exact = exact && (comp.u(i) * comp.hh_to_hc(i)).is_zero();
    }
    rep.verdict("connes-exact", exact ? "yes" : "no");
    return exact ? 0 : 1;
  }
  if (opt.subcommand == "tate") {
    if (!opt.prime) throw CliParseError("tate needs --prime");
    if (!opt.input) throw CliParseError("tate needs an input file with a [module] section");
    ParsedInput in = parse_input(*opt.input, opt.prime);
    if (!in.module) throw CliParseError("tate needs a [module] section");
    std::vector<uint32_t> dims = tate_dims(*in.module, -4, 4);
    for (int i = -4; i <= 4; ++i) rep.dim_line("TATE", i, dims[static_cast<size_t>(i + 4)]);
    rep.verdict("free", is_free(*in.module) ? "yes" : "no");
    return 0;
  }
  if (opt.subcommand == "votimesp") {
    if (!opt.prime) throw CliParseError("votimesp needs --prime");
    VotimespReport r = verify_votimesp(FieldSpec::gf(*opt.prime), opt.dim, *opt.prime);
    for (int i = -3; i <= 3; ++i) rep.dim_line("TATE", i, r.tate[static_cast<size_t>(i + 3)]);
    rep.verdict("votimesp", r.passed() ? "pass" : "fail");
    return r.passed() ? 0 : 1;
  }
  if (opt.subcommand == "cube") {
    if (!opt.prime) throw CliParseError("cube needs --prime");
    CubeComplex C = build_cube(FiniteVS{*opt.prime, opt.dim}, D, opt.budget);
    for (uint32_t n = 0; n <= D; ++n) rep.dim_line("QDIM", static_cast<int>(n), C.full_dim[n]);
    list_dims(rep, "CUBEH", cube_homology(C), D - 1);
    return 0;
  }
  if (opt.subcommand == "cocycles") {
    if (!opt.prime) throw CliParseError("cocycles needs --prime");
    CocycleBasis B = symmetric_cocycles(FiniteVS{*opt.prime, opt.dim});
    rep.dim_line("COCYCLES", 0, B.dim);
    rep.verdict("matches-flat", "yes");  // enforced inside symmetric_cocycles
    return 0;
  }
  if (opt.subcommand == "witt") {
    if (!opt.prime) throw CliParseError("witt needs --prime");
    witt_ring(*opt.prime);
    try {
      W2Certificate cert = k_flat_is_w2(*opt.prime);
      rep.dim_line("EXTORDER", 0, cert.ext.order);
      rep.verdict("w2-iso", "found");
      return 0;
    } catch (const NoIsomorphismFound&) {
      rep.verdict("w2-iso", "none");
      return 1;
    }
  }
  if (opt.subcommand == "cartier") {
    Algebra a = algebra_input();
    if (opt.prime && *opt.prime != a.field.characteristic())
      throw CliParseError("cartier: --prime must match the field characteristic");
    QuasiFrobenius qf = qf_group_algebra(a);
    CartierReport r = cartier_check(qf, D);
    for (uint32_t l = 1; l < r.level_coker_free.size(); ++l)
      rep.dim_line("COKERFREE", static_cast<int>(l), r.level_coker_free[l] ? 1 : 0);
    for (uint32_t i = 0; i < r.hc_f_rank.size(); ++i)
      rep.dim_line("HCFRANK", static_cast<int>(i), r.hc_f_rank[i], D);
    rep.verdict("cartier", r.passed() ? "pass" : "fail");
    return r.passed() ? 0 : 1;
  }
  if (opt.subcommand == "w2lift") {
    Algebra a = algebra_input();
    W2LiftReport r = w2_lift_obstruction(a);
    rep.verdict("w2lift", r.vanishes ? "vanishes" : "obstructed");
    return r.vanishes ? 0 : 1;
  }
  throw CliParseError("unknown subcommand '" + opt.subcommand + "'");
}

Options parse_args(int argc, char** argv) {
  Options opt;
  if (argc < 2) throw CliParseError("usage: homology <subcommand> [flags] [input-file]");
  opt.subcommand = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) throw CliParseError("flag " + arg + " needs a value");
      return argv[++i];
    };
    auto next_u32 = [&]() {
      std::string v = next();
      try {
        return static_cast<uint32_t>(std::stoul(v));
      } catch (const std::exception&) {
        throw CliParseError("flag " + arg + ": bad number '" + v + "'");
      }
    };
    if (arg == "--max-degree")
      opt.max_degree = next_u32();
    else if (arg == "--prime" || arg == "-p")
      opt.prime = next_u32();
    else if (arg == "--dim")
      opt.dim = next_u32();
    else if (arg == "--budget")
      opt.budget = next_u32();
    else if (arg == "--format") {
      std::string v = next();
      if (v != "text" && v != "tsv") throw CliParseError("--format must be text or tsv");
      opt.tsv = v == "tsv";
    } else if (!arg.empty() && arg[0] == '-') {
      throw CliParseError("unknown flag " + arg);
    } else {
      if (opt.input) throw CliParseError("more than one input file");
      opt.input = arg;
    }
  }
  if (opt.prime && !is_prime_u32(*opt.prime)) throw CliParseError("--prime must be prime");
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(parse_args(argc, argv));
  } catch (const CliParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const SizeBudgetExceeded& e) {
    std::cerr << "size budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
}
