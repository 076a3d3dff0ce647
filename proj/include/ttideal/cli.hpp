#pragma once

// The `ttideal` command line. Every command builds one ordered JSON report;
// `--format text` prints the same document as indented key/value lines.
// Exit codes: 0 ok, 1 a checked property failed, 2 usage or parse error,
// 3 size budget exhausted or an Unknown answer.

#include "ttideal/nilpotence.hpp"
#include "ttideal/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ttideal::cli {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kUnknown = 3 };

namespace detail {

inline bool scalar(const Json &v) { return !v.is_object() && !v.is_array(); }

inline std::string scalar_text(const Json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

inline void emit(std::ostream &out, const std::string &pad, const std::string &key, const Json &v);

inline void emit_fields(std::ostream &out, const std::string &pad, const Json &obj) {
  for (auto it = obj.begin(); it != obj.end(); ++it) emit(out, pad, it.key(), it.value());
}

inline void emit(std::ostream &out, const std::string &pad, const std::string &key, const Json &v) {
  const std::string head = pad + (key.empty() ? "-" : key + ":");
  if (scalar(v)) {
    std::string s = scalar_text(v);
    if (s.find('\n') == std::string::npos) {
      out << head << " " << s << "\n";
      return;
    }
    // Multi-line strings (complex files) as an indented block.
    out << head << " |\n";
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out << pad << "  " << line << "\n";
    return;
  }
  if (v.empty()) {
    out << head << (v.is_array() ? " []" : " {}") << "\n";
    return;
  }
  if (v.is_object()) {
    if (!key.empty()) {
      out << head << "\n";
      emit_fields(out, pad + "  ", v);
      return;
    }
    // List entry: `- first: ...` with the remaining fields aligned below.
    std::ostringstream body;
    emit_fields(body, pad + "  ", v);
    std::string s = body.str();
    out << pad << "- " << s.substr(pad.size() + 2);
    return;
  }
  // Rows of scalars (tables) stay on one line.
  if (key.empty() && std::all_of(v.begin(), v.end(), [](const Json &e) { return scalar(e); })) {
    out << head << " [";
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << scalar_text(v[k]);
    out << "]\n";
    return;
  }
  out << head << "\n";
  for (auto &e : v) emit(out, pad + "  ", "", e);
}

} // namespace detail

inline std::string render_text(const Json &doc) {
  std::ostringstream out;
  detail::emit_fields(out, "", doc);
  return out.str();
}

// ---------------------------------------------------------------------------
// Inputs.

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A complex file: free over most rings, formal when the ring line is DVR.
struct Loaded {
  std::optional<FreeComplex> free;
  std::optional<FormalComplex> formal;

  Ring ring() const { return free ? free->ring() : Ring::dvr(); }
};

inline Loaded load(const std::string &path) {
  auto text = read_file(path);
  ttideal::detail::LineReader in(text);
  if (in.done()) fail(ErrorKind::Parse, path + " is empty");
  if (ttideal::detail::read_ring_line(in).is_dvr()) return {std::nullopt, parse_formal(text)};
  return {parse_complex(text), std::nullopt};
}

inline std::vector<Elem> parse_elems(const Ring &r, const std::string &list) {
  std::vector<Elem> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(r.parse_element(item));
  if (out.empty()) fail(ErrorKind::Parse, "empty sequence");
  return out;
}

inline Json module_map(const std::map<int, FgModule> &h) {
  Json out = Json::object();
  for (auto &[i, m] : h) out[std::to_string(i)] = m.str();
  return out;
}

inline std::string render_homotopy(const Ring &r, const Homotopy &h) {
  std::ostringstream out;
  out << "homotopy\n";
  for (auto &[i, m] : h.s) {
    out << "s " << i << "\n";
    ttideal::detail::write_rows(out, r, m);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands.

struct Options {
  std::string format = "text";
  std::optional<std::string> ring;
  std::vector<std::string> complexes;
  std::vector<std::string> ideals;
  std::optional<std::string> map;
  std::optional<std::string> koszul;
  std::optional<std::string> expect;
  std::optional<std::string> supp;
  std::optional<std::string> witness;
  std::optional<int> window;
  std::optional<long long> budget;
  int cmax = 3;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  std::size_t size_budget = kDefaultSizeBudget;
};

struct Outcome {
  Json doc;
  int code = kOk;
};

inline Ring require_ring(const Options &o) {
  if (!o.ring) fail(ErrorKind::Parse, "--ring is required");
  return parse_ring(*o.ring);
}

/// Checks --ring (if given) against the ring of an input file.
inline void check_ring(const Options &o, const Ring &actual) {
  if (o.ring && parse_ring(*o.ring) != actual)
    fail(ErrorKind::RingMismatch, "--ring " + parse_ring(*o.ring).str() + " but the input is over " + actual.str());
}

inline const std::string &one_complex(const Options &o) {
  if (o.complexes.size() != 1) fail(ErrorKind::Parse, "exactly one --complex is required");
  return o.complexes.front();
}

inline int window_or(const Options &o, int fallback) {
  int w = o.window.value_or(fallback);
  if (w < 1) fail(ErrorKind::Parse, "--window must be positive");
  return w;
}

inline Outcome cmd_supp(const Options &o) {
  Json d{{"command", "supp"}};
  if (o.koszul) {
    Ring r = require_ring(o);
    auto xs = parse_elems(r, *o.koszul);
    d["ring"] = r.str();
    d["complex"] = "K(" + *o.koszul + ")";
    d["support"] = supp_complex(koszul(r, xs)).str();
    return {d};
  }
  auto in = load(one_complex(o));
  check_ring(o, in.ring());
  d["ring"] = in.ring().str();
  if (in.free) {
    d["support"] = supp_complex(*in.free).str();
    return {d};
  }
  auto s = ttideal::detail::formal_support(*in.formal);
  if (!s) {
    d["support"] = "Unknown";
    d["reason"] = "the support of the unknown tail is not determined";
    return {d, kUnknown};
  }
  d["support"] = s->str();
  return {d};
}

inline Outcome cmd_ann(const Options &o) {
  Json d{{"command", "ann"}};
  if (o.koszul) {
    Ring r = require_ring(o);
    auto xs = parse_elems(r, *o.koszul);
    d["ring"] = r.str();
    d["object"] = "K(" + *o.koszul + ")";
    d["ann"] = render(r, ann_complex(koszul(r, xs)));
    return {d};
  }
  if (o.map) {
    auto f = parse_map(read_file(*o.map));
    check_ring(o, f.ring());
    d["ring"] = f.ring().str();
    d["object"] = *o.map;
    d["ann"] = render(f.ring(), ann_map(f));
    return {d};
  }
  auto in = load(one_complex(o));
  check_ring(o, in.ring());
  if (!in.free) fail(ErrorKind::UnsupportedCombination, "annihilators are computed for bounded free complexes");
  d["ring"] = in.ring().str();
  d["object"] = one_complex(o);
  d["ann"] = render(in.ring(), ann_complex(*in.free));
  return {d};
}

inline Json formal_homology(const FormalComplex &x, int window) {
  Json h = Json::object();
  for (int i = std::min(x.lo(), window); i < window; ++i) {
    auto m = x.module_at(i);
    h[std::to_string(i)] = m ? m->str() : "unknown";
  }
  return h;
}

inline Outcome cmd_homology(const Options &o) {
  auto in = load(one_complex(o));
  check_ring(o, in.ring());
  Json d{{"command", "homology"}, {"ring", in.ring().str()}};
  if (in.free) {
    d["homology"] = module_map(homology(*in.free));
    return {d};
  }
  const int w = window_or(o, 8);
  d["window"] = w;
  d["homology"] = formal_homology(*in.formal, w);
  d["tail"] = describe_tail_bound(*in.formal);
  return {d};
}

inline Outcome cmd_koszul(const Options &o) {
  Ring r = require_ring(o);
  if (!o.koszul) fail(ErrorKind::Parse, "--koszul <x1,...,xn> is required");
  auto k = koszul(r, parse_elems(r, *o.koszul));
  Json d{{"command", "koszul"}, {"ring", r.str()}, {"sequence", *o.koszul}};
  d["complex"] = render_complex(k);
  d["homology"] = module_map(homology(k));
  d["support"] = supp_complex(k).str();
  d["ann"] = render(r, ann_complex(k));
  return {d};
}

inline Outcome cmd_tensor(const Options &o) {
  if (o.complexes.size() != 2) fail(ErrorKind::Parse, "tensor needs two --complex files");
  auto a = load(o.complexes[0]), b = load(o.complexes[1]);
  if (a.ring() != b.ring()) fail(ErrorKind::RingMismatch, a.ring().str() + " vs " + b.ring().str());
  check_ring(o, a.ring());
  Json d{{"command", "tensor"}, {"ring", a.ring().str()}};
  if (a.free) {
    auto t = tensor(*a.free, *b.free, o.size_budget);
    d["complex"] = render_complex(t);
    d["homology"] = module_map(homology(t));
    d["support"] = supp_complex(t).str();
    return {d};
  }
  const int w = window_or(o, 8);
  auto t = tensor_formal(*a.formal, *b.formal, w);
  d["window"] = w;
  d["complex"] = t.render();
  d["homology"] = formal_homology(t, w);
  return {d};
}

inline Outcome cmd_member(const Options &o) {
  if (o.ideals.size() != 1) fail(ErrorKind::Parse, "exactly one --ideal is required");
  auto in = load(one_complex(o));
  Ring r = o.ring ? parse_ring(*o.ring) : in.ring();
  auto desc = parse_descriptor(r, o.ideals.front());
  if (desc.ring != in.ring())
    fail(ErrorKind::RingMismatch, "ideal over " + desc.ring.str() + ", complex over " + in.ring().str());
  auto ans = in.free ? member(desc, *in.free) : member(desc, *in.formal);
  Json d{{"command", "member"}, {"ring", r.str()}, {"ideal", desc.str()}, {"complex", one_complex(o)},
         {"answer", to_string(ans.answer)}};
  if (!ans.evidence.empty()) d["evidence"] = ans.evidence;
  if (!ans.reason.empty()) d["reason"] = ans.reason;
  if (ans.answer == Answer::Unknown) return {d, kUnknown};
  if (o.expect) {
    if (*o.expect != "yes" && *o.expect != "no") fail(ErrorKind::Parse, "--expect takes yes or no");
    bool want = *o.expect == "yes";
    d["expected"] = *o.expect;
    if (want != (ans.answer == Answer::Yes)) return {d, kCheckFailed};
  }
  return {d};
}

inline Outcome cmd_lattice(const Options &o) {
  Ring r = require_ring(o);
  if (o.ideals.empty() || o.ideals.size() > 2) fail(ErrorKind::Parse, "lattice takes one or two --ideal");
  std::vector<IdealDescriptor> ds;
  Json d{{"command", "lattice"}, {"ring", r.str()}};
  Json each = Json::array();
  for (auto &text : o.ideals) {
    auto desc = parse_descriptor(r, text);
    ds.push_back(desc);
    auto rad = rad_closure(desc);
    Json e{{"ideal", desc.str()},
           {"normalized", normalize(desc).str()},
           {"support", supp_descriptor(desc).str()},
           {"tame_closure", tame_closure(desc).str()},
           {"compact_interior", cpt_interior(desc).str()},
           {"radical", rad.radical ? rad.radical->str() : "Unknown"},
           {"radical_reason", rad.reason}};
    each.push_back(e);
  }
  d["ideals"] = each;
  if (ds.size() == 2) {
    // The lattice operations are defined on compact descriptors only.
    try {
      d["meet"] = meet(ds[0], ds[1]).str();
      d["join"] = join(ds[0], ds[1]).str();
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::NotCompactDescriptor) throw;
      d["meet"] = "n/a";
      d["join"] = "n/a";
      d["reason"] = e.what();
    }
  }
  return {d};
}

inline Outcome cmd_classify(const Options &o) {
  Ring r = require_ring(o);
  auto c = enumerate_artinian(r, 30, o.seed);
  Json d{{"command", "classify-artinian"}, {"ring", r.str()}};
  Json primes = Json::array();
  for (auto &p : c.primes) primes.push_back(p.str());
  d["primes"] = primes;
  d["count"] = c.ideals.size();
  Json ideals = Json::array();
  for (std::size_t k = 0; k < c.ideals.size(); ++k)
    ideals.push_back(Json{{"index", k}, {"subset", c.subsets[k].str()}, {"ideal", c.ideals[k].str()}});
  d["ideals"] = ideals;
  d["meet_table"] = c.meet_table;
  d["join_table"] = c.join_table;
  d["lattice_ok"] = c.lattice_ok;
  d["consistency_checks"] = c.consistency_checks;
  d["consistent"] = c.consistent;
  return {d, c.lattice_ok && c.consistent ? kOk : kCheckFailed};
}

inline Outcome cmd_spc(const Options &o) {
  Ring r = require_ring(o);
  auto rep = artinian_spc_report(r);
  Json d{{"command", "spc-report"}, {"ring", r.str()}};
  auto names = [](const std::vector<PrimeIdeal> &ps, const std::string &wrap) {
    Json a = Json::array();
    for (auto &p : ps) a.push_back(wrap.empty() ? p.str() : wrap + "(" + p.str() + ")");
    return a;
  };
  d["primes"] = names(rep.primes, "");
  Json tame = Json::array();
  for (auto &[p, s] : rep.tame_primes) tame.push_back(Json{{"prime", "S(" + p.str() + ")"}, {"support", s.str()}});
  d["tame_primes"] = tame;
  d["mx"] = names(rep.mx, "S");
  d["mn"] = names(rep.mn, "S");
  d["s_of_S_identity"] = rep.s_of_S_identity;
  d["support_order_reversing"] = rep.support_order_reversing;
  if (!rep.note.empty()) d["note"] = rep.note;
  return {d, rep.s_of_S_identity ? kOk : kCheckFailed};
}

inline Outcome cmd_minimal_c(const Options &o) {
  auto in = load(one_complex(o));
  if (!in.formal) fail(ErrorKind::UnsupportedRing, "minimal-c takes a formal complex over DVR");
  const int w = window_or(o, 8);
  auto m = minimal_c(*in.formal);
  auto prof = loewy_profile(*in.formal, w);
  Json d{{"command", "minimal-c"}, {"ring", "DVR"}, {"complex", one_complex(o)}, {"minimal_c", m.str()}};
  Json ll = Json::object();
  for (std::size_t k = 0; k < prof.values.size(); ++k)
    ll[std::to_string(prof.lo + static_cast<int>(k))] = prof.values[k] ? prof.values[k]->str() : "unknown";
  d["window"] = w;
  d["loewy_lengths"] = ll;
  d["tail_bound"] = prof.tail_bound;
  return {d, m.kind == MinimalC::Kind::UnknownWindow ? kUnknown : kOk};
}

inline Outcome cmd_nilpotence(const Options &o) {
  if (!o.map) fail(ErrorKind::Parse, "--map is required");
  auto f = parse_map(read_file(*o.map));
  check_ring(o, f.ring());
  const long long t_max = o.budget.value_or(8);
  if (t_max < 1) fail(ErrorKind::Parse, "--budget must be >= 1");
  auto res = find_nilpotence_index(f, static_cast<int>(t_max), o.size_budget);
  Json d{{"command", "nilpotence"}, {"ring", f.ring().str()}, {"map", *o.map},
         {"outcome", to_string(res.outcome)}};
  Json chain = Json::array();
  for (auto &a : res.ann_chain) chain.push_back(render(f.ring(), a));
  switch (res.outcome) {
  case NilpotenceResult::Outcome::Vanishes: {
    d["t"] = res.t;
    d["minimal"] = res.minimal;
    d["ann_chain"] = chain;
    d["ann_chain_ascending"] = ann_chain_ascending(f.ring(), res.ann_chain);
    const std::string path = o.witness.value_or(*o.map + ".witness");
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Parse, "cannot write " + path);
    out << render_map(*res.power) << render_homotopy(f.ring(), *res.witness);
    d["witness_file"] = path;
    d["witness_verified"] = verify_homotopy(*res.power, *res.witness);
    return {d};
  }
  case NilpotenceResult::Outcome::HypothesisFails:
    d["failing_prime"] = res.failing_prime->str();
    d["evidence"] = res.evidence;
    return {d};
  case NilpotenceResult::Outcome::BudgetExhausted:
    d["t_max"] = res.t;
    d["ann_chain"] = chain;
    d["evidence"] = res.evidence;
    return {d, kUnknown};
  }
  return {d};
}

inline Outcome cmd_fiber(const Options &o) {
  auto rep = dvr_fiber_report(o.cmax);
  Json d{{"command", "fiber-report"}, {"ring", "DVR"}, {"c_max", rep.c_max}};
  auto primes = [](const std::vector<FiberPrime> &ps) {
    Json a = Json::array();
    for (auto &p : ps)
      a.push_back(Json{{"name", p.name},
                       {"support", p.support.str()},
                       {"s", p.s.prime ? p.s.p.str() : "not prime: " + p.s.reason}});
    return a;
  };
  d["over_zero"] = primes(rep.over_zero);
  d["over_max"] = primes(rep.over_max);
  Json ws = Json::array();
  for (auto &w : rep.witnesses)
    ws.push_back(Json{{"complex", w.complex},
                      {"inside", w.inside},
                      {"outside", w.outside},
                      {"in", to_string(w.in_answer)},
                      {"out", to_string(w.out_answer)}});
  d["witnesses"] = ws;
  d["chain_strict"] = rep.chain_strict;
  d["all_s_zero"] = rep.all_s_zero;
  d["note"] = rep.note;
  return {d, rep.chain_strict && rep.all_s_zero ? kOk : kCheckFailed};
}

inline Outcome cmd_verify(const Options &o) {
  std::vector<std::string> names = o.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
  Json d{{"command", "verify"}};
  Json suites = Json::array();
  bool all = true;
  for (auto &n : names) {
    SuiteOptions so;
    so.window = o.window.value_or(0);
    so.seed = o.seed;
    so.budget = o.size_budget;
    auto rep = run_suite(n, so);
    all = all && rep.pass;
    suites.push_back(Json{{"suite", n},
                          {"pass", rep.pass},
                          {"checks", rep.evidence.size() + rep.failures.size()},
                          {"failures", rep.failures}});
  }
  d["suites"] = suites;
  d["pass"] = all;
  return {d, all ? kOk : kCheckFailed};
}

inline Outcome cmd_s_of_supp(const Options &o) {
  Ring r = require_ring(o);
  if (!o.supp) fail(ErrorKind::Parse, "--supp <set> is required");
  auto w = parse_spcl(r, *o.supp);
  auto s = s_of_support(w);
  Json d{{"command", "s-of-supp"}, {"ring", r.str()}, {"support", w.str()}, {"prime", s.prime}};
  if (s.prime) {
    d["s"] = s.p.str();
    return {d};
  }
  Json wit = Json::array();
  for (auto &p : s.witness) wit.push_back(p.str());
  d["witness"] = wit;
  d["reason"] = s.reason;
  return {d};
}

// ---------------------------------------------------------------------------

inline int exit_for(const Error &e) { return e.kind() == ErrorKind::SizeBudgetExceeded ? kUnknown : kUsage; }

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Thick tensor ideals of derived categories over a ring catalog", "ttideal"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char *name;
    const char *help;
    Outcome (*fn)(const Options &);
  };
  const std::vector<Spec> specs{
      {"supp", "support of a complex", cmd_supp},
      {"ann", "annihilator of a complex or map", cmd_ann},
      {"homology", "homology modules", cmd_homology},
      {"koszul", "Koszul complex of a sequence", cmd_koszul},
      {"tensor", "tensor product of two complexes", cmd_tensor},
      {"member", "membership of a complex in a thick tensor ideal", cmd_member},
      {"lattice", "closures, meet and join of ideal descriptors", cmd_lattice},
      {"classify-artinian", "all thick tensor ideals over an artinian ring", cmd_classify},
      {"spc-report", "primes of the spectrum over an artinian ring", cmd_spc},
      {"minimal-c", "least c with X in L_c (DVR)", cmd_minimal_c},
      {"nilpotence", "least t with f^t null-homotopic", cmd_nilpotence},
      {"fiber-report", "fibers of the comparison map over the DVR", cmd_fiber},
      {"verify", "named identity suites", cmd_verify},
      {"s-of-supp", "the comparison map on a support", cmd_s_of_supp},
  };
  std::map<CLI::App *, Outcome (*)(const Options &)> handlers;
  for (auto &s : specs) {
    auto *sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--ring", o.ring, "ring spec, e.g. Z, Z/12, GF(2)[t], DVR");
    sub->add_option("--complex", o.complexes, "complex file")->allow_extra_args(false);
    sub->add_option("--ideal", o.ideals, "ideal descriptor")->allow_extra_args(false);
    sub->add_option("--map", o.map, "chain map file");
    sub->add_option("--koszul", o.koszul, "comma separated sequence");
    sub->add_option("--expect", o.expect, "yes or no");
    sub->add_option("--supp", o.supp, "specialization closed set");
    sub->add_option("--witness", o.witness, "where nilpotence writes its witness");
    sub->add_option("--window", o.window, "degree window for formal complexes");
    sub->add_option("--budget", o.budget, "size budget (nilpotence: largest tensor power)");
    sub->add_option("--cmax", o.cmax, "largest c in the fiber report");
    sub->add_option("--seed", o.seed, "seed for sampled corpora");
    if (std::string(s.name) == "verify") sub->add_option("suites", o.suites, "suite names, or all");
    handlers[sub] = s.fn;
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (const char *env = std::getenv("TT_SIZE_BUDGET")) {
      try {
        std::size_t used = 0;
        o.size_budget = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception &) {
        fail(ErrorKind::Parse, std::string("TT_SIZE_BUDGET is not a number: ") + env);
      }
    }
    auto *sub = app.get_subcommands().front();
    if (o.budget && std::string(sub->get_name()) != "nilpotence") {
      if (*o.budget < 1) fail(ErrorKind::Parse, "--budget must be positive");
      o.size_budget = static_cast<std::size_t>(*o.budget);
    }
    auto res = handlers.at(sub)(o);
    out << (o.format == "json" ? res.doc.dump(2) + "\n" : render_text(res.doc));
    return res.code;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

} // namespace ttideal::cli
