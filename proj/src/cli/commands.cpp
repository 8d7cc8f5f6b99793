#include "kmk/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "kmk/cli/parse.hpp"
#include "kmk/cohomology/decide.hpp"
#include "kmk/errors.hpp"
#include "kmk/forms/kato.hpp"
#include "kmk/oracle/oracle.hpp"

namespace kmk::cli {

using json = nlohmann::ordered_json;

namespace {

class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

const std::set<std::string> kVerbs = {"normalform", "residue", "iszero", "isnorm", "kato", "crosscheck", "factor"};

struct Context {
  const Command& cmd;
  Tower tower;
  DecideOptions opts;
  json& doc;
  std::ostringstream& text;
};

const std::string& need(const std::string& value, const char* flag, const std::string& verb) {
  if (value.empty()) throw UsageError(verb + " requires " + flag);
  return value;
}

json mask_names(const TwoBasis& basis, uint32_t mask) {
  json a = json::array();
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((mask >> k) & 1u) a.push_back(basis[k].name);
  return a;
}

json psi_json(const PsiTable& psi, const Place& place, const std::vector<std::string>& names) {
  json rows = json::array();
  const TwoBasis& C = place.completion_basis();
  for (const auto& [key, digits] : psi)
    for (std::size_t l = 0; l < digits.size(); ++l) {
      if (digits[l].is_zero()) continue;
      rows.push_back({{"I", mask_names(C, key.first)},
                      {"J", mask_names(C, key.second)},
                      {"l", l + 1},
                      {"u", digits[l].to_string(names)}});
    }
  return rows;
}

json nf_json(const W1NormalForm& nf, const std::vector<std::string>& names) {
  return {{"place", nf.place->to_string()},
          {"degree", nf.degree},
          {"zero", nf.structurally_zero()},
          {"psi", psi_json(nf.psi, *nf.place, names)},
          {"phi2", nf.phi2.to_string(names)}};
}

std::string nf_text(const W1NormalForm& nf, const std::vector<std::string>& names) {
  return "place " + nf.place->to_string() + "\n" + nf.to_string(names) + "\n";
}

// Irreducible x-involving factors of the denominators, x itself when the form
// has a dlog(x) component, and infinity.
std::vector<std::shared_ptr<const Place>> candidate_places(const DiffForm& w, const Tower& T,
                                                           const FactorLimits& lim) {
  std::set<Poly> ps;
  const int x = T.x();
  const uint32_t xbit = 1u << (T.size() - 1);
  for (const auto& [mask, c] : w.terms()) {
    if (mask & xbit) ps.insert(Poly::var(x));
    if (!c.den().is_one())
      for (const auto& [f, e] : place_factors(c.den(), x, lim)) ps.insert(f);
  }
  std::vector<std::shared_ptr<const Place>> out;
  for (const Poly& P : ps) out.push_back(make_place(T, P));
  out.push_back(make_infinity(T));
  return out;
}

json witness_json(const Witness& wit, const std::vector<std::string>& names) {
  return {{"eta", wit.eta.to_string(names)}, {"xi", wit.xi.to_string(names)}};
}

void run_normalform(Context& c) {
  const DiffForm w = parse_form(need(c.cmd.expr, "--expr", c.cmd.verb), c.tower);
  const auto place = parse_place(need(c.cmd.place, "--place", c.cmd.verb), c.tower);
  const LocalDecomposition dec = local_normal_form(w, c.tower, place, c.opts.precision);
  const auto& names = c.tower.names;
  c.doc["normal_form"] = {{"place", place->to_string()},
                          {"degree", dec.degree},
                          {"phi1", dec.phi1.to_string(names)},
                          {"psi", psi_json(dec.psi, *place, names)},
                          {"phi2", dec.phi2.to_string(names)}};
  c.text << "place " << place->to_string() << "\n";
  c.text << "phi1 = " << dec.phi1.to_string(names) << "\n";
  c.text << W1NormalForm{place, dec.degree, dec.psi, dec.phi2}.to_string(names) << "\n";
}

void run_residue(Context& c) {
  const DiffForm w = parse_form(need(c.cmd.expr, "--expr", c.cmd.verb), c.tower);
  std::vector<std::shared_ptr<const Place>> places;
  if (!c.cmd.place.empty())
    places.push_back(parse_place(c.cmd.place, c.tower));
  else
    places = candidate_places(w, c.tower, c.opts.factor);
  json rows = json::array();
  for (const auto& pl : places) {
    const W1NormalForm nf = residue(w, c.tower, pl, c.opts.precision);
    rows.push_back(nf_json(nf, c.tower.names));
    c.text << nf_text(nf, c.tower.names);
  }
  c.doc["residues"] = rows;
}

void run_iszero(Context& c) {
  const DiffForm w = parse_form(need(c.cmd.expr, "--expr", c.cmd.verb), c.tower);
  const ZeroVerdict v = decide_zero(w, c.tower, c.opts);
  const auto& names = c.tower.names;
  c.doc["verdict"] = v.zero;
  json cert = {{"reason", v.reason}};
  if (v.zero) {
    // The first scheduled window usually suffices for a short witness.
    std::optional<Witness> wit;
    const auto schedule = default_schedule(w, c.tower, {parse_schedule(c.cmd.windows).front()}, c.opts.factor);
    wit = witness_search(w, c.tower, schedule.front());
    if (wit) {
      cert["kind"] = wit->eta.is_zero() ? "exact-form" : "hyperbolic-form";
      cert["witness"] = witness_json(*wit, names);
    } else {
      cert["kind"] = "vanishing-residues";
    }
  } else {
    cert["kind"] = "nonzero-residue";
    cert["place"] = v.place;
    if (v.certificate) cert["normal_form"] = nf_json(*v.certificate, names);
  }
  cert["trace"] = v.trace;
  c.doc["certificate"] = cert;
  c.text << (v.zero ? "zero" : "nonzero") << " (" << v.reason << ")\n";
  if (v.zero && cert.contains("witness"))
    c.text << "eta = " << cert["witness"]["eta"].get<std::string>() << "\nxi = "
           << cert["witness"]["xi"].get<std::string>() << "\n";
  if (!v.zero && v.certificate) c.text << nf_text(*v.certificate, names);
}

void run_isnorm(Context& c) {
  const DiffForm w = parse_form(need(c.cmd.w, "--w", c.cmd.verb), c.tower);
  const Poly p = parse_polynomial(need(c.cmd.p, "--p", c.cmd.verb), c.tower);
  const bool norm = is_norm(w, p, c.tower, c.opts);
  json quotient;
  try {
    const bool q = hyperbolic_over_quotient(w, p, c.tower, c.opts);
    quotient = q;
    if (q != norm)
      throw InternalError("norm criterion and quotient test disagree for p = " + p.to_string(c.tower.names));
  } catch (const UnsupportedError& e) {
    quotient = "unsupported";
  }
  c.doc["verdict"] = norm;
  c.doc["certificate"] = {{"hyperbolic_over_quotient", quotient}};
  c.text << (norm ? "norm" : "not a norm");
  if (quotient.is_boolean()) c.text << " (quotient test agrees)";
  c.text << "\n";
}

void run_kato(Context& c) {
  const DiffForm w = parse_form(need(c.cmd.expr, "--expr", c.cmd.verb), c.tower);
  const PfisterExpr e = kato_symbol(w);
  json syms = json::array();
  for (const auto& s : e.symbols) syms.push_back({{"slots", s.slots}, {"a", s.a}});
  c.doc["certificate"] = {{"pfister", syms}};
  c.text << e.to_string() << "\n";
}

void run_crosscheck(Context& c, int& exit_code) {
  const DiffForm w = parse_form(need(c.cmd.expr, "--expr", c.cmd.verb), c.tower);
  const auto schedule = default_schedule(w, c.tower, parse_schedule(c.cmd.windows), c.opts.factor);
  const CrossReport rep = cross_check(w, c.tower, schedule, c.opts);
  const auto& names = c.tower.names;
  c.doc["verdict"] = to_string(rep.verdict);
  json cert = {{"decision", {{"zero", rep.decision.zero}, {"reason", rep.decision.reason}}}, {"note", rep.note}};
  if (rep.decision.certificate) cert["decision"]["normal_form"] = nf_json(*rep.decision.certificate, names);
  if (rep.witness) {
    cert["witness"] = witness_json(*rep.witness, names);
    cert["window"] = schedule[static_cast<std::size_t>(rep.window)].to_string(names);
  }
  c.doc["certificate"] = cert;
  c.text << to_string(rep.verdict);
  if (!rep.note.empty()) c.text << ": " << rep.note;
  c.text << "\n";
  if (rep.verdict == CrossVerdict::Conflict) {
    exit_code = kInternal;
    if (rep.decision.certificate) c.text << nf_text(*rep.decision.certificate, names);
  }
  if (rep.witness)
    c.text << "eta = " << rep.witness->eta.to_string(names) << "\nxi = " << rep.witness->xi.to_string(names) << "\n";
}

void run_factor(Context& c) {
  const std::string& src = c.cmd.expr.empty() ? c.cmd.p : c.cmd.expr;
  const Poly p = parse_polynomial(need(src, "--expr", c.cmd.verb), c.tower);
  if (p.is_zero()) throw UsageError("cannot factor 0");
  json fs = json::array();
  std::string line;
  for (const auto& [f, e] : factor_bounded(p, c.opts.factor)) {
    fs.push_back({{"factor", f.to_string(c.tower.names)}, {"multiplicity", e}});
    if (!line.empty()) line += " * ";
    line += "(" + f.to_string(c.tower.names) + ")";
    if (e > 1) line += "^" + std::to_string(e);
  }
  c.doc["certificate"] = {{"factors", fs}};
  c.text << (line.empty() ? "1" : line) << "\n";
}

json error_object(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}

}  // namespace

std::string Outcome::render(const Command& cmd) const {
  if (cmd.format == "structured") return doc.dump(2) + "\n";
  return text;
}

Outcome execute(const Command& cmd) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  json& doc = out.doc;
  doc["schema_version"] = kSchemaVersion;
  doc["verb"] = cmd.verb;
  doc["inputs"] = {{"tower", cmd.tower}};
  for (const auto& [k, v] : {std::pair<const char*, const std::string*>{"expr", &cmd.expr},
                             {"place", &cmd.place},
                             {"w", &cmd.w},
                             {"p", &cmd.p}})
    if (!v->empty()) doc["inputs"][k] = *v;
  doc["inputs"]["precision"] = cmd.precision;
  doc["inputs"]["factor_bound"] = cmd.factor_bound;
  doc["inputs"]["windows"] = cmd.windows;

  std::ostringstream text;
  auto fail = [&](int code, json err) {
    out.exit_code = code;
    text << "error: " << err["message"].get<std::string>() << "\n";
    doc["error"] = std::move(err);
  };
  try {
    if (!kVerbs.count(cmd.verb)) throw UsageError("unknown verb '" + cmd.verb + "'");
    if (cmd.format != "text" && cmd.format != "structured") throw UsageError("unknown format '" + cmd.format + "'");
    if (cmd.precision < 1) throw UsageError("--precision must be positive");
    if (cmd.factor_bound < 1) throw UsageError("--factor-bound must be positive");
    Context c{cmd, parse_tower(cmd.tower), {}, doc, text};
    c.opts.precision = PrecisionPolicy{std::min(8, cmd.precision), cmd.precision};
    c.opts.factor.degree_bound = cmd.factor_bound;
    c.opts.factor.names = c.tower.names;
    parse_schedule(cmd.windows);
    if (cmd.verb == "normalform") run_normalform(c);
    else if (cmd.verb == "residue") run_residue(c);
    else if (cmd.verb == "iszero") run_iszero(c);
    else if (cmd.verb == "isnorm") run_isnorm(c);
    else if (cmd.verb == "kato") run_kato(c);
    else if (cmd.verb == "crosscheck") run_crosscheck(c, out.exit_code);
    else run_factor(c);
  } catch (const ParseError& e) {
    json err = error_object("parse", e.what());
    err["line"] = e.line();
    err["column"] = e.column();
    err["expected"] = e.expected();
    fail(kUsage, std::move(err));
  } catch (const UsageError& e) {
    fail(kUsage, error_object("usage", e.what()));
  } catch (const DomainError& e) {
    fail(kUsage, error_object("domain", e.what()));
  } catch (const PrecisionError& e) {
    fail(kResource, error_object("precision", e.what()));
  } catch (const FactorizationBoundError& e) {
    json err = error_object("factorization-bound", e.what());
    err["remainder"] = e.remainder();
    fail(kResource, std::move(err));
  } catch (const UnsupportedError& e) {
    fail(kResource, error_object("unsupported", e.what()));
  } catch (const InternalError& e) {
    fail(kInternal, error_object("internal", e.what()));
  } catch (const std::exception& e) {
    fail(kInternal, error_object("internal", e.what()));
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  doc["timings"] = {{"total_ms", ms}};
  out.text = text.str();
  return out;
}

}  // namespace kmk::cli
