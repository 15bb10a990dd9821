#include "hmzf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "hmzf/serialization.hpp"

namespace hmzf::cli {
namespace {

struct Ctx {
  bool structured = false;
  std::ostream* out = nullptr;
};

Complex parse_complex_arg(const std::string& text) {
  size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) return Complex(Real(text), Real(0));
    return Complex(Real(text.substr(0, comma)), Real(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid complex number: '" + text + "' (want RE or RE,IM)");
  }
}

std::string complex_arg_str(const Complex& z) {
  if (z.imag() == Real(0)) return z.real().str();
  return z.real().str() + "," + z.imag().str();
}

std::vector<Complex> parse_points(const std::vector<std::string>& tokens) {
  std::vector<Complex> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_complex_arg(t));
  return out;
}

std::string points_str(const std::vector<Complex>& pts) {
  std::string s;
  for (const auto& z : pts) {
    if (!s.empty()) s += " ";
    s += complex_arg_str(z);
  }
  return s;
}

/// Text mode starts with a header echoing the invocation with every default
/// expanded, so any run is reproducible from its own output.
void echo_header(const Ctx& ctx, const std::string& subcommand,
                 const std::vector<std::pair<std::string, std::string>>& opts) {
  if (ctx.structured) return;
  *ctx.out << "# hmzf " << subcommand;
  for (const auto& [k, v] : opts) *ctx.out << " --" << k << " " << v;
  *ctx.out << "\n";
}

Json invocation_json(const std::string& subcommand,
                     const std::vector<std::pair<std::string, std::string>>& opts) {
  Json inv;
  inv["subcommand"] = subcommand;
  for (const auto& [k, v] : opts) inv[k] = v;
  return inv;
}

void emit(const Ctx& ctx, Json doc) {
  *ctx.out << doc.dump(2) << "\n";
}

int finish_reports(const Ctx& ctx, const std::string& subcommand,
                   const std::vector<std::pair<std::string, std::string>>& opts,
                   const std::vector<CheckReport>& reports) {
  size_t failures = 0;
  for (const auto& r : reports)
    if (!r.pass) ++failures;
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json(subcommand, opts);
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    doc["checks"] = arr;
    doc["failures"] = failures;
    emit(ctx, doc);
  } else {
    echo_header(ctx, subcommand, opts);
    for (const auto& r : reports) *ctx.out << r.str() << "\n";
    *ctx.out << reports.size() << " checks, " << failures << " failures\n";
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- commands

int cmd_stuffle(const Ctx& ctx, const std::string& a_text, const std::string& b_text) {
  Composition a = parse_composition(a_text);
  Composition b = parse_composition(b_text);
  FormalSum fs = stuffle(a, b);
  std::vector<std::pair<std::string, std::string>> opts;
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("stuffle", {{"a", a.str()}, {"b", b.str()}});
    doc["expansion"] = to_json(fs);
    emit(ctx, doc);
  } else {
    echo_header(ctx, "stuffle", {{"a", a.str()}, {"b", b.str()}});
    *ctx.out << fs.str() << "\n";
  }
  return 0;
}

int cmd_lyndon(const Ctx& ctx, const std::string& action, const std::string& word_text,
               int max_weight) {
  if (action == "test") {
    Composition w = parse_composition(word_text);
    bool ly = is_lyndon(w);
    if (ctx.structured) {
      Json doc;
      doc["invocation"] = invocation_json("lyndon", {{"action", "test"}, {"word", w.str()}});
      doc["lyndon"] = ly;
      emit(ctx, doc);
    } else {
      echo_header(ctx, "lyndon test", {{"word", w.str()}});
      *ctx.out << (ly ? "lyndon" : "not lyndon") << "\n";
    }
    return 0;
  }
  if (action == "factorize") {
    Composition w = parse_composition(word_text);
    std::vector<Composition> factors = cfl_factorize(w);
    if (ctx.structured) {
      Json arr = Json::array();
      for (const auto& f : factors) arr.push_back(to_json(f));
      Json doc;
      doc["invocation"] = invocation_json("lyndon", {{"action", "factorize"}, {"word", w.str()}});
      doc["factors"] = arr;
      emit(ctx, doc);
    } else {
      echo_header(ctx, "lyndon factorize", {{"word", w.str()}});
      std::string line;
      for (const auto& f : factors) line += "(" + f.str() + ")";
      *ctx.out << line << "\n";
    }
    return 0;
  }
  if (action == "list") {
    auto groups = generate_lyndon(max_weight);
    if (ctx.structured) {
      Json by_weight;
      for (int n = 1; n <= max_weight; ++n) {
        Json arr = Json::array();
        for (const auto& w : groups[n]) arr.push_back(to_json(w));
        by_weight[std::to_string(n)] = arr;
      }
      Json doc;
      doc["invocation"] = invocation_json(
          "lyndon", {{"action", "list"}, {"max-weight", std::to_string(max_weight)}});
      doc["words"] = by_weight;
      emit(ctx, doc);
    } else {
      echo_header(ctx, "lyndon list", {{"max-weight", std::to_string(max_weight)}});
      for (int n = 1; n <= max_weight; ++n) {
        *ctx.out << "weight " << n << " (" << groups[n].size() << "):";
        for (const auto& w : groups[n]) *ctx.out << " (" << w.str() << ")";
        *ctx.out << "\n";
      }
    }
    return 0;
  }
  // count
  int n = std::stoi(word_text);
  std::int64_t count = count_lyndon(n);
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("lyndon",
                                        {{"action", "count"}, {"weight", std::to_string(n)}});
    doc["count"] = count;
    emit(ctx, doc);
  } else {
    echo_header(ctx, "lyndon count", {{"weight", std::to_string(n)}});
    *ctx.out << count << "\n";
  }
  return 0;
}

int cmd_dims(const Ctx& ctx, int max_weight) {
  std::vector<std::pair<std::string, std::string>> opts{
      {"max-weight", std::to_string(max_weight)}};
  std::vector<std::int64_t> dims;
  for (int n = 0; n <= max_weight; ++n) dims.push_back(dimension(n));
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("dims", opts);
    doc["dimensions"] = dims;
    Json dev = Json::array();
    for (int n = 2; n <= max_weight; ++n)
      if (dims[n] != (std::int64_t{1} << (n - 1))) dev.push_back(n);
    doc["deviates_from_printed_2_pow_n_minus_1"] = dev;
    emit(ctx, doc);
  } else {
    echo_header(ctx, "dims", opts);
    *ctx.out << "  n  dim\n";
    for (int n = 0; n <= max_weight; ++n) *ctx.out << "  " << n << "  " << dims[n] << "\n";
    *ctx.out << "note: dim(n) = 2^(n-2) for n >= 2, deviating from the printed"
                " 2^(n-1) constant\n";
  }
  return 0;
}

int cmd_generators(const Ctx& ctx, int max_weight) {
  GeneratorTable table = GeneratorTable::build(max_weight);
  std::vector<std::pair<std::string, std::string>> opts{
      {"max-weight", std::to_string(max_weight)}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("generators", opts);
    doc["table"] = to_json(table);
    emit(ctx, doc);
  } else {
    echo_header(ctx, "generators", opts);
    for (int n = 2; n <= max_weight; ++n) {
      *ctx.out << "weight " << n << " (" << table.generators(n).size() << "):";
      for (const auto& g : table.generators(n)) *ctx.out << " (" << g.str() << ")";
      *ctx.out << "\n";
    }
  }
  return 0;
}

int cmd_reduce(const Ctx& ctx, const std::string& comp_text, int max_weight) {
  Composition c = parse_composition(comp_text);
  int w = std::max(2, c.weight());
  if (max_weight > 0) w = max_weight;
  if (w < c.weight())
    throw std::invalid_argument("reduce: --max-weight smaller than the composition weight");
  GeneratorTable table = GeneratorTable::build(w);
  GeneratorPolynomial p = table.reduce(c);
  std::vector<std::pair<std::string, std::string>> opts{
      {"composition", c.str()}, {"max-weight", std::to_string(w)}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("reduce", opts);
    doc["normal_form"] = to_json(p);
    emit(ctx, doc);
  } else {
    echo_header(ctx, "reduce", opts);
    *ctx.out << p.str() << "\n";
  }
  return 0;
}

int cmd_eval(const Ctx& ctx, const std::string& comp_text, const std::string& z_text,
             const std::string& tol_text, unsigned precision) {
  Composition c = parse_composition(comp_text);
  Complex z = parse_complex_arg(z_text);
  Real tol(tol_text);
  EvalResult r = eval_hmzf(EvalRequest{c, z, tol, precision});
  std::vector<std::pair<std::string, std::string>> opts{
      {"composition", c.str()},
      {"z", complex_arg_str(z)},
      {"tol", tol.str()},
      {"precision", std::to_string(precision)}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("eval", opts);
    doc["result"] = to_json(r);
    emit(ctx, doc);
  } else {
    echo_header(ctx, "eval", opts);
    *ctx.out << "value        " << complex_arg_str(r.value) << "\n";
    *ctx.out << "error bound  " << r.error_bound.str(3, std::ios_base::scientific) << " ("
             << (r.params.certified ? "certified" : "heuristic") << ")\n";
    *ctx.out << "params       truncation " << r.params.truncation << ", em order "
             << r.params.em_order << ", refinements " << r.params.refinements << "\n";
  }
  return 0;
}

std::vector<std::pair<Composition, Composition>> convergent_pairs(int max_total_weight) {
  std::vector<std::pair<Composition, Composition>> pairs;
  for (int wa = 2; 2 * wa <= max_total_weight; ++wa) {
    for (int wb = wa; wa + wb <= max_total_weight; ++wb) {
      auto as = enumerate_compositions(wa, true);
      auto bs = enumerate_compositions(wb, true);
      for (const auto& a : as) {
        for (const auto& b : bs) {
          if (wa == wb && b < a) continue;
          pairs.emplace_back(a, b);
        }
      }
    }
  }
  return pairs;
}

int cmd_verify_stuffle(const Ctx& ctx, int max_total_weight, const std::string& tol_text,
                       std::vector<std::string> point_tokens) {
  Real tol(tol_text);
  std::vector<Complex> points = point_tokens.empty()
                                    ? std::vector<Complex>{Complex(0), Complex(Real("0.5")),
                                                           Complex(Real(1), Real(1))}
                                    : parse_points(point_tokens);
  CachedEvaluator ev(tol / Real(8));
  std::vector<CheckReport> reports;
  for (const auto& [a, b] : convergent_pairs(max_total_weight))
    reports.push_back(check_stuffle_identity(a, b, points, tol, &ev));
  return finish_reports(ctx, "verify stuffle",
                        {{"max-total-weight", std::to_string(max_total_weight)},
                         {"tol", tol.str()},
                         {"points", points_str(points)}},
                        reports);
}

int cmd_verify_diffeq(const Ctx& ctx, int max_weight, const std::string& tol_text,
                      std::vector<std::string> point_tokens) {
  Real tol(tol_text);
  std::vector<Complex> points =
      point_tokens.empty()
          ? std::vector<Complex>{Complex(1), Complex(2), Complex(Real("0.5")),
                                 Complex(Real(1), Real(1))}
          : parse_points(point_tokens);
  CachedEvaluator ev(tol / Real(8));
  std::vector<CheckReport> reports;
  for (int n = 2; n <= max_weight; ++n)
    for (const auto& c : enumerate_compositions(n, true))
      reports.push_back(check_difference_equation(c, points, tol, &ev));
  return finish_reports(ctx, "verify diffeq",
                        {{"max-weight", std::to_string(max_weight)},
                         {"tol", tol.str()},
                         {"points", points_str(points)}},
                        reports);
}

int cmd_verify_endtoend(const Ctx& ctx, int max_weight, int exact_weight,
                        const std::string& tol_text) {
  Real tol(tol_text);
  GeneratorTable table = GeneratorTable::build(std::max(max_weight, exact_weight));
  size_t failures = 0;
  std::vector<std::string> lines;

  // exact round trip: expand(reduce(c)) == {c: 1}
  size_t exact_checked = 0;
  for (int n = 0; n <= exact_weight; ++n) {
    if (n == 1) continue;
    for (const auto& c : enumerate_compositions(n, true)) {
      FormalSum back = table.reduce(c).expand();
      ++exact_checked;
      if (!(back == FormalSum::single(c, 1))) {
        ++failures;
        lines.push_back("FAIL  exact round trip (" + c.str() + ")");
      }
    }
  }
  lines.push_back("exact round trip: " + std::to_string(exact_checked) +
                  " compositions up to weight " + std::to_string(exact_weight) +
                  (failures ? " (FAILURES)" : " all exact"));

  std::vector<Complex> points{Complex(0), Complex(Real("0.5")), Complex(Real(1), Real(1))};
  std::vector<CheckReport> reports;
  for (int n = 2; n <= max_weight; ++n)
    for (const auto& c : enumerate_compositions(n, true))
      for (const auto& z : points) reports.push_back(end_to_end_check(c, z, tol, table));
  for (const auto& r : reports)
    if (!r.pass) ++failures;

  std::vector<std::pair<std::string, std::string>> opts{
      {"max-weight", std::to_string(max_weight)},
      {"exact-weight", std::to_string(exact_weight)},
      {"tol", tol.str()}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("verify endtoend", opts);
    doc["exact_round_trip_checked"] = exact_checked;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    doc["numeric_checks"] = arr;
    doc["failures"] = failures;
    emit(ctx, doc);
  } else {
    echo_header(ctx, "verify endtoend", opts);
    for (const auto& l : lines) *ctx.out << l << "\n";
    for (const auto& r : reports) *ctx.out << r.str() << "\n";
    *ctx.out << reports.size() + exact_checked << " checks, " << failures << " failures\n";
  }
  return failures == 0 ? 0 : 1;
}

int cmd_verify_freeness(const Ctx& ctx, int max_weight) {
  FreenessReport report = verify_freeness(max_weight);
  std::vector<std::pair<std::string, std::string>> opts{
      {"max-weight", std::to_string(max_weight)}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("verify freeness", opts);
    doc["report"] = to_json(report);
    emit(ctx, doc);
  } else {
    echo_header(ctx, "verify freeness", opts);
    *ctx.out << report.str();
  }
  return report.all_ok ? 0 : 1;
}

struct IndependenceSummary {
  std::vector<std::string> lines;
  size_t failures = 0;
  Json json = Json::array();
};

void record_cert(IndependenceSummary& s, const std::string& label,
                 const IndependenceCertificate& cert, bool expect_relation) {
  bool ok = cert.relation_found == expect_relation;
  if (!ok) ++s.failures;
  s.lines.push_back(std::string(ok ? "pass" : "FAIL") + "  " + label + ": " + cert.str());
  Json entry;
  entry["label"] = label;
  entry["expected_relation"] = expect_relation;
  entry["certificate"] = to_json(cert);
  entry["ok"] = ok;
  s.json.push_back(entry);
}

int cmd_verify_independence(const Ctx& ctx, int sets, int max_degree, std::uint64_t seed,
                            int max_weight) {
  CachedEvaluator ev(Real("1e-12"));
  IndependenceSummary s;

  // the worked example: {1, He^2, He^{2,1}} over C(z), degree bound 2
  {
    std::vector<Composition> triple{Composition{}, Composition{2}, Composition{2, 1}};
    auto cert = independence_certificate(triple, 2, default_sample_points(20), {}, &ev);
    record_cert(s, "triple {1, He(2), He(2,1)} degree 2", cert, false);
  }
  // forced duplicate
  {
    std::vector<Composition> dup{Composition{2}, Composition{2}};
    auto cert = independence_certificate(dup, 0, default_sample_points(10), {}, &ev);
    bool coeffs_ok = cert.relation_found && cert.relation.size() == 2 &&
                     std::abs(cert.relation[0] + cert.relation[1]) < 1e-6;
    if (!coeffs_ok) ++s.failures;
    record_cert(s, "duplicate {He(2), He(2)}", cert, true);
  }

  // random candidate sets: full rank expected
  std::mt19937_64 eng(seed);
  std::vector<Composition> pool;
  for (int n = 2; n <= max_weight; ++n)
    for (const auto& c : enumerate_compositions(n, true)) pool.push_back(c);
  for (int run = 0; run < sets; ++run) {
    size_t k = 2 + static_cast<size_t>(eng() % 5);  // 2..6 candidates
    std::vector<Composition> cands;
    std::vector<size_t> idx(pool.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (size_t i = 0; i < k && i < idx.size(); ++i) {
      size_t j = i + static_cast<size_t>(eng() % (idx.size() - i));
      std::swap(idx[i], idx[j]);
      cands.push_back(pool[idx[i]]);
    }
    int db = static_cast<int>(eng() % (max_degree + 1));
    size_t cols = (db + 1) * cands.size();
    auto cert = independence_certificate(cands, db, default_sample_points(cols + 11), {}, &ev);
    std::string label = "random set " + std::to_string(run) + " (" + std::to_string(cands.size()) +
                        " candidates, degree " + std::to_string(db) + ")";
    record_cert(s, label, cert, false);
  }

  // planted stuffle relations: product column minus its expansion vanishes
  std::vector<std::pair<Composition, Composition>> planted{
      {Composition{2}, Composition{2}},
      {Composition{2}, Composition{3}},
      {Composition{2}, Composition{2, 1}},
      {Composition{3}, Composition{3}},
      {Composition{2, 2}, Composition{2}}};
  for (const auto& [a, b] : planted) {
    FormalSum expansion = stuffle(a, b);
    std::vector<Composition> cands;
    for (const auto& [t, q] : expansion) cands.push_back(t);
    SyntheticColumn product{"He(" + a.str() + ")*He(" + b.str() + ")",
                            [&ev, a, b](Complex z) { return ev.value(a, z) * ev.value(b, z); }};
    auto cert = independence_certificate(cands, 0, default_sample_points(cands.size() + 12),
                                         {product}, &ev);
    std::string label = "planted stuffle (" + a.str() + ")*(" + b.str() + ")";
    bool coeffs_ok = false;
    if (cert.relation_found && cert.relation.size() == cands.size() + 1) {
      // expected relation: sum q_t He^t - product = 0, max-normalized
      std::vector<std::complex<double>> expected;
      double max_mag = 1;  // the product coefficient is -1
      for (const auto& [t, q] : expansion) {
        double qd = static_cast<double>(to_real<Real>(q));
        expected.push_back({qd, 0});
        max_mag = std::max(max_mag, std::abs(qd));
      }
      expected.push_back({-1, 0});
      std::complex<double> pivot;
      for (auto& e : expected)
        if (std::abs(e) == max_mag) {
          pivot = e;
          break;
        }
      coeffs_ok = true;
      for (size_t i = 0; i < expected.size(); ++i) {
        if (std::abs(cert.relation[i] - expected[i] / pivot) > 1e-6) coeffs_ok = false;
      }
    }
    if (!coeffs_ok) ++s.failures;
    record_cert(s, label + (coeffs_ok ? " (coefficients recovered)" : " (coefficients WRONG)"),
                cert, true);
  }

  std::vector<std::pair<std::string, std::string>> opts{
      {"sets", std::to_string(sets)},
      {"degree-bound", std::to_string(max_degree)},
      {"seed", std::to_string(seed)},
      {"max-weight", std::to_string(max_weight)}};
  if (ctx.structured) {
    Json doc;
    doc["invocation"] = invocation_json("verify independence", opts);
    doc["checks"] = s.json;
    doc["failures"] = s.failures;
    emit(ctx, doc);
  } else {
    echo_header(ctx, "verify independence", opts);
    for (const auto& l : s.lines) *ctx.out << l << "\n";
    *ctx.out << s.lines.size() << " checks, " << s.failures << " failures\n";
  }
  return s.failures == 0 ? 0 : 1;
}

int cmd_report(const Ctx& ctx, int max_weight) {
  std::vector<std::pair<std::string, std::string>> opts{
      {"max-weight", std::to_string(max_weight)}};
  echo_header(ctx, "report", opts);
  std::ostream& out = *ctx.out;
  int status = 0;
  Json doc;
  doc["invocation"] = invocation_json("report", opts);

  // dimension table
  {
    std::vector<std::int64_t> dims;
    for (int n = 0; n <= 12; ++n) dims.push_back(dimension(n));
    if (ctx.structured) {
      doc["dimensions"] = dims;
    } else {
      out << "\n== dimension of the weight-n component (n = 0..12) ==\n  n  dim\n";
      for (int n = 0; n <= 12; ++n) out << "  " << n << "  " << dims[n] << "\n";
      out << "note: dim(n) = 2^(n-2) for n >= 2, not the printed 2^(n-1)\n";
    }
  }

  // stuffle axioms, symbolic
  {
    size_t comm_checked = 0, comm_failed = 0;
    for (const auto& [a, b] : convergent_pairs(8)) {
      ++comm_checked;
      FormalSum ab = stuffle(a, b), ba = stuffle(b, a);
      if (!(ab == ba)) ++comm_failed;
      for (const auto& [t, q] : ab) {
        if (t.weight() != a.weight() + b.weight() || q <= 0) ++comm_failed;
      }
    }
    size_t assoc_checked = 0, assoc_failed = 0;
    for (int wa = 2; wa <= 5; ++wa)
      for (int wb = 2; wa + wb <= 7; ++wb)
        for (int wc = 2; wa + wb + wc <= 9; ++wc)
          for (const auto& a : enumerate_compositions(wa, true))
            for (const auto& b : enumerate_compositions(wb, true))
              for (const auto& c : enumerate_compositions(wc, true)) {
                ++assoc_checked;
                FormalSum left = stuffle_bilinear(stuffle(a, b), FormalSum::single(c, 1));
                FormalSum right = stuffle_bilinear(FormalSum::single(a, 1), stuffle(b, c));
                if (!(left == right)) ++assoc_failed;
              }
    if (comm_failed + assoc_failed > 0) status = 1;
    if (ctx.structured) {
      Json ax;
      ax["commutativity_pairs"] = comm_checked;
      ax["commutativity_failures"] = comm_failed;
      ax["associativity_triples"] = assoc_checked;
      ax["associativity_failures"] = assoc_failed;
      doc["stuffle_axioms"] = ax;
    } else {
      out << "\n== stuffle axioms ==\n";
      out << "commutativity + weight grading: " << comm_checked << " pairs (total weight <= 8), "
          << comm_failed << " failures\n";
      out << "associativity: " << assoc_checked << " triples (total weight <= 9), "
          << assoc_failed << " failures\n";
    }
  }

  // freeness
  {
    FreenessReport fr = verify_freeness(std::max(max_weight, 4));
    if (!fr.all_ok) status = 1;
    if (ctx.structured) {
      doc["freeness"] = to_json(fr);
    } else {
      out << "\n== freeness / generator counts ==\n" << fr.str();
    }
  }

  // numeric identity suites
  {
    Real tol("1e-9");
    CachedEvaluator ev(tol / Real(8));
    std::vector<Complex> dpoints{Complex(1), Complex(2), Complex(Real("0.5")),
                                 Complex(Real(1), Real(1))};
    int dweight = std::min(max_weight, 6);
    size_t dchecked = 0, dfailed = 0;
    Real dmax(0);
    for (int n = 2; n <= dweight; ++n)
      for (const auto& c : enumerate_compositions(n, true)) {
        CheckReport r = check_difference_equation(c, dpoints, tol, &ev);
        ++dchecked;
        if (!r.pass) ++dfailed;
        dmax = std::max(dmax, r.max_residual);
      }
    std::vector<Complex> spoints{Complex(0), Complex(Real("0.5")), Complex(Real(1), Real(1))};
    size_t schecked = 0, sfailed = 0;
    Real smax(0);
    for (const auto& [a, b] : convergent_pairs(std::min(max_weight + 2, 6))) {
      CheckReport r = check_stuffle_identity(a, b, spoints, tol, &ev);
      ++schecked;
      if (!r.pass) ++sfailed;
      smax = std::max(smax, r.max_residual);
    }
    if (dfailed + sfailed > 0) status = 1;
    if (ctx.structured) {
      Json num;
      num["difference_equation_checked"] = dchecked;
      num["difference_equation_failures"] = dfailed;
      num["difference_equation_max_residual"] = real_str(dmax);
      num["stuffle_identity_checked"] = schecked;
      num["stuffle_identity_failures"] = sfailed;
      num["stuffle_identity_max_residual"] = real_str(smax);
      doc["numeric_identities"] = num;
    } else {
      out << "\n== numeric identities (tol 1e-9) ==\n";
      out << "difference equation, weight <= " << dweight << ": " << dchecked << " checks, "
          << dfailed << " failures, max residual "
          << dmax.str(3, std::ios_base::scientific) << "\n";
      out << "stuffle identity, total weight <= " << std::min(max_weight + 2, 6) << ": "
          << schecked << " checks, " << sfailed << " failures, max residual "
          << smax.str(3, std::ios_base::scientific) << "\n";
    }
  }

  // normal form round trip
  {
    int exact_weight = std::min(max_weight + 1, 7);
    GeneratorTable table = GeneratorTable::build(std::max(exact_weight, 2));
    size_t checked = 0, failed = 0;
    for (int n = 0; n <= exact_weight; ++n) {
      if (n == 1) continue;
      for (const auto& c : enumerate_compositions(n, true)) {
        ++checked;
        if (!(table.reduce(c).expand() == FormalSum::single(c, 1))) ++failed;
      }
    }
    size_t nchecked = 0, nfailed = 0;
    Real nmax(0);
    std::vector<Complex> pts{Complex(0), Complex(Real("0.5")), Complex(Real(1), Real(1))};
    for (int n = 2; n <= std::min(max_weight, 5); ++n)
      for (const auto& c : enumerate_compositions(n, true))
        for (const auto& z : pts) {
          CheckReport r = end_to_end_check(c, z, Real("1e-9"), table);
          ++nchecked;
          if (!r.pass) ++nfailed;
          nmax = std::max(nmax, r.max_residual);
        }
    if (failed + nfailed > 0) status = 1;
    if (ctx.structured) {
      Json nf;
      nf["exact_round_trip_checked"] = checked;
      nf["exact_round_trip_failures"] = failed;
      nf["numeric_checked"] = nchecked;
      nf["numeric_failures"] = nfailed;
      nf["numeric_max_residual"] = real_str(nmax);
      doc["normal_form"] = nf;
    } else {
      out << "\n== normal form ==\n";
      out << "exact round trip, weight <= " << exact_weight << ": " << checked << " checks, "
          << failed << " failures\n";
      out << "numeric end-to-end, weight <= " << std::min(max_weight, 5) << ": " << nchecked
          << " checks, " << nfailed << " failures, max residual "
          << nmax.str(3, std::ios_base::scientific) << "\n";
    }
  }

  // reference multizeta values
  {
    std::vector<Composition> showcase{Composition{2}, Composition{2, 1}, Composition{4},
                                      Composition{2, 2}};
    if (ctx.structured) {
      Json vals = Json::array();
      for (const auto& c : showcase) {
        Json v;
        v["composition"] = to_json(c);
        v["result"] = to_json(eval_mzv(c, Real("1e-12")));
        vals.push_back(v);
      }
      doc["multizeta_values"] = vals;
    } else {
      out << "\n== multizeta values Ze^s = He^s(0) ==\n";
      for (const auto& c : showcase) {
        EvalResult r = eval_mzv(c, Real("1e-12"));
        out << "Ze(" << c.str() << ") = " << r.value.real().str(16) << "  (bound "
            << r.error_bound.str(3, std::ios_base::scientific) << ")\n";
      }
    }
  }

  if (ctx.structured) {
    doc["status"] = status;
    emit(ctx, doc);
  } else {
    out << "\noverall: " << (status == 0 ? "pass" : "FAIL") << "\n";
  }
  return status;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"algebra of Hurwitz multizeta functions"};
  app.name("hmzf");
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* sc_stuffle = app.add_subcommand("stuffle", "expand a stuffle product");
  std::string arg_a, arg_b;
  sc_stuffle->add_option("a", arg_a, "first composition (comma-separated)");
  sc_stuffle->add_option("b", arg_b, "second composition");

  auto* sc_lyndon = app.add_subcommand("lyndon", "Lyndon word utilities");
  auto* ly_test = sc_lyndon->add_subcommand("test", "is the word Lyndon?");
  auto* ly_fact = sc_lyndon->add_subcommand("factorize", "Chen-Fox-Lyndon factorization");
  auto* ly_list = sc_lyndon->add_subcommand("list", "list Lyndon words by weight");
  auto* ly_count = sc_lyndon->add_subcommand("count", "count Lyndon words of a weight");
  std::string ly_word;
  int ly_max_weight = 6;
  ly_test->add_option("word", ly_word)->required();
  ly_fact->add_option("word", ly_word)->required();
  ly_list->add_option("--max-weight", ly_max_weight);
  ly_count->add_option("weight", ly_word)->required();
  sc_lyndon->require_subcommand(1);

  auto* sc_dims = app.add_subcommand("dims", "dimensions of the weight grading");
  int dims_max_weight = 12;
  sc_dims->add_option("--max-weight", dims_max_weight);

  auto* sc_generators = app.add_subcommand("generators", "build the generator table");
  int gen_max_weight = 6;
  sc_generators->add_option("--max-weight", gen_max_weight);

  auto* sc_reduce = app.add_subcommand("reduce", "normal form of a convergent composition");
  std::string reduce_comp;
  int reduce_max_weight = 0;
  sc_reduce->add_option("composition", reduce_comp)->required();
  sc_reduce->add_option("--max-weight", reduce_max_weight);

  auto* sc_eval = app.add_subcommand("eval", "evaluate a Hurwitz multizeta function");
  std::string eval_comp, eval_z = "0", eval_tol = "1e-12";
  unsigned eval_precision = 28;
  sc_eval->add_option("composition", eval_comp);
  sc_eval->add_option("--z", eval_z, "evaluation point RE or RE,IM");
  sc_eval->add_option("--tol", eval_tol);
  sc_eval->add_option("--precision", eval_precision);

  auto* sc_verify = app.add_subcommand("verify", "numeric verification suites");
  auto* vf_stuffle = sc_verify->add_subcommand("stuffle", "stuffle identity residuals");
  auto* vf_diffeq = sc_verify->add_subcommand("diffeq", "difference equation residuals");
  auto* vf_indep = sc_verify->add_subcommand("independence", "independence sampling");
  auto* vf_e2e = sc_verify->add_subcommand("endtoend", "normal-form round trips");
  auto* vf_free = sc_verify->add_subcommand("freeness", "freeness of the graded algebra");
  sc_verify->require_subcommand(1);

  int vs_max_total = 6;
  std::string vs_tol = "1e-9";
  std::vector<std::string> vs_points;
  vf_stuffle->add_option("--max-total-weight", vs_max_total);
  vf_stuffle->add_option("--tol", vs_tol);
  vf_stuffle->add_option("--points", vs_points)->expected(-1);

  int vd_max_weight = 6;
  std::string vd_tol = "1e-9";
  std::vector<std::string> vd_points;
  vf_diffeq->add_option("--max-weight", vd_max_weight);
  vf_diffeq->add_option("--tol", vd_tol);
  vf_diffeq->add_option("--points", vd_points)->expected(-1);

  int vi_sets = 10, vi_degree = 2, vi_max_weight = 5;
  std::uint64_t vi_seed = 20250809;
  vf_indep->add_option("--sets", vi_sets);
  vf_indep->add_option("--degree-bound", vi_degree);
  vf_indep->add_option("--seed", vi_seed);
  vf_indep->add_option("--max-weight", vi_max_weight);

  int ve_max_weight = 5, ve_exact_weight = 7;
  std::string ve_tol = "1e-9";
  vf_e2e->add_option("--max-weight", ve_max_weight);
  vf_e2e->add_option("--exact-weight", ve_exact_weight);
  vf_e2e->add_option("--tol", ve_tol);

  int vfree_max_weight = 7;
  vf_free->add_option("--max-weight", vfree_max_weight);

  auto* sc_report = app.add_subcommand("report", "one-shot reproduction of the result tables");
  int report_max_weight = 6;
  sc_report->add_option("--max-weight", report_max_weight);

  app.require_subcommand(1);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Ctx ctx{format == "structured", &out};
  try {
    if (app.got_subcommand(sc_stuffle)) return cmd_stuffle(ctx, arg_a, arg_b);
    if (app.got_subcommand(sc_lyndon)) {
      if (sc_lyndon->got_subcommand(ly_test)) return cmd_lyndon(ctx, "test", ly_word, 0);
      if (sc_lyndon->got_subcommand(ly_fact)) return cmd_lyndon(ctx, "factorize", ly_word, 0);
      if (sc_lyndon->got_subcommand(ly_list))
        return cmd_lyndon(ctx, "list", "", ly_max_weight);
      return cmd_lyndon(ctx, "count", ly_word, 0);
    }
    if (app.got_subcommand(sc_dims)) return cmd_dims(ctx, dims_max_weight);
    if (app.got_subcommand(sc_generators)) return cmd_generators(ctx, gen_max_weight);
    if (app.got_subcommand(sc_reduce)) return cmd_reduce(ctx, reduce_comp, reduce_max_weight);
    if (app.got_subcommand(sc_eval))
      return cmd_eval(ctx, eval_comp, eval_z, eval_tol, eval_precision);
    if (app.got_subcommand(sc_verify)) {
      if (sc_verify->got_subcommand(vf_stuffle))
        return cmd_verify_stuffle(ctx, vs_max_total, vs_tol, vs_points);
      if (sc_verify->got_subcommand(vf_diffeq))
        return cmd_verify_diffeq(ctx, vd_max_weight, vd_tol, vd_points);
      if (sc_verify->got_subcommand(vf_indep))
        return cmd_verify_independence(ctx, vi_sets, vi_degree, vi_seed, vi_max_weight);
      if (sc_verify->got_subcommand(vf_e2e))
        return cmd_verify_endtoend(ctx, ve_max_weight, ve_exact_weight, ve_tol);
      return cmd_verify_freeness(ctx, vfree_max_weight);
    }
    return cmd_report(ctx, report_max_weight);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hmzf::cli
