#ifndef POCHETTE_REPORT_HPP
#define POCHETTE_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pochette/abelian.hpp"
#include "pochette/coset_enum.hpp"
#include "pochette/presentation.hpp"
#include "pochette/quotient_search.hpp"
#include "pochette/ribbon.hpp"
#include "pochette/surgery.hpp"

namespace pochette::report {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json envelope(const std::string &command, const std::string &echo) {
  Json j;
  j["schema"] = schema_version;
  j["command"] = command;
  j["invocation"] = echo;
  return j;
}

inline Json stats_json(const EnumerationStats &s) {
  return Json{{"cosets_defined", s.cosets_defined},
              {"coincidences", s.coincidences},
              {"max_live_cosets", s.max_live}};
}

inline Json homology_json(const HomologyGroups &h) {
  Json j;
  for (std::size_t i = 0; i < h.size(); ++i)
    j["H" + std::to_string(i)] = to_string(h[i]);
  return j;
}

inline Json assignment_json(const PermutationAssignment &a, const Alphabet &alphabet) {
  Json images;
  for (std::size_t g = 0; g < a.images.size(); ++g)
    images[alphabet.name(g)] = to_string(a.images[g]);
  return Json{{"degree", a.degree}, {"images", images}};
}

inline constexpr const char *framing_note =
    "the framing affects only the diffeomorphism type, not pi_1 or homology";

inline Json cword_report(const SlopeSpec &slope, const std::string &echo) {
  Json j = envelope("cword", echo);
  j["inputs"] = Json{{"p", slope.p()}, {"q", slope.q()}};
  j["outputs"] = Json{{"word", to_string(c_word(slope), surgery_word_alphabet())}};
  return j;
}

inline Json surgery_outputs(const SurgeryInvariants &s) {
  Json out;
  out["linking_number"] = s.linking;
  out["p_plus_q_linking"] = s.determinant;
  out["pi1"] = to_display_string(s.pi1);
  out["homology"] = homology_json(s.homology);
  out["verdict"] = to_string(s.verdict);
  if (s.verdict == VerdictKind::NontrivialPi1)
    out["pi1_order"] = s.pi1_order;
  out["framing"] = s.slope.epsilon();
  out["framing_note"] = framing_note;
  return out;
}

inline Json surger_report(const std::string &source, const PochetteEmbeddingData &data,
                          const SlopeSpec &slope, const DetectionBudgets &budgets,
                          const std::string &echo) {
  const SurgeryInvariants s = detect_s4(data, slope, budgets);
  const Alphabet &a = data.knot_group.alphabet();
  Json j = envelope("surger", echo);
  j["inputs"] = Json{{"source", source},
                     {"presentation", to_display_string(data.knot_group)},
                     {"meridian", to_string(data.meridian, a)},
                     {"longitude", to_string(data.longitude, a)},
                     {"slope", to_string(slope)},
                     {"framing", slope.epsilon()},
                     {"max_cosets", budgets.max_cosets},
                     {"tietze_steps", budgets.tietze_steps}};
  j["outputs"] = surgery_outputs(s);
  if (s.enumeration) {
    Json e = stats_json(*s.enumeration);
    e["on_simplified_presentation"] = s.used_simplified;
    j["enumeration"] = e;
  }
  return j;
}

/// Normalized coprime slopes from the (p, q) grid in canonical order
/// (ascending p, then q), duplicates after normalization removed.
inline std::vector<SlopeSpec> slope_grid(const std::vector<std::pair<Integer, Integer>> &pairs,
                                         int epsilon) {
  std::set<std::pair<Integer, Integer>> seen;
  std::vector<SlopeSpec> out;
  for (const auto &[p, q] : pairs) {
    if (std::gcd(p, q) != 1)
      continue;
    const SlopeSpec s = SlopeSpec::make(p, q, epsilon);
    if (seen.insert({s.p(), s.q()}).second)
      out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const SlopeSpec &a, const SlopeSpec &b) {
    return a.p() != b.p() ? a.p() < b.p() : a.q() < b.q();
  });
  return out;
}

/// Runs detect_s4 over `slopes` on `jobs` threads; rows come back in slope
/// order whatever the completion order.
inline Json sweep_report(const std::string &source, const PochetteEmbeddingData &data,
                         const std::vector<SlopeSpec> &slopes, const DetectionBudgets &budgets,
                         std::size_t jobs, const std::string &echo) {
  const Integer linking = linking_number(data); // validates before spawning
  std::vector<SurgeryInvariants> results(slopes.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < slopes.size(); i = next++)
      results[i] = detect_s4(data, slopes[i], budgets);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, slopes.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  const Alphabet &a = data.knot_group.alphabet();
  Json j = envelope("sweep", echo);
  j["inputs"] = Json{{"source", source},
                     {"presentation", to_display_string(data.knot_group)},
                     {"meridian", to_string(data.meridian, a)},
                     {"longitude", to_string(data.longitude, a)},
                     {"max_cosets", budgets.max_cosets},
                     {"tietze_steps", budgets.tietze_steps}};
  Json rows = Json::array();
  for (const SurgeryInvariants &s : results) {
    Json row{{"p", s.slope.p()},
             {"q", s.slope.q()},
             {"p_plus_q_linking", s.determinant},
             {"H1", to_string(s.homology[1])},
             {"verdict", to_string(s.verdict)}};
    rows.push_back(row);
  }
  j["outputs"] = Json{{"linking_number", linking}, {"rows", rows}};
  return j;
}

inline Json enumerate_report(const std::string &source, const FinitePresentation &p,
                             const std::vector<Word> &subgroup, std::size_t max_cosets,
                             const std::string &echo) {
  const EnumerationResult r = enumerate(p, subgroup, max_cosets);
  Json sub = Json::array();
  for (const Word &w : subgroup)
    sub.push_back(to_string(w, p.alphabet()));
  Json j = envelope("enumerate", echo);
  j["inputs"] = Json{{"source", source},
                     {"presentation", to_display_string(p)},
                     {"subgroup", sub},
                     {"max_cosets", max_cosets}};
  Json out{{"outcome", r.completed() ? "Completed" : "Overflow"}};
  if (r.completed())
    out["index"] = r.index;
  j["outputs"] = out;
  j["enumeration"] = stats_json(r.stats);
  return j;
}

inline Json abelianize_report(const std::string &source, const FinitePresentation &p,
                              const std::string &echo) {
  const AbelianInvariants inv = abelian_invariants(p);
  Json torsion = Json::array();
  for (Integer t : inv.torsion)
    torsion.push_back(t);
  Json j = envelope("abelianize", echo);
  j["inputs"] = Json{{"source", source}, {"presentation", to_display_string(p)}};
  j["outputs"] = Json{{"group", to_string(inv)}, {"free_rank", inv.free_rank}, {"torsion", torsion}};
  return j;
}

inline Json simplify_report(const std::string &source, const FinitePresentation &p,
                            std::size_t steps, const std::string &echo) {
  const TietzeResult r = tietze_simplify(p, steps);
  Json j = envelope("simplify", echo);
  j["inputs"] = Json{{"source", source}, {"presentation", to_display_string(p)}, {"tietze_steps", steps}};
  j["outputs"] = Json{{"presentation", to_display_string(r.presentation)},
                      {"moves", r.steps},
                      {"budget_exhausted", r.budget_exhausted},
                      {"total_length_before", p.total_length()},
                      {"total_length_after", r.presentation.total_length()}};
  return j;
}

inline Json cordcheck_report(const std::string &source, const FinitePresentation &p,
                             const Word &meridian, const Word &cord, const CordBudgets &budgets,
                             const std::string &echo) {
  const CordVerdict v = cord_triviality(p, meridian, cord, budgets);
  Json j = envelope("cordcheck", echo);
  j["inputs"] = Json{{"source", source},
                     {"presentation", to_display_string(p)},
                     {"meridian", to_string(meridian, p.alphabet())},
                     {"cord", to_string(cord, p.alphabet())},
                     {"max_cosets", budgets.max_cosets},
                     {"max_degree", budgets.max_degree}};
  Json out{{"verdict", to_string(v.kind)},
           {"method", v.method},
           {"membership", to_string(v.membership)}};
  if (v.meridian_power)
    out["meridian_power"] = *v.meridian_power;
  if (v.witness)
    out["witness"] = assignment_json(*v.witness, p.alphabet());
  j["outputs"] = out;
  return j;
}

namespace detail {

inline std::string scalar_text(const Json &v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

inline void flatten(const Json &v, const std::string &prefix, std::ostringstream &out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array()) {
    if (std::all_of(v.begin(), v.end(), [](const Json &e) { return !e.is_structured(); })) {
      out << prefix << ":";
      for (const Json &e : v)
        out << " " << scalar_text(e);
      out << "\n";
    } else {
      for (std::size_t i = 0; i < v.size(); ++i)
        flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << scalar_text(v) << "\n";
  }
}

} // namespace detail

/// Text form of a report: one `dotted.key: value` line per JSON leaf, so the
/// two formats carry the same fields.
inline std::string render_text(const Json &report) {
  std::ostringstream out;
  detail::flatten(report, "", out);
  return out.str();
}

} // namespace pochette::report

#endif
