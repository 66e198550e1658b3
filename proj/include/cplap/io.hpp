#ifndef CPLAP_IO_HPP
#define CPLAP_IO_HPP

// Readers and writers for the on-disk graph formats and the JSON reports.
// Vertex indices are 1-based in every external format.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "cplap/balance.hpp"
#include "cplap/consensus.hpp"
#include "cplap/error.hpp"
#include "cplap/graph.hpp"
#include "cplap/sim.hpp"
#include "cplap/spectral.hpp"

namespace cplap::io {

using json = nlohmann::json;

namespace detail {

inline std::size_t to_index(long long one_based, std::size_t n, const std::string& where) {
  if (one_based < 1 || static_cast<unsigned long long>(one_based) > n)
    throw error(errc::index_out_of_range, where + ": index " + std::to_string(one_based) +
                                              " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(one_based - 1);
}

inline json complex_pair(complex z) { return json::array({z.real(), z.imag()}); }

inline json vertex_list(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i + 1);
  return out;
}

}  // namespace detail

/// {"n": N, "edges": [{"to": i, "from": j, "re": x, "im": y}, ...]}; each
/// edge stores a_ij.
inline digraph graph_from_json(const json& doc) {
  try {
    const long long n = doc.at("n").get<long long>();
    if (n < 1) throw error(errc::parse_error, "\"n\" must be a positive integer");
    std::vector<entry> entries;
    if (doc.contains("edges")) {
      for (const auto& e : doc.at("edges")) {
        const auto i = detail::to_index(e.at("to").get<long long>(), n, "edge \"to\"");
        const auto j = detail::to_index(e.at("from").get<long long>(), n, "edge \"from\"");
        const double re = e.value("re", 0.0);
        const double im = e.value("im", 0.0);
        entries.push_back({i, j, {re, im}});
      }
    }
    return digraph(static_cast<std::size_t>(n), std::move(entries));
  } catch (const json::exception& ex) {
    throw error(errc::parse_error, ex.what());
  }
}

inline json graph_to_json(const digraph& g) {
  json edges = json::array();
  for (const auto& e : g.entries())
    edges.push_back({{"to", e.row + 1}, {"from", e.col + 1}, {"re", e.weight.real()},
                     {"im", e.weight.imag()}});
  return {{"n", g.size()}, {"edges", edges}};
}

/// Text edge list: "i j re im" per line, '#' starts a comment. An optional
/// "n N" line fixes the vertex count; otherwise it is the largest index seen.
inline digraph graph_from_edge_list(std::istream& in) {
  std::vector<std::tuple<long long, long long, double, double>> rows;
  long long n = 0;
  bool explicit_n = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      if (!(ls >> n) || n < 1)
        throw error(errc::parse_error, "line " + std::to_string(lineno) + ": bad vertex count");
      explicit_n = true;
      continue;
    }
    long long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    std::string trailing;
    std::istringstream full(line);
    if (!(full >> i >> j >> re >> im) || (full >> trailing))
      throw error(errc::parse_error,
                  "line " + std::to_string(lineno) + ": expected \"i j re im\"");
    rows.emplace_back(i, j, re, im);
    if (!explicit_n) n = std::max({n, i, j});
  }
  if (n < 1) throw error(errc::parse_error, "edge list names no vertices");
  std::vector<entry> entries;
  for (const auto& [i, j, re, im] : rows)
    entries.push_back({detail::to_index(i, n, "edge list"), detail::to_index(j, n, "edge list"),
                       {re, im}});
  return digraph(static_cast<std::size_t>(n), std::move(entries));
}

/// Accepts either format; JSON is recognized by a leading '{'.
inline digraph parse_graph(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw error(errc::parse_error, "malformed JSON");
    return graph_from_json(doc);
  }
  std::istringstream in(text);
  return graph_from_edge_list(in);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error(errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline digraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

/// JSON array of [re, im] pairs.
inline complex_vector state_from_json(const json& doc) {
  try {
    complex_vector z(static_cast<Eigen::Index>(doc.size()));
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto& p = doc.at(i);
      z(static_cast<Eigen::Index>(i)) = p.is_number()
                                            ? complex{p.get<double>(), 0.0}
                                            : complex{p.at(0).get<double>(), p.at(1).get<double>()};
    }
    return z;
  } catch (const json::exception& ex) {
    throw error(errc::parse_error, ex.what());
  }
}

inline json vector_to_json(const complex_vector& z) {
  json out = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) out.push_back(detail::complex_pair(z(i)));
  return out;
}

inline json switching_vector_to_json(const switching_vector& zeta) {
  json out = json::array();
  for (auto z : zeta.values()) out.push_back(detail::complex_pair(z));
  return out;
}

/// {"outcome": "witness", "zeta": [...]} or
/// {"outcome": "conflict", "conflict_walk": [...], "conflict_entry": [i, j]}.
inline json certificate_to_json(const balance_certificate& cert) {
  if (cert.has_witness()) return {{"outcome", "witness"}, {"zeta", switching_vector_to_json(cert.zeta())}};
  const auto& c = cert.conflict();
  return {{"outcome", "conflict"},
          {"conflict_walk", detail::vertex_list(c.walk)},
          {"conflict_entry", json::array({c.row + 1, c.col + 1})}};
}

/// Eigenvalues as [re, im] pairs sorted by (re, im).
inline json spectrum_to_json(const spectrum& s) {
  json ev = json::array();
  for (auto l : s.eigenvalues) ev.push_back(detail::complex_pair(l));
  return {{"eigenvalues", ev}, {"zero_multiplicity", s.zero_multiplicity}, {"tol_used", s.tol_used}};
}

/// Infinite gain bounds (edgeless graphs) are written as null.
inline json verdict_to_json(const consensus_verdict& v) {
  json out;
  out["n"] = v.n;
  out["has_spanning_tree"] = v.has_spanning_tree;
  out["strongly_connected"] = v.strongly_connected;
  out["roots"] = detail::vertex_list(v.roots);
  out["essentially_nonnegative"] = v.essentially_nonnegative;
  out["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : json(nullptr);
  out["zeta"] = v.zeta ? switching_vector_to_json(*v.zeta) : json(nullptr);
  out["eta"] = v.eta ? vector_to_json(*v.eta) : json(nullptr);
  out["eta_support"] = detail::vertex_list(v.eta_support);
  out["classification"] = to_string(v.classification);
  out["max_modulus_degree"] = v.max_modulus_degree;
  out["dt_gain_bound"] = std::isfinite(v.dt_gain_bound) ? json(v.dt_gain_bound) : json(nullptr);
  return out;
}

inline json convergence_to_json(const convergence_report& r) {
  return {{"verdict", to_string(r.verdict)},
          {"spread", r.spread},
          {"final_spread", r.final_spread},
          {"drift", r.drift},
          {"modulus", r.modulus}};
}

}  // namespace cplap::io

#endif  // CPLAP_IO_HPP
