#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "posetlab/core.hpp"
#include "posetlab/embed.hpp"
#include "posetlab/family.hpp"
#include "posetlab/poset.hpp"

namespace posetlab {

using json = nlohmann::json;

// Posets as JSON: {"elements": [...], "covers": [[lower, upper], ...]}.

inline json poset_to_json(const Poset& p) {
  json covers = json::array();
  for (const auto& [a, b] : p.labelled_covers()) covers.push_back({a, b});
  return {{"elements", p.labels()}, {"covers", covers}};
}

inline Poset poset_from_json(const json& j) {
  try {
    auto elements = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw InvalidParam("each cover must be a [lower, upper] pair");
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
    return poset_from_covers(std::move(elements), covers);
  } catch (const json::exception& e) {
    throw InvalidParam(std::string("malformed poset JSON: ") + e.what());
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<long long> to_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::vector<int> int_list(std::string_view s, std::string_view what) {
  std::vector<int> out;
  while (true) {
    const auto comma = s.find(',');
    auto v = to_int(s.substr(0, comma));
    if (!v) throw InvalidParam("bad integer in " + std::string(what));
    out.push_back(static_cast<int>(*v));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Parses the named-poset grammar: chain(k), antichain(k), y(h,s), y'(h,s),
/// t3(r) and multilevel(a,b,...). A leading "named:" is accepted.
inline Poset parse_named_poset(std::string_view text) {
  if (text.starts_with("named:")) text.remove_prefix(6);
  const auto open = text.find('(');
  if (open == std::string_view::npos || !text.ends_with(")"))
    throw InvalidParam("expected name(params), got '" + std::string(text) + "'");
  const std::string_view name = text.substr(0, open);
  const std::vector<int> params =
      detail::int_list(text.substr(open + 1, text.size() - open - 2), text);
  if (name == "y'") return gen_named("y_prime", params);
  if (name == "t3") return gen_named("t_r3", params);
  if (name == "multilevel") return gen_named("complete_multilevel", params);
  return gen_named(name, params);
}

// Family files: "n=<int>" then one set per line as an ascending comma
// separated list of elements of [1..n]; "-" is the empty set.

inline SetFamily parse_family(std::string_view text) {
  int n = -1;
  int line_no = 0;
  std::vector<Mask> members;
  std::vector<int> member_line;
  while (!text.empty() || line_no == 0) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) {
      if (text.empty()) break;
      continue;
    }
    if (n < 0) {
      if (!line.starts_with("n=")) throw ParseError(line_no, "expected header 'n=<int>'");
      auto v = detail::to_int(line.substr(2));
      if (!v || *v < 1 || *v > kMaxGround) throw ParseError(line_no, "ground set size must be 1..24");
      n = static_cast<int>(*v);
      continue;
    }
    Mask m = 0;
    if (line != "-") {
      std::string_view rest = line;
      while (true) {
        const auto comma = rest.find(',');
        auto v = detail::to_int(rest.substr(0, comma));
        if (!v) throw ParseError(line_no, "expected a comma-separated list of integers or '-'");
        if (*v < 1 || *v > n)
          throw ElementOutOfRange("line " + std::to_string(line_no) + ": element " +
                                  std::to_string(*v) + " is outside [1.." + std::to_string(n) + "]");
        const Mask bit = Mask{1} << (*v - 1);
        if (m & bit) throw ParseError(line_no, "element " + std::to_string(*v) + " repeated");
        m |= bit;
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] == m)
        throw ParseError(line_no, "set repeats line " + std::to_string(member_line[i]));
    members.push_back(m);
    member_line.push_back(line_no);
  }
  if (n < 0) throw ParseError(1, "missing header 'n=<int>'");
  return SetFamily(n, std::move(members));
}

inline std::string format_set(Mask m) {
  if (m == 0) return "-";
  std::string out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1U) {
      if (!out.empty()) out += ',';
      out += std::to_string(i + 1);
    }
  return out;
}

inline std::string serialize_family(const SetFamily& f) {
  std::string out = "n=" + std::to_string(f.n()) + "\n";
  for (Mask m : f) out += format_set(m) + "\n";
  return out;
}

inline json set_to_json(Mask m) {
  json a = json::array();
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1U) a.push_back(i + 1);
  return a;
}

/// {"mode": ..., "copy": {label: [elements...]}}
inline json embedding_to_json(const Poset& p, const Embedding& e) {
  json copy = json::object();
  for (int x = 0; x < p.size(); ++x) copy[p.label(x)] = set_to_json(e.image[x]);
  return {{"mode", e.mode.name()}, {"copy", copy}};
}

inline FreenessMode parse_mode(std::string_view s) {
  if (s == "weak") return FreenessMode::weak();
  if (s == "induced") return FreenessMode::induced();
  if (s == "rp" || s == "rank_preserving") return FreenessMode::rank_preserving();
  throw InvalidParam("unknown mode '" + std::string(s) + "' (weak, induced, rp)");
}

/// Exact rational as "p/q" (q >= 1, lowest terms).
inline std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// JSON number when it is exactly representable as a double, string otherwise.
inline json exact_json(const BigInt& v) {
  static const BigInt limit = BigInt(1) << 53;
  if (v <= limit && v >= -limit) return v.convert_to<long long>();
  return v.str();
}

}  // namespace posetlab
