#include "sumtrees/oeis.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sumtrees {

namespace {

struct Mapping {
  std::int64_t min_index;
  std::function<BigCount(std::int64_t)> ours;
};

const std::map<std::string, Mapping>& mappings() {
  static const std::map<std::string, Mapping> m = {
      {"A001147", {0, [](std::int64_t k) { return count_all(k + 1); }}},
      {"A001710", {2, [](std::int64_t k) { return count_ladder(k); }}},
      {"A096351", {1, [](std::int64_t k) { return sigma_pairwise(k); }}},
      {"A268289", {0, [](std::int64_t k) { return BigCount(epsilon(k + 1)); }}},
      {"A000992", {1, [](std::int64_t k) { return alpha(k); }}},
      {"A002620", {0, [](std::int64_t k) { return tau2_closed(k + 3); }}},
      {"A011371", {1, [](std::int64_t k) { return BigCount(beta(k)); }}},
      {"A049606",
       {1,
        [](std::int64_t k) {
          BigCount f, den;
          mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
          mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(beta(k)));
          return BigCount(f / den);
        }}},
  };
  return m;
}

}  // namespace

OeisFixture OeisFixture::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(path.stem().string(), ss.str());
}

OeisFixture OeisFixture::parse_text(const std::string& id, std::string_view text) {
  OeisFixture f;
  f.id = id;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::int64_t index;
    std::string value;
    if (!(ls >> index >> value)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error("malformed b-file line: " + line);
      continue;
    }
    if (!f.terms.empty() && index != f.terms.back().first + 1)
      throw std::runtime_error("b-file indices must increase by 1 near line: " + line);
    f.terms.emplace_back(index, BigCount(value));
  }
  if (f.terms.empty()) throw std::runtime_error("empty b-file: " + id);
  return f;
}

bool oeis_sequence_supported(const std::string& id) { return mappings().count(id) > 0; }

OeisCheckResult oeis_check(const std::string& id, const OeisFixture& fixture,
                           std::size_t max_terms) {
  auto it = mappings().find(id);
  if (it == mappings().end()) throw std::runtime_error("unknown sequence id: " + id);
  const Mapping& map = it->second;
  OeisCheckResult result;
  for (const auto& [index, value] : fixture.terms) {
    if (index < map.min_index) continue;
    if (max_terms != 0 && result.terms_checked >= max_terms) break;
    BigCount ours = map.ours(index);
    ++result.terms_checked;
    if (ours != value) {
      result.ok = false;
      result.mismatch_index = index;
      result.expected = value;
      result.actual = ours;
      return result;
    }
  }
  result.ok = result.terms_checked > 0;
  return result;
}

}  // namespace sumtrees
