#include "ucs/setfamily.hpp"

#include "ucs/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <deque>

namespace ucs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

unsigned parse_index(std::string_view token, std::size_t line_no) {
  token = trim(token);
  unsigned value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(ParseErrorKind::MalformedSet,
                     "line " + std::to_string(line_no) + ": bad element '" + std::string(token) + "'");
  }
  if (value >= kMaxGroundSize) {
    throw CapExceeded("element " + std::to_string(value) + " exceeds the ground-set cap of " +
                      std::to_string(kMaxGroundSize));
  }
  return value;
}

constexpr std::string_view kGroundDirective = "# ground ";

}  // namespace

SetFamily::SetFamily(unsigned ground_size, std::vector<std::uint32_t> members)
    : ground_size_(ground_size), members_(std::move(members)) {
  if (ground_size_ > kMaxGroundSize) {
    throw CapExceeded("ground set of size " + std::to_string(ground_size_) + " exceeds the cap of " +
                      std::to_string(kMaxGroundSize));
  }
  const std::uint32_t outside = ~((std::uint32_t{1} << ground_size_) - 1);
  for (std::uint32_t s : members_) {
    if (s & outside) throw RangeError("family member has an element outside the ground set");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(std::uint32_t set) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), set);
}

std::uint32_t SetFamily::universe() const noexcept {
  std::uint32_t u = 0;
  for (std::uint32_t s : members_) u |= s;
  return u;
}

SetFamily union_closure(const SetFamily& generators) {
  const auto& gens = generators.members();
  std::vector<bool> seen(std::size_t{1} << generators.ground_size(), false);
  std::vector<std::uint32_t> closed;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t g : gens) {
    seen[g] = true;
    closed.push_back(g);
    queue.push_back(g);
  }
  // Every union of generators is reachable by adding one generator at a time.
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint32_t g : gens) {
      const std::uint32_t y = x | g;
      if (!seen[y]) {
        seen[y] = true;
        closed.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return SetFamily(generators.ground_size(), std::move(closed));
}

bool is_union_closed(const SetFamily& family) {
  const auto& sets = family.members();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!family.contains(sets[i] | sets[j])) return false;
    }
  }
  return true;
}

FranklResult frankl_check(const SetFamily& family) {
  if (family.size() == 0) throw HypothesisError("the family is empty");
  if (family.size() == 1 && family.members().front() == 0) {
    throw HypothesisError("the family {∅} has no elements to test");
  }
  if (!is_union_closed(family)) throw HypothesisError("the family is not union-closed");

  std::vector<std::uint64_t> counts(family.ground_size(), 0);
  for (std::uint32_t s : family.members()) {
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) ++counts[std::countr_zero(rest)];
  }
  FranklResult result;
  result.family_size = family.size();
  const std::uint32_t universe = family.universe();
  bool first = true;
  for (unsigned e = 0; e < family.ground_size(); ++e) {
    if (!(universe >> e & 1u)) continue;
    if (first || counts[e] > result.count) {
      result.element = e;
      result.count = counts[e];
      first = false;
    }
  }
  result.frequency = Rational(static_cast<unsigned long>(result.count), static_cast<unsigned long>(result.family_size));
  result.frequency.canonicalize();
  result.satisfied = 2 * result.count >= result.family_size;
  return result;
}

SetFamily parse_family(std::string_view text, std::optional<unsigned> ground_size) {
  std::vector<std::uint32_t> members;
  std::optional<unsigned> declared;
  unsigned needed = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.starts_with(kGroundDirective) &&
        trim(line.substr(kGroundDirective.size())).find_first_not_of("0123456789") == std::string_view::npos) {
      declared = parse_index(line.substr(kGroundDirective.size()), line_no);
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    if (line == "-") {
      members.push_back(0);
      continue;
    }
    std::uint32_t set = 0;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      const unsigned e = parse_index(rest.substr(0, comma), line_no);
      set |= std::uint32_t{1} << e;
      needed = std::max(needed, e + 1);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    members.push_back(set);
  }
  const unsigned ground = ground_size.value_or(declared.value_or(needed));
  return SetFamily(ground, std::move(members));
}

std::string serialize_family(const SetFamily& family) {
  std::string out(kGroundDirective);
  out += std::to_string(family.ground_size());
  out += '\n';
  for (std::uint32_t s : family.members()) {
    if (s == 0) {
      out += "-\n";
      continue;
    }
    bool first = true;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      if (!first) out += ',';
      out += std::to_string(std::countr_zero(rest));
      first = false;
    }
    out += '\n';
  }
  return out;
}

SetFamily sample_family(unsigned ground_size, std::size_t count, Seed seed) {
  if (ground_size > kMaxGroundSize) {
    throw CapExceeded("ground set of size " + std::to_string(ground_size) + " exceeds the cap");
  }
  const CounterRng rng(seed);
  std::vector<std::uint32_t> members;
  members.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t set = 0;
    for (unsigned e = 0; e < ground_size; ++e) {
      if (rng.bernoulli(i * ground_size + e, 0.5)) set |= std::uint32_t{1} << e;
    }
    members.push_back(set);
  }
  return SetFamily(ground_size, std::move(members));
}

}  // namespace ucs
