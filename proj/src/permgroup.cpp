#include "gmf/permgroup.hpp"

#include <algorithm>
#include <bitset>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "gmf/error.hpp"

namespace gmf {

namespace {

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Points of a cycle, 0-based, as a permutation of degree n.
Permutation cycle_of(int n, const std::vector<int>& points) {
  auto images = std::vector<int>(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    images[static_cast<std::size_t>(points[k])] = points[(k + 1) % points.size()];
  }
  return Permutation(std::move(images));
}

std::uint64_t acted_code(const Permutation& g, std::span<const int> gamma, int alphabet) {
  std::uint64_t key = 0;
  const auto base = static_cast<std::uint64_t>(alphabet);
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    key = key * base + static_cast<std::uint64_t>(gamma[static_cast<std::size_t>(g(static_cast<int>(i)))]);
  }
  return key;
}

}  // namespace

std::uint64_t checked_power(int base, int exponent, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int k = 0; k < exponent; ++k) {
    total *= static_cast<std::uint64_t>(base);
    if (total > cap) {
      throw Error(ErrorCode::EnumerationTooLarge, std::to_string(base) + "^" + std::to_string(exponent) +
                                                      " sequences exceed the cap " + std::to_string(cap));
    }
  }
  return total;
}

PermGroup PermGroup::generate(int n, const std::vector<Permutation>& generators, std::string name,
                              std::size_t cap) {
  if (n < 1 || n > 16) throw Error(ErrorCode::DegreeMismatch, "degree must lie in 1..16");
  for (const auto& g : generators) {
    if (g.degree() != n) {
      throw Error(ErrorCode::DegreeMismatch, "generator " + g.to_cycle_string() + " has degree " +
                                                 std::to_string(g.degree()) + ", expected " +
                                                 std::to_string(n));
    }
  }
  PermGroup group;
  group.degree_ = n;
  group.name_ = std::move(name);
  group.generators_ = generators;

  std::unordered_set<std::uint64_t> seen;
  std::deque<Permutation> frontier;
  std::vector<Permutation> found;
  const auto e = Permutation::identity(n);
  seen.insert(e.code());
  frontier.push_back(e);
  found.push_back(e);
  while (!frontier.empty()) {
    const Permutation x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : generators) {
      auto y = x * s;
      if (seen.insert(y.code()).second) {
        if (found.size() >= cap) {
          throw Error(ErrorCode::GroupTooLarge, "group order exceeds " + std::to_string(cap));
        }
        found.push_back(y);
        frontier.push_back(std::move(y));
      }
    }
  }
  std::sort(found.begin(), found.end());
  group.elements_ = std::move(found);
  if (n <= 20 && factorial_u64(n) % group.elements_.size() != 0) {
    throw Error(ErrorCode::ValidationFailed, "group order does not divide n!");
  }

  const std::size_t order = group.elements_.size();
  group.index_.reserve(order);
  for (std::size_t i = 0; i < order; ++i) group.index_.emplace(group.elements_[i].code(), i);
  group.inverse_.resize(order);
  for (std::size_t i = 0; i < order; ++i) group.inverse_[i] = *group.index_of(group.elements_[i].inverse());

  // Conjugacy classes: closure of each element under conjugation by generators.
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  group.class_of_.assign(order, kUnassigned);
  std::vector<Permutation> gen_inverses;
  for (const auto& s : generators) gen_inverses.push_back(s.inverse());
  for (std::size_t i = 0; i < order; ++i) {
    if (group.class_of_[i] != kUnassigned) continue;
    const std::size_t cls = group.classes_.size();
    ConjugacyClass c;
    c.representative = i;
    std::vector<std::size_t> stack{i};
    group.class_of_[i] = cls;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      c.members.push_back(x);
      for (std::size_t k = 0; k < generators.size(); ++k) {
        const auto y = generators[k] * group.elements_[x] * gen_inverses[k];
        const std::size_t yi = *group.index_of(y);
        if (group.class_of_[yi] == kUnassigned) {
          group.class_of_[yi] = cls;
          stack.push_back(yi);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    group.classes_.push_back(std::move(c));
  }
  return group;
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& g) const {
  if (g.degree() != degree_) return std::nullopt;
  const auto it = index_.find(g.code());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PermGroup::same_as(const PermGroup& other) const noexcept {
  return this == &other || (degree_ == other.degree_ && elements_ == other.elements_);
}

PermGroup symmetric_group(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(cycle_of(n, {0, 1}));
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    if (n > 2) gens.push_back(cycle_of(n, all));
  }
  return PermGroup::generate(n, gens, "S_" + std::to_string(n));
}

PermGroup alternating_group(int n) {
  std::vector<Permutation> gens;
  for (int k = 2; k < n; ++k) gens.push_back(cycle_of(n, {0, 1, k}));
  return PermGroup::generate(n, gens, "A_" + std::to_string(n));
}

PermGroup cyclic_group(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle_of(n, all));
  return PermGroup::generate(n, gens, "C_" + std::to_string(n));
}

PermGroup dihedral_group(int n) {
  if (n < 3) {
    auto g = symmetric_group(n);
    return PermGroup::generate(n, g.generators(), "D_" + std::to_string(n));
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> flip(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = n - 1 - i;
  return PermGroup::generate(n, {cycle_of(n, all), Permutation(flip)}, "D_" + std::to_string(n));
}

PermGroup klein_four_group() {
  return PermGroup::generate(4, {Permutation::parse_cycles("(1 2)(3 4)", 4), Permutation::parse_cycles("(1 3)(2 4)", 4)},
                             "Klein");
}

PermGroup young_subgroup(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) {
    if (p < 1) throw Error(ErrorCode::BadPartition, "Young subgroup blocks must be positive");
    n += p;
  }
  std::vector<Permutation> gens;
  int offset = 0;
  std::string label = "Young:[";
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const int p = parts[b];
    if (p >= 2) {
      gens.push_back(cycle_of(n, {offset, offset + 1}));
      std::vector<int> block(static_cast<std::size_t>(p));
      std::iota(block.begin(), block.end(), offset);
      if (p > 2) gens.push_back(cycle_of(n, block));
    }
    offset += p;
    label += (b ? "," : "") + std::to_string(p);
  }
  return PermGroup::generate(n, gens, label + "]");
}

PermGroup trivial_group(int n) { return PermGroup::generate(n, {}, "E_" + std::to_string(n)); }

PermGroup named_group(std::string_view spec) {
  std::string s;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto parse_degree = [&](std::string_view rest) {
    if (!rest.empty() && rest.front() == '_') rest.remove_prefix(1);
    if (rest.empty()) throw Error(ErrorCode::ParseError, "missing degree in group spec '" + s + "'");
    int n = 0;
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::ParseError, "bad degree in group spec '" + s + "'");
      }
      n = n * 10 + (c - '0');
    }
    if (n < 1 || n > 16) throw Error(ErrorCode::ParseError, "degree out of range in '" + s + "'");
    return n;
  };
  if (s == "Klein" || s == "V_4" || s == "V4") return klein_four_group();
  if (s.rfind("Young:", 0) == 0) {
    std::vector<int> parts;
    int cur = -1;
    for (char c : s.substr(6)) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
      } else if (c == ',' || c == ']') {
        if (cur >= 0) parts.push_back(cur);
        cur = -1;
      } else if (c != '[') {
        throw Error(ErrorCode::ParseError, "bad Young spec '" + s + "'");
      }
    }
    if (cur >= 0) parts.push_back(cur);
    if (parts.empty()) throw Error(ErrorCode::ParseError, "empty Young spec '" + s + "'");
    return young_subgroup(parts);
  }
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty group spec");
  const std::string_view rest = std::string_view(s).substr(1);
  switch (s.front()) {
    case 'S': return symmetric_group(parse_degree(rest));
    case 'A': return alternating_group(parse_degree(rest));
    case 'C': return cyclic_group(parse_degree(rest));
    case 'D': return dihedral_group(parse_degree(rest));
    case 'E': return trivial_group(parse_degree(rest));
    default: break;
  }
  if (s.rfind("Trivial", 0) == 0) return trivial_group(parse_degree(std::string_view(s).substr(7)));
  throw Error(ErrorCode::ParseError, "unknown group spec '" + s + "'");
}

std::vector<PermGroup> all_subgroups(int n) {
  if (n < 1 || n > 5) throw Error(ErrorCode::TooLarge, "subgroup lattice enumeration supports n <= 5");
  const auto sn = symmetric_group(n);
  const std::size_t order = sn.order();
  using Mask = std::bitset<128>;

  std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) mult[i][j] = *sn.index_of(sn.element(i) * sn.element(j));
  }
  auto closure = [&](const std::vector<std::size_t>& gens) {
    Mask m;
    m.set(0);
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t s : gens) {
        const std::size_t y = mult[x][s];
        if (!m.test(y)) {
          m.set(y);
          stack.push_back(y);
        }
      }
    }
    return m;
  };
  auto key_of = [](const Mask& m) { return m.to_string(); };

  struct Entry {
    Mask mask;
    std::vector<std::size_t> gens;
  };
  std::vector<Entry> found;
  std::set<std::string> keys;
  for (std::size_t i = 0; i < order; ++i) {
    std::vector<std::size_t> gens;
    if (i != 0) gens.push_back(i);
    auto m = closure(gens);
    if (keys.insert(key_of(m)).second) found.push_back({m, gens});
  }
  for (std::size_t a = 0; a < found.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if ((found[a].mask | found[b].mask) == found[a].mask || (found[a].mask | found[b].mask) == found[b].mask) {
        continue;
      }
      auto gens = found[a].gens;
      gens.insert(gens.end(), found[b].gens.begin(), found[b].gens.end());
      auto m = closure(gens);
      if (keys.insert(key_of(m)).second) found.push_back({m, std::move(gens)});
    }
  }

  std::vector<PermGroup> out;
  out.reserve(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    std::vector<Permutation> gens;
    for (std::size_t s : found[k].gens) gens.push_back(sn.element(s));
    out.push_back(PermGroup::generate(n, gens, "sub" + std::to_string(n) + "_" + std::to_string(k)));
  }
  std::stable_sort(out.begin(), out.end(), [](const PermGroup& x, const PermGroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements() < y.elements();
  });
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = PermGroup::generate(n, out[k].generators(),
                                 "sub" + std::to_string(n) + "_" + std::to_string(k) + "_order" +
                                     std::to_string(out[k].order()));
  }
  return out;
}

std::vector<Permutation> stabilizer(const PermGroup& group, const IndexSequence& gamma) {
  std::vector<Permutation> out;
  for (const auto& g : group.elements()) {
    if (act(g, gamma) == gamma) out.push_back(g);
  }
  return out;
}

void for_each_orbit_representative(const PermGroup& group, int alphabet, std::uint64_t cap,
                                   const std::function<void(const IndexSequence&, std::size_t)>& visit) {
  const int length = group.degree();
  const std::uint64_t total = checked_power(alphabet, length, cap);
  std::vector<bool> visited(total, false);
  std::vector<std::uint64_t> scratch;
  scratch.reserve(group.order());
  for (std::uint64_t code = 0; code < total; ++code) {
    if (visited[code]) continue;
    const auto gamma = IndexSequence::decode(code, length, alphabet);
    std::size_t orbit_size = 0;
    for (const auto& g : group.elements()) {
      const auto c = acted_code(g, gamma.entries(), alphabet);
      if (!visited[c]) {
        visited[c] = true;
        ++orbit_size;
      }
    }
    visit(gamma, orbit_size);
  }
}

std::vector<OrbitData> orbit_decomposition(const PermGroup& group, int alphabet, std::uint64_t cap) {
  std::vector<OrbitData> out;
  for_each_orbit_representative(group, alphabet, cap, [&](const IndexSequence& rep, std::size_t) {
    OrbitData d;
    d.representative = rep;
    std::vector<std::pair<IndexSequence, Permutation>> members;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& g : group.elements()) {
      auto omega = act(g, rep);
      if (omega == rep) d.stabilizer.push_back(g);
      if (seen.insert(omega.code(alphabet)).second) members.emplace_back(std::move(omega), g);
    }
    std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [omega, g] : members) {
      d.orbit.push_back(std::move(omega));
      d.coset_reps.push_back(std::move(g));
    }
    out.push_back(std::move(d));
  });
  return out;
}

std::vector<Permutation> right_coset_reps_in_sn(const PermGroup& group) {
  const int n = group.degree();
  if (n > 8) throw Error(ErrorCode::EnumerationTooLarge, "coset enumeration in S_n needs n <= 8");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::unordered_set<std::uint64_t> covered;
  std::vector<Permutation> reps;
  do {
    Permutation sigma(images);
    if (covered.contains(sigma.code())) continue;
    for (const auto& g : group.elements()) covered.insert((sigma * g).code());
    reps.push_back(std::move(sigma));
  } while (std::next_permutation(images.begin(), images.end()));
  return reps;
}

}  // namespace gmf
