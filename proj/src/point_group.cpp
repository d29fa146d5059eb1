#include "delone/point_group.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "delone/equivalence.hpp"
#include "delone/errors.hpp"
#include "internal.hpp"

namespace delone {

namespace {

constexpr std::size_t kMaxOrder = 120;

bool parallel(const Vec3& a, const Vec3& b) { return a.cross(b).norm() < 1e-6; }
bool perpendicular(const Vec3& a, const Vec3& b) { return std::abs(a.dot(b)) < 1e-6; }

[[noreturn]] void unrecognized(const std::string& why) {
  throw Error(ErrorCode::UnrecognizedGroup, "no finite subgroup of O(3) matches: " + why);
}

}  // namespace

bool SchoenfliesLabel::axial() const {
  switch (family) {
    case Family::C:
    case Family::S:
    case Family::Ch:
    case Family::Cv:
    case Family::D:
    case Family::Dh:
    case Family::Dd:
      return true;
    default:
      return false;
  }
}

std::string SchoenfliesLabel::str() const {
  const std::string num = std::to_string(n);
  switch (family) {
    case Family::C: return "C" + num;
    case Family::S: return "S" + num;
    case Family::Ch: return "C" + num + "h";
    case Family::Cv: return "C" + num + "v";
    case Family::D: return "D" + num;
    case Family::Dh: return "D" + num + "h";
    case Family::Dd: return "D" + num + "d";
    case Family::T: return "T";
    case Family::Td: return "Td";
    case Family::Th: return "Th";
    case Family::O: return "O";
    case Family::Oh: return "Oh";
    case Family::I: return "I";
    case Family::Ih: return "Ih";
  }
  return "?";
}

int SchoenfliesLabel::expected_order() const {
  switch (family) {
    case Family::C: return n;
    case Family::S: return n % 2 == 0 ? n : 2 * n;
    case Family::Ch:
    case Family::Cv:
    case Family::D: return 2 * n;
    case Family::Dh:
    case Family::Dd: return 4 * n;
    case Family::T: return 12;
    case Family::Td:
    case Family::Th:
    case Family::O: return 24;
    case Family::Oh: return 48;
    case Family::I: return 60;
    case Family::Ih: return 120;
  }
  return 0;
}

std::optional<SchoenfliesLabel> SchoenfliesLabel::parse(const std::string& text) {
  static const std::unordered_map<std::string, Family> polyhedral = {
      {"T", Family::T}, {"Td", Family::Td}, {"Th", Family::Th}, {"O", Family::O},
      {"Oh", Family::Oh}, {"I", Family::I}, {"Ih", Family::Ih}};
  if (auto it = polyhedral.find(text); it != polyhedral.end()) return SchoenfliesLabel{it->second, 0};
  if (text.size() < 2 || (text[0] != 'C' && text[0] != 'S' && text[0] != 'D')) return std::nullopt;
  std::size_t pos = 1;
  int n = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    n = n * 10 + (text[pos] - '0');
    if (n > 1000) return std::nullopt;
    ++pos;
  }
  if (pos == 1 || n < 1) return std::nullopt;
  const std::string suffix = text.substr(pos);
  const char head = text[0];
  if (suffix.empty()) {
    if (head == 'C') return SchoenfliesLabel{Family::C, n};
    if (head == 'S') return SchoenfliesLabel{Family::S, n};
    return SchoenfliesLabel{Family::D, n};
  }
  if (head == 'C' && suffix == "h") return SchoenfliesLabel{Family::Ch, n};
  if (head == 'C' && suffix == "v") return SchoenfliesLabel{Family::Cv, n};
  if (head == 'D' && suffix == "h") return SchoenfliesLabel{Family::Dh, n};
  if (head == 'D' && suffix == "d") return SchoenfliesLabel{Family::Dd, n};
  return std::nullopt;
}

std::optional<std::size_t> index_of(const std::vector<OrthogonalMap>& elements,
                                    const OrthogonalMap& g, double tol) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].distance(g) < tol) return i;
  }
  return std::nullopt;
}

std::vector<OrthogonalMap> generate_group(const std::vector<OrthogonalMap>& generators) {
  std::vector<OrthogonalMap> elements{OrthogonalMap::identity()};
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const OrthogonalMap g = elements[frontier.front()];
    frontier.pop_front();
    for (const auto& s : generators) {
      const OrthogonalMap h = g * s;
      if (index_of(elements, h)) continue;
      elements.push_back(h);
      if (elements.size() > kMaxOrder) {
        throw Error(ErrorCode::GroupTooLarge, "generated group exceeds order 120");
      }
      frontier.push_back(elements.size() - 1);
    }
  }
  internal::sort_canonically(elements);
  return elements;
}

void check_closure(const std::vector<OrthogonalMap>& elements) {
  if (!index_of(elements, OrthogonalMap::identity())) {
    throw Error(ErrorCode::NotAGroup, "identity is missing");
  }
  for (const auto& a : elements) {
    if (!index_of(elements, a.inverse())) throw Error(ErrorCode::NotAGroup, "not closed under inverse");
    for (const auto& b : elements) {
      if (!index_of(elements, a * b)) {
        throw Error(ErrorCode::NotAGroup, "not closed under composition");
      }
    }
  }
}

SchoenfliesLabel schoenflies(const std::vector<OrthogonalMap>& elements,
                             const ToleranceContext& ctx) {
  check_closure(elements);
  const int order = static_cast<int>(elements.size());

  std::vector<ElementKind> kinds;
  kinds.reserve(elements.size());
  for (const auto& g : elements) kinds.push_back(classify_element(g, ctx));

  int proper = 0;
  int n = 1;
  bool inversion = false;
  std::vector<Vec3> high_axes;  // distinct axes of rotations of order >= 3
  for (const auto& k : kinds) {
    switch (k.type) {
      case ElementType::GenericRotation:
      case ElementType::GenericRotoreflection:
        unrecognized("element with angle incommensurate up to max_rotation_order");
      case ElementType::Identity:
        ++proper;
        break;
      case ElementType::Rotation:
        ++proper;
        n = std::max(n, k.n);
        if (k.n >= 3 && std::none_of(high_axes.begin(), high_axes.end(),
                                     [&](const Vec3& a) { return parallel(a, k.axis); })) {
          high_axes.push_back(k.axis);
        }
        break;
      case ElementType::Inversion:
        inversion = true;
        break;
      default:
        break;
    }
  }
  auto has_rotation = [&](int m) {
    return std::any_of(kinds.begin(), kinds.end(), [&](const ElementKind& k) {
      return k.type == ElementType::Rotation && k.n == m;
    });
  };

  SchoenfliesLabel label;
  if (high_axes.size() >= 2) {
    if (has_rotation(5)) {
      label.family = order == 60 ? Family::I : Family::Ih;
    } else if (has_rotation(4)) {
      label.family = order == 24 ? Family::O : Family::Oh;
    } else if (order == 12) {
      label.family = Family::T;
    } else if (order == 24) {
      label.family = inversion ? Family::Th : Family::Td;
    } else {
      unrecognized("polyhedral rotations with order " + std::to_string(order));
    }
    label.n = 0;
  } else if (n == 1) {
    if (order == 1) {
      label = {Family::C, 1};
    } else if (order == 2) {
      label = {Family::S, inversion ? 2 : 1};
    } else {
      unrecognized("no rotations but order " + std::to_string(order));
    }
  } else {
    // Principal axis: an n-fold rotation axis; among several 2-fold axes
    // prefer the one carrying a rotoreflection (the S4 axis of D2d).
    Vec3 axis = Vec3::Zero();
    for (const auto& k : kinds) {
      if (k.type == ElementType::Rotation && k.n == n) {
        axis = k.axis;
        break;
      }
    }
    if (n == 2) {
      for (const auto& k : kinds) {
        if (k.type == ElementType::Rotoreflection && k.n == 4) {
          axis = k.axis;
          break;
        }
      }
    }
    bool mirror_h = false;
    bool mirror_v = false;
    for (const auto& k : kinds) {
      if (k.type != ElementType::Reflection) continue;
      if (parallel(k.axis, axis)) mirror_h = true;
      if (perpendicular(k.axis, axis)) mirror_v = true;
    }
    const int twist = proper / n;
    if (proper % n != 0 || (twist != 1 && twist != 2)) {
      unrecognized("rotation subgroup of order " + std::to_string(proper) + " with n = " +
                   std::to_string(n));
    }
    if (twist == 1) {
      if (order == n) {
        label = {Family::C, n};
      } else if (order == 2 * n && mirror_h) {
        label = n % 2 == 1 ? SchoenfliesLabel{Family::S, n} : SchoenfliesLabel{Family::Ch, n};
      } else if (order == 2 * n && mirror_v) {
        label = {Family::Cv, n};
      } else if (order == 2 * n) {
        label = {Family::S, 2 * n};
      } else {
        unrecognized("cyclic rotation part with order " + std::to_string(order));
      }
    } else {
      if (order == 2 * n) {
        label = {Family::D, n};
      } else if (order == 4 * n && mirror_h) {
        label = {Family::Dh, n};
      } else if (order == 4 * n && mirror_v) {
        label = {Family::Dd, n};
      } else {
        unrecognized("dihedral rotation part with order " + std::to_string(order));
      }
    }
  }
  if (label.expected_order() != order) {
    unrecognized(label.str() + " expects order " + std::to_string(label.expected_order()) +
                 ", group has " + std::to_string(order));
  }
  return label;
}

PointGroup stabilizer(const Cluster& c, const ToleranceContext& ctx) {
  if (affine_dimension(c) < 3) {
    throw Error(ErrorCode::LowerDimensionalCluster,
                "cluster members do not span R^3; its cluster group is infinite");
  }
  std::vector<OrthogonalMap> elements;
  for (const auto& g : all_cluster_isometries(c, c, ctx)) elements.push_back(g.linear());
  // Closure completion: found maps already form the full group, but products
  // are folded in so roundoff never leaves a gap.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const OrthogonalMap h = elements[i] * elements[j];
      if (!index_of(elements, h)) elements.push_back(h);
      if (elements.size() > kMaxOrder) {
        throw Error(ErrorCode::GroupTooLarge, "cluster group exceeds order 120");
      }
    }
  }
  internal::sort_canonically(elements);
  PointGroup g;
  g.center = c.center;
  g.elements = std::move(elements);
  g.label = schoenflies(g.elements, ctx);
  return g;
}

PointGroup group_from_generators(const std::vector<OrthogonalMap>& generators,
                                 const ToleranceContext& ctx) {
  PointGroup g;
  g.elements = generate_group(generators);
  g.label = schoenflies(g.elements, ctx);
  return g;
}

int omega(std::uint64_t n) {
  int count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  if (n > 1) ++count;
  return count;
}

int tower_height(const std::vector<OrthogonalMap>& elements) {
  const std::size_t order = elements.size();
  if (order > kMaxOrder) throw Error(ErrorCode::GroupTooLarge, "tower height needs order <= 120");
  check_closure(elements);
  using Bits = std::bitset<kMaxOrder>;

  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) table[i][j] = *index_of(elements, elements[i] * elements[j]);

  struct Subgroup {
    Bits bits;
    std::vector<std::size_t> gens;
  };
  std::vector<Subgroup> subgroups;
  std::unordered_map<Bits, std::size_t> seen;

  auto close = [&](const std::vector<std::size_t>& gens) {
    Bits bits;
    const std::size_t id = *index_of(elements, OrthogonalMap::identity());
    std::vector<std::size_t> members{id};
    bits.set(id);
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t s : gens) {
        const std::size_t h = table[members[k]][s];
        if (!bits.test(h)) {
          bits.set(h);
          members.push_back(h);
        }
      }
    }
    return bits;
  };
  auto add = [&](std::vector<std::size_t> gens) {
    const Bits bits = close(gens);
    if (seen.count(bits)) return false;
    seen.emplace(bits, subgroups.size());
    subgroups.push_back({bits, std::move(gens)});
    return true;
  };

  add({});
  for (std::size_t i = 0; i < order; ++i) add({i});
  // Joins of known subgroups until nothing new appears.
  for (std::size_t a = 0; a < subgroups.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if ((subgroups[a].bits & ~subgroups[b].bits).none() ||
          (subgroups[b].bits & ~subgroups[a].bits).none()) {
        continue;
      }
      auto gens = subgroups[a].gens;
      gens.insert(gens.end(), subgroups[b].gens.begin(), subgroups[b].gens.end());
      add(std::move(gens));
    }
  }

  std::vector<std::size_t> by_size(subgroups.size());
  for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
  std::sort(by_size.begin(), by_size.end(), [&](std::size_t x, std::size_t y) {
    return subgroups[x].bits.count() < subgroups[y].bits.count();
  });
  std::vector<int> height(subgroups.size(), 1);
  int best = 1;
  for (std::size_t i = 0; i < by_size.size(); ++i) {
    const auto& h = subgroups[by_size[i]].bits;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& k = subgroups[by_size[j]].bits;
      if (k.count() < h.count() && (k & ~h).none()) {
        height[by_size[i]] = std::max(height[by_size[i]], height[by_size[j]] + 1);
      }
    }
    best = std::max(best, height[by_size[i]]);
  }
  return best;
}

int max_rotation_order(const Cluster& c, const ToleranceContext& ctx) {
  const PointGroup g = stabilizer(c, ctx);
  int n = 1;
  for (const auto& e : g.elements) {
    const ElementKind k = classify_element(e, ctx);
    if (k.type == ElementType::Rotation) n = std::max(n, k.n);
  }
  return n;
}

bool is_subset(const std::vector<OrthogonalMap>& sub, const std::vector<OrthogonalMap>& super) {
  return std::all_of(sub.begin(), sub.end(),
                     [&](const OrthogonalMap& g) { return index_of(super, g).has_value(); });
}

bool same_elements(const std::vector<OrthogonalMap>& a, const std::vector<OrthogonalMap>& b) {
  return a.size() == b.size() && is_subset(a, b) && is_subset(b, a);
}

}  // namespace delone
