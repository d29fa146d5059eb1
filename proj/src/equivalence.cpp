#include "delone/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "delone/errors.hpp"
#include "internal.hpp"

namespace delone {

namespace {

constexpr std::size_t kFrameCandidates = 12;
constexpr double kDedupTol = 1e-6;

struct Prepared {
  const Cluster* cluster;
  std::vector<Vec3> vecs;    // members minus center, center excluded
  std::vector<double> norms;
  int dim = 0;
  SpatialHash hash;
};

Prepared prepare(const Cluster& c) {
  Prepared p{&c, {}, {}, 0, SpatialHash(1.0)};
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    p.hash.insert(c.members[i], i);
    const Vec3 v = c.members[i] - c.center;
    if (v.norm() <= 1e-12) continue;
    p.vecs.push_back(v);
  }
  std::sort(p.vecs.begin(), p.vecs.end(), [](const Vec3& x, const Vec3& y) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx != ny) return nx < ny;
    return lex_less(x, y);
  });
  for (const auto& v : p.vecs) p.norms.push_back(v.norm());
  p.dim = affine_dimension(c);
  return p;
}

// Greedy frame: the nearest member, then the members maximizing the Gram
// determinant of the growing frame.  Searches the nearest twelve members
// first and falls back to all of them.
std::vector<std::size_t> choose_frame(const Prepared& a) {
  std::vector<std::size_t> frame;
  if (a.dim == 0) return frame;
  frame.push_back(0);
  auto gram_det = [&](std::size_t j) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, static_cast<Eigen::Index>(frame.size() + 1));
    for (std::size_t i = 0; i < frame.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = a.vecs[frame[i]];
    m.col(static_cast<Eigen::Index>(frame.size())) = a.vecs[j];
    return (m.transpose() * m).determinant();
  };
  while (static_cast<int>(frame.size()) < a.dim) {
    std::size_t best = 0;
    double best_det = -1.0;
    for (std::size_t limit : {std::min(kFrameCandidates, a.vecs.size()), a.vecs.size()}) {
      for (std::size_t j = 0; j < limit; ++j) {
        if (std::find(frame.begin(), frame.end(), j) != frame.end()) continue;
        const double det = gram_det(j);
        if (det > best_det) {
          best_det = det;
          best = j;
        }
      }
      double scale = a.norms[best] * a.norms[best];
      for (std::size_t i : frame) scale *= a.norms[i] * a.norms[i];
      if (best_det > 1e-10 * scale) break;
    }
    frame.push_back(best);
  }
  return frame;
}

// Orthonormal basis adapted to a reduced frame; columns e1, e2, e3.
Mat3 adapted_basis(const std::vector<Vec3>& frame_vecs, bool flip) {
  Mat3 basis;
  const Vec3 e1 = frame_vecs[0].normalized();
  Vec3 e2;
  if (frame_vecs.size() >= 2) {
    e2 = (frame_vecs[1] - frame_vecs[1].dot(e1) * e1).normalized();
  } else {
    Eigen::Index k = 0;
    e1.cwiseAbs().minCoeff(&k);
    e2 = e1.cross(Vec3::Unit(k)).normalized();
  }
  Vec3 e3 = e1.cross(e2);
  if (flip) e3 = -e3;
  basis << e1, e2, e3;
  return basis;
}

bool verify(const Prepared& a, const Prepared& b, const OrthogonalMap& q, double tol) {
  const Cluster& ca = *a.cluster;
  const Cluster& cb = *b.cluster;
  std::vector<char> used(cb.members.size(), 0);
  for (const auto& p : ca.members) {
    const Point3 img = q(p - ca.center) + cb.center;
    std::optional<std::size_t> hit;
    b.hash.for_each_candidate(img, tol, [&](std::size_t j) {
      if (!hit && !used[j] && (cb.members[j] - img).norm() <= tol) hit = j;
    });
    if (!hit) return false;
    used[*hit] = 1;
  }
  return true;
}

bool invariants_match(const Prepared& a, const Prepared& b, double tol) {
  if (a.cluster->members.size() != b.cluster->members.size()) return false;
  if (a.dim != b.dim) return false;
  for (std::size_t i = 0; i < a.norms.size(); ++i) {
    if (std::abs(a.norms[i] - b.norms[i]) > tol) return false;
  }
  return true;
}

// Candidate linear parts mapping a's frame to an image tuple in b.
template <class Visit>
void enumerate_candidates(const Prepared& a, const Prepared& b, double tol, Visit&& visit) {
  const auto frame = choose_frame(a);
  if (frame.empty()) {
    visit(OrthogonalMap{});
    return;
  }
  std::vector<Vec3> src;
  for (std::size_t i : frame) src.push_back(a.vecs[i]);

  std::vector<std::size_t> image(frame.size());
  bool stop = false;
  auto emit = [&]() {
    std::vector<Vec3> dst;
    for (std::size_t j : image) dst.push_back(b.vecs[j]);
    if (frame.size() == 3) {
      const Frame s{Vec3::Zero(), src[0], src[1], src[2]};
      const Frame d{Vec3::Zero(), dst[0], dst[1], dst[2]};
      if (auto g = frame_isometry(s, d, tol)) stop = visit(g->linear());
      return;
    }
    for (bool flip : {false, true}) {
      const Mat3 m = adapted_basis(dst, flip) * adapted_basis(src, false).transpose();
      if (visit(OrthogonalMap::from_matrix(m, 1e-6))) {
        stop = true;
        return;
      }
    }
  };

  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    if (stop) return;
    if (level == frame.size()) {
      emit();
      return;
    }
    const double target = a.norms[frame[level]];
    for (std::size_t j = 0; j < b.vecs.size() && !stop; ++j) {
      if (std::abs(b.norms[j] - target) > tol) continue;
      bool ok = true;
      for (std::size_t k = 0; k < level && ok; ++k) {
        if (image[k] == j) ok = false;
        const double ds = (src[level] - src[k]).norm();
        const double dd = (b.vecs[j] - b.vecs[image[k]]).norm();
        if (std::abs(ds - dd) > 2.0 * tol) ok = false;
      }
      if (!ok) continue;
      image[level] = j;
      descend(level + 1);
    }
  };
  descend(0);
}

void check_radii(const Cluster& a, const Cluster& b, const ToleranceContext& ctx) {
  if (std::abs(a.radius - b.radius) > ctx.geom_tol * std::max(1.0, a.radius)) {
    throw Error(ErrorCode::RadiusMismatch, "clusters have different radii");
  }
}

std::optional<Isometry> find_isometry(const Prepared& a, const Prepared& b, double tol) {
  std::optional<Isometry> found;
  if (!invariants_match(a, b, tol)) return found;
  const Point3 ca = a.cluster->center;
  const Point3 cb = b.cluster->center;
  enumerate_candidates(a, b, tol, [&](const OrthogonalMap& q) {
    if (!verify(a, b, q, tol)) return false;
    found = Isometry(q, cb - q(ca));
    return true;
  });
  return found;
}

}  // namespace

double matching_tolerance(double rho, const ToleranceContext& ctx) {
  return 100.0 * ctx.geom_tol * std::max(1.0, rho);
}

std::optional<Isometry> cluster_isometry(const Cluster& a, const Cluster& b,
                                         const ToleranceContext& ctx) {
  check_radii(a, b, ctx);
  const double tol = matching_tolerance(a.radius, ctx);
  return find_isometry(prepare(a), prepare(b), tol);
}

std::vector<Isometry> all_cluster_isometries(const Cluster& a, const Cluster& b,
                                             const ToleranceContext& ctx) {
  check_radii(a, b, ctx);
  const double tol = matching_tolerance(a.radius, ctx);
  const Prepared pa = prepare(a);
  const Prepared pb = prepare(b);
  std::vector<OrthogonalMap> maps;
  if (invariants_match(pa, pb, tol)) {
    enumerate_candidates(pa, pb, tol, [&](const OrthogonalMap& q) {
      if (!verify(pa, pb, q, tol)) return false;
      const bool seen = std::any_of(maps.begin(), maps.end(), [&](const OrthogonalMap& m) {
        return m.distance(q) < kDedupTol;
      });
      if (!seen) maps.push_back(q);
      return false;
    });
  }
  internal::sort_canonically(maps);
  std::vector<Isometry> out;
  for (const auto& q : maps) out.emplace_back(q, b.center - q(a.center));
  return out;
}

ClusterClassDecomposition cluster_classes(const PointPatch& patch, double rho,
                                          const ToleranceContext& ctx) {
  auto centers = patch.usable_centers(rho, ctx.geom_tol);
  if (centers.empty()) {
    throw Error(ErrorCode::NoUsableCenters,
                "no patch point has its radius-" + std::to_string(rho) +
                    " ball inside the trusted box");
  }
  return cluster_classes(patch, rho, std::move(centers), ctx);
}

ClusterClassDecomposition cluster_classes(const PointPatch& patch, double rho,
                                          std::vector<Point3> centers,
                                          const ToleranceContext& ctx) {
  if (centers.empty()) throw Error(ErrorCode::NoUsableCenters, "empty center list");
  std::sort(centers.begin(), centers.end(), lex_less);
  const double tol = matching_tolerance(rho, ctx);
  ClusterClassDecomposition out;
  out.rho = rho;
  std::vector<Prepared> reps;
  reps.reserve(centers.size());
  out.representatives.reserve(centers.size());
  for (const auto& center : centers) {
    Cluster c = cluster(patch, center, rho, ctx);
    Prepared pc = prepare(c);
    std::optional<std::size_t> cls;
    for (std::size_t r = 0; r < reps.size() && !cls; ++r) {
      if (find_isometry(reps[r], pc, tol)) cls = r;
    }
    if (!cls) {
      cls = out.representatives.size();
      out.representatives.push_back(std::move(c));
      reps.push_back(prepare(out.representatives.back()));
    }
    out.assignment.emplace_back(center, *cls);
  }
  return out;
}

}  // namespace delone
