#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/errors.hpp"

namespace toric {

/// Order complex of a fan: the p-simplices are the strictly ascending chains
/// of p+1 cones.  Chains are stored as vectors of cone ids, grouped by p.
struct OrderComplex {
  std::size_t num_vertices = 0;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[p]

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& c : chains) f.push_back(c.size());
    return f;
  }

  long long euler_characteristic() const {
    long long e = 0;
    int sign = 1;
    for (const auto& c : chains) {
      e += sign * static_cast<long long>(c.size());
      sign = -sign;
    }
    return e;
  }
};

struct HereditaryFailure {
  int cone_id = -1;
  // component label per maximal cone of the star, in star order
  std::vector<int> component_labels;
};

struct HereditaryReport {
  bool hereditary = false;
  bool maximal_full_dim = false;
  std::vector<HereditaryFailure> failures;
};

/// Face-closed fan with poset structure.  Cones are stored in a canonical
/// order (dimension, then rays lexicographically), so ids, the ordering of
/// maximal cones and everything derived from them are reproducible.
class Fan {
public:
  /// Builds the fan generated by the given cones: filters redundant ones,
  /// closes under faces, verifies the pairwise fan condition.
  static Fan from_maximal_cones(std::size_t ambient_rank, std::vector<Cone> maximal);

  /// Convenience entry matching the external fan description: maximal cones
  /// given as index sets into a ray list.  Indices must be valid.
  static Fan from_ray_indices(std::size_t ambient_rank,
                              const std::vector<IntVec>& rays,
                              const std::vector<std::vector<int>>& maximal) {
    std::vector<Cone> cones;
    cones.reserve(maximal.size());
    for (const auto& idx : maximal) {
      std::vector<IntVec> gens;
      for (int i : idx) {
        assert(i >= 0 && static_cast<std::size_t>(i) < rays.size());
        gens.push_back(rays[static_cast<std::size_t>(i)]);
      }
      cones.push_back(Cone::from_rays(ambient_rank, gens));
    }
    return from_maximal_cones(ambient_rank, std::move(cones));
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t size() const { return cones_.size(); }
  const Cone& cone(int id) const { return cones_[static_cast<std::size_t>(id)]; }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<int>& maximal() const { return maximal_; }
  int zero_cone_id() const { return 0; }  // the zero cone sorts first

  std::optional<int> id_of(const Cone& c) const {
    auto it = id_by_key_.find(c.key());
    if (it == id_by_key_.end()) return std::nullopt;
    return it->second;
  }

  int require_id(const Cone& c) const {
    auto id = id_of(c);
    if (!id) throw ConeNotInFanError("cone is not a member of the fan");
    return *id;
  }

  const std::vector<int>& ids_of_dim(std::size_t d) const {
    static const std::vector<int> empty;
    return d < by_dim_.size() ? by_dim_[d] : empty;
  }

  bool is_maximal(int id) const {
    return std::binary_search(maximal_.begin(), maximal_.end(), id);
  }

  /// tau <= sigma in the face poset (valid fans: equivalent to ray inclusion).
  bool is_face(int tau, int sigma) const {
    const auto& a = ray_sets_[static_cast<std::size_t>(tau)];
    const auto& b = ray_sets_[static_cast<std::size_t>(sigma)];
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  const std::vector<int>& face_ids(int sigma) const {
    return subfaces_[static_cast<std::size_t>(sigma)];
  }
  const std::vector<int>& coface_ids(int tau) const {
    return cofaces_[static_cast<std::size_t>(tau)];
  }

  /// ids of the cones in the star of sigma (all cones containing it).
  const std::vector<int>& star_ids(int sigma) const { return coface_ids(sigma); }

  /// The common face of two cones of the fan.  In a validated fan this is the
  /// cone spanned by the shared rays.
  int common_face(int a, int b) const {
    const auto& ra = ray_sets_[static_cast<std::size_t>(a)];
    const auto& rb = ray_sets_[static_cast<std::size_t>(b)];
    std::vector<int> shared;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                          std::back_inserter(shared));
    auto it = id_by_ray_set_.find(shared);
    assert(it != id_by_ray_set_.end());
    return it->second;
  }

  std::vector<int> full_dim_cofaces(int tau) const {
    std::vector<int> out;
    for (int s : coface_ids(tau))
      if (cone(s).dim() == ambient_rank_) out.push_back(s);
    return out;
  }

  bool maximal_full_dim() const {
    for (int id : maximal_)
      if (cone(id).dim() != ambient_rank_) return false;
    return true;
  }

  /// Support covers all of N_R.  Criterion: all maximal cones full-dimensional,
  /// every (n-1)-cone lies in exactly two full-dimensional cones, and the
  /// facet-adjacency graph on the full-dimensional cones is connected.
  bool is_complete() const;

  bool contains_point(const IntVec& v) const {
    for (int id : maximal_)
      if (cone(id).contains(v)) return true;
    return false;
  }

  OrderComplex order_complex() const;

  /// Star fan of sigma in N(sigma): the images of the cones containing sigma
  /// under the quotient projection.
  Fan star_fan(int sigma) const;

  /// Fan of the barycentric subdivision of the star of sigma, in N(sigma):
  /// one cone per chain sigma = c_0 < ... < c_p, spanned by the projected
  /// interior points of c_1, ..., c_p.  For sigma = 0 this is the barycentric
  /// subdivision of the fan itself.
  Fan barycentric_fan(int sigma) const;

  HereditaryReport hereditary_report() const;
  bool is_hereditary() const { return hereditary_report().hereditary; }

private:
  Fan() = default;

  void check(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= cones_.size())
      throw ConeNotInFanError("cone id out of range");
  }

  std::size_t ambient_rank_ = 0;
  std::vector<Cone> cones_;
  std::vector<int> maximal_;
  std::vector<std::vector<int>> by_dim_;
  std::vector<std::vector<int>> ray_sets_;  // sorted global ray indices per cone
  std::vector<std::vector<int>> subfaces_;  // ids tau <= sigma
  std::vector<std::vector<int>> cofaces_;   // ids tau >= sigma
  std::map<std::string, int> id_by_key_;
  std::map<std::vector<int>, int> id_by_ray_set_;
};

inline Fan Fan::from_maximal_cones(std::size_t ambient_rank, std::vector<Cone> input) {
  for (const Cone& c : input) {
    if (c.ambient_rank() != ambient_rank)
      throw FanMismatchError("cone has wrong ambient rank");
  }
  // drop duplicates and cones contained in another listed cone
  std::sort(input.begin(), input.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() > b.dim();
    return a.rays() < b.rays();
  });
  std::vector<Cone> maximal;
  for (Cone& c : input) {
    bool redundant = false;
    for (const Cone& m : maximal)
      if (m.contains(c)) {
        redundant = true;
        break;
      }
    if (!redundant) maximal.push_back(std::move(c));
  }
  if (maximal.empty()) maximal.push_back(Cone::zero(ambient_rank));

  // face closure
  std::map<std::string, Cone> closure;
  std::vector<std::map<std::string, bool>> faces_of(maximal.size());
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (Cone& f : maximal[i].faces()) {
      faces_of[i][f.key()] = true;
      closure.emplace(f.key(), std::move(f));
    }
  }

  // fan condition on pairs of maximal cones; faces of faces are then automatic
  for (std::size_t i = 0; i < maximal.size(); ++i)
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      Cone meet = intersect_cones(maximal[i], maximal[j]);
      if (!faces_of[i].count(meet.key()) || !faces_of[j].count(meet.key()))
        throw NotAFanError("cones " + maximal[i].key() + " and " + maximal[j].key() +
                           " intersect in a non-face");
    }

  Fan fan;
  fan.ambient_rank_ = ambient_rank;
  fan.cones_.reserve(closure.size());
  for (auto& [key, c] : closure) fan.cones_.push_back(std::move(c));
  std::sort(fan.cones_.begin(), fan.cones_.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays() < b.rays();
  });

  // global ray index, id lookups
  std::map<IntVec, int> ray_index;
  for (const Cone& c : fan.cones_)
    for (const IntVec& r : c.rays())
      ray_index.emplace(r, 0);
  int next = 0;
  for (auto& [r, idx] : ray_index) idx = next++;

  fan.by_dim_.assign(ambient_rank + 1, {});
  for (std::size_t id = 0; id < fan.cones_.size(); ++id) {
    const Cone& c = fan.cones_[id];
    fan.id_by_key_[c.key()] = static_cast<int>(id);
    std::vector<int> rs;
    for (const IntVec& r : c.rays()) rs.push_back(ray_index[r]);
    std::sort(rs.begin(), rs.end());
    fan.id_by_ray_set_[rs] = static_cast<int>(id);
    fan.ray_sets_.push_back(std::move(rs));
    fan.by_dim_[c.dim()].push_back(static_cast<int>(id));
  }

  for (const Cone& m : maximal) fan.maximal_.push_back(fan.id_by_key_.at(m.key()));
  std::sort(fan.maximal_.begin(), fan.maximal_.end());

  const std::size_t count = fan.cones_.size();
  fan.subfaces_.resize(count);
  fan.cofaces_.resize(count);
  for (int a = 0; a < static_cast<int>(count); ++a)
    for (int b = 0; b < static_cast<int>(count); ++b)
      if (fan.is_face(a, b)) {
        fan.subfaces_[static_cast<std::size_t>(b)].push_back(a);
        fan.cofaces_[static_cast<std::size_t>(a)].push_back(b);
      }
  return fan;
}

inline bool Fan::is_complete() const {
  if (!maximal_full_dim()) return false;
  const std::size_t n = ambient_rank_;
  if (n == 0) return true;
  const std::vector<int>& top = ids_of_dim(n);
  if (top.empty()) return false;

  // every (n-1)-cone is a wall between exactly two chambers
  std::map<int, std::pair<int, int>> wall;  // (n-1)-cone -> its two chambers
  for (int tau : ids_of_dim(n - 1)) {
    std::vector<int> above = full_dim_cofaces(tau);
    if (above.size() != 2) return false;
    wall[tau] = {above[0], above[1]};
  }

  // chamber adjacency graph must be connected
  std::map<int, int> comp;
  std::queue<int> bfs;
  bfs.push(top[0]);
  comp[top[0]] = 0;
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop();
    for (int tau : face_ids(s)) {
      if (cone(tau).dim() != n - 1) continue;
      auto [x, y] = wall.at(tau);
      int other = (x == s) ? y : x;
      if (!comp.count(other)) {
        comp[other] = 0;
        bfs.push(other);
      }
    }
  }
  bool complete = comp.size() == top.size();
#ifndef NDEBUG
  if (complete) {
    // spot-check: antipodes of interior points must still lie in the support
    for (int id : maximal_) {
      IntVec v = cone(id).interior_point();
      assert(contains_point(negated(v)));
    }
  }
#endif
  return complete;
}

inline OrderComplex Fan::order_complex() const {
  OrderComplex oc;
  oc.num_vertices = cones_.size();
  std::vector<std::vector<int>> frontier;
  for (int id = 0; id < static_cast<int>(cones_.size()); ++id) frontier.push_back({id});
  while (!frontier.empty()) {
    oc.chains.push_back(frontier);
    std::vector<std::vector<int>> next;
    for (const auto& chain : frontier)
      for (int c : coface_ids(chain.back())) {
        if (c == chain.back()) continue;
        std::vector<int> longer = chain;
        longer.push_back(c);
        next.push_back(std::move(longer));
      }
    frontier = std::move(next);
  }
  return oc;
}

inline Fan Fan::star_fan(int sigma) const {
  check(sigma);
  QuotientMap q = cone(sigma).quotient_map();
  std::vector<Cone> images;
  for (int s : coface_ids(sigma)) {
    if (!is_maximal(s)) continue;
    std::vector<IntVec> gens;
    for (const IntVec& r : cone(s).rays()) gens.push_back(q.matrix * r);
    images.push_back(Cone::from_rays(q.target_rank, gens));
  }
  return from_maximal_cones(q.target_rank, std::move(images));
}

inline Fan Fan::barycentric_fan(int sigma) const {
  check(sigma);
  QuotientMap q = cone(sigma).quotient_map();

  // all ascending chains sigma = c_0 < ... < c_p, as id lists
  std::vector<std::vector<int>> chains{{sigma}};
  for (std::size_t i = 0; i < chains.size(); ++i) {
    std::vector<int> chain = chains[i];
    for (int c : coface_ids(chain.back())) {
      if (c == chain.back()) continue;
      std::vector<int> longer = chain;
      longer.push_back(c);
      chains.push_back(std::move(longer));
    }
  }

  std::vector<Cone> cells;
  cells.reserve(chains.size());
  for (const auto& chain : chains) {
    std::vector<IntVec> gens;
    for (std::size_t i = 1; i < chain.size(); ++i)
      gens.push_back(q.matrix * cone(chain[i]).interior_point());
    cells.push_back(Cone::from_rays(q.target_rank, gens));
  }
  // from_maximal_cones re-validates; a failure here would be a bug, surfaced
  // as NotAFanError rather than swallowed
  return from_maximal_cones(q.target_rank, std::move(cells));
}

inline HereditaryReport Fan::hereditary_report() const {
  HereditaryReport report;
  report.maximal_full_dim = maximal_full_dim();
  const std::size_t n = ambient_rank_;
  for (int tau = 0; tau < static_cast<int>(cones_.size()); ++tau) {
    std::vector<int> stars;
    for (int s : coface_ids(tau))
      if (is_maximal(s)) stars.push_back(s);
    // union-find over the shares-a-common-facet relation
    std::vector<int> label(stars.size());
    for (std::size_t i = 0; i < stars.size(); ++i) label[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (label[static_cast<std::size_t>(x)] != x) x = label[static_cast<std::size_t>(x)];
      return x;
    };
    for (std::size_t i = 0; i < stars.size(); ++i)
      for (std::size_t j = i + 1; j < stars.size(); ++j) {
        int meet = common_face(stars[i], stars[j]);
        if (cone(meet).dim() == n - 1)
          label[static_cast<std::size_t>(find(static_cast<int>(i)))] =
              find(static_cast<int>(j));
      }
    std::map<int, int> canon;
    std::vector<int> components(stars.size());
    for (std::size_t i = 0; i < stars.size(); ++i) {
      int root = find(static_cast<int>(i));
      if (!canon.count(root)) canon[root] = static_cast<int>(canon.size());
      components[i] = canon[root];
    }
    if (canon.size() > 1) {
      HereditaryFailure f;
      f.cone_id = tau;
      f.component_labels = components;
      report.failures.push_back(std::move(f));
    }
  }
  report.hereditary = report.maximal_full_dim && report.failures.empty();
  return report;
}

/// True iff f is a subfan of the complete fan g and the order complex of g
/// restricts to that of f on f's vertex set (full-subcomplex property).
inline bool validate_completion(const Fan& f, const Fan& g) {
  if (f.ambient_rank() != g.ambient_rank())
    throw FanMismatchError("fans live in different ambient ranks");
  std::vector<bool> in_f(g.size(), false);
  for (const Cone& c : f.cones()) {
    auto id = g.id_of(c);
    if (!id) return false;
    in_f[static_cast<std::size_t>(*id)] = true;
  }
  if (!g.is_complete()) return false;
  // every chain of g supported on f-vertices must be a chain of f
  OrderComplex oc = g.order_complex();
  for (const auto& per_dim : oc.chains)
    for (const auto& chain : per_dim) {
      bool all_in_f = true;
      for (int id : chain) all_in_f = all_in_f && in_f[static_cast<std::size_t>(id)];
      if (!all_in_f) continue;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        auto a = f.id_of(g.cone(chain[i]));
        auto b = f.id_of(g.cone(chain[i + 1]));
        if (!a || !b || !f.is_face(*a, *b)) return false;
      }
    }
  return true;
}

}  // namespace toric
