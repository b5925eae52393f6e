#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lab/errors.hpp"
#include "lab/selberg.hpp"

namespace lab::sel {

namespace {

using hyp::Mat2;

// PSL(2,R)-canonical quantized key: sign fixed by the largest-magnitude
// entry, entries snapped to an absolute 1e-7 grid. Distinct group elements
// in the explored ball differ by >= systole * ||w|| / 2 per entry scale,
// orders of magnitude above the grid, so a key collision identifies the
// same element; straddle duplicates merely re-store a node.
using Key4 = std::array<std::int64_t, 4>;

struct Key4Hash {
  std::size_t operator()(const Key4& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

Key4 key_of(const Mat2& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  double big = a;
  for (double v : {b, c, d})
    if (std::abs(v) > std::abs(big)) big = v;
  const double sgn = big < 0.0 ? -1.0 : 1.0;
  constexpr double grid = 1.0e7;
  return {static_cast<std::int64_t>(std::llround(sgn * a * grid)),
          static_cast<std::int64_t>(std::llround(sgn * b * grid)),
          static_cast<std::int64_t>(std::llround(sgn * c * grid)),
          static_cast<std::int64_t>(std::llround(sgn * d * grid))};
}

Mat2 renorm(const Mat2& m) {
  return m / std::sqrt(m.determinant());
}

Mat2 inverse_sl2(const Mat2& m) {
  Mat2 r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return renorm(r);
}

struct Node {
  Mat2 m;
  std::int32_t parent = -1;
  std::int8_t letter = -1;
  std::int8_t first = -1;
};

std::vector<std::int8_t> word_of(const std::vector<Node>& nodes, int idx) {
  std::vector<std::int8_t> w;
  for (int i = idx; i > 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
  std::reverse(w.begin(), w.end());
  return w;
}

std::int8_t inv_letter(std::int8_t l) { return l ^ 1; }

std::vector<std::int8_t> invert_word(const std::vector<std::int8_t>& w) {
  std::vector<std::int8_t> r(w.rbegin(), w.rend());
  for (auto& l : r) l = inv_letter(l);
  return r;
}

std::vector<std::int8_t> cyclic_reduce(std::vector<std::int8_t> w) {
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == inv_letter(w[b - 1])) {
    ++a;
    --b;
  }
  return {w.begin() + a, w.begin() + b};
}

std::vector<std::int8_t> min_rotation(const std::vector<std::int8_t>& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  std::vector<std::int8_t> best = w, rot = w;
  for (std::size_t r = 1; r < n; ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

bool visibly_periodic(const std::vector<std::int8_t>& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = (w[i] == w[i - p]);
    if (ok) return true;
  }
  return false;
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) up[b] = a;
  }
};

} // namespace

std::vector<std::int8_t> canonical_class_word(const std::vector<std::int8_t>& word) {
  const auto w = cyclic_reduce(word);
  auto best = min_rotation(w);
  const auto alt = min_rotation(cyclic_reduce(invert_word(w)));
  if (alt < best) best = alt;
  return best;
}

double LengthSpectrum::systole() const {
  require(!entries.empty(), ErrKind::domain, "empty length spectrum has no systole");
  return entries.front().len;
}

LengthSpectrum length_spectrum(const hyp::FuchsianSurface& s, double l_max,
                               const EnumBudget& budget) {
  require(l_max > 0.0 && l_max <= 12.0, ErrKind::domain,
          "length cutoff outside (0, 12] word-growth guard");
  const int n_gen = static_cast<int>(s.generators.size());
  require(n_gen == 2 * s.fn.genus, ErrKind::domain, "surface lacks its standard generators");
  const int n_let = 2 * n_gen;

  // Basepoint: conjugating the generator set moves the orbit basepoint; pick
  // the hexagon frame minimizing the largest generator displacement, which
  // sets both the prune radius and the completeness certificate.
  std::vector<Mat2> frames{Mat2::Identity()};
  for (const auto& p : s.pants)
    for (int k = 0; k < 3; ++k) {
      frames.push_back(p.side_frame[0][k]);
      frames.push_back(p.seam_frame[0][k]);
    }
  std::vector<Mat2> gens(n_gen);
  double d_hat = std::numeric_limits<double>::infinity();
  for (const Mat2& f : frames) {
    const Mat2 fi = inverse_sl2(f);
    double worst = 0.0;
    std::vector<Mat2> cand(n_gen);
    for (int i = 0; i < n_gen; ++i) {
      cand[i] = renorm(fi * s.generators[i] * f);
      worst = std::max(worst, hyp::displacement(cand[i]));
    }
    if (worst < d_hat) {
      d_hat = worst;
      gens = std::move(cand);
    }
  }

  std::vector<Mat2> letter(n_let);
  for (int i = 0; i < n_gen; ++i) {
    letter[2 * i] = gens[i];
    letter[2 * i + 1] = inverse_sl2(gens[i]);
  }

  const double r_full = l_max + 2.0 * d_hat + budget.slack;
  const double r_prune = std::min(r_full, budget.max_radius);
  const double certified =
      std::clamp(r_prune - budget.slack - 2.0 * d_hat, 0.0, l_max);

  std::vector<Node> nodes;
  nodes.reserve(1 << 16);
  nodes.push_back({Mat2::Identity(), -1, -1, -1});
  std::unordered_set<Key4, Key4Hash> visited;
  visited.insert(key_of(nodes[0].m));

  struct Candidate {
    Mat2 m;
    std::int32_t node = 0;
    double len = 0.0;
  };
  std::vector<Candidate> cands;

  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    const Node node = nodes[cur]; // copy: push_back below may reallocate
    for (std::int8_t l = 0; l < n_let; ++l) {
      if (node.letter >= 0 && l == inv_letter(node.letter)) continue;
      const Mat2 m = renorm(node.m * letter[l]);
      if (hyp::displacement(m) > r_prune) continue;
      if (!visited.insert(key_of(m)).second) continue;
      require(nodes.size() < budget.max_elements, ErrKind::budget,
              "word enumeration exceeded the element budget");
      const std::int8_t first = node.first < 0 ? l : node.first;
      nodes.push_back({m, static_cast<std::int32_t>(cur), l, first});
      const double len = hyp::translation_length(m);
      if (len > 1e-6 && len <= l_max + 1e-12)
        cands.push_back({m, static_cast<std::int32_t>(nodes.size() - 1), len});
    }
  }

  // Conjugacy classes: union candidates sharing the exact canonical cyclic
  // word (free-group level, inversion included), then link single-letter
  // conjugates that land on another stored candidate. The first merge is
  // exact and long-range, the second closes relator-induced splits through
  // the geometry.
  const int n_cand = static_cast<int>(cands.size());
  UnionFind uf(n_cand);
  std::unordered_map<Key4, int, Key4Hash> by_key;
  by_key.reserve(2 * cands.size());
  for (int i = 0; i < n_cand; ++i) by_key.emplace(key_of(cands[i].m), i);

  std::vector<std::vector<std::int8_t>> canon(n_cand);
  {
    std::unordered_map<std::string, int> by_word;
    by_word.reserve(2 * cands.size());
    for (int i = 0; i < n_cand; ++i) {
      canon[i] = canonical_class_word(word_of(nodes, cands[i].node));
      std::string key(canon[i].begin(), canon[i].end());
      auto [it, fresh] = by_word.emplace(std::move(key), i);
      if (!fresh) uf.unite(it->second, i);
    }
  }
  for (int i = 0; i < n_cand; ++i) {
    for (std::int8_t l = 0; l < n_let; ++l) {
      const Mat2 conj = renorm(letter[inv_letter(l)] * cands[i].m * letter[l]);
      const auto it = by_key.find(key_of(conj));
      if (it != by_key.end()) uf.unite(i, it->second);
    }
  }

  struct ClassInfo {
    double len = std::numeric_limits<double>::infinity();
    int rep = -1; // lex-min canonical word among members
    Mat2 m;       // member matrix, used by the power check
    bool periodic = false;
  };
  std::unordered_map<int, ClassInfo> classes;
  for (int i = 0; i < n_cand; ++i) {
    ClassInfo& c = classes[uf.find(i)];
    c.len = std::min(c.len, cands[i].len);
    if (c.rep < 0 || canon[i] < canon[c.rep]) c.rep = i;
    c.m = cands[i].m;
    c.periodic = c.periodic || visibly_periodic(canon[i]);
  }

  std::vector<ClassInfo> prim;
  prim.reserve(classes.size());
  for (auto& [root, c] : classes)
    if (!c.periodic) prim.push_back(c);
  std::sort(prim.begin(), prim.end(),
            [](const ClassInfo& a, const ClassInfo& b) { return a.len < b.len; });

  // Numeric power backstop: a k-th power whose canonical word is not visibly
  // periodic still has length k * l' of a shorter entry and a member matrix
  // equal to a stored power of that entry's member.
  std::vector<bool> drop(prim.size(), false);
  for (std::size_t i = 0; i < prim.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double k_real = prim[i].len / prim[j].len;
      const int k = static_cast<int>(std::llround(k_real));
      if (k < 2 || std::abs(k_real - k) > 1e-9 * k) continue;
      Mat2 p = Mat2::Identity();
      for (int t = 0; t < k; ++t) p = renorm(p * prim[j].m);
      if (by_key.count(key_of(p)) != 0 &&
          std::abs(hyp::translation_length(p) - prim[i].len) < 1e-9) {
        // Same length and the power lands on a stored candidate: check it
        // belongs to class i before dropping.
        const int idx = by_key.at(key_of(p));
        if (uf.find(idx) == uf.find(prim[i].rep)) drop[i] = true;
      }
    }
  }

  LengthSpectrum out;
  out.cutoff = l_max;
  out.complete_below = certified;
  for (std::size_t i = 0; i < prim.size(); ++i) {
    if (drop[i]) continue;
    // Orientation pairs were merged by the inversion-aware canonical word;
    // torsion-free orientation-preserving groups admit no element conjugate
    // to its own inverse, so each merged class counts both orientations.
    if (!out.entries.empty() &&
        std::abs(out.entries.back().len - prim[i].len) <= 1e-9 * std::max(1.0, prim[i].len))
      out.entries.back().mult += 2;
    else
      out.entries.push_back({prim[i].len, 2});
  }
  require(!out.entries.empty(), ErrKind::domain, "no closed geodesic below the cutoff");
  return out;
}

} // namespace lab::sel
