#include "plg/coincidence.hpp"

#include "plg/linsolve.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace plg {

Constraint Constraint::coincide(int i, int j, std::vector<int> coords) {
  Constraint c;
  c.kind = Kind::Coincide;
  c.i = i;
  c.j = j;
  c.coords = std::move(coords);
  return c;
}

Constraint Constraint::ray_diff(int i, int j, Point direction, int aux, std::vector<int> coords) {
  Constraint c;
  c.kind = Kind::RayDiff;
  c.i = i;
  c.j = j;
  c.direction = std::move(direction);
  c.aux = aux;
  c.coords = std::move(coords);
  return c;
}

Constraint Constraint::pin(int i, int coord, Scalar value) {
  Constraint c;
  c.kind = Kind::Pin;
  c.i = i;
  c.j = i;
  c.coords = {coord};
  c.value = std::move(value);
  return c;
}

namespace {

int ambient_of(const CoincidenceProblem& p) {
  if (p.factors.empty()) throw std::invalid_argument("coincidence problem without factors");
  return p.factors.front()->ambient_dim;
}

std::vector<int> coords_of(const Constraint& c, int ambient) {
  if (!c.coords.empty()) return c.coords;
  std::vector<int> all(static_cast<std::size_t>(ambient));
  for (int k = 0; k < ambient; ++k) all[k] = k;
  return all;
}

}  // namespace

int CoincidenceProblem::unknown_count() const {
  int n = static_cast<int>(aux.size());
  for (const auto& f : factors) n += f->domain.dim;
  return n;
}

int CoincidenceProblem::equation_count() const {
  const int d = ambient_of(*this);
  int n = 0;
  for (const auto& c : constraints) n += static_cast<int>(coords_of(c, d).size());
  return n;
}

std::string to_string(DegeneracyKind k) {
  switch (k) {
    case DegeneracyKind::SingularConsistent: return "singular-but-consistent";
    case DegeneracyKind::CellBoundary: return "solution-on-cell-boundary";
    case DegeneracyKind::AuxBoundary: return "solution-on-aux-boundary";
  }
  return "unknown";
}

std::string DegeneracyReport::describe() const {
  std::ostringstream os;
  os << "degenerate cell tuple [";
  for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
  os << "]: " << to_string(kind);
  return os.str();
}

std::vector<std::pair<int, Scalar>> domain_point(const PLMap& m, int cell, const std::vector<Scalar>& bary) {
  std::vector<std::pair<int, Scalar>> pt;
  const Cell& c = m.domain.cells[cell];
  for (std::size_t k = 0; k < c.size(); ++k)
    if (sgn(bary[k]) != 0) pt.emplace_back(c[k], bary[k]);
  std::sort(pt.begin(), pt.end());
  return pt;
}

namespace {

struct Functional {
  int factor = 0;
  Point coef;  // length = ambient
  std::vector<std::pair<Scalar, Scalar>> range;  // per cell [min, max]
};

enum class CheckKind { Overlap, DiffAtLeast, DiffAtMost, Contains };

// Necessary condition on a pair of chosen cells, evaluated once the later
// factor is chosen.
struct Check {
  CheckKind kind;
  int fa = 0;  // functional on the earlier-or-equal factor side (i side)
  int fb = 0;  // functional on the j side
  Scalar bound;
  int depth = 0;
};

class Engine {
 public:
  Engine(const CoincidenceProblem& p, bool closed_aux) : p_(p), closed_aux_(closed_aux) {
    ambient_ = ambient_of(p);
    for (const auto& f : p.factors)
      if (f->ambient_dim != ambient_)
        throw std::invalid_argument("coincidence factors have different ambient dimensions");
    int off = 0;
    for (const auto& f : p.factors) {
      offsets_.push_back(off);
      off += f->domain.dim;
    }
    aux_offset_ = off;
    unknowns_ = off + static_cast<int>(p.aux.size());
    for (const auto& c : p.constraints) {
      auto cs = coords_of(c, ambient_);
      equations_ += static_cast<int>(cs.size());
      if (c.i < 0 || c.j < 0 || c.i >= static_cast<int>(p.factors.size()) ||
          c.j >= static_cast<int>(p.factors.size()))
        throw std::invalid_argument("constraint references a missing factor");
      if (c.kind != Constraint::Kind::Pin && c.i == c.j)
        throw std::invalid_argument("constraint relates a factor to itself");
      if (c.kind == Constraint::Kind::RayDiff) {
        if (c.aux < 0 || c.aux >= static_cast<int>(p.aux.size()))
          throw std::invalid_argument("ray constraint references a missing aux scalar");
        if (c.direction.size() != cs.size()) throw std::invalid_argument("ray direction has wrong length");
        if (std::all_of(c.direction.begin(), c.direction.end(), [](const Scalar& s) { return sgn(s) == 0; }))
          throw std::invalid_argument("ray direction is zero");
      }
    }
    build_checks();
  }

  int equations() const { return equations_; }
  int unknowns() const { return unknowns_; }
  std::size_t outer_size() const { return p_.factors[0]->domain.cells.size(); }

  // Enumerates all tuples below outer cell `first` that pass the filters.
  template <class Visit>
  bool enumerate(int first, Visit&& visit) const {
    std::vector<int> tuple(p_.factors.size(), -1);
    tuple[0] = first;
    if (!passes(tuple, 0)) return true;
    return descend(tuple, 1, visit);
  }

  // Assembles the affine system for a tuple.
  void assemble(const std::vector<int>& tuple, Matrix& m, std::vector<Scalar>& rhs) const {
    m = Matrix(equations_, unknowns_);
    rhs.assign(static_cast<std::size_t>(equations_), Scalar(0));
    int row = 0;
    for (const auto& c : p_.constraints) {
      auto cs = coords_of(c, ambient_);
      const Cell& ci = p_.factors[c.i]->domain.cells[tuple[c.i]];
      const auto& imi = p_.factors[c.i]->images;
      for (std::size_t k = 0; k < cs.size(); ++k, ++row) {
        const int a = cs[k];
        const Scalar& base_i = imi[ci[0]][a];
        for (std::size_t v = 1; v < ci.size(); ++v) m(row, offsets_[c.i] + static_cast<int>(v) - 1) = imi[ci[v]][a] - base_i;
        if (c.kind == Constraint::Kind::Pin) {
          rhs[row] = c.value - base_i;
          continue;
        }
        const Cell& cj = p_.factors[c.j]->domain.cells[tuple[c.j]];
        const auto& imj = p_.factors[c.j]->images;
        const Scalar& base_j = imj[cj[0]][a];
        for (std::size_t v = 1; v < cj.size(); ++v) m(row, offsets_[c.j] + static_cast<int>(v) - 1) -= imj[cj[v]][a] - base_j;
        rhs[row] = base_j - base_i;
        if (c.kind == Constraint::Kind::RayDiff) m(row, aux_offset_ + c.aux) -= c.direction[k];
      }
    }
  }

  // Closed-region feasibility of m u = rhs; returns the feasible unknown vector.
  // { u >= 0 : m u = b, le u <= le_rhs } describes the closed cells, with aux
  // shifted by its lower bound so every variable is >= 0.
  void closed_system(const Matrix& m, const std::vector<Scalar>& rhs, std::vector<Scalar>& b, Matrix& le,
                     std::vector<Scalar>& le_rhs) const {
    b = rhs;
    for (std::size_t a = 0; a < p_.aux.size(); ++a)
      for (int r = 0; r < m.rows; ++r) b[r] -= m(r, aux_offset_ + static_cast<int>(a)) * p_.aux[a].lo;
    int le_rows = static_cast<int>(p_.factors.size());
    for (const auto& ab : p_.aux)
      if (ab.hi) ++le_rows;
    le = Matrix(le_rows, unknowns_);
    le_rhs.assign(static_cast<std::size_t>(le_rows), Scalar(0));
    int r = 0;
    for (std::size_t f = 0; f < p_.factors.size(); ++f, ++r) {
      for (int k = 0; k < p_.factors[f]->domain.dim; ++k) le(r, offsets_[f] + k) = 1;
      le_rhs[r] = 1;
    }
    for (std::size_t a = 0; a < p_.aux.size(); ++a)
      if (p_.aux[a].hi) {
        le(r, aux_offset_ + static_cast<int>(a)) = 1;
        le_rhs[r] = *p_.aux[a].hi - p_.aux[a].lo;
        ++r;
      }
  }

  std::optional<std::vector<Scalar>> closed_feasible(const Matrix& m, const std::vector<Scalar>& rhs) const {
    std::vector<Scalar> b, le_rhs;
    Matrix le;
    closed_system(m, rhs, b, le, le_rhs);
    std::optional<std::vector<Scalar>> u = line_feasible(m, b, le, le_rhs);
    if (u && u->empty()) u = find_feasible_point(m, b, le, le_rhs);
    if (u)
      for (std::size_t a = 0; a < p_.aux.size(); ++a) (*u)[aux_offset_ + a] += p_.aux[a].lo;
    return u;
  }

  // Fast path when the equalities leave at most a line: nullopt = infeasible,
  // empty vector = undecided (more freedom), otherwise a feasible point.
  static std::optional<std::vector<Scalar>> line_feasible(const Matrix& m, const std::vector<Scalar>& b,
                                                          const Matrix& le, const std::vector<Scalar>& le_rhs) {
    auto sol = solve_affine(m, b);
    if (!sol.consistent) return std::nullopt;
    if (sol.null_basis.size() > 1) return std::vector<Scalar>{};
    const int n = m.cols;
    // inequalities g.u <= h: -u_i <= 0 and the rows of `le`
    auto eval = [&](int row, const std::vector<Scalar>& x) -> Scalar {
      if (row < n) return -x[row];
      Scalar s = 0;
      for (int c = 0; c < n; ++c)
        if (sgn(le(row - n, c)) != 0) s += le(row - n, c) * x[c];
      return s;
    };
    auto bound = [&](int row) -> const Scalar& {
      static const Scalar zero(0);
      return row < n ? zero : le_rhs[row - n];
    };
    const int rows = n + le.rows;
    if (sol.null_basis.empty()) {
      for (int r = 0; r < rows; ++r)
        if (eval(r, sol.x0) > bound(r)) return std::nullopt;
      return sol.x0;
    }
    const auto& z = sol.null_basis[0];
    std::optional<Scalar> lo, hi;
    for (int r = 0; r < rows; ++r) {
      Scalar g0 = eval(r, sol.x0), gz = eval(r, z);
      Scalar slack = bound(r) - g0;
      if (sgn(gz) == 0) {
        if (sgn(slack) < 0) return std::nullopt;
        continue;
      }
      Scalar t = slack / gz;
      if (sgn(gz) > 0) {
        if (!hi || t < *hi) hi = t;
      } else if (!lo || t > *lo) {
        lo = t;
      }
    }
    if (lo && hi && *lo > *hi) return std::nullopt;
    Scalar t = lo ? *lo : (hi ? *hi : Scalar(0));
    std::vector<Scalar> x = sol.x0;
    for (int c = 0; c < n; ++c) x[c] += t * z[c];
    return x;
  }

  std::vector<std::vector<Scalar>> barycentrics(const std::vector<Scalar>& u) const {
    std::vector<std::vector<Scalar>> out;
    for (std::size_t f = 0; f < p_.factors.size(); ++f) {
      const int d = p_.factors[f]->domain.dim;
      std::vector<Scalar> b(static_cast<std::size_t>(d) + 1);
      Scalar rest = 1;
      for (int k = 0; k < d; ++k) {
        b[k + 1] = u[offsets_[f] + k];
        rest -= b[k + 1];
      }
      b[0] = rest;
      out.push_back(std::move(b));
    }
    return out;
  }

  std::vector<Scalar> aux_values(const std::vector<Scalar>& u) const {
    return std::vector<Scalar>(u.begin() + aux_offset_, u.end());
  }

  bool is_diagonal(const std::vector<int>& tuple, const std::vector<std::vector<Scalar>>& bary) const {
    for (auto [a, b] : p_.self_pairs)
      if (domain_point(*p_.factors[a], tuple[a], bary[a]) == domain_point(*p_.factors[b], tuple[b], bary[b]))
        return true;
    return false;
  }

  // For a singular tuple with closed solutions: true when every closed
  // solution has equal domain points on one self pair, i.e. lies on the shared
  // face of two adjacent cells with equal coordinates. Each linear functional
  // that vanishes on that diagonal is tested for a nonzero value on the
  // solution polytope P by the homogenized system
  //   (y, s) >= 0, m y = s b, le y <= s le_rhs, phi(y, s) = +-1,
  // which is feasible exactly when phi takes that sign somewhere on P
  // (P is nonempty; s = 0 gives a recession direction).
  bool diagonal_only(const std::vector<int>& tuple, const Matrix& m, const std::vector<Scalar>& rhs) const {
    std::vector<Scalar> b, le_rhs;
    Matrix le;
    closed_system(m, rhs, b, le, le_rhs);
    const int n = unknowns_ + 1;  // last column is s
    Matrix eq(m.rows + 1, n), hle(le.rows, n);
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < unknowns_; ++c) eq(r, c) = m(r, c);
      eq(r, unknowns_) = -b[r];
    }
    for (int r = 0; r < le.rows; ++r) {
      for (int c = 0; c < unknowns_; ++c) hle(r, c) = le(r, c);
      hle(r, unknowns_) = -le_rhs[r];
    }
    std::vector<Scalar> eq_rhs(static_cast<std::size_t>(m.rows + 1)), hle_rhs(static_cast<std::size_t>(le.rows));
    eq_rhs.back() = 1;

    // barycentric weight of vertex j of factor f's cell, homogenized
    auto weight = [&](int f, int j) {
      std::vector<Scalar> phi(static_cast<std::size_t>(n));
      if (j == 0) {
        phi[unknowns_] = 1;
        for (int k = 0; k < p_.factors[f]->domain.dim; ++k) phi[offsets_[f] + k] = -1;
      } else {
        phi[offsets_[f] + j - 1] = 1;
      }
      return phi;
    };
    auto takes_value = [&](const std::vector<Scalar>& phi, int sign) {
      Matrix e = eq;
      for (int c = 0; c < n; ++c) e(m.rows, c) = sign * phi[c];
      return find_feasible_point(e, eq_rhs, hle, hle_rhs).has_value();
    };

    for (auto [a, bb] : p_.self_pairs) {
      if (tuple[a] == tuple[bb]) continue;
      const Cell& ca = p_.factors[a]->domain.cells[tuple[a]];
      const Cell& cb = p_.factors[bb]->domain.cells[tuple[bb]];
      bool diagonal = true;
      for (std::size_t ja = 0; ja < ca.size() && diagonal; ++ja) {
        auto it = std::find(cb.begin(), cb.end(), ca[ja]);
        if (it == cb.end()) {
          diagonal = !takes_value(weight(a, static_cast<int>(ja)), 1);
          continue;
        }
        std::vector<Scalar> phi = weight(a, static_cast<int>(ja));
        const auto wb = weight(bb, static_cast<int>(it - cb.begin()));
        for (int c = 0; c < n; ++c) phi[c] -= wb[c];
        diagonal = !takes_value(phi, 1) && !takes_value(phi, -1);
      }
      for (std::size_t jb = 0; jb < cb.size() && diagonal; ++jb)
        if (std::find(ca.begin(), ca.end(), cb[jb]) == ca.end())
          diagonal = !takes_value(weight(bb, static_cast<int>(jb)), 1);
      if (diagonal) return true;
    }
    return false;
  }

  bool same_cell_self_pair(const std::vector<int>& tuple, int depth) const {
    for (auto [a, b] : p_.self_pairs)
      if (std::max(a, b) == depth && tuple[a] == tuple[b]) return true;
    return false;
  }

  const CoincidenceProblem& problem() const { return p_; }

 private:
  void add_functional_pair(int fi, int fj, const Point& coef, CheckKind kind, Scalar bound) {
    Check ch;
    ch.kind = kind;
    ch.fa = make_functional(fi, coef);
    ch.fb = kind == CheckKind::Contains ? ch.fa : make_functional(fj, coef);
    ch.bound = std::move(bound);
    ch.depth = std::max(fi, fj);
    checks_.push_back(std::move(ch));
  }

  int make_functional(int factor, const Point& coef) {
    for (std::size_t k = 0; k < functionals_.size(); ++k)
      if (functionals_[k].factor == factor && functionals_[k].coef == coef) return static_cast<int>(k);
    Functional f;
    f.factor = factor;
    f.coef = coef;
    const PLMap& m = *p_.factors[factor];
    for (const Cell& c : m.domain.cells) {
      Scalar lo, hi;
      for (std::size_t v = 0; v < c.size(); ++v) {
        Scalar val = dot(coef, m.images[c[v]]);
        if (v == 0 || val < lo) lo = val;
        if (v == 0 || val > hi) hi = val;
      }
      f.range.emplace_back(lo, hi);
    }
    functionals_.push_back(std::move(f));
    return static_cast<int>(functionals_.size()) - 1;
  }

  void add_coincide_checks(int i, int j, const std::vector<int>& cs) {
    for (int a : cs) {
      Point coef = zero_point(static_cast<std::size_t>(ambient_));
      coef[a] = 1;
      add_functional_pair(i, j, coef, CheckKind::Overlap, 0);
    }
  }

  // g_i - g_j = alpha * direction on cs: functionals vanishing on the
  // direction must agree, and the component along it must fit the aux range
  void add_ray_checks(int i, int j, const std::vector<int>& cs, const Point& direction, int aux) {
    std::size_t pivot = 0;
    while (sgn(direction[pivot]) == 0) ++pivot;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (k == pivot) continue;
      Point coef = zero_point(static_cast<std::size_t>(ambient_));
      coef[cs[k]] = direction[pivot];
      coef[cs[pivot]] = -direction[k];
      add_functional_pair(i, j, coef, CheckKind::Overlap, 0);
    }
    Point coef = zero_point(static_cast<std::size_t>(ambient_));
    Scalar norm2 = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      coef[cs[k]] = direction[k];
      norm2 += direction[k] * direction[k];
    }
    const AuxBound& ab = p_.aux[aux];
    add_functional_pair(i, j, coef, CheckKind::DiffAtLeast, ab.lo * norm2);
    if (ab.hi) add_functional_pair(i, j, coef, CheckKind::DiffAtMost, *ab.hi * norm2);
  }

  void build_checks() {
    for (const auto& c : p_.constraints) {
      auto cs = coords_of(c, ambient_);
      if (c.kind == Constraint::Kind::Pin) {
        Point coef = zero_point(static_cast<std::size_t>(ambient_));
        coef[cs[0]] = 1;
        add_functional_pair(c.i, c.i, coef, CheckKind::Contains, c.value);
      } else if (c.kind == Constraint::Kind::Coincide) {
        add_coincide_checks(c.i, c.j, cs);
      } else {
        add_ray_checks(c.i, c.j, cs, c.direction, c.aux);
      }
    }
    // implied constraints of chains (i, j), (j, k): equal coordinates are
    // transitive, and rays sharing one aux scalar add up
    for (const auto& c1 : p_.constraints)
      for (const auto& c2 : p_.constraints) {
        if (c1.kind != c2.kind || c1.kind == Constraint::Kind::Pin || c1.j != c2.i || c1.i == c2.j) continue;
        auto cs1 = coords_of(c1, ambient_), cs2 = coords_of(c2, ambient_);
        if (c1.kind == Constraint::Kind::Coincide) {
          std::vector<int> common;
          for (int a : cs1)
            if (std::find(cs2.begin(), cs2.end(), a) != cs2.end()) common.push_back(a);
          add_coincide_checks(c1.i, c2.j, common);
        } else if (c1.aux == c2.aux && cs1 == cs2) {
          Point sum = c1.direction + c2.direction;
          if (std::any_of(sum.begin(), sum.end(), [](const Scalar& x) { return sgn(x) != 0; }))
            add_ray_checks(c1.i, c2.j, cs1, sum, c1.aux);
        }
      }
    checks_by_depth_.resize(p_.factors.size());
    for (std::size_t k = 0; k < checks_.size(); ++k) checks_by_depth_[checks_[k].depth].push_back(static_cast<int>(k));
    build_indexes();
  }

  // Per depth, cells sorted by the lower end of the most selective overlap
  // functional, so candidates come from a binary-searched window.
  struct Index {
    int own = -1;    // functional on the factor at this depth
    int other = -1;  // functional on an earlier factor
    std::vector<int> order;
    std::vector<Scalar> lo;  // lo[k] = range of order[k]
    Scalar max_width;
  };

  void build_indexes() {
    indexes_.resize(p_.factors.size());
    for (std::size_t d = 1; d < p_.factors.size(); ++d) {
      double best = 2;
      for (int idx : checks_by_depth_[d]) {
        const Check& ch = checks_[idx];
        if (ch.kind != CheckKind::Overlap) continue;
        int own = functionals_[ch.fa].factor == static_cast<int>(d) ? ch.fa : ch.fb;
        int other = own == ch.fa ? ch.fb : ch.fa;
        if (functionals_[other].factor >= static_cast<int>(d)) continue;
        // heuristic only: mean cell width relative to the total span
        const auto& r = functionals_[own].range;
        double lo = r[0].first.get_d(), hi = r[0].second.get_d(), width = 0;
        for (const auto& [a, b] : r) {
          lo = std::min(lo, a.get_d());
          hi = std::max(hi, b.get_d());
          width += Scalar(b - a).get_d();
        }
        double score = hi > lo ? width / static_cast<double>(r.size()) / (hi - lo) : 1;
        if (score < best) {
          best = score;
          indexes_[d].own = own;
          indexes_[d].other = other;
        }
      }
      Index& ix = indexes_[d];
      if (ix.own < 0) continue;
      const auto& r = functionals_[ix.own].range;
      ix.order.resize(r.size());
      for (std::size_t k = 0; k < r.size(); ++k) ix.order[k] = static_cast<int>(k);
      std::stable_sort(ix.order.begin(), ix.order.end(), [&](int a, int b) { return r[a].first < r[b].first; });
      ix.max_width = 0;
      for (int c : ix.order) {
        ix.lo.push_back(r[c].first);
        ix.max_width = std::max(ix.max_width, Scalar(r[c].second - r[c].first));
      }
    }
  }

  // Candidate cells at `depth` in ascending index order.
  void candidates(const std::vector<int>& tuple, int depth, std::vector<int>& out) const {
    out.clear();
    const Index& ix = indexes_[depth];
    const Functional& other = functionals_[ix.other];
    const auto& ro = other.range[tuple[other.factor]];
    Scalar from = ro.first - ix.max_width;
    auto a = std::lower_bound(ix.lo.begin(), ix.lo.end(), from);
    auto b = std::upper_bound(a, ix.lo.end(), ro.second);
    const auto& own = functionals_[ix.own].range;
    for (auto it = a; it != b; ++it) {
      int c = ix.order[static_cast<std::size_t>(it - ix.lo.begin())];
      if (own[c].second >= ro.first) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
  }

  bool passes(const std::vector<int>& tuple, int depth) const {
    for (int idx : checks_by_depth_[depth]) {
      const Check& ch = checks_[idx];
      const Functional& fa = functionals_[ch.fa];
      const auto& ra = fa.range[tuple[fa.factor]];
      if (ch.kind == CheckKind::Contains) {
        if (ch.bound < ra.first || ch.bound > ra.second) return false;
        continue;
      }
      const Functional& fb = functionals_[ch.fb];
      const auto& rb = fb.range[tuple[fb.factor]];
      switch (ch.kind) {
        case CheckKind::Overlap:
          if (ra.second < rb.first || rb.second < ra.first) return false;
          break;
        case CheckKind::DiffAtLeast:
          if (ra.second - rb.first < ch.bound) return false;
          break;
        case CheckKind::DiffAtMost:
          if (ra.first - rb.second > ch.bound) return false;
          break;
        case CheckKind::Contains:
          break;
      }
    }
    return true;
  }

  template <class Visit>
  bool descend(std::vector<int>& tuple, int depth, Visit& visit) const {
    if (depth == static_cast<int>(tuple.size())) return visit(tuple);
    auto step = [&](int c) {
      tuple[depth] = c;
      if (same_cell_self_pair(tuple, depth)) return true;
      if (!passes(tuple, depth)) return true;
      return descend(tuple, depth + 1, visit);
    };
    if (indexes_[depth].own >= 0) {
      std::vector<int> cand;
      candidates(tuple, depth, cand);
      for (int c : cand)
        if (!step(c)) return false;
      return true;
    }
    const int n = static_cast<int>(p_.factors[depth]->domain.cells.size());
    for (int c = 0; c < n; ++c)
      if (!step(c)) return false;
    return true;
  }

  const CoincidenceProblem& p_;
  bool closed_aux_;
  int ambient_ = 0;
  std::vector<int> offsets_;
  int aux_offset_ = 0;
  int unknowns_ = 0;
  int equations_ = 0;
  std::vector<Functional> functionals_;
  std::vector<Check> checks_;
  std::vector<std::vector<int>> checks_by_depth_;
  std::vector<Index> indexes_;
};

unsigned worker_count(const EngineOptions& opts, std::size_t jobs) {
  unsigned w = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, jobs)));
}

// Runs job(i) for i in [0, n) on a worker pool. Jobs above the current
// `cutoff` are skipped; jobs lower it to stop later work.
template <class Job>
void run_pool(std::size_t n, unsigned workers, std::atomic<long long>& cutoff, Job&& job) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      if (static_cast<long long>(i) > cutoff.load()) continue;
      job(i);
    }
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < workers; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void lower_cutoff(std::atomic<long long>& cutoff, long long v) {
  long long cur = cutoff.load();
  while (v < cur && !cutoff.compare_exchange_weak(cur, v)) {
  }
}

}  // namespace

SignedCountResult signed_count(const CoincidenceProblem& p, const EngineOptions& opts) {
  Engine eng(p, false);
  if (eng.equations() != eng.unknowns())
    throw std::invalid_argument("signed_count needs a square system: " + std::to_string(eng.equations()) +
                                " equations, " + std::to_string(eng.unknowns()) + " unknowns");
  const std::size_t n = eng.outer_size();
  std::vector<std::vector<Witness>> found(n);
  std::vector<std::optional<DegeneracyReport>> bad(n);
  std::vector<long long> examined(n, 0);
  std::atomic<long long> cutoff{std::numeric_limits<long long>::max()};

  auto job = [&](std::size_t outer) {
    Matrix m;
    std::vector<Scalar> rhs;
    eng.enumerate(static_cast<int>(outer), [&](const std::vector<int>& tuple) {
      ++examined[outer];
      eng.assemble(tuple, m, rhs);
      auto sol = solve_square(m, rhs);
      if (sol.det_sign == 0) {
        if (eng.closed_feasible(m, rhs)) {
          if (!p.self_pairs.empty() && eng.diagonal_only(tuple, m, rhs)) return true;
          bad[outer] = DegeneracyReport{tuple, DegeneracyKind::SingularConsistent};
          return false;
        }
        return true;
      }
      auto bary = eng.barycentrics(sol.x);
      auto aux = eng.aux_values(sol.x);
      bool on_cell_boundary = false;
      for (const auto& b : bary)
        for (const auto& v : b) {
          if (sgn(v) < 0) return true;
          if (sgn(v) == 0) on_cell_boundary = true;
        }
      bool on_aux_boundary = false;
      for (std::size_t a = 0; a < aux.size(); ++a) {
        const auto& ab = p.aux[a];
        if (aux[a] < ab.lo || (ab.hi && aux[a] > *ab.hi)) return true;
        if (aux[a] == ab.lo || (ab.hi && aux[a] == *ab.hi)) on_aux_boundary = true;
      }
      if (on_cell_boundary || on_aux_boundary) {
        if (on_cell_boundary && !p.self_pairs.empty() && eng.is_diagonal(tuple, bary)) return true;
        bad[outer] = DegeneracyReport{tuple, on_cell_boundary ? DegeneracyKind::CellBoundary : DegeneracyKind::AuxBoundary};
        return false;
      }
      if (!p.self_pairs.empty() && eng.is_diagonal(tuple, bary)) return true;
      found[outer].push_back(Witness{tuple, std::move(bary), std::move(aux), sol.det_sign});
      return true;
    });
    if (bad[outer]) lower_cutoff(cutoff, static_cast<long long>(outer));
  };
  run_pool(n, worker_count(opts, n), cutoff, job);

  for (std::size_t i = 0; i < n; ++i)
    if (bad[i]) throw DegeneracyError(*bad[i]);
  SignedCountResult res;
  for (std::size_t i = 0; i < n; ++i) {
    res.tuples_examined += examined[i];
    for (auto& w : found[i]) {
      res.total += w.sign;
      res.witnesses.push_back(std::move(w));
    }
  }
  std::sort(res.witnesses.begin(), res.witnesses.end());
  return res;
}

EmptinessResult verify_empty(const CoincidenceProblem& p, const EngineOptions& opts) {
  Engine eng(p, true);
  const std::size_t n = eng.outer_size();
  std::vector<std::optional<EmptinessResult>> hit(n);
  std::vector<long long> examined(n, 0);
  std::atomic<long long> cutoff{std::numeric_limits<long long>::max()};

  auto job = [&](std::size_t outer) {
    Matrix m;
    std::vector<Scalar> rhs;
    eng.enumerate(static_cast<int>(outer), [&](const std::vector<int>& tuple) {
      ++examined[outer];
      eng.assemble(tuple, m, rhs);
      auto u = eng.closed_feasible(m, rhs);
      if (!u) return true;
      EmptinessResult r;
      r.empty = false;
      r.cells = tuple;
      r.bary = eng.barycentrics(*u);
      r.aux = eng.aux_values(*u);
      for (std::size_t f = 0; f < tuple.size(); ++f) r.points.push_back(p.factors[f]->evaluate(tuple[f], r.bary[f]));
      hit[outer] = std::move(r);
      return false;
    });
    if (hit[outer]) lower_cutoff(cutoff, static_cast<long long>(outer));
  };
  run_pool(n, worker_count(opts, n), cutoff, job);

  long long total = 0;
  for (auto e : examined) total += e;
  for (std::size_t i = 0; i < n; ++i)
    if (hit[i]) {
      hit[i]->tuples_examined = total;
      return *hit[i];
    }
  EmptinessResult r;
  r.tuples_examined = total;
  return r;
}

PLMap perturb(const PLMap& m, const Scalar& magnitude, std::uint64_t seed) {
  if (magnitude < 0) throw GeometryError(GeometryError::Kind::BadParams, "negative perturbation magnitude");
  PLMap out = m;
  if (sgn(magnitude) == 0) return out;
  std::mt19937_64 rng(seed);
  for (auto& p : out.images)
    for (auto& x : p) {
      long k = static_cast<long>(rng() % 2001) - 1000;
      x += magnitude * ratio(k, 1000);
    }
  return out;
}

}  // namespace plg
