#include "qmd/spectral.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qmd {

using gf2::BitVector;
using gf2::Matrix;
using gf2::Subspace;

std::size_t FilteredComplex::add_generator(std::string name, int degree, int filtration) {
  const std::size_t i = generators_.size();
  generators_.push_back({std::move(name), degree, filtration});
  boundary_.emplace_back();
  auto& slot = by_degree_[degree];
  position_.push_back(slot.size());
  slot.push_back(i);
  return i;
}

void FilteredComplex::add_boundary(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw std::out_of_range("add_boundary: generator index out of range");
  auto& b = boundary_[from];
  const auto it = std::find(b.begin(), b.end(), to);
  if (it == b.end())
    b.push_back(to);
  else
    b.erase(it);
}

std::optional<std::size_t> FilteredComplex::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

const std::vector<std::size_t>& FilteredComplex::basis(int n) const {
  static const std::vector<std::size_t> none;
  const auto it = by_degree_.find(n);
  return it == by_degree_.end() ? none : it->second;
}

std::vector<int> FilteredComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [n, v] : by_degree_) out.push_back(n);
  return out;
}

int FilteredComplex::min_filtration() const {
  int m = 0;
  bool first = true;
  for (const auto& g : generators_) {
    m = first ? g.filtration : std::min(m, g.filtration);
    first = false;
  }
  return m;
}

int FilteredComplex::max_filtration() const {
  int m = 0;
  bool first = true;
  for (const auto& g : generators_) {
    m = first ? g.filtration : std::max(m, g.filtration);
    first = false;
  }
  return m;
}

Matrix FilteredComplex::differential(int n) const {
  const auto& cols = basis(n);
  const auto& rows = basis(n - 1);
  Matrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto t : boundary_[cols[j]])
      if (generators_[t].degree == n - 1) m.flip(position_[t], j);
  return m;
}

std::optional<Violation> validate(const FilteredComplex& fc) {
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const auto& g = fc.generator(i);
    for (auto t : fc.boundary(i)) {
      const auto& h = fc.generator(t);
      if (h.degree != g.degree - 1)
        return Violation{"degree", g.name, h.name, "boundary of " + g.name + " contains " + h.name + " of the wrong degree"};
      if (h.filtration > g.filtration)
        return Violation{"filtration", g.name, h.name,
                         "boundary of " + g.name + " raises filtration to " + h.name};
    }
  }
  for (std::size_t i = 0; i < fc.size(); ++i) {
    std::map<std::size_t, int> acc;
    for (auto t : fc.boundary(i))
      for (auto u : fc.boundary(t)) acc[u] ^= 1;
    for (const auto& [u, c] : acc)
      if (c) return Violation{"d_squared", fc.generator(i).name, fc.generator(u).name,
                              "d^2 of " + fc.generator(i).name + " contains " + fc.generator(u).name};
  }
  return std::nullopt;
}

void require_valid(const FilteredComplex& fc) {
  if (auto v = validate(fc)) throw FiltrationError(*v);
}

std::size_t Page::dim(int p, int q) const {
  const auto it = entries.find({p, q});
  return it == entries.end() ? 0 : it->second.dim;
}

std::map<Bidegree, std::size_t> Page::dims() const {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [pq, e] : entries)
    if (e.dim) out[pq] = e.dim;
  return out;
}

namespace {

// Cycle/boundary subspaces of one complex, with the boundary matrices cached.
class Engine {
public:
  explicit Engine(const FilteredComplex& fc) : fc_(fc) {
    for (int n : fc.degrees()) {
      d_.emplace(n, fc.differential(n));
      d_.emplace(n + 1, fc.differential(n + 1));
    }
  }

  std::size_t dim(int n) const { return fc_.basis(n).size(); }

  // Z^k_{p,n} = {x in F_p C_n : dx in F_{p-k} C_{n-1}}; k = -1 gives F_p.
  Subspace cycles(int k, int p, int n) const {
    const auto& cols_all = fc_.basis(n);
    const auto& rows_all = fc_.basis(n - 1);
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < cols_all.size(); ++j)
      if (fc_.generator(cols_all[j]).filtration <= p) cols.push_back(j);
    for (std::size_t i = 0; i < rows_all.size(); ++i)
      if (fc_.generator(rows_all[i]).filtration > p - k) rows.push_back(i);
    const Matrix block = d_.at(n).select_rows(rows).select_cols(cols);
    const Subspace ker = gf2::kernel_basis(block);
    Matrix embedded(0, cols_all.size());
    for (std::size_t r = 0; r < ker.dim(); ++r) {
      const BitVector v = ker.vector(r);
      BitVector x(cols_all.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (v.get(c)) x.set(cols[c]);
      embedded.append_row(x);
    }
    return Subspace::span(std::move(embedded));
  }

  BitVector boundary_of(int n, const BitVector& x) const { return d_.at(n).apply(x); }

  Subspace boundary_image(int n, const Subspace& s) const {
    Matrix out(0, dim(n - 1));
    for (std::size_t r = 0; r < s.dim(); ++r) out.append_row(boundary_of(n, s.vector(r)));
    return Subspace::span(std::move(out));
  }

private:
  const FilteredComplex& fc_;
  std::map<int, Matrix> d_;
};

}  // namespace

Page page(const FilteredComplex& fc, int k) {
  if (k < 0) throw PageIndexError("page index must be nonnegative");
  require_valid(fc);
  Page pg;
  pg.k = k;
  if (fc.size() == 0) return pg;
  const Engine eng(fc);

  std::set<std::pair<int, int>> present;  // (p, n) with generators at filtration p
  for (const auto& g : fc.generators()) present.insert({g.filtration, g.degree});

  for (const auto& [p, n] : present) {
    PageEntry e;
    e.numerator = eng.cycles(k, p, n);
    const Subspace lower = eng.cycles(k - 1, p - 1, n);
    const Subspace bdry = eng.boundary_image(n + 1, eng.cycles(k - 1, p + k - 1, n + 1));
    e.denominator = gf2::subspace_sum(lower, bdry);
    e.dim = gf2::quotient_dim(e.numerator, e.denominator);
    Subspace acc = e.denominator;
    for (std::size_t r = 0; r < e.numerator.dim() && e.representatives.size() < e.dim; ++r) {
      const BitVector z = e.numerator.vector(r);
      if (acc.contains(z)) continue;
      e.representatives.push_back(z);
      const BitVector one[] = {z};
      acc = gf2::subspace_sum(acc, Subspace::span(one, z.size()));
    }
    pg.entries.emplace(Bidegree{p, n - p}, std::move(e));
  }

  for (const auto& [src, e] : pg.entries) {
    const Bidegree tgt = pg.target(src);
    const int n = src.first + src.second;
    const auto it = pg.entries.find(tgt);
    const std::size_t rows = it == pg.entries.end() ? 0 : it->second.dim;
    Matrix d(rows, e.dim);
    if (rows > 0 && e.dim > 0) {
      const PageEntry& t = it->second;
      Matrix stack(0, eng.dim(n - 1));
      for (const auto& r : t.representatives) stack.append_row(r);
      for (std::size_t i = 0; i < t.denominator.dim(); ++i) stack.append_row(t.denominator.vector(i));
      for (std::size_t j = 0; j < e.dim; ++j) {
        const auto coeff = gf2::solve_in_rows(stack, eng.boundary_of(n, e.representatives[j]));
        if (!coeff) throw std::logic_error("page: boundary of a representative left the target cycles");
        for (std::size_t i = 0; i < rows; ++i)
          if (coeff->get(i)) d.set(i, j);
      }
    }
    pg.differentials.emplace(src, std::move(d));
  }
  return pg;
}

bool differential_squares_to_zero(const Page& pg) {
  for (const auto& [src, d] : pg.differentials) {
    const auto it = pg.differentials.find(pg.target(src));
    if (it == pg.differentials.end() || d.rows() == 0) continue;
    if (it->second.cols() != d.rows()) return false;
    if (!it->second.multiply(d).is_zero()) return false;
  }
  return true;
}

Convergence converge(const FilteredComplex& fc) {
  require_valid(fc);
  Convergence out;
  if (fc.size() == 0) {
    out.stable_index = 1;
    out.einf = page(fc, 1);
    return out;
  }
  // d_k vanishes once k exceeds the filtration span.
  const int last = fc.max_filtration() - fc.min_filtration() + 1;
  std::vector<Page> pages;
  for (int k = 1; k <= last; ++k) pages.push_back(page(fc, k));
  int stable = last;
  while (stable > 1 && pages[static_cast<std::size_t>(stable - 2)].dims() == pages.back().dims()) --stable;
  out.stable_index = stable;
  out.einf = std::move(pages[static_cast<std::size_t>(stable - 1)]);
  return out;
}

std::map<int, std::size_t> total_homology(const FilteredComplex& fc) {
  std::map<int, std::size_t> out;
  for (int n : fc.degrees()) {
    const std::size_t c = fc.basis(n).size();
    out[n] = c - gf2::rank(fc.differential(n)) - gf2::rank(fc.differential(n + 1));
  }
  return out;
}

namespace {

std::vector<std::size_t> action_order(const QMDDescriptor& d) {
  std::vector<std::size_t> order(d.pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.pieces[a].action < d.pieces[b].action; });
  return order;
}

void check_piece(const Piece& pc) {
  if (pc.name.empty() || pc.name.find('.') != std::string::npos)
    throw DescriptorError("piece names must be nonempty and contain no '.'");
  const int kinds = (pc.betti ? 1 : 0) + (pc.complex ? 1 : 0) + (pc.mask ? 1 : 0);
  if (kinds != 1) throw DescriptorError("piece " + pc.name + " needs exactly one of betti, complex, mask");
}

// Local homology of a piece, indexed by local degree.
std::map<int, std::size_t> local_homology(const Piece& pc) {
  std::map<int, std::size_t> h;
  if (pc.betti) {
    for (std::size_t m = 0; m < pc.betti->size(); ++m)
      if ((*pc.betti)[m]) h[static_cast<int>(m)] = (*pc.betti)[m];
  } else if (pc.complex) {
    QMDDescriptor single;
    Piece copy = pc;
    copy.iota = 0;
    single.pieces.push_back(copy);
    for (const auto& [n, dim] : total_homology(build_from_qmd(single)))
      if (dim) h[n] = dim;
  } else {
    const auto b = betti(build_complex(*pc.mask));
    for (std::size_t m = 0; m < b.size(); ++m)
      if (b[m]) h[static_cast<int>(m)] = b[m];
  }
  return h;
}

}  // namespace

FilteredComplex build_from_qmd(const QMDDescriptor& d) {
  FilteredComplex fc;
  std::set<std::string> names;
  for (const auto& pc : d.pieces) {
    check_piece(pc);
    if (!names.insert(pc.name).second) throw DescriptorError("duplicate piece name " + pc.name);
  }
  const auto order = action_order(d);
  std::map<std::string, double> action_of;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Piece& pc = d.pieces[order[rank]];
    const int p = static_cast<int>(rank) + 1;
    fc.level_labels[p] = pc.name;
    fc.level_actions[p] = pc.action;
    action_of[pc.name] = pc.action;
    if (pc.betti) {
      for (std::size_t m = 0; m < pc.betti->size(); ++m)
        for (std::size_t i = 0; i < (*pc.betti)[m]; ++i)
          fc.add_generator(pc.name + ".h" + std::to_string(m) + "_" + std::to_string(i),
                           static_cast<int>(m) + pc.iota, p);
    } else if (pc.complex) {
      for (const auto& [gname, deg] : pc.complex->generators) {
        const std::string full = pc.name + "." + gname;
        if (fc.find(full)) throw DescriptorError("duplicate generator " + full);
        fc.add_generator(full, deg + pc.iota, p);
      }
      for (const auto& [from, to] : pc.complex->differential) {
        const auto a = fc.find(pc.name + "." + from);
        const auto b = fc.find(pc.name + "." + to);
        if (!a || !b) throw DescriptorError("piece " + pc.name + ": differential names an unknown generator");
        fc.add_boundary(*a, *b);
      }
    } else {
      const CubicalComplex cx = build_complex(*pc.mask);
      std::vector<std::vector<std::size_t>> ids(cx.dimension() + 1);
      for (std::size_t k = 0; k <= cx.dimension(); ++k)
        for (std::size_t i = 0; i < cx.cell_count(k); ++i)
          ids[k].push_back(fc.add_generator(pc.name + ".c" + std::to_string(k) + "_" + std::to_string(i),
                                            static_cast<int>(k) + pc.iota, p));
      for (std::size_t k = 1; k <= cx.dimension(); ++k)
        for (std::size_t i = 0; i < cx.cell_count(k); ++i)
          for (auto f : cx.boundary_column(k, i)) fc.add_boundary(ids[k][i], ids[k - 1][f]);
    }
  }
  for (const auto& ct : d.cross_terms) {
    const auto a = fc.find(ct.from);
    const auto b = fc.find(ct.to);
    if (!a || !b) throw DescriptorError("cross term names an unknown generator: " + ct.from + " -> " + ct.to);
    const std::string pa = ct.from.substr(0, ct.from.find('.'));
    const std::string pb = ct.to.substr(0, ct.to.find('.'));
    if (!(action_of.at(pb) < action_of.at(pa)))
      throw DescriptorError("cross term " + ct.from + " -> " + ct.to + " does not decrease action");
    fc.add_boundary(*a, *b);
  }
  if (auto v = validate(fc)) throw FiltrationError(*v);
  return fc;
}

std::map<Bidegree, std::size_t> expected_e1(const QMDDescriptor& d) {
  std::map<Bidegree, std::size_t> out;
  const auto order = action_order(d);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Piece& pc = d.pieces[order[rank]];
    check_piece(pc);
    const int p = static_cast<int>(rank) + 1;
    for (const auto& [m, dim] : local_homology(pc)) out[{p, m + pc.iota - p}] += dim;
  }
  return out;
}

QMDDescriptor truncate_by_action(const QMDDescriptor& d, double cutoff) {
  QMDDescriptor out;
  std::set<std::string> kept;
  for (const auto& pc : d.pieces)
    if (pc.action < cutoff) {
      out.pieces.push_back(pc);
      kept.insert(pc.name);
    }
  for (const auto& ct : d.cross_terms) {
    const std::string pa = ct.from.substr(0, ct.from.find('.'));
    const std::string pb = ct.to.substr(0, ct.to.find('.'));
    if (kept.count(pa) && kept.count(pb)) out.cross_terms.push_back(ct);
  }
  return out;
}

DirectedLimitReport directed_limit_check(const QMDDescriptor& d, const std::vector<double>& cutoffs) {
  DirectedLimitReport rep;
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end())) throw std::invalid_argument("cutoffs must be increasing");
  std::vector<std::map<Bidegree, std::size_t>> e1;
  for (double a : cutoffs) e1.push_back(page(build_from_qmd(truncate_by_action(d, a)), 1).dims());
  for (std::size_t i = 0; i < e1.size(); ++i)
    for (std::size_t j = i + 1; j < e1.size(); ++j)
      for (const auto& [pq, dim] : e1[i]) {
        const auto it = e1[j].find(pq);
        const std::size_t other = it == e1[j].end() ? 0 : it->second;
        if (other != dim) {
          rep.ok = false;
          rep.mismatches.push_back("E1(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ") changes from " +
                                   std::to_string(dim) + " to " + std::to_string(other) + " between cutoffs " +
                                   std::to_string(i) + " and " + std::to_string(j));
        }
      }
  return rep;
}

}  // namespace qmd
