#include "tilekit/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "tilekit/error.hpp"

namespace tilekit {

namespace {

struct EchelonResult {
  std::vector<std::size_t> pivot_rows;  // ascending
  std::vector<Vec> pivots;
  std::vector<Vec> rest;  // columns vanishing on the first `rows` coordinates
};

// Unimodular column operations on the first `rows` coordinates, bottom row
// first. Columns may carry extra (augmented) coordinates that ride along.
EchelonResult column_echelon(std::vector<Vec> active, std::size_t rows) {
  EchelonResult out;
  for (std::size_t r = rows; r-- > 0;) {
    while (true) {
      std::size_t count = 0;
      std::size_t best = 0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i][r] == 0) continue;
        if (count == 0 || abs(active[i][r]) < abs(active[best][r])) best = i;
        ++count;
      }
      if (count == 0) break;
      if (count == 1) {
        Vec col = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        if (col[r] < 0) col = -col;
        out.pivot_rows.push_back(r);
        out.pivots.push_back(std::move(col));
        break;
      }
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == best || active[i][r] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), active[i][r].get_mpz_t(), active[best][r].get_mpz_t());
        for (std::size_t c = 0; c < active[i].size(); ++c) active[i][c] -= q * active[best][c];
      }
    }
  }
  std::reverse(out.pivot_rows.begin(), out.pivot_rows.end());
  std::reverse(out.pivots.begin(), out.pivots.end());
  out.rest = std::move(active);
  return out;
}

void check_dim(std::size_t expected, const Vec& v) {
  if (v.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch, "expected dimension " + std::to_string(expected) +
                                                   ", got " + std::to_string(v.size()));
  }
}

}  // namespace

const Integer& LatticeIndex::value() const {
  if (!value_) throw Error(ErrorCode::kRankDeficient, "lattice has infinite index");
  return *value_;
}

Lattice hnf(std::size_t dim, std::vector<Vec> columns) {
  std::vector<Vec> nonzero;
  for (auto& c : columns) {
    check_dim(dim, c);
    if (!is_zero(c)) nonzero.push_back(std::move(c));
  }
  EchelonResult e = column_echelon(std::move(nonzero), dim);
  const std::size_t k = e.pivots.size();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const std::size_t r = e.pivot_rows[i];
      const Integer t = floor_div(e.pivots[j][r], e.pivots[i][r]);
      if (t != 0) e.pivots[j] -= t * e.pivots[i];
    }
  }
  Lattice l;
  l.dim_ = dim;
  l.columns_ = std::move(e.pivots);
  l.pivot_rows_ = std::move(e.pivot_rows);
  return l;
}

Lattice Lattice::zero(std::size_t dim) { return hnf(dim, {}); }

Lattice Lattice::identity(std::size_t dim) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < dim; ++i) cols.push_back(unit_vec(dim, i));
  return hnf(dim, std::move(cols));
}

Lattice Lattice::diagonal(std::span<const long> entries) {
  const std::size_t d = entries.size();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < d; ++i) {
    Vec c = zero_vec(d);
    c[i] = entries[i];
    cols.push_back(std::move(c));
  }
  return hnf(d, std::move(cols));
}

Lattice Lattice::diagonal(std::initializer_list<long> entries) {
  return diagonal(std::span<const long>(entries.begin(), entries.size()));
}

Lattice Lattice::from_generators(std::size_t dim, std::span<const Vec> generators) {
  return hnf(dim, std::vector<Vec>(generators.begin(), generators.end()));
}

LatticeIndex Lattice::index() const {
  if (!is_full_rank()) return LatticeIndex::infinite();
  Integer prod = 1;
  for (std::size_t j = 0; j < rank(); ++j) prod *= columns_[j][pivot_rows_[j]];
  return LatticeIndex::finite(prod);
}

std::optional<Vec> Lattice::coordinates(const Vec& v) const {
  check_dim(dim_, v);
  Vec w = v;
  Vec coeffs = zero_vec(rank());
  std::size_t j = rank();
  for (std::size_t r = dim_; r-- > 0;) {
    if (j > 0 && pivot_rows_[j - 1] == r) {
      --j;
      const Integer& p = columns_[j][r];
      if (!mpz_divisible_p(w[r].get_mpz_t(), p.get_mpz_t())) return std::nullopt;
      Integer c = w[r] / p;
      if (c != 0) w -= c * columns_[j];
      coeffs[j] = c;
    } else if (w[r] != 0) {
      return std::nullopt;
    }
  }
  return coeffs;
}

bool Lattice::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& sub) const {
  if (sub.dim() != dim_) throw Error(ErrorCode::kDimensionMismatch, "lattice dimensions differ");
  for (const auto& c : sub.basis()) {
    if (!contains(c)) return false;
  }
  return true;
}

Vec Lattice::reduce(const Vec& v) const {
  check_dim(dim_, v);
  if (!is_full_rank()) {
    throw Error(ErrorCode::kRankDeficient, "reduce requires a full-rank lattice");
  }
  Vec w = v;
  for (std::size_t j = dim_; j-- > 0;) {
    const Integer t = floor_div(w[j], columns_[j][j]);
    if (t != 0) w -= t * columns_[j];
  }
  return w;
}

Lattice sum(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "lattice dimensions differ");
  std::vector<Vec> cols = a.basis();
  cols.insert(cols.end(), b.basis().begin(), b.basis().end());
  return hnf(a.dim(), std::move(cols));
}

std::vector<Vec> integer_kernel(std::size_t rows, std::span<const Vec> columns) {
  const std::size_t n = columns.size();
  std::vector<Vec> aug;
  aug.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec c(columns[i].begin(), columns[i].begin() + static_cast<std::ptrdiff_t>(rows));
    c.resize(rows + n, Integer(0));
    c[rows + i] = 1;
    aug.push_back(std::move(c));
  }
  EchelonResult e = column_echelon(std::move(aug), rows);
  std::vector<Vec> kernel;
  for (auto& c : e.rest) kernel.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(rows), c.end());
  return kernel;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "lattice dimensions differ");
  const std::size_t d = a.dim();
  if (a.rank() == 0 || b.rank() == 0) return Lattice::zero(d);
  std::vector<Vec> cols = a.basis();
  for (const auto& c : b.basis()) cols.push_back(-c);
  std::vector<Vec> gens;
  for (const auto& x : integer_kernel(d, cols)) {
    Vec g = zero_vec(d);
    for (std::size_t i = 0; i < a.rank(); ++i) {
      if (x[i] != 0) g += x[i] * a.basis()[i];
    }
    gens.push_back(std::move(g));
  }
  return hnf(d, std::move(gens));
}

std::vector<Vec> normal_vectors(const Lattice& l) {
  const std::size_t d = l.dim();
  std::vector<Vec> coord_cols(d, Vec(l.rank()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < l.rank(); ++j) coord_cols[i][j] = l.basis()[j][i];
  }
  return integer_kernel(l.rank(), coord_cols);
}

Integer order_modulo(const Lattice& l, const Vec& v) {
  const Vec w = l.reduce(v);
  if (is_zero(w)) return 1;
  const Lattice meet = intersect(l, hnf(l.dim(), {w}));
  const std::size_t row = meet.pivot_row(0);
  return abs(meet.basis().front()[row] / w[row]);
}

Lattice saturation(const Lattice& l) {
  const std::size_t d = l.dim();
  if (l.rank() == 0) return Lattice::zero(d);
  if (l.is_full_rank()) return Lattice::identity(d);
  const std::vector<Vec> normals = normal_vectors(l);
  std::vector<Vec> normal_cols(d, Vec(normals.size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < normals.size(); ++j) normal_cols[i][j] = normals[j][i];
  }
  return hnf(d, integer_kernel(normals.size(), normal_cols));
}

namespace {

void ordered_factorizations(const Integer& n, std::size_t parts, std::vector<Integer>& prefix,
                            std::vector<std::vector<Integer>>& out) {
  if (parts == 1) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (Integer p = 1; p <= n; ++p) {
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
    prefix.push_back(p);
    ordered_factorizations(n / p, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Lattice> enumerate_sublattices(std::size_t dim, const Integer& n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sublattice index must be positive");
  if (dim == 0) return {Lattice::zero(0)};
  std::vector<std::vector<Integer>> pivot_choices;
  std::vector<Integer> prefix;
  ordered_factorizations(n, dim, prefix, pivot_choices);

  std::vector<Lattice> out;
  for (const auto& pivots : pivot_choices) {
    // free entries: row i, column j > i, ranging over [0, pivots[i])
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t i = 0; i < j; ++i) slots.emplace_back(i, j);
    }
    std::vector<Vec> cols(dim, zero_vec(dim));
    for (std::size_t j = 0; j < dim; ++j) cols[j][j] = pivots[j];
    std::vector<Integer> counter(slots.size(), Integer(0));
    while (true) {
      for (std::size_t s = 0; s < slots.size(); ++s) cols[slots[s].second][slots[s].first] = counter[s];
      out.push_back(hnf(dim, cols));
      std::size_t s = 0;
      for (; s < slots.size(); ++s) {
        if (++counter[s] < pivots[slots[s].first]) break;
        counter[s] = 0;
      }
      if (s == slots.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> coset_representatives(const Lattice& sup, const Lattice& sub) {
  if (!sup.contains(sub) || sup.rank() != sub.rank()) {
    throw Error(ErrorCode::kInvalidArgument, "sub must be a finite-index subgroup of sup");
  }
  const std::size_t k = sup.rank();
  std::vector<Vec> coords;
  for (const auto& c : sub.basis()) coords.push_back(*sup.coordinates(c));
  QuotientGroup q(hnf(k, std::move(coords)));
  std::vector<Vec> reps;
  for (const auto& r : q.residues()) {
    Vec v = zero_vec(sup.dim());
    for (std::size_t j = 0; j < k; ++j) {
      if (r[j] != 0) v += r[j] * sup.basis()[j];
    }
    reps.push_back(std::move(v));
  }
  return reps;
}

QuotientGroup::QuotientGroup(Lattice lattice) : lattice_(std::move(lattice)) {
  if (!lattice_.is_full_rank()) {
    throw Error(ErrorCode::kRankDeficient, "quotient requires a full-rank lattice");
  }
  const std::size_t d = lattice_.dim();
  if (lattice_.index().value() > Integer(static_cast<unsigned long>(kMaxSize))) {
    throw Error(ErrorCode::kTooLarge, "quotient of index " + lattice_.index().value().get_str());
  }
  std::vector<std::size_t> radix(d);
  std::size_t total = 1;
  strides_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    radix[i] = lattice_.pivot(i).get_ui();
    strides_[i] = total;
    total *= radix[i];
  }
  residues_.reserve(total);
  Vec digits = zero_vec(d);
  for (std::size_t n = 0; n < total; ++n) {
    residues_.push_back(digits);
    for (std::size_t i = 0; i < d; ++i) {
      if (++digits[i] < static_cast<unsigned long>(radix[i])) break;
      digits[i] = 0;
    }
  }
}

std::size_t QuotientGroup::index_of_canonical(const Vec& residue) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < residue.size(); ++i) idx += residue[i].get_ui() * strides_[i];
  return idx;
}

std::size_t QuotientGroup::index_of(const Vec& v) const {
  return index_of_canonical(lattice_.reduce(v));
}

std::vector<std::size_t> QuotientGroup::translation(const Vec& t) const {
  std::vector<std::size_t> perm(size());
  for (std::size_t i = 0; i < size(); ++i) perm[i] = index_of(residues_[i] + t);
  return perm;
}

std::shared_ptr<const QuotientGroup> quotient(const Lattice& lattice) {
  static std::mutex mu;
  static std::map<Lattice, std::shared_ptr<const QuotientGroup>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(lattice);
    if (it != cache.end()) return it->second;
  }
  auto q = std::make_shared<const QuotientGroup>(lattice);
  std::lock_guard lock(mu);
  if (cache.size() > 4096) cache.clear();
  return cache.emplace(lattice, std::move(q)).first->second;
}

PeriodicSet::PeriodicSet(Lattice lattice, std::vector<Vec> members) : lattice_(std::move(lattice)) {
  if (!lattice_.is_full_rank()) {
    throw Error(ErrorCode::kRankDeficient, "a periodic set needs a full-rank lattice");
  }
  members_.reserve(members.size());
  for (const auto& m : members) members_.push_back(lattice_.reduce(m));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PeriodicSet PeriodicSet::whole_space(std::size_t dim) {
  return PeriodicSet(Lattice::identity(dim), {zero_vec(dim)});
}

bool PeriodicSet::contains(const Vec& x) const {
  return std::binary_search(members_.begin(), members_.end(), lattice_.reduce(x));
}

PeriodicSet PeriodicSet::refined(const Lattice& finer) const {
  if (!lattice_.contains(finer) || !finer.is_full_rank()) {
    throw Error(ErrorCode::kInvalidArgument, "refinement lattice must be a full-rank sublattice");
  }
  std::vector<Vec> out;
  for (const auto& r : quotient(finer)->residues()) {
    if (contains(r)) out.push_back(r);
  }
  return PeriodicSet(finer, std::move(out));
}

PeriodicSet PeriodicSet::translated(const Vec& t) const {
  std::vector<Vec> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m + t);
  return PeriodicSet(lattice_, std::move(out));
}

PeriodicSet PeriodicSet::canonical() const {
  Lattice stab = stabilizer(*this);
  return PeriodicSet(stab, members_);
}

std::vector<char> PeriodicSet::membership() const {
  auto q = quotient(lattice_);
  std::vector<char> in(q->size(), 0);
  for (const auto& m : members_) in[q->index_of_canonical(m)] = 1;
  return in;
}

Lattice stabilizer(const PeriodicSet& a) {
  const std::size_t d = a.dim();
  std::vector<Vec> gens = a.lattice().basis();
  if (!a.members().empty()) {
    // any stabilizing shift carries members()[0] onto some member
    const Vec& m0 = a.members().front();
    for (const auto& m : a.members()) {
      const Vec s = m - m0;
      if (is_zero(s)) continue;
      bool fixes = true;
      for (const auto& x : a.members()) {
        if (!a.contains(x + s)) {
          fixes = false;
          break;
        }
      }
      if (fixes) gens.push_back(s);
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) gens.push_back(unit_vec(d, i));
  }
  return hnf(d, std::move(gens));
}

bool same_set(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.dim() != b.dim()) return false;
  return a.canonical() == b.canonical();
}

}  // namespace tilekit
