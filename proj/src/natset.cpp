#include "ilconv/natset.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace ilconv::natset {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Sorted-vector set primitives for the cell-index bookkeeping.
std::vector<std::uint32_t> vec_union(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> vec_intersect(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> vec_difference(const std::vector<std::uint32_t>& a,
                                          const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool vec_contains(const std::vector<std::uint64_t>& v, std::uint64_t n) {
  return std::binary_search(v.begin(), v.end(), n);
}

} // namespace

std::uint32_t cell_of(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("naturals start at 1");
  return static_cast<std::uint32_t>(std::countr_zero(n)) + 1;
}

CellSelection::CellSelection(bool cofinite, std::vector<std::uint32_t> cells)
    : cofinite_(cofinite), cells_(sorted_unique(std::move(cells))) {
  for (std::uint32_t j : cells_)
    if (j == 0) throw std::invalid_argument("cell indices start at 1");
}

CellSelection CellSelection::none() { return CellSelection(false, {}); }
CellSelection CellSelection::every() { return CellSelection(true, {}); }
CellSelection CellSelection::of(std::vector<std::uint32_t> cells) {
  return CellSelection(false, std::move(cells));
}
CellSelection CellSelection::all_but(std::vector<std::uint32_t> cells) {
  return CellSelection(true, std::move(cells));
}

bool CellSelection::contains(std::uint32_t j) const {
  const bool listed = std::binary_search(cells_.begin(), cells_.end(), j);
  return cofinite_ ? !listed : listed;
}

CellSelection CellSelection::unite(const CellSelection& o) const {
  if (!cofinite_ && !o.cofinite_)
    return CellSelection(false, vec_union(cells_, o.cells_));
  if (cofinite_ && o.cofinite_)
    return CellSelection(true, vec_intersect(cells_, o.cells_));
  // cofinite | finite: the finite side fills in some of the holes
  const CellSelection& co = cofinite_ ? *this : o;
  const CellSelection& fi = cofinite_ ? o : *this;
  return CellSelection(true, vec_difference(co.cells_, fi.cells_));
}

CellSelection CellSelection::intersect(const CellSelection& o) const {
  return complement().unite(o.complement()).complement();
}

CellSelection CellSelection::complement() const {
  return CellSelection(!cofinite_, cells_);
}

Rational CellSelection::density() const {
  Rational sum = 0;
  for (std::uint32_t j : cells_) sum += Rational(BigInt(1), BigInt(1) << j);
  return cofinite_ ? Rational(1) - sum : sum;
}

SymbolicNatSet::SymbolicNatSet(CellSelection base,
                               std::vector<std::uint64_t> plus,
                               std::vector<std::uint64_t> minus)
    : base_(std::move(base)),
      plus_(sorted_unique(std::move(plus))),
      minus_(sorted_unique(std::move(minus))) {
  for (std::uint64_t n : plus_)
    if (base_.contains(cell_of(n)))
      throw std::logic_error("plus element already covered by base");
  for (std::uint64_t n : minus_)
    if (!base_.contains(cell_of(n)))
      throw std::logic_error("minus element not covered by base");
}

SymbolicNatSet SymbolicNatSet::empty() {
  return SymbolicNatSet(CellSelection::none(), {}, {});
}
SymbolicNatSet SymbolicNatSet::all() {
  return SymbolicNatSet(CellSelection::every(), {}, {});
}
SymbolicNatSet SymbolicNatSet::cell(std::uint32_t j) {
  return SymbolicNatSet(CellSelection::of({j}), {}, {});
}
SymbolicNatSet SymbolicNatSet::from_cells(CellSelection sel) {
  return SymbolicNatSet(std::move(sel), {}, {});
}
SymbolicNatSet SymbolicNatSet::finite(std::vector<std::uint64_t> elements) {
  for (std::uint64_t n : elements)
    if (n == 0) throw std::invalid_argument("naturals start at 1");
  return SymbolicNatSet(CellSelection::none(), std::move(elements), {});
}

bool SymbolicNatSet::contains(std::uint64_t n) const {
  if (base_.contains(cell_of(n))) return !vec_contains(minus_, n);
  return vec_contains(plus_, n);
}

// Shared core of the binary operations. The base selections already form a
// boolean algebra; membership of any n outside both correction sets agrees
// with its base membership on each side, so the result can only need
// corrections inside the union of the four correction sets. Those finitely
// many points are re-evaluated extensionally.
template <typename Op>
SymbolicNatSet SymbolicNatSet::combine(const SymbolicNatSet& a,
                                       const SymbolicNatSet& b,
                                       const CellSelection& base, Op op) {
  std::vector<std::uint64_t> touched;
  touched.reserve(a.plus_.size() + a.minus_.size() + b.plus_.size() +
                  b.minus_.size());
  for (const auto* v : {&a.plus_, &a.minus_, &b.plus_, &b.minus_})
    touched.insert(touched.end(), v->begin(), v->end());
  touched = sorted_unique(std::move(touched));

  std::vector<std::uint64_t> plus, minus;
  for (std::uint64_t n : touched) {
    const bool want = op(a.contains(n), b.contains(n));
    const bool have = base.contains(cell_of(n));
    if (want && !have) plus.push_back(n);
    if (!want && have) minus.push_back(n);
  }
  return SymbolicNatSet(base, std::move(plus), std::move(minus));
}

SymbolicNatSet SymbolicNatSet::unite(const SymbolicNatSet& o) const {
  return combine(*this, o, base_.unite(o.base_),
                 [](bool x, bool y) { return x || y; });
}

SymbolicNatSet SymbolicNatSet::intersect(const SymbolicNatSet& o) const {
  return combine(*this, o, base_.intersect(o.base_),
                 [](bool x, bool y) { return x && y; });
}

SymbolicNatSet SymbolicNatSet::symmetric_difference(
    const SymbolicNatSet& o) const {
  // a cell belongs to the xor's base iff it belongs to exactly one side
  const CellSelection base = base_.intersect(o.base_.complement())
                                 .unite(o.base_.intersect(base_.complement()));
  return combine(*this, o, base, [](bool x, bool y) { return x != y; });
}

SymbolicNatSet SymbolicNatSet::complement() const {
  // plus points (outside the base) become exclusions of the complemented
  // base, and vice versa; normalization is preserved as-is.
  return SymbolicNatSet(base_.complement(), minus_, plus_);
}

SymbolicNatSet SymbolicNatSet::with(std::uint64_t n) const {
  return unite(finite({n}));
}

SymbolicNatSet SymbolicNatSet::without(std::uint64_t n) const {
  return intersect(finite({n}).complement());
}

Rational SymbolicNatSet::density() const { return base_.density(); }

CellSelection SymbolicNatSet::cells_hit() const {
  std::vector<std::uint32_t> extra;
  extra.reserve(plus_.size());
  for (std::uint64_t n : plus_) extra.push_back(cell_of(n));
  return base_.unite(CellSelection::of(std::move(extra)));
}

std::vector<std::uint64_t> SymbolicNatSet::enumerate_prefix(
    std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

namespace {

std::string render_finite(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  os << "finite{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "}";
  return os.str();
}

std::string render_cells(const std::vector<std::uint32_t>& cells) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << "|";
    os << "D(" << cells[i] << ")";
  }
  return os.str();
}

} // namespace

std::string SymbolicNatSet::to_expr() const {
  std::string base;
  if (base_.cofinite()) {
    base = base_.listed().empty() ? "all"
                                  : "!(" + render_cells(base_.listed()) + ")";
  } else {
    base = base_.listed().empty() ? "empty" : render_cells(base_.listed());
  }
  if (plus_.empty() && minus_.empty()) return base;
  std::string out = base;
  if (!minus_.empty()) out = "(" + out + " & !" + render_finite(minus_) + ")";
  if (!plus_.empty()) {
    if (base_.empty())
      out = render_finite(plus_);
    else
      out = out + " | " + render_finite(plus_);
  }
  return out;
}

} // namespace ilconv::natset
