#include "ellhk/presentation.hpp"

#include <algorithm>
#include <cstring>

namespace ellhk {

namespace {

bool coprime_monomials(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] > 0 && b.exps[i] > 0) return false;
  return true;
}

}  // namespace

GradedQuotientPresentation::GradedQuotientPresentation(FieldPtr field, std::size_t num_vars,
                                                       std::vector<HomogeneousPoly> ideal_gens,
                                                       std::optional<int> expected_delta,
                                                       ReductionBackend backend)
    : field_(std::move(field)), num_vars_(num_vars), expected_delta_(expected_delta),
      backend_(backend) {
  check(num_vars_ >= 1 && num_vars_ <= 8, errc::invalid_input, "num_vars outside [1,8]");
  check(!expected_delta_ || *expected_delta_ >= 1, errc::invalid_input, "expected_delta must be >= 1");
  for (auto& g : ideal_gens) {
    if (g.is_zero()) continue;
    check(g.field().same(*field_), errc::ctx_mismatch, "ideal generator over a different field");
    check(g.num_vars() == num_vars_, errc::invalid_input, "ideal generator in a different ring");
    check(g.degree() >= 1, errc::invalid_input, "ideal generators must have degree >= 1");
    gens_.push_back(g.monic());
  }
  check(gens_.size() <= 127, errc::invalid_input, "too many ideal generators");
  division_certified_ = true;
  for (std::size_t i = 0; i < gens_.size() && division_certified_; ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!coprime_monomials(gens_[i].leading_monomial(), gens_[j].leading_monomial())) {
        division_certified_ = false;
        break;
      }
}

std::shared_ptr<const DegreeData> GradedQuotientPresentation::degree_data(int m) const {
  check(m >= 0, errc::invalid_input, "degree_data for negative degree");
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  auto dd = build_degree(m);
  cache_.emplace(m, dd);
  return dd;
}

std::shared_ptr<const DegreeData> GradedQuotientPresentation::build_degree(int m) const {
  auto dd = std::make_shared<DegreeData>();
  dd->m = m;
  dd->monomials = monomials_of_degree(num_vars_, m);
  dd->position.reserve(dd->monomials.size() * 2);
  for (std::size_t i = 0; i < dd->monomials.size(); ++i)
    dd->position.emplace(dd->monomials[i].pack(), std::int32_t(i));

  bool use_division = division_certified_ && backend_ != ReductionBackend::echelon;
  dd->division_mode = use_division;
  if (use_division)
    build_division(*dd);
  else
    build_echelon(*dd);

  dd->std_positions.clear();
  dd->pos_to_std.assign(dd->monomials.size(), -1);
  for (std::size_t pos = 0; pos < dd->monomials.size(); ++pos) {
    bool is_std = use_division ? dd->pos_gen[pos] < 0 : dd->pos_pivot_row[pos] < 0;
    if (is_std) {
      dd->pos_to_std[pos] = std::int32_t(dd->std_positions.size());
      dd->std_positions.push_back(std::int32_t(pos));
    }
  }
  if (!use_division) {
    // compress pivot rows to tails over the standard basis
    std::vector<std::vector<std::uint32_t>> tails(dd->pivot_tails.size());
    for (std::size_t pos = 0; pos < dd->monomials.size(); ++pos) {
      std::int32_t row = dd->pos_pivot_row[pos];
      if (row < 0) continue;
      auto& tail = tails[std::size_t(row)];
      tail.resize(dd->std_positions.size());
      const auto& full = dd->pivot_tails[std::size_t(row)];
      for (std::size_t s = 0; s < dd->std_positions.size(); ++s)
        tail[s] = full[std::size_t(dd->std_positions[s])];
    }
    dd->pivot_tails = std::move(tails);
  }

  if (expected_delta_) {
    std::int64_t expected = m == 0 ? 1 : std::int64_t(*expected_delta_) * m;
    check(std::int64_t(dd->std_positions.size()) == expected, errc::hilbert_mismatch,
          "dim R_" + std::to_string(m) + " = " + std::to_string(dd->std_positions.size()) +
              ", expected " + std::to_string(expected));
  }
  return dd;
}

void GradedQuotientPresentation::build_division(DegreeData& dd) const {
  dd.pos_gen.assign(dd.monomials.size(), -1);
  for (std::size_t pos = 0; pos < dd.monomials.size(); ++pos) {
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (gens_[g].leading_monomial().divides(dd.monomials[pos])) {
        dd.pos_gen[pos] = std::int8_t(g);
        break;
      }
    }
  }
}

void GradedQuotientPresentation::build_echelon(DegreeData& dd) const {
  const auto& ctx = *field_;
  std::size_t cols = dd.monomials.size();
  dd.pos_pivot_row.assign(cols, -1);
  dd.pivot_tails.clear();

  auto eliminate = [&](std::vector<std::uint32_t>& row, std::size_t from) -> std::size_t {
    // returns first nonzero position without a pivot, or cols if row dies
    for (std::size_t pos = from; pos < cols; ++pos) {
      std::uint32_t v = row[pos];
      if (v == 0) continue;
      std::int32_t r = dd.pos_pivot_row[pos];
      if (r < 0) return pos;
      const auto& pivot = dd.pivot_tails[std::size_t(r)];
      std::uint32_t factor = ctx.neg(v);
      for (std::size_t j = pos; j < cols; ++j)
        if (pivot[j] != 0) row[j] = ctx.add(row[j], ctx.mul(factor, pivot[j]));
    }
    return cols;
  };

  std::vector<std::uint32_t> row(cols);
  for (const auto& gen : gens_) {
    int md = dd.m - gen.degree();
    if (md < 0) continue;
    for (const auto& mu : monomials_of_degree(num_vars_, md)) {
      std::memset(row.data(), 0, cols * sizeof(std::uint32_t));
      std::size_t first = cols;
      for (const auto& [mono, coeff] : gen.terms()) {
        auto it = dd.position.find(mono.times(mu).pack());
        std::size_t pos = std::size_t(it->second);
        row[pos] = ctx.add(row[pos], coeff);
        first = std::min(first, pos);
      }
      std::size_t pivot = eliminate(row, first);
      if (pivot == cols) continue;
      std::uint32_t lead_inv = ctx.inv(row[pivot]);
      for (std::size_t j = pivot; j < cols; ++j)
        if (row[j] != 0) row[j] = ctx.mul(row[j], lead_inv);
      dd.pos_pivot_row[pivot] = std::int32_t(dd.pivot_tails.size());
      dd.pivot_tails.push_back(row);
    }
  }

  // back-substitution in descending pivot order gives the (canonical) RREF
  std::vector<std::size_t> pivot_positions;
  for (std::size_t pos = 0; pos < cols; ++pos)
    if (dd.pos_pivot_row[pos] >= 0) pivot_positions.push_back(pos);
  for (std::size_t i = pivot_positions.size(); i-- > 0;) {
    std::size_t pos = pivot_positions[i];
    auto& row_i = dd.pivot_tails[std::size_t(dd.pos_pivot_row[pos])];
    for (std::size_t j = pos + 1; j < cols; ++j) {
      std::uint32_t v = row_i[j];
      if (v == 0) continue;
      std::int32_t r = dd.pos_pivot_row[j];
      if (r < 0) continue;
      const auto& later = dd.pivot_tails[std::size_t(r)];
      std::uint32_t factor = ctx.neg(v);
      for (std::size_t l = j; l < cols; ++l)
        if (later[l] != 0) row_i[l] = ctx.add(row_i[l], ctx.mul(factor, later[l]));
    }
  }
}

int GradedQuotientPresentation::graded_dim(int m) const {
  if (m < 0) return 0;
  return degree_data(m)->dim();
}

std::vector<Monomial> GradedQuotientPresentation::graded_piece(int m) const {
  auto dd = degree_data(m);
  std::vector<Monomial> out;
  out.reserve(dd->std_positions.size());
  for (auto pos : dd->std_positions) out.push_back(dd->monomials[std::size_t(pos)]);
  return out;
}

void GradedQuotientPresentation::reduce_terms(const DegreeData& dd,
                                              const std::vector<HomogeneousPoly::Term>& terms,
                                              std::uint32_t* out,
                                              std::vector<std::uint32_t>& scratch) const {
  const auto& ctx = *field_;
  std::size_t cols = dd.monomials.size();
  scratch.assign(cols, 0);
  std::size_t first = cols;
  for (const auto& [mono, coeff] : terms) {
    auto it = dd.position.find(mono.pack());
    check(it != dd.position.end(), errc::invalid_input, "term of wrong degree in reduce_terms");
    std::size_t pos = std::size_t(it->second);
    scratch[pos] = ctx.add(scratch[pos], coeff);
    first = std::min(first, pos);
  }
  if (dd.division_mode) {
    for (std::size_t pos = first; pos < cols; ++pos) {
      std::uint32_t v = scratch[pos];
      if (v == 0) continue;
      std::int32_t g = dd.pos_gen[pos];
      if (g < 0) {
        out[std::size_t(dd.pos_to_std[pos])] = ctx.add(out[std::size_t(dd.pos_to_std[pos])], v);
        continue;
      }
      // subtract v * (gen * cofactor); generators are monic so the leading
      // term cancels exactly and every other product lands strictly later
      const auto& gen = gens_[std::size_t(g)];
      Monomial cofactor = dd.monomials[pos].quotient_by(gen.leading_monomial());
      auto term = gen.terms().begin();
      for (++term; term != gen.terms().end(); ++term) {
        std::size_t tpos = std::size_t(dd.position.find(term->first.times(cofactor).pack())->second);
        scratch[tpos] = ctx.sub(scratch[tpos], ctx.mul(v, term->second));
      }
    }
  } else {
    for (std::size_t pos = first; pos < cols; ++pos) {
      std::uint32_t v = scratch[pos];
      if (v == 0) continue;
      std::int32_t row = dd.pos_pivot_row[pos];
      if (row < 0) {
        out[std::size_t(dd.pos_to_std[pos])] = ctx.add(out[std::size_t(dd.pos_to_std[pos])], v);
        continue;
      }
      const auto& tail = dd.pivot_tails[std::size_t(row)];
      std::uint32_t factor = ctx.neg(v);
      for (std::size_t s = 0; s < tail.size(); ++s)
        if (tail[s] != 0) out[s] = ctx.add(out[s], ctx.mul(factor, tail[s]));
    }
  }
}

std::vector<std::uint32_t> GradedQuotientPresentation::normal_form(const HomogeneousPoly& f) const {
  check(f.field().same(*field_), errc::ctx_mismatch, "normal_form over a different field");
  check(f.num_vars() == num_vars_, errc::invalid_input, "normal_form in a different ring");
  auto dd = degree_data(f.degree());
  std::vector<std::uint32_t> out(std::size_t(dd->dim()), 0);
  std::vector<std::uint32_t> scratch;
  reduce_terms(*dd, f.terms(), out.data(), scratch);
  return out;
}

namespace {

// streaming row-echelon rank over the field
class RankAccumulator {
public:
  RankAccumulator(const FieldCtx& ctx, std::size_t cols) : ctx_(ctx), cols_(cols), pivot_of_col_(cols, -1) {}

  // consumes row (clobbered); returns true if it added a new pivot
  bool offer(std::vector<std::uint32_t>& row) {
    for (std::size_t pos = 0; pos < cols_; ++pos) {
      std::uint32_t v = row[pos];
      if (v == 0) continue;
      std::int32_t r = pivot_of_col_[pos];
      if (r < 0) {
        std::uint32_t inv = ctx_.inv(v);
        for (std::size_t j = pos; j < cols_; ++j)
          if (row[j] != 0) row[j] = ctx_.mul(row[j], inv);
        pivot_of_col_[pos] = std::int32_t(rows_.size());
        rows_.push_back(row);
        return true;
      }
      const auto& pivot = rows_[std::size_t(r)];
      std::uint32_t factor = ctx_.neg(v);
      for (std::size_t j = pos; j < cols_; ++j)
        if (pivot[j] != 0) row[j] = ctx_.add(row[j], ctx_.mul(factor, pivot[j]));
    }
    return false;
  }

  std::int64_t rank() const { return std::int64_t(rows_.size()); }

private:
  const FieldCtx& ctx_;
  std::size_t cols_;
  std::vector<std::int32_t> pivot_of_col_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

}  // namespace

MapDims map_dims(const GradedMap& map) {
  const auto& pres = *map.pres;
  const auto& ctx = pres.field();
  auto target = pres.degree_data(map.target_degree);
  std::size_t cols = std::size_t(target->dim());
  RankAccumulator acc(ctx, cols);
  MapDims dims;
  std::vector<std::uint32_t> scratch;
  std::vector<std::uint32_t> image(cols);
  std::vector<HomogeneousPoly::Term> product;
  for (const auto& f : map.multipliers) {
    check(f.field().same(ctx), errc::ctx_mismatch, "multiplier over a different field");
    check(!f.is_zero(), errc::invalid_input, "zero multiplier in graded map");
    int source_degree = map.target_degree - f.degree();
    if (source_degree < 0) continue;
    auto source = pres.degree_data(source_degree);
    dims.source_dim += source->dim();
    for (auto pos : source->std_positions) {
      const Monomial& mu = source->monomials[std::size_t(pos)];
      product.clear();
      for (const auto& [mono, coeff] : f.terms()) product.emplace_back(mono.times(mu), coeff);
      std::fill(image.begin(), image.end(), 0);
      pres.reduce_terms(*target, product, image.data(), scratch);
      acc.offer(image);
    }
  }
  dims.rank = acc.rank();
  dims.kernel_dim = dims.source_dim - dims.rank;
  return dims;
}

std::int64_t image_rank(const GradedMap& map) { return map_dims(map).rank; }
std::int64_t kernel_dim(const GradedMap& map) { return map_dims(map).kernel_dim; }

namespace {

// rank of the degree-m slice of the ideal spanned by gens (no quotient)
std::int64_t ideal_slice_rank(const FieldCtx& ctx, std::size_t num_vars,
                              const std::vector<HomogeneousPoly>& gens, int m,
                              std::int64_t early_exit_rank) {
  auto monos = monomials_of_degree(num_vars, m);
  std::unordered_map<std::uint64_t, std::int32_t> position;
  position.reserve(monos.size() * 2);
  for (std::size_t i = 0; i < monos.size(); ++i) position.emplace(monos[i].pack(), std::int32_t(i));
  RankAccumulator acc(ctx, monos.size());
  std::vector<std::uint32_t> row(monos.size());
  for (const auto& g : gens) {
    int md = m - g.degree();
    if (md < 0) continue;
    for (const auto& mu : monomials_of_degree(num_vars, md)) {
      std::fill(row.begin(), row.end(), 0);
      for (const auto& [mono, coeff] : g.terms()) {
        std::size_t pos = std::size_t(position.find(mono.times(mu).pack())->second);
        row[pos] = ctx.add(row[pos], coeff);
      }
      acc.offer(row);
      if (acc.rank() >= early_exit_rank) return acc.rank();
    }
  }
  return acc.rank();
}

std::vector<HomogeneousPoly> jacobian_minors(const std::vector<HomogeneousPoly>& gens,
                                             std::size_t minor_size) {
  std::size_t s = gens.size();
  std::size_t n = gens.front().num_vars();
  FieldPtr field = gens.front().field_ptr();
  std::vector<std::vector<HomogeneousPoly>> jac;
  for (const auto& g : gens) {
    std::vector<HomogeneousPoly> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(derivative(g, v));
    jac.push_back(std::move(row));
  }
  std::vector<std::size_t> row_sel(minor_size), col_sel(minor_size);
  std::vector<HomogeneousPoly> minors;

  auto det = [&](auto&& self, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) -> HomogeneousPoly {
    if (rows.size() == 1) return jac[rows[0]][cols[0]];
    HomogeneousPoly acc(field, n, 0);
    bool started = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
      std::vector<std::size_t> sub_cols;
      for (std::size_t l = 0; l < cols.size(); ++l)
        if (l != j) sub_cols.push_back(cols[l]);
      HomogeneousPoly term = multiply(jac[rows[0]][cols[j]], self(self, sub_rows, sub_cols));
      if (j % 2 == 1) term = term.scaled(field->neg(1));
      if (term.is_zero()) continue;
      acc = started ? acc + term : term;
      started = true;
    }
    return started ? acc : HomogeneousPoly(field, n, 0);
  };

  auto choose = [&](auto&& self, std::vector<std::size_t>& sel, std::size_t from, std::size_t limit,
                    std::size_t depth, auto&& emit) -> void {
    if (depth == sel.size()) {
      emit(sel);
      return;
    }
    for (std::size_t i = from; i < limit; ++i) {
      sel[depth] = i;
      self(self, sel, i + 1, limit, depth + 1, emit);
    }
  };

  choose(choose, row_sel, 0, s, 0, [&](const std::vector<std::size_t>& rows) {
    choose(choose, col_sel, 0, n, 0, [&](const std::vector<std::size_t>& cols) {
      HomogeneousPoly d = det(det, rows, cols);
      if (!d.is_zero()) minors.push_back(d);
    });
  });
  return minors;
}

}  // namespace

bool is_projectively_smooth(const std::vector<HomogeneousPoly>& gens) {
  check(!gens.empty(), errc::invalid_input, "no generators");
  std::size_t n = gens.front().num_vars();
  check(n >= 3, errc::invalid_input, "smoothness test needs at least 3 variables");
  std::size_t codim = n - 2;
  check(gens.size() >= codim, errc::invalid_input,
        "too few generators to cut out a curve");
  const FieldCtx& ctx = gens.front().field();

  std::vector<HomogeneousPoly> sing = gens;
  for (auto& m : jacobian_minors(gens, codim)) sing.push_back(std::move(m));

  // cheap singular witness over the base field first
  if (ctx.order() <= 16) {
    std::vector<std::uint32_t> point(n, 0);
    auto scan = [&](auto&& self, std::size_t var, bool leading_set) -> bool {
      if (var == n) {
        if (!leading_set) return false;
        for (const auto& g : sing)
          if (evaluate(g, point) != 0) return false;
        return true;  // common zero of everything: singular point
      }
      if (!leading_set) {
        point[var] = 1;  // projective normalization: first nonzero coordinate = 1
        if (self(self, var + 1, true)) return true;
        point[var] = 0;
        return self(self, var + 1, false);
      }
      for (std::uint64_t v = 0; v < ctx.order(); ++v) {
        point[var] = std::uint32_t(v);
        if (self(self, var + 1, true)) return true;
      }
      point[var] = 0;
      return false;
    };
    if (scan(scan, 0, false)) return false;
  }

  std::int64_t degree_sum = 0;
  int max_degree = 0;
  for (const auto& g : sing) {
    degree_sum += g.degree();
    max_degree = std::max(max_degree, g.degree());
  }
  int m_bound = int(degree_sum) + int(n);
  // Macaulay: N+1 forms of degree d with empty zero locus span everything
  // from degree (N+1)(d-1)+1 on; generic combinations reduce to that case.
  int decisive = int(n) * (max_degree - 1) + 1;
  int sweep_to = std::min(m_bound, decisive);

  for (int m = 1; m <= sweep_to; ++m) {
    std::int64_t full = monomial_count(n, m);
    if (ideal_slice_rank(ctx, n, sing, m, full) == full) return true;
  }
  if (m_bound >= decisive) return false;
  fail(errc::bound_exceeded, "smoothness sweep inconclusive by degree " + std::to_string(m_bound));
}

}  // namespace ellhk
