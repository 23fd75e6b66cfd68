#pragma once

// Koszulity checks: Golod-Shafarevich comparison, the kernel of the Koszul
// complex, graded Tor tables and a bounded verdict.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "preproj/algebra.hpp"
#include "preproj/resolution.hpp"

namespace preproj {

/// Graded Tor_i^A(R,R) from a degreewise minimal free resolution.
inline TorTable tor_dimensions(const Presentation& p, std::size_t i_max, std::size_t d_max,
                               const ResolutionLimits& limits = {}) {
  return visit_field(p.field(), [&](const auto& field) { return minimal_resolution(p, field, i_max, d_max, limits); });
}

/// h_A * sum_i (-1)^i h_{Tor_i} - 1. It vanishes through degree
/// min(i_max, d_max) for any correct table, since F_i lives in degrees >= i.
inline MatrixSeries euler_poincare_defect(const TorTable& tor, const MatrixSeries& h) {
  const std::size_t deg = std::min({tor.i_max, tor.d_max, h.degree()});
  const std::size_t n = h.size();
  MatrixSeries alt(n, deg);
  for (std::size_t i = 0; i <= tor.i_max; ++i) {
    auto s = tor.series(i).truncated(deg);
    alt = (i % 2 == 0) ? alt + s : alt - s;
  }
  return mul(h.truncated(deg), alt) - MatrixSeries::identity(n, deg);
}

struct GolodShafarevichReport {
  MatrixSeries hilbert;
  MatrixSeries closed;
  bool positivity = false;                 // closed form >= 0 through N
  std::optional<Witness> negative;         // first negative entry of the closed form
  bool inequality = false;                 // h_A >= closed form (checked only under positivity)
  std::optional<Witness> difference;       // first entry where h_A differs from the closed form
  bool equality = false;
  bool operator==(const GolodShafarevichReport&) const = default;
};

inline GolodShafarevichReport golod_shafarevich_check(const Presentation& p, std::size_t N) {
  GolodShafarevichReport r;
  r.hilbert = hilbert_series(p, N);
  r.closed = closed_form(p.generator_matrix(), relation_dimension_matrix(p), N);
  r.negative = first_negative(r.closed);
  r.positivity = !r.negative;
  const auto cmp = termwise_compare(r.hilbert, r.closed);
  r.difference = cmp.witness;
  r.equality = cmp.outcome == Comparison::Outcome::Equal;
  r.inequality = r.positivity && cmp.first_geq();
  return r;
}

namespace detail {

// Per-block rank of the image rows in A⊗V. Each block rank is at most
// dim(A⊗V) - dim A there, since the next map is onto A and kills the image.
// Over Q the rank modulo a large prime is a lower bound, so when it meets
// that ceiling everywhere the exact elimination is skipped.
template <ExactField F, class FM>
std::vector<std::int64_t> image_ranks(const F& field, const FM& fm, const std::vector<typename FM::Vec>& imgs,
                                      const typename FM::Basis& self, const typename FM::Basis& lower,
                                      const IntMatrix& dim_a) {
  const auto exact = [&](const auto& fld, const auto& rows) {
    RowEchelon<std::decay_t<decltype(fld)>> ech(fld, lower.size());
    std::vector<std::int64_t> r(fm.block_count(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (ech.insert(rows[j])) ++r[self.block[j]];
    return r;
  };
  if constexpr (std::is_same_v<F, RationalField>) {
    const std::size_t n = dim_a.size();
    auto ceiling = fm.block_sizes(lower);
    for (std::size_t b = 0; b < ceiling.size(); ++b) ceiling[b] -= dim_a(b / n, b % n);
    const PrimeField fp(2147483647);
    std::vector<SparseVec<typename PrimeField::value_type>> reduced;
    reduced.reserve(imgs.size());
    bool ok = true;
    try {
      for (const auto& row : imgs) reduced.push_back(to_field(fp, row));
    } catch (const InputError&) {
      ok = false;  // a denominator vanishes mod p
    }
    if (ok && exact(fp, reduced) == ceiling) return ceiling;
  }
  return exact(field, imgs);
}

template <ExactField F>
MatrixSeries explicit_koszul_kernel(const Presentation& p, const F& field, std::size_t N) {
  using FM = FreeModules<F>;
  using Gen = typename FM::Gen;
  GradedQuotient<F> a(p, field);
  a.extend_to(N);
  const FM fm(a);
  const std::size_t n = p.vertex_count();
  MatrixSeries k(n, N);
  if (N < 2) return k;

  const auto level0 = fm.vertex_generators();
  const auto level1 = fm.arrow_generators(fm.basis(level0, 1));
  // Independent relations as elements of (V ⊗ A)[2].
  const auto v2 = fm.basis(level1, 2);
  std::vector<Gen> level2;
  RowEchelon<F> pick(field, v2.size());
  for (const auto& r : p.relations()) {
    typename FM::Vec row;
    for (const auto& t : r.terms) {
      auto c = field.from_rational(t.coeff);
      const auto w = a.generator_word(static_cast<std::uint32_t>(t.outer));
      row.emplace_back(v2.offset[t.inner] + a.layer(1).rank_in_start[w], c);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (pick.insert(row))
      level2.push_back({2, static_cast<std::uint32_t>(p.relation_start(r)), static_cast<std::uint32_t>(p.relation_end(r)),
                        std::move(row)});
  }

  typename FM::Basis prev_self, prev_lower = fm.basis(level1, 1);
  std::vector<typename FM::Vec> prev_images;
  for (std::size_t d = 2; d <= N; ++d) {
    const auto self = fm.basis(level2, d);
    const auto lower = fm.basis(level1, d);
    auto imgs = fm.images(level2, level1, d, self, prev_self, prev_images, prev_lower, lower);
    auto dims = fm.block_sizes(self);
    const auto rank = image_ranks(field, fm, imgs, self, lower, a.dimension(d));
    for (std::size_t b = 0; b < dims.size(); ++b) dims[b] -= rank[b];
    k[d] = fm.to_matrix(dims);
    prev_self = self;
    prev_lower = lower;
    prev_images = std::move(imgs);
  }
  return k;
}

}  // namespace detail

/// Graded dimensions of K = ker(A ⊗ E -> A ⊗ V), i.e. the coefficients of
/// h_A (1 - Ct + Dt^2) - 1. Both routes are computed and must agree.
inline MatrixSeries koszul_complex_kernel(const Presentation& p, std::size_t N) {
  const std::size_t n = p.vertex_count();
  const auto h = hilbert_series(p, N);
  const auto poly = MatrixSeries::polynomial(
      {IntMatrix::identity(n), -p.generator_matrix(), relation_dimension_matrix(p)}, N);
  const auto from_series = mul(h, poly) - MatrixSeries::identity(n, N);
  const auto direct =
      visit_field(p.field(), [&](const auto& field) { return detail::explicit_koszul_kernel(p, field, N); });
  if (from_series != direct) throw std::logic_error("koszul_complex_kernel: series and explicit kernel disagree");
  if (first_negative(from_series)) throw std::logic_error("koszul_complex_kernel: negative kernel dimension");
  return from_series;
}

struct TorWitness {
  std::size_t i = 0;
  std::size_t d = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t value = 0;
  bool operator==(const TorWitness&) const = default;
};

struct KoszulVerdict {
  enum class Method { HilbertEquality, TorConcentration, Both };
  Method method = Method::Both;
  std::size_t N = 0;
  std::size_t i_max = 0;
  std::size_t d_max = 0;
  bool series_equal = false;
  std::optional<Witness> series_witness;
  bool tor_concentrated = false;
  std::vector<TorWitness> tor_witnesses;  // nonzero Tor_i[d] with d != i
  bool partial = false;

  bool koszul() const { return series_equal && tor_concentrated && !partial; }
  bool operator==(const KoszulVerdict&) const = default;

  std::string summary() const {
    std::ostringstream os;
    if (koszul()) {
      os << "Koszul up to (" << i_max << "," << d_max << ")";
      return os.str();
    }
    if (!tor_witnesses.empty()) {
      const auto& w = tor_witnesses.front();
      os << "not Koszul: Tor_" << w.i << " nonzero in degree " << w.d << " entry (" << w.row << "," << w.col << ")";
    } else if (partial) {
      os << "inconclusive: resolution stopped before degree " << d_max;
    } else if (series_witness) {
      // Tor is concentrated within the bounds, so only the series criterion failed.
      os << "Koszulity not established: series mismatch at degree " << series_witness->degree << " entry ("
         << series_witness->row << "," << series_witness->col << ")";
    }
    return os.str();
  }
};

inline KoszulVerdict koszulity_verdict(const Presentation& p, std::size_t N, std::size_t i_max, std::size_t d_max,
                                       const ResolutionLimits& limits = {}) {
  KoszulVerdict v;
  v.N = N;
  v.i_max = i_max;
  v.d_max = d_max;
  const auto gs = golod_shafarevich_check(p, N);
  v.series_equal = gs.equality;
  if (!gs.equality) v.series_witness = gs.difference;
  const auto tor = tor_dimensions(p, i_max, d_max, limits);
  v.partial = tor.partial();
  for (std::size_t i = 0; i <= i_max; ++i)
    for (std::size_t d = 0; d <= d_max; ++d) {
      if (d == i) continue;
      const auto& m = tor.at(i, d);
      for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c)
          if (m(r, c) != 0) v.tor_witnesses.push_back({i, d, r, c, m(r, c)});
    }
  v.tor_concentrated = v.tor_witnesses.empty();
  return v;
}

// ---- text and JSON forms ----

/// One line per (i, d): i, d, then the matrix row-major.
inline void write_tsv(std::ostream& os, const TorTable& t) {
  for (std::size_t i = 0; i <= t.i_max; ++i)
    for (std::size_t d = 0; d <= t.d_max; ++d) {
      os << i << '\t' << d;
      write_matrix_tsv(os, t.at(i, d));
      os << '\n';
    }
}

inline nlohmann::json to_json(const TorTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i <= t.i_max; ++i)
    for (std::size_t d = 0; d <= t.d_max; ++d) entries.push_back({{"i", i}, {"d", d}, {"matrix", matrix_to_json(t.at(i, d))}});
  nlohmann::json j{{"i_max", t.i_max}, {"d_max", t.d_max}, {"partial", t.partial()}, {"entries", entries}};
  j["complete_through"] = t.complete_through ? nlohmann::json(*t.complete_through) : nlohmann::json(nullptr);
  return j;
}

inline TorTable tor_table_from_json(const nlohmann::json& j) {
  TorTable t;
  t.i_max = j.at("i_max").get<std::size_t>();
  t.d_max = j.at("d_max").get<std::size_t>();
  if (!j.at("complete_through").is_null()) t.complete_through = j.at("complete_through").get<std::size_t>();
  t.dims.assign(t.i_max + 1, std::vector<IntMatrix>(t.d_max + 1));
  for (const auto& e : j.at("entries")) t.dims.at(e.at("i").get<std::size_t>()).at(e.at("d").get<std::size_t>()) = matrix_from_json(e.at("matrix"));
  return t;
}

namespace detail {
inline nlohmann::json optional_witness(const std::optional<Witness>& w) { return w ? to_json(*w) : nlohmann::json(nullptr); }
inline std::optional<Witness> optional_witness_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return witness_from_json(j);
}
}  // namespace detail

inline nlohmann::json to_json(const GolodShafarevichReport& r) {
  return {{"positivity", r.positivity},
          {"negative", detail::optional_witness(r.negative)},
          {"inequality", r.inequality},
          {"equality", r.equality},
          {"difference", detail::optional_witness(r.difference)},
          {"hilbert", to_json(r.hilbert)},
          {"closed_form", to_json(r.closed)}};
}

inline GolodShafarevichReport gs_report_from_json(const nlohmann::json& j) {
  GolodShafarevichReport r;
  r.positivity = j.at("positivity").get<bool>();
  r.negative = detail::optional_witness_from(j.at("negative"));
  r.inequality = j.at("inequality").get<bool>();
  r.equality = j.at("equality").get<bool>();
  r.difference = detail::optional_witness_from(j.at("difference"));
  r.hilbert = series_from_json(j.at("hilbert"));
  r.closed = series_from_json(j.at("closed_form"));
  return r;
}

inline std::string to_string(KoszulVerdict::Method m) {
  switch (m) {
    case KoszulVerdict::Method::HilbertEquality: return "hilbert-equality";
    case KoszulVerdict::Method::TorConcentration: return "tor-concentration";
    case KoszulVerdict::Method::Both: return "both";
  }
  return "?";
}

inline nlohmann::json to_json(const KoszulVerdict& v) {
  nlohmann::json tw = nlohmann::json::array();
  for (const auto& w : v.tor_witnesses)
    tw.push_back({{"i", w.i}, {"d", w.d}, {"row", w.row}, {"col", w.col}, {"value", w.value}});
  return {{"method", to_string(v.method)},
          {"N", v.N},
          {"i_max", v.i_max},
          {"d_max", v.d_max},
          {"koszul", v.koszul()},
          {"summary", v.summary()},
          {"series_equal", v.series_equal},
          {"series_witness", detail::optional_witness(v.series_witness)},
          {"tor_concentrated", v.tor_concentrated},
          {"tor_witnesses", tw},
          {"partial", v.partial}};
}

inline KoszulVerdict koszul_verdict_from_json(const nlohmann::json& j) {
  KoszulVerdict v;
  const auto m = j.at("method").get<std::string>();
  if (m == "hilbert-equality") v.method = KoszulVerdict::Method::HilbertEquality;
  else if (m == "tor-concentration") v.method = KoszulVerdict::Method::TorConcentration;
  else if (m == "both") v.method = KoszulVerdict::Method::Both;
  else throw InputError("unknown verdict method '" + m + "'");
  v.N = j.at("N").get<std::size_t>();
  v.i_max = j.at("i_max").get<std::size_t>();
  v.d_max = j.at("d_max").get<std::size_t>();
  v.series_equal = j.at("series_equal").get<bool>();
  v.series_witness = detail::optional_witness_from(j.at("series_witness"));
  v.tor_concentrated = j.at("tor_concentrated").get<bool>();
  for (const auto& w : j.at("tor_witnesses"))
    v.tor_witnesses.push_back({w.at("i").get<std::size_t>(), w.at("d").get<std::size_t>(), w.at("row").get<std::size_t>(),
                               w.at("col").get<std::size_t>(), w.at("value").get<std::int64_t>()});
  v.partial = j.at("partial").get<bool>();
  return v;
}

}  // namespace preproj
