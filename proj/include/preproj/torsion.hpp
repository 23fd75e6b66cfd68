#pragma once

// Integer structure of preprojective algebras: Smith forms of the degreewise
// relation-span matrices over Z. Any elementary divisor other than 0 or 1
// is torsion in the corresponding graded piece.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "preproj/algebra.hpp"
#include "preproj/smith.hpp"

namespace preproj {

struct SmithBlock {
  std::size_t degree = 0;
  std::size_t end = 0;
  std::size_t start = 0;
  std::size_t paths = 0;
  std::size_t rows = 0;
  std::map<BigInt, std::size_t> divisors;  // elementary divisor -> multiplicity
  bool partial = false;                    // too large for a full Smith form
  bool operator==(const SmithBlock&) const = default;
};

struct TorsionWitness {
  std::size_t degree = 0;
  std::size_t end = 0;
  std::size_t start = 0;
  BigInt divisor;  // for partial blocks: a prime dividing some divisor
  bool operator==(const TorsionWitness&) const = default;
};

struct SmithReport {
  std::size_t N = 0;
  std::vector<SmithBlock> blocks;
  std::vector<TorsionWitness> witnesses;
  bool torsion_found = false;
  bool partial = false;
  bool operator==(const SmithReport&) const = default;

  std::string summary() const {
    std::ostringstream os;
    if (!torsion_found) {
      os << "no torsion up to degree " << N;
      if (partial) os << " (partial: some blocks checked by rank comparison only)";
    } else {
      const auto& w = witnesses.front();
      os << "torsion found: divisor " << w.divisor.get_str() << " in degree " << w.degree << " block (" << w.end << ","
         << w.start << ")";
    }
    return os.str();
  }
};

struct TorsionOptions {
  /// Blocks with more rows or columns than this skip the Smith form.
  std::size_t max_block = 20000;
  /// Primes used for the GF(p) cross-check and the rank-comparison fallback.
  std::vector<std::uint64_t> primes{2, 3, 5};
};

namespace detail {

inline void require_unit_gamma(const Quiver& q) {
  for (const auto& [key, value] : q.gamma())
    if (value != 1 && value != -1)
      throw InputError("torsion analysis needs gamma values +-1; '" + key + "' is " + value.get_str());
}

inline std::size_t rank_over(const SpanBlock& b, const FieldSpec& f) {
  return visit_field(f, [&](const auto& field) -> std::size_t {
    RowEchelon ech(field, b.paths.size());
    for (const auto& row : b.rows) ech.insert(to_field(field, row));
    return ech.rank();
  });
}

// p over GF(prime), dropping relations that vanish there.
inline Presentation reduce_mod(const Presentation& p, std::uint64_t prime) {
  std::vector<Relation> kept;
  for (const auto& r : p.relations())
    if (std::any_of(r.terms.begin(), r.terms.end(), [&](const auto& t) { return t.coeff.get_num() % prime != 0; }))
      kept.push_back(r);
  return Presentation(p.vertices(), p.generators(), std::move(kept), FieldSpec::prime(prime));
}

}  // namespace detail

/// Smith forms of every block of the relation span of p (integer
/// coefficients), degrees 0..N. Each block is also checked against the
/// normal-word engine over Q and over GF(p) for the configured primes.
inline SmithReport torsion_check(const Presentation& p_in, std::size_t N, const TorsionOptions& opt = {}) {
  for (const auto& r : p_in.relations())
    for (const auto& t : r.terms)
      if (t.coeff.get_den() != 1) throw InputError("torsion analysis needs integer relation coefficients");
  const auto p = p_in.over(FieldSpec::rationals());
  const auto over_q = hilbert_series(p, N);
  std::vector<MatrixSeries> over_p;
  for (auto prime : opt.primes) over_p.push_back(hilbert_series(detail::reduce_mod(p, prime), N));

  SmithReport rep;
  rep.N = N;
  for (std::size_t d = 0; d <= N; ++d) {
    for (const auto& b : relation_span(p, d)) {
      SmithBlock sb{d, b.end, b.start, b.paths.size(), b.rows.size(), {}, false};
      const auto expect_q = static_cast<std::size_t>(over_q[d](b.end, b.start));
      if (b.rows.empty()) {
        if (expect_q != b.paths.size()) throw std::logic_error("torsion_check: free block disagrees with the engine");
        rep.blocks.push_back(std::move(sb));
        continue;
      }
      if (b.rows.size() <= opt.max_block && b.paths.size() <= opt.max_block) {
        std::vector<SparseVec<BigInt>> rows;
        for (const auto& r : b.rows) {
          SparseVec<BigInt> ir;
          for (const auto& [c, v] : r) ir.emplace_back(c, v.get_num());
          rows.push_back(std::move(ir));
        }
        const auto divs = smith_normal_form(b.rows.size(), b.paths.size(), std::move(rows));
        std::size_t nonzero = 0;
        for (const auto& x : divs) {
          ++sb.divisors[x];
          if (x != 0) ++nonzero;
          if (x != 0 && x != 1) rep.witnesses.push_back({d, b.end, b.start, x});
        }
        if (b.paths.size() - nonzero != expect_q)
          throw std::logic_error("torsion_check: Smith rank disagrees with the dimension over Q");
        for (std::size_t k = 0; k < opt.primes.size(); ++k) {
          std::size_t units_mod_p = 0;
          for (const auto& x : divs)
            if (x != 0 && x % opt.primes[k] != 0) ++units_mod_p;
          if (b.paths.size() - units_mod_p != static_cast<std::size_t>(over_p[k][d](b.end, b.start)))
            throw std::logic_error("torsion_check: Smith form disagrees with the dimension over GF(" +
                                   std::to_string(opt.primes[k]) + ")");
        }
      } else {
        // Fallback: a rank drop mod p means some divisor is divisible by p.
        sb.partial = true;
        rep.partial = true;
        const std::size_t rq = detail::rank_over(b, FieldSpec::rationals());
        if (b.paths.size() - rq != expect_q) throw std::logic_error("torsion_check: rank disagrees with the engine");
        for (std::size_t k = 0; k < opt.primes.size(); ++k) {
          const auto dim_p = static_cast<std::size_t>(over_p[k][d](b.end, b.start));
          if (dim_p < expect_q) throw std::logic_error("torsion_check: dimension over GF(p) below dimension over Q");
          if (dim_p > expect_q) rep.witnesses.push_back({d, b.end, b.start, BigInt(opt.primes[k])});
        }
      }
      rep.blocks.push_back(std::move(sb));
    }
  }
  rep.torsion_found = !rep.witnesses.empty();
  return rep;
}

/// The preprojective algebra of q over Z; gamma must be absent or +-1.
inline SmithReport torsion_check(const Quiver& q, std::size_t N, const TorsionOptions& opt = {}) {
  detail::require_unit_gamma(q);
  return torsion_check(preprojective_presentation(q), N, opt);
}

// ---- text and JSON forms ----

/// One line per block: degree, end, start, then value:multiplicity pairs.
inline void write_tsv(std::ostream& os, const SmithReport& r) {
  for (const auto& b : r.blocks) {
    os << b.degree << '\t' << b.end << '\t' << b.start << '\t';
    bool first = true;
    for (const auto& [v, m] : b.divisors) {
      os << (first ? "" : ",") << v.get_str() << ':' << m;
      first = false;
    }
    if (b.partial) os << (first ? "" : ",") << "partial";
    os << '\n';
  }
}

inline nlohmann::json to_json(const SmithReport& r) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : r.blocks) {
    nlohmann::json divs = nlohmann::json::array();
    for (const auto& [v, m] : b.divisors) divs.push_back({{"value", v.get_str()}, {"count", m}});
    blocks.push_back({{"degree", b.degree}, {"end", b.end}, {"start", b.start}, {"paths", b.paths}, {"rows", b.rows},
                      {"divisors", divs}, {"partial", b.partial}});
  }
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& w : r.witnesses)
    wit.push_back({{"degree", w.degree}, {"end", w.end}, {"start", w.start}, {"divisor", w.divisor.get_str()}});
  return {{"N", r.N},           {"torsion_found", r.torsion_found}, {"partial", r.partial},
          {"summary", r.summary()}, {"blocks", blocks},             {"witnesses", wit}};
}

inline SmithReport smith_report_from_json(const nlohmann::json& j) {
  SmithReport r;
  r.N = j.at("N").get<std::size_t>();
  r.torsion_found = j.at("torsion_found").get<bool>();
  r.partial = j.at("partial").get<bool>();
  for (const auto& b : j.at("blocks")) {
    SmithBlock sb;
    sb.degree = b.at("degree").get<std::size_t>();
    sb.end = b.at("end").get<std::size_t>();
    sb.start = b.at("start").get<std::size_t>();
    sb.paths = b.at("paths").get<std::size_t>();
    sb.rows = b.at("rows").get<std::size_t>();
    sb.partial = b.at("partial").get<bool>();
    for (const auto& e : b.at("divisors")) sb.divisors[BigInt(e.at("value").get<std::string>())] = e.at("count").get<std::size_t>();
    r.blocks.push_back(std::move(sb));
  }
  for (const auto& w : j.at("witnesses"))
    r.witnesses.push_back({w.at("degree").get<std::size_t>(), w.at("end").get<std::size_t>(), w.at("start").get<std::size_t>(),
                           BigInt(w.at("divisor").get<std::string>())});
  return r;
}

}  // namespace preproj
