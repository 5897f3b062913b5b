#pragma once
// Obstruction scans over representation families: the full abelian grid of
// root-of-unity tuples, monomial PD_p(k) enumeration (with seeded sampling
// past the budget), and random unitary tuples.  Work items are independent;
// results land in index-canonical slots so worker count never changes output.

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "blk/eta.hpp"
#include "blk/io.hpp"
#include "blk/reps.hpp"
#include "blk/seifert.hpp"

namespace blk {

struct ScanSpec {
  enum class Family { abelian_grid, pdp_enumeration, random_unitary };
  Family family = Family::abelian_grid;
  int N = 16;           // abelian grid resolution: z_i ranges over zeta_N^j
  long p = 2;           // pdp prime
  int k = 2;            // matrix dimension (pdp / random)
  long max_order = 8;   // pdp diagonal root-order cap (a p-power)
  size_t budget = 1000; // sample budget (pdp past enumeration; random count)
  uint64_t seed = 0;
  int jobs = 1;
  RepMode mode = RepMode::floating;  // exact: evaluate every item exactly
  double tol = 1e-9;
};

inline const char* to_string(ScanSpec::Family f) {
  switch (f) {
    case ScanSpec::Family::abelian_grid: return "abelian_grid";
    case ScanSpec::Family::pdp_enumeration: return "pdp_enumeration";
    default: return "random_unitary";
  }
}

struct ScanItem {
  size_t index = 0;
  std::vector<std::string> params;  // family-specific cells
  std::string value_str;            // exact string when exact-confirmed
  double value_float = 0;
  bool exact = false;
  bool nonzero = false;
  bool singular = false;
  bool indeterminate = false;
  bool error = false;
  std::string error_msg;
  Verdict verdict = Verdict::no_information;
};

struct ScanSummary {
  size_t total = 0;
  size_t nonzero = 0;
  size_t singular = 0;
  size_t indeterminate = 0;
  size_t errors = 0;
  double min_value = 0;
  double max_value = 0;
  std::optional<size_t> first_nonzero;  // position in items
  json first_certificate;               // replayable rep for that item
  Verdict verdict = Verdict::no_information;
  bool p_group_family = false;
  long p = 0;
};

struct ScanResult {
  ScanSpec spec;
  int m = 0;  // component count of the scanned matrix
  std::vector<ScanItem> items;
  ScanSummary summary;
};

namespace detail {

inline bool is_prime_power(long n, long* p_out) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      long r = n;
      while (r % q == 0) r /= q;
      if (r == 1) {
        *p_out = q;
        return true;
      }
      return false;
    }
  *p_out = n;
  return true;
}

// All elements of S_k (one-line, 0-based) whose order is a power of p.
inline std::vector<std::vector<int>> p_power_permutations(int k, long p) {
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out;
  std::vector<int> perm = id;
  do {
    bool ok = true;
    std::vector<bool> vis(k, false);
    for (int s = 0; s < k && ok; ++s) {
      if (vis[s]) continue;
      long len = 0;
      int x = s;
      while (!vis[x]) {
        vis[x] = true;
        x = perm[x];
        ++len;
      }
      ok = is_p_power(len, p);
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Deterministic per-item RNG stream.
inline std::mt19937_64 item_rng(uint64_t seed, uint64_t index) {
  std::seed_seq seq{seed, uint64_t{0x9e3779b97f4a7c15} ^ index, index + 1};
  return std::mt19937_64(seq);
}

// Haar-distributed k x k unitary: complex Gaussian matrix, Gram-Schmidt QR,
// columns rescaled by the phases of the R diagonal.
inline FMatrix haar_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FMatrix z(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) z(r, c) = ComplexF(g(rng), g(rng));
  for (int c = 0; c < k; ++c) {
    for (int c2 = 0; c2 < c; ++c2) {
      ComplexF dot(0, 0);
      for (int r = 0; r < k; ++r) dot += std::conj(z(r, c2)) * z(r, c);
      for (int r = 0; r < k; ++r) z(r, c) -= dot * z(r, c2);
    }
    double nrm = 0;
    for (int r = 0; r < k; ++r) nrm += std::norm(z(r, c));
    nrm = std::sqrt(nrm);
    // R_cc before normalization has the column norm and phase of the pivot;
    // dividing by the norm alone matches Q * diag(phase) conventions closely
    // enough for Haar sampling.
    for (int r = 0; r < k; ++r) z(r, c) /= nrm;
  }
  return z;
}

}  // namespace detail

inline void validate_spec(const ScanSpec& spec, const SeifertMatrix& A) {
  if (spec.budget == 0) throw UsageError("scan budget must be > 0");
  if (spec.jobs < 1) throw UsageError("jobs must be >= 1");
  switch (spec.family) {
    case ScanSpec::Family::abelian_grid: {
      if (spec.N < 1) throw UsageError("grid resolution N must be >= 1");
      double points = std::pow(static_cast<double>(spec.N), A.m());
      if (points > 1e7)
        throw UsageError("abelian grid has too many points (N^m > 1e7)");
      break;
    }
    case ScanSpec::Family::pdp_enumeration: {
      if (!detail::is_prime(spec.p))
        throw UsageError("pdp family needs a prime p");
      if (spec.k < 1 || spec.k > 8)
        throw UsageError("pdp dimension k must be in 1..8");
      if (!detail::is_p_power(spec.max_order, spec.p))
        throw UsageError("pdp max root order must be a power of p");
      break;
    }
    case ScanSpec::Family::random_unitary: {
      if (spec.k < 1) throw UsageError("random family needs k >= 1");
      if (spec.mode == RepMode::exact)
        throw UsageError("random_unitary family has no exact mode");
      break;
    }
  }
}

inline ScanResult run_scan(const SeifertMatrix& A, const ScanSpec& spec) {
  validate_spec(spec, A);
  ScanResult out;
  out.spec = spec;
  out.m = A.m();
  const int m = A.m();
  const double nonzero_tol = 1e-6;

  // ---- family setup -------------------------------------------------------
  // `work` holds one encoded family index per item, except in the pdp "wide"
  // sampling regime (family too large to index flatly) where it holds m
  // per-position element codes per item.
  std::vector<std::vector<int>> perms;  // pdp
  uint64_t elems_per_pos = 0, diag_codes = 0;
  std::vector<uint64_t> work;
  bool pdp_wide = false;

  switch (spec.family) {
    case ScanSpec::Family::abelian_grid: {
      uint64_t n = 1;
      for (int i = 0; i < m; ++i) n *= static_cast<uint64_t>(spec.N);
      work.resize(n);
      std::iota(work.begin(), work.end(), uint64_t{0});
      break;
    }
    case ScanSpec::Family::pdp_enumeration: {
      perms = detail::p_power_permutations(spec.k, spec.p);
      diag_codes = 1;
      for (int i = 0; i < spec.k; ++i)
        diag_codes *= static_cast<uint64_t>(spec.max_order);
      elems_per_pos = perms.size() * diag_codes;
      long double fam = 1;  // E^m can exceed 2^64
      for (int i = 0; i < m; ++i)
        fam *= static_cast<long double>(elems_per_pos);
      if (fam <= static_cast<long double>(spec.budget)) {
        work.resize(static_cast<size_t>(fam + 0.5L));
        std::iota(work.begin(), work.end(), uint64_t{0});
      } else if (fam <= 1e7L) {
        std::vector<uint64_t> all(static_cast<size_t>(fam + 0.5L));
        std::iota(all.begin(), all.end(), uint64_t{0});
        std::mt19937_64 rng(spec.seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(spec.budget);
        work = std::move(all);
      } else {
        // rejection sampling with dedup on the code tuple; one tuple is m
        // consecutive work entries
        pdp_wide = true;
        std::mt19937_64 rng(spec.seed);
        std::set<std::vector<uint64_t>> seen;
        size_t attempts = 0, cap = 100 * spec.budget;
        while (seen.size() < spec.budget && attempts++ < cap) {
          std::vector<uint64_t> tup(m);
          for (int t = 0; t < m; ++t) tup[t] = rng() % elems_per_pos;
          if (seen.insert(tup).second)
            for (uint64_t v : tup) work.push_back(v);
        }
      }
      break;
    }
    case ScanSpec::Family::random_unitary: {
      work.resize(spec.budget);
      std::iota(work.begin(), work.end(), uint64_t{0});
      break;
    }
  }

  size_t n_items = pdp_wide ? work.size() / static_cast<size_t>(m)
                            : work.size();
  out.items.assign(n_items, ScanItem{});

  // ---- per-item evaluation -------------------------------------------------
  auto decode_pdp_elem = [&](uint64_t code) {
    size_t perm_idx = static_cast<size_t>(code / diag_codes);
    uint64_t d = code % diag_codes;
    std::vector<Cyclotomic> diag;
    std::vector<long> exps;
    for (int t = 0; t < spec.k; ++t) {
      long e = static_cast<long>(d % static_cast<uint64_t>(spec.max_order));
      d /= static_cast<uint64_t>(spec.max_order);
      exps.push_back(e);
      diag.push_back(
          Cyclotomic::root(static_cast<unsigned>(spec.max_order), e));
    }
    return std::make_tuple(perms[perm_idx], diag, exps, perm_idx);
  };

  auto pdp_param_cell = [&](const std::vector<int>& perm,
                            const std::vector<long>& exps) {
    std::ostringstream os;
    os << "perm=";
    for (size_t t = 0; t < perm.size(); ++t)
      os << (t ? " " : "") << perm[t];
    os << ";diag=";
    for (size_t t = 0; t < exps.size(); ++t) os << (t ? " " : "") << exps[t];
    return os.str();
  };

  auto fill_from_rho = [&](ScanItem& it, const RhoResult& r, bool exact_eval,
                           bool p_certified) {
    it.exact = exact_eval;
    it.singular = r.singular;
    it.indeterminate = r.indeterminate;
    if (exact_eval) {
      it.value_float = r.total.get_d();
      it.value_str = to_string(r.total);
      it.nonzero = r.total != 0;
    } else {
      it.value_float = r.total_float;
      it.value_str = format_double(r.total_float);
      it.nonzero =
          std::abs(r.total_float) > nonzero_tol && !r.indeterminate;
    }
    it.verdict = resolve_verdict(it.nonzero, it.singular, p_certified);
  };

  long family_p = 0;
  bool family_p_group = false;
  if (spec.family == ScanSpec::Family::pdp_enumeration) {
    family_p_group = true;
    family_p = spec.p;
  } else if (spec.family == ScanSpec::Family::abelian_grid) {
    family_p_group = spec.N == 1 || detail::is_prime_power(spec.N, &family_p);
    if (spec.N == 1) family_p = 2;
  }

  auto eval_item = [&](size_t slot) {
    ScanItem& it = out.items[slot];
    it.index = slot;
    try {
      switch (spec.family) {
        case ScanSpec::Family::abelian_grid: {
          uint64_t idx = work[slot];
          std::vector<long> js(m);
          for (int t = 0; t < m; ++t) {
            js[t] = static_cast<long>(idx % static_cast<uint64_t>(spec.N));
            idx /= static_cast<uint64_t>(spec.N);
          }
          for (int t = 0; t < m; ++t) it.params.push_back(std::to_string(js[t]));
          auto exact_eval = [&] {
            std::vector<CMatrix> mats;
            for (int t = 0; t < m; ++t) {
              CMatrix u(1, 1);
              u(0, 0) = Cyclotomic::root(static_cast<unsigned>(spec.N), js[t]);
              mats.push_back(u);
            }
            return rho(A, blk::make_tuple(mats));
          };
          if (spec.mode == RepMode::exact) {
            fill_from_rho(it, exact_eval(), true, family_p_group);
            break;
          }
          std::vector<FMatrix> mats;
          const double pi = std::acos(-1.0);
          for (int t = 0; t < m; ++t) {
            FMatrix u(1, 1);
            u(0, 0) = std::polar(1.0, 2 * pi * static_cast<double>(js[t]) /
                                          spec.N);
            mats.push_back(u);
          }
          RhoResult rf = rho(A, blk::make_tuple(mats), std::nullopt, false,
                             spec.tol);
          if (std::abs(rf.total_float) > nonzero_tol || rf.indeterminate)
            fill_from_rho(it, exact_eval(), true, family_p_group);
          else
            fill_from_rho(it, rf, false, family_p_group);
          break;
        }
        case ScanSpec::Family::pdp_enumeration: {
          std::vector<CMatrix> mats;
          for (int t = 0; t < m; ++t) {
            uint64_t code = pdp_wide
                                ? work[slot * static_cast<size_t>(m) +
                                       static_cast<size_t>(t)]
                                : [&] {
                                    uint64_t idx = work[slot];
                                    for (int s = 0; s < t; ++s)
                                      idx /= elems_per_pos;
                                    return idx % elems_per_pos;
                                  }();
            auto [perm, diag, exps, pidx] = decode_pdp_elem(code);
            mats.push_back(pdp_element(spec.k, spec.p, perm, diag));
            it.params.push_back(pdp_param_cell(perm, exps));
          }
          UnitaryTuple alpha = blk::make_tuple(mats);
          if (spec.mode == RepMode::exact) {
            fill_from_rho(it, rho(A, alpha), true, true);
            break;
          }
          UnitaryTuple af = blk::make_tuple(alpha.as_float());
          RhoResult rf = rho(A, af, std::nullopt, false, spec.tol);
          if (std::abs(rf.total_float) > nonzero_tol || rf.indeterminate)
            fill_from_rho(it, rho(A, alpha), true, true);
          else
            fill_from_rho(it, rf, false, true);
          break;
        }
        case ScanSpec::Family::random_unitary: {
          std::mt19937_64 rng = detail::item_rng(spec.seed, work[slot]);
          std::vector<FMatrix> mats;
          for (int t = 0; t < m; ++t)
            mats.push_back(detail::haar_unitary(spec.k, rng));
          RhoResult rf = rho(A, blk::make_tuple(mats), std::nullopt, false,
                             spec.tol);
          fill_from_rho(it, rf, false, false);
          break;
        }
      }
    } catch (const std::exception& e) {
      it.error = true;
      it.error_msg = e.what();
      it.verdict = Verdict::no_information;
    }
  };

  // ---- worker pool ---------------------------------------------------------
  int jobs = std::max(1, std::min<int>(spec.jobs,
                                       static_cast<int>(n_items ? n_items : 1)));
  if (jobs == 1) {
    for (size_t i = 0; i < n_items; ++i) eval_item(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= n_items) break;
          eval_item(i);
        }
        mpfr_free_cache();  // exact escalations cache constants per thread
      });
    for (auto& th : pool) th.join();
  }

  // ---- canonical summary ---------------------------------------------------
  ScanSummary& s = out.summary;
  s.total = n_items;
  s.p_group_family = family_p_group;
  s.p = family_p;
  bool first_val = true;
  for (const ScanItem& it : out.items) {
    if (it.error) {
      ++s.errors;
      continue;
    }
    if (it.singular) ++s.singular;
    if (it.indeterminate) ++s.indeterminate;
    if (first_val || it.value_float < s.min_value) s.min_value = it.value_float;
    if (first_val || it.value_float > s.max_value) s.max_value = it.value_float;
    first_val = false;
    if (it.nonzero) {
      ++s.nonzero;
      if (!s.first_nonzero) s.first_nonzero = it.index;
      if (static_cast<int>(it.verdict) > static_cast<int>(s.verdict))
        s.verdict = it.verdict;
    }
  }
  if (s.first_nonzero) {
    // rebuild the witness representation for a replayable certificate
    if (spec.family == ScanSpec::Family::abelian_grid) {
      std::vector<CMatrix> mats;
      uint64_t idx = work[*s.first_nonzero];
      for (int t = 0; t < m; ++t) {
        CMatrix u(1, 1);
        u(0, 0) = Cyclotomic::root(
            static_cast<unsigned>(spec.N),
            static_cast<long>(idx % static_cast<uint64_t>(spec.N)));
        idx /= static_cast<uint64_t>(spec.N);
        mats.push_back(u);
      }
      s.first_certificate = rep_to_json(blk::make_tuple(mats));
    } else if (spec.family == ScanSpec::Family::pdp_enumeration) {
      std::vector<CMatrix> mats;
      for (int t = 0; t < m; ++t) {
        uint64_t code =
            pdp_wide ? work[*s.first_nonzero * static_cast<size_t>(m) +
                            static_cast<size_t>(t)]
                     : [&] {
                         uint64_t idx = work[*s.first_nonzero];
                         for (int q = 0; q < t; ++q) idx /= elems_per_pos;
                         return idx % elems_per_pos;
                       }();
        auto [perm, diag, exps, pidx] = decode_pdp_elem(code);
        (void)exps;
        (void)pidx;
        mats.push_back(pdp_element(spec.k, spec.p, perm, diag));
      }
      s.first_certificate = rep_to_json(blk::make_tuple(mats));
    } else {
      std::mt19937_64 rng = detail::item_rng(spec.seed, work[*s.first_nonzero]);
      std::vector<FMatrix> mats;
      for (int t = 0; t < m; ++t)
        mats.push_back(detail::haar_unitary(spec.k, rng));
      s.first_certificate = rep_to_json(blk::make_tuple(mats));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Emitters.

inline std::vector<std::string> scan_param_headers(const ScanResult& r) {
  std::vector<std::string> h;
  switch (r.spec.family) {
    case ScanSpec::Family::abelian_grid:
      for (int t = 1; t <= r.m; ++t) h.push_back("j" + std::to_string(t));
      break;
    case ScanSpec::Family::pdp_enumeration:
      for (int t = 1; t <= r.m; ++t) h.push_back("rep" + std::to_string(t));
      break;
    case ScanSpec::Family::random_unitary:
      break;
  }
  return h;
}

inline std::string scan_to_csv(const ScanResult& r) {
  std::ostringstream os;
  os << "index";
  for (const auto& h : scan_param_headers(r)) os << "," << h;
  os << ",value,singular,verdict\n";
  for (const ScanItem& it : r.items) {
    os << it.index;
    for (const auto& c : it.params) os << "," << c;
    os << "," << (it.error ? "error" : it.value_str) << ","
       << (it.singular ? "1" : "0") << "," << to_string(it.verdict) << "\n";
  }
  return os.str();
}

inline json scan_to_json(const ScanResult& r) {
  json j;
  j["family"] = to_string(r.spec.family);
  j["seed"] = r.spec.seed;
  json items = json::array();
  for (const ScanItem& it : r.items) {
    json ji;
    ji["index"] = it.index;
    ji["params"] = it.params;
    if (it.error) {
      ji["error"] = it.error_msg;
    } else {
      ji["value"] = it.value_str;
      ji["exact"] = it.exact;
      ji["singular"] = it.singular;
      ji["indeterminate"] = it.indeterminate;
      ji["verdict"] = to_string(it.verdict);
    }
    items.push_back(ji);
  }
  j["items"] = items;
  json s;
  s["total"] = r.summary.total;
  s["nonzero"] = r.summary.nonzero;
  s["singular"] = r.summary.singular;
  s["indeterminate"] = r.summary.indeterminate;
  s["errors"] = r.summary.errors;
  s["min_value"] = r.summary.min_value;
  s["max_value"] = r.summary.max_value;
  s["p_group_family"] = r.summary.p_group_family;
  if (r.summary.p_group_family) s["p"] = r.summary.p;
  if (r.summary.first_nonzero) {
    s["first_nonzero_index"] = *r.summary.first_nonzero;
    s["first_certificate"] = r.summary.first_certificate;
  }
  s["verdict"] = to_string(r.summary.verdict);
  j["summary"] = s;
  return j;
}

inline std::string scan_to_text(const ScanResult& r) {
  std::ostringstream os;
  const ScanSummary& s = r.summary;
  os << "scan family: " << to_string(r.spec.family) << "\n";
  os << "items evaluated: " << s.total << "   errors: " << s.errors << "\n";
  os << "nonzero values: " << s.nonzero << "   singular: " << s.singular
     << "   indeterminate: " << s.indeterminate << "\n";
  os << "value range: [" << s.min_value << ", " << s.max_value << "]\n";
  if (s.p_group_family)
    os << "family is p-group certified (p=" << s.p << ")\n";
  if (s.first_nonzero) {
    const ScanItem& it = r.items[*s.first_nonzero];
    os << "first nonzero: index " << it.index << " value " << it.value_str;
    if (!it.params.empty()) {
      os << " at";
      for (const auto& c : it.params) os << " " << c;
    }
    os << "\n";
  }
  os << "verdict: " << to_string(s.verdict) << "\n";
  return os.str();
}

}  // namespace blk
