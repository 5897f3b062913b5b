#pragma once
// File formats and reporting: JSON schemas for Seifert matrices, unitary
// representation tuples and hermitian form tuples, input digests, the
// obstruction report with its verdict logic, and text/json emitters.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blk/eta.hpp"
#include "blk/reps.hpp"
#include "blk/seifert.hpp"

namespace blk {

using json = nlohmann::json;

// Command-line / argument misuse (exit code 1).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

// Bad input files or data failing validation (exit code 2).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

inline uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string digest_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": JSON parse error at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
}

namespace detail {

inline const json& require_field(const json& j, const char* name,
                                 const std::string& origin) {
  auto it = j.find(name);
  if (it == j.end())
    throw InputError(origin + ": missing field '" + name + "'");
  return *it;
}

inline long require_int(const json& j, const char* name,
                        const std::string& origin) {
  const json& f = require_field(j, name, origin);
  if (!f.is_number_integer())
    throw InputError(origin + ": field '" + name + "' must be an integer");
  return f.get<long>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Seifert matrix files: { "epsilon": +-1, "sizes": [g_1,...], "matrix": [[int,...],...] }

inline SeifertMatrix seifert_from_json(const json& j, bool relaxed,
                                       const std::string& origin) {
  if (!j.is_object()) throw InputError(origin + ": top level must be an object");
  long eps = detail::require_int(j, "epsilon", origin);
  if (eps != 1 && eps != -1)
    throw InputError(origin + ": field 'epsilon' must be +1 or -1");
  const json& js = detail::require_field(j, "sizes", origin);
  if (!js.is_array())
    throw InputError(origin + ": field 'sizes' must be an array of integers");
  std::vector<int> sizes;
  size_t dim = 0;
  for (const auto& s : js) {
    if (!s.is_number_integer() || s.get<long>() < 0)
      throw InputError(origin + ": field 'sizes' entries must be integers >= 0");
    sizes.push_back(s.get<int>());
    dim += 2 * static_cast<size_t>(s.get<int>());
  }
  if (sizes.empty())
    throw InputError(origin + ": field 'sizes' must list at least one component");
  const json& jm = detail::require_field(j, "matrix", origin);
  if (!jm.is_array())
    throw InputError(origin + ": field 'matrix' must be an array of rows");
  if (jm.size() != dim)
    throw InputError(origin + ": field 'matrix' has " +
                     std::to_string(jm.size()) + " rows, sizes imply " +
                     std::to_string(dim));
  ZMatrix entries(dim, dim);
  for (size_t r = 0; r < dim; ++r) {
    const json& row = jm[r];
    if (!row.is_array() || row.size() != dim)
      throw InputError(origin + ": matrix row " + std::to_string(r + 1) +
                       " must be an array of " + std::to_string(dim) +
                       " integers");
    for (size_t c = 0; c < dim; ++c) {
      if (!row[c].is_number_integer())
        throw InputError(origin + ": matrix entry (" + std::to_string(r + 1) +
                         "," + std::to_string(c + 1) + ") must be an integer");
      entries(r, c) = Int(row[c].get<long>());
    }
  }
  SeifertMatrix A(static_cast<int>(eps), sizes, entries, relaxed);
  std::vector<Violation> viol = validate(A);
  if (!viol.empty() && !relaxed) {
    std::ostringstream os;
    os << origin << ": not a valid epsilon-boundary-link Seifert matrix ("
       << viol.size() << " axiom violation" << (viol.size() == 1 ? "" : "s")
       << "):";
    for (const auto& v : viol) os << "\n  " << v.str();
    os << "\nuse --relaxed to carry the matrix anyway";
    throw InputError(os.str());
  }
  if (!viol.empty()) A.set_relaxed(true);
  return A;
}

inline SeifertMatrix load_seifert(const std::string& path,
                                  bool relaxed = false) {
  return seifert_from_json(parse_json(read_file(path), path), relaxed, path);
}

inline json seifert_to_json(const SeifertMatrix& A) {
  json j;
  j["epsilon"] = A.epsilon();
  j["sizes"] = A.sizes();
  json rows = json::array();
  for (size_t r = 0; r < A.dim(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < A.dim(); ++c)
      row.push_back(A.entries()(r, c).get_si());
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// Representation tuple files:
//   { "k": int, "format": "cyclotomic", "order": n,
//     "matrices": [ [[coeffs,...],...], ... ] }  with coeffs a vector of
//     "p/q" strings over zeta_n^0..zeta_n^{len-1}, or
//   { "k": int, "format": "complex",
//     "matrices": [ [[{"re":x,"im":y},...],...], ... ] }.

namespace detail {

inline Cyclotomic entry_from_json(const json& e, unsigned order,
                                  const std::string& origin) {
  if (!e.is_array())
    throw InputError(origin + ": cyclotomic entry must be a coefficient array");
  if (e.size() > order)
    throw InputError(origin + ": coefficient vector longer than order " +
                     std::to_string(order));
  std::vector<Rational> coeffs;
  for (const auto& c : e) {
    if (c.is_number_integer())
      coeffs.push_back(Rational(c.get<long>()));
    else if (c.is_string()) {
      try {
        coeffs.push_back(parse_rational(c.get<std::string>()));
      } catch (const std::invalid_argument& ex) {
        throw InputError(origin + ": " + ex.what());
      }
    } else
      throw InputError(origin +
                       ": coefficients must be integers or \"p/q\" strings");
  }
  return Cyclotomic::from_coeffs(order, coeffs);
}

inline ComplexF complex_from_json(const json& e, const std::string& origin) {
  if (!e.is_object() || !e.contains("re") || !e.contains("im") ||
      !e["re"].is_number() || !e["im"].is_number())
    throw InputError(origin +
                     ": complex entry must be {\"re\": num, \"im\": num}");
  return ComplexF(e["re"].get<double>(), e["im"].get<double>());
}

}  // namespace detail

inline UnitaryTuple rep_from_json(const json& j, const std::string& origin,
                                  double tol = 1e-9) {
  if (!j.is_object()) throw InputError(origin + ": top level must be an object");
  long k = detail::require_int(j, "k", origin);
  if (k < 1) throw InputError(origin + ": field 'k' must be >= 1");
  const json& jf = detail::require_field(j, "format", origin);
  if (!jf.is_string() ||
      (jf.get<std::string>() != "cyclotomic" &&
       jf.get<std::string>() != "complex"))
    throw InputError(origin +
                     ": field 'format' must be \"cyclotomic\" or \"complex\"");
  bool exact = jf.get<std::string>() == "cyclotomic";
  const json& jm = detail::require_field(j, "matrices", origin);
  if (!jm.is_array() || jm.empty())
    throw InputError(origin + ": field 'matrices' must be a nonempty array");

  auto check_grid = [&](const json& g, size_t idx) -> void {
    if (!g.is_array() || g.size() != static_cast<size_t>(k))
      throw InputError(origin + ": matrix " + std::to_string(idx + 1) +
                       " must be a " + std::to_string(k) + "x" +
                       std::to_string(k) + " grid");
    for (const auto& row : g)
      if (!row.is_array() || row.size() != static_cast<size_t>(k))
        throw InputError(origin + ": matrix " + std::to_string(idx + 1) +
                         " must be a " + std::to_string(k) + "x" +
                         std::to_string(k) + " grid");
  };

  try {
    if (exact) {
      long order = detail::require_int(j, "order", origin);
      if (order < 1) throw InputError(origin + ": field 'order' must be >= 1");
      std::vector<CMatrix> mats;
      for (size_t t = 0; t < jm.size(); ++t) {
        check_grid(jm[t], t);
        CMatrix u(static_cast<size_t>(k), static_cast<size_t>(k));
        for (size_t r = 0; r < static_cast<size_t>(k); ++r)
          for (size_t c = 0; c < static_cast<size_t>(k); ++c)
            u(r, c) = detail::entry_from_json(
                jm[t][r][c], static_cast<unsigned>(order), origin);
        mats.push_back(u);
      }
      return blk::make_tuple(mats);
    }
    std::vector<FMatrix> mats;
    for (size_t t = 0; t < jm.size(); ++t) {
      check_grid(jm[t], t);
      FMatrix u(static_cast<size_t>(k), static_cast<size_t>(k));
      for (size_t r = 0; r < static_cast<size_t>(k); ++r)
        for (size_t c = 0; c < static_cast<size_t>(k); ++c)
          u(r, c) = detail::complex_from_json(jm[t][r][c], origin);
      mats.push_back(u);
    }
    return blk::make_tuple(mats, tol);
  } catch (const std::invalid_argument& e) {
    throw InputError(origin + ": " + e.what());
  }
}

inline UnitaryTuple load_rep(const std::string& path, double tol = 1e-9) {
  return rep_from_json(parse_json(read_file(path), path), path, tol);
}

inline json rep_to_json(const UnitaryTuple& alpha) {
  json j;
  j["k"] = alpha.k;
  if (alpha.mode == RepMode::exact) {
    long n = detail::common_cyclotomic_order(alpha.exact);
    j["format"] = "cyclotomic";
    j["order"] = n;
    json mats = json::array();
    for (const auto& u : alpha.exact) {
      json grid = json::array();
      for (size_t r = 0; r < u.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < u.cols(); ++c) {
          Cyclotomic z = u(r, c).promoted(static_cast<unsigned>(n));
          json coeffs = json::array();
          for (const auto& q : z.coeffs()) coeffs.push_back(to_string(q));
          row.push_back(coeffs);
        }
        grid.push_back(row);
      }
      mats.push_back(grid);
    }
    j["matrices"] = mats;
    return j;
  }
  j["format"] = "complex";
  json mats = json::array();
  for (const auto& u : alpha.floats) {
    json grid = json::array();
    for (size_t r = 0; r < u.rows(); ++r) {
      json row = json::array();
      for (size_t c = 0; c < u.cols(); ++c)
        row.push_back(json{{"re", u(r, c).real()}, {"im", u(r, c).imag()}});
      grid.push_back(row);
    }
    mats.push_back(grid);
  }
  j["matrices"] = mats;
  return j;
}

// ---------------------------------------------------------------------------
// Form tuple files:
//   { "format": "cyclotomic"|"complex", "order": n (cyclotomic),
//     "dims": [k_1,...,k_m],
//     "blocks": [ {"i": 1, "j": 1, "entries": grid}, ... ] }  with i <= j;
// entry encoding as in representation files.

inline FormTuple forms_from_json(const json& j, const std::string& origin) {
  if (!j.is_object()) throw InputError(origin + ": top level must be an object");
  const json& jf = detail::require_field(j, "format", origin);
  if (!jf.is_string() ||
      (jf.get<std::string>() != "cyclotomic" &&
       jf.get<std::string>() != "complex"))
    throw InputError(origin +
                     ": field 'format' must be \"cyclotomic\" or \"complex\"");
  FormTuple F;
  F.mode = jf.get<std::string>() == "cyclotomic" ? RepMode::exact
                                                 : RepMode::floating;
  const json& jd = detail::require_field(j, "dims", origin);
  if (!jd.is_array() || jd.empty())
    throw InputError(origin + ": field 'dims' must be a nonempty array");
  for (const auto& d : jd) {
    if (!d.is_number_integer() || d.get<long>() < 1)
      throw InputError(origin + ": field 'dims' entries must be integers >= 1");
    F.dims.push_back(d.get<int>());
  }
  F.m = static_cast<int>(F.dims.size());
  long order = 1;
  if (F.mode == RepMode::exact) {
    order = detail::require_int(j, "order", origin);
    if (order < 1) throw InputError(origin + ": field 'order' must be >= 1");
  }
  const json& jb = detail::require_field(j, "blocks", origin);
  if (!jb.is_array())
    throw InputError(origin + ": field 'blocks' must be an array");
  for (const auto& b : jb) {
    long bi = detail::require_int(b, "i", origin);
    long bj = detail::require_int(b, "j", origin);
    if (bi < 1 || bj < 1 || bi > F.m || bj > F.m || bi > bj)
      throw InputError(origin + ": block indices must satisfy 1 <= i <= j <= " +
                       std::to_string(F.m));
    auto key = std::make_pair(static_cast<int>(bi), static_cast<int>(bj));
    if (F.blocks.count(key) || F.blocks_float.count(key))
      throw InputError(origin + ": duplicate block (" + std::to_string(bi) +
                       "," + std::to_string(bj) + ")");
    const json& g = detail::require_field(b, "entries", origin);
    size_t ri = static_cast<size_t>(F.dim(static_cast<int>(bi)));
    size_t rj = static_cast<size_t>(F.dim(static_cast<int>(bj)));
    if (!g.is_array() || g.size() != ri)
      throw InputError(origin + ": block (" + std::to_string(bi) + "," +
                       std::to_string(bj) + ") must be a " +
                       std::to_string(ri) + "x" + std::to_string(rj) +
                       " grid");
    if (F.mode == RepMode::exact) {
      CMatrix M(ri, rj);
      for (size_t r = 0; r < ri; ++r) {
        if (!g[r].is_array() || g[r].size() != rj)
          throw InputError(origin + ": block (" + std::to_string(bi) + "," +
                           std::to_string(bj) + ") row " +
                           std::to_string(r + 1) + " has wrong length");
        for (size_t c = 0; c < rj; ++c)
          M(r, c) = detail::entry_from_json(
              g[r][c], static_cast<unsigned>(order), origin);
      }
      F.blocks[key] = M;
    } else {
      FMatrix M(ri, rj);
      for (size_t r = 0; r < ri; ++r) {
        if (!g[r].is_array() || g[r].size() != rj)
          throw InputError(origin + ": block (" + std::to_string(bi) + "," +
                           std::to_string(bj) + ") row " +
                           std::to_string(r + 1) + " has wrong length");
        for (size_t c = 0; c < rj; ++c)
          M(r, c) = detail::complex_from_json(g[r][c], origin);
      }
      F.blocks_float[key] = M;
    }
  }
  return F;
}

inline FormTuple load_forms(const std::string& path) {
  return forms_from_json(parse_json(read_file(path), path), path);
}

inline json forms_to_json(const FormTuple& F) {
  json j;
  j["dims"] = F.dims;
  json blocks = json::array();
  if (F.mode == RepMode::exact) {
    long n = 1;
    for (const auto& [key, M] : F.blocks)
      for (size_t r = 0; r < M.rows(); ++r)
        for (size_t c = 0; c < M.cols(); ++c)
          n = lcm_long(n, static_cast<long>(M(r, c).order()));
    j["format"] = "cyclotomic";
    j["order"] = n;
    for (const auto& [key, M] : F.blocks) {
      json grid = json::array();
      for (size_t r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < M.cols(); ++c) {
          Cyclotomic z = M(r, c).promoted(static_cast<unsigned>(n));
          json coeffs = json::array();
          for (const auto& q : z.coeffs()) coeffs.push_back(to_string(q));
          row.push_back(coeffs);
        }
        grid.push_back(row);
      }
      blocks.push_back(
          json{{"i", key.first}, {"j", key.second}, {"entries", grid}});
    }
  } else {
    j["format"] = "complex";
    for (const auto& [key, M] : F.blocks_float) {
      json grid = json::array();
      for (size_t r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < M.cols(); ++c)
          row.push_back(json{{"re", M(r, c).real()}, {"im", M(r, c).imag()}});
        grid.push_back(row);
      }
      blocks.push_back(
          json{{"i", key.first}, {"j", key.second}, {"entries", grid}});
    }
  }
  j["blocks"] = blocks;
  return j;
}

// ---------------------------------------------------------------------------
// Obstruction reports and verdicts.

enum class Verdict { no_information, not_boundary_slice, not_slice };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::not_slice: return "not_slice";
    case Verdict::not_boundary_slice: return "not_boundary_slice";
    default: return "no_information";
  }
}

// A nonzero invariant through a certified p-group representation obstructs
// sliceness outright (no nonsingularity needed); a nonzero invariant off the
// singular set obstructs boundary sliceness for any representation.
inline Verdict resolve_verdict(bool nonzero, bool singular,
                               bool p_group_certified) {
  if (nonzero && p_group_certified) return Verdict::not_slice;
  if (nonzero && !singular) return Verdict::not_boundary_slice;
  return Verdict::no_information;
}

struct ObstructionReport {
  std::string kind;             // "rho" | "sigma" | "sigma_f"
  std::string input_digest;     // digest of the Seifert file bytes
  std::string rep_descriptor;   // rep file digest or family item parameters
  int epsilon = -1;
  RepMode mode = RepMode::exact;
  std::string value_str;        // exact rational string, or formatted float
  double value_float = 0;
  bool nonzero = false;
  bool singular = false;
  bool relaxed = false;
  bool hermitized = false;
  bool indeterminate = false;
  bool p_group_certified = false;
  long p = 0;                   // certifying prime when p_group_certified
  size_t group_order = 0;       // closure order when computed
  Verdict verdict = Verdict::no_information;
  Inertia inertia;
  bool has_inertia = false;

  void resolve() { verdict = resolve_verdict(nonzero, singular, p_group_certified); }
  int exit_code() const { return verdict == Verdict::no_information ? 0 : 3; }
};

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline json report_to_json(const ObstructionReport& r) {
  json j;
  j["kind"] = r.kind;
  j["input_digest"] = r.input_digest;
  j["rep"] = r.rep_descriptor;
  j["epsilon"] = r.epsilon;
  j["mode"] = to_string(r.mode);
  j["value"] = r.value_str;
  j["value_float"] = r.value_float;
  j["singular"] = r.singular;
  j["relaxed"] = r.relaxed;
  j["hermitized"] = r.hermitized;
  j["indeterminate"] = r.indeterminate;
  j["p_group_certified"] = r.p_group_certified;
  if (r.p_group_certified) {
    j["p"] = r.p;
    j["group_order"] = r.group_order;
  }
  if (r.has_inertia)
    j["inertia"] = {{"pos", r.inertia.pos},
                    {"neg", r.inertia.neg},
                    {"zero", r.inertia.zero}};
  j["verdict"] = to_string(r.verdict);
  return j;
}

inline std::string report_to_text(const ObstructionReport& r) {
  std::ostringstream os;
  os << "input digest: " << r.input_digest << "\n";
  os << "representation: " << r.rep_descriptor << "\n";
  os << "epsilon: " << (r.epsilon > 0 ? "+1" : "-1")
     << "   mode: " << to_string(r.mode) << "\n";
  os << r.kind << " total = " << r.value_str << "\n";
  if (r.has_inertia)
    os << "inertia: (" << r.inertia.pos << "," << r.inertia.neg << ","
       << r.inertia.zero << ")\n";
  os << "singular: " << (r.singular ? "yes" : "no");
  if (r.relaxed) os << "   relaxed: yes";
  if (r.hermitized) os << "   hermitized: yes";
  if (r.indeterminate) os << "   indeterminate: yes";
  os << "\n";
  if (r.p_group_certified)
    os << "p-group certified: yes (p=" << r.p << ", order " << r.group_order
       << ")\n";
  else
    os << "p-group certified: no\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

// Bounded closure-based certification that an exact tuple generates a finite
// group of prime-power order.  Returns (certified, p, order).
struct PGroupCertificate {
  bool certified = false;
  long p = 0;
  size_t order = 0;
  bool overflowed = false;
};

inline PGroupCertificate certify_p_group(const UnitaryTuple& alpha,
                                         size_t bound = 100000) {
  PGroupCertificate out;
  if (alpha.mode != RepMode::exact) return out;
  ClosureResult cr = closure(alpha.exact, bound);
  if (cr.overflow) {
    out.overflowed = true;
    return out;
  }
  out.order = cr.order;
  if (cr.order == 1) {  // trivial group: vacuously a p-group for every p
    out.certified = true;
    out.p = 2;
    return out;
  }
  long n = static_cast<long>(cr.order);
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      long r = n;
      while (r % q == 0) r /= q;
      if (r == 1) {
        out.certified = true;
        out.p = q;
      }
      return out;
    }
  // n itself is prime
  out.certified = true;
  out.p = n;
  return out;
}

// ---------------------------------------------------------------------------
// Metabolic certificates: { "blocks": [ [[int,...],...], ... ] } with one
// unimodular 2g_i x 2g_i integer matrix per component.

inline json metabolic_cert_to_json(const MetabolicCertificate& cert) {
  json blocks = json::array();
  for (const ZMatrix& P : cert.blocks) {
    json rows = json::array();
    for (size_t r = 0; r < P.rows(); ++r) {
      json row = json::array();
      for (size_t c = 0; c < P.cols(); ++c)
        row.push_back(static_cast<long>(P(r, c).get_si()));
      rows.push_back(row);
    }
    blocks.push_back(rows);
  }
  json j;
  j["blocks"] = blocks;
  return j;
}

inline MetabolicCertificate metabolic_cert_from_json(const json& j,
                                                     const std::string& origin) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw InputError(origin + ": certificate needs a \"blocks\" array");
  MetabolicCertificate cert;
  int bi = 0;
  for (const json& rows : j["blocks"]) {
    ++bi;
    if (!rows.is_array() || rows.empty())
      throw InputError(origin + ": block " + std::to_string(bi) +
                       " must be a non-empty row array");
    size_t n = rows.size();
    ZMatrix P(n, n);
    for (size_t r = 0; r < n; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || row.size() != n)
        throw InputError(origin + ": block " + std::to_string(bi) +
                         " must be square; row " + std::to_string(r + 1) +
                         " has " + std::to_string(row.size()) + " entries");
      for (size_t c = 0; c < n; ++c) {
        if (!row[c].is_number_integer())
          throw InputError(origin + ": block " + std::to_string(bi) +
                           " entries must be integers");
        P(r, c) = Int(row[c].get<long>());
      }
    }
    cert.blocks.push_back(P);
  }
  return cert;
}

inline MetabolicCertificate load_metabolic_cert(const std::string& path) {
  return metabolic_cert_from_json(parse_json(read_file(path), path), path);
}

}  // namespace blk
