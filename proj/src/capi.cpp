#include "frk.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ball_system.hpp"
#include "exponents.hpp"
#include "group.hpp"
#include "measure.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "verifier.hpp"
#include "version.hpp"

using namespace frk;

struct frk_group {
  GroupPtr g;
};
struct frk_system {
  LPSystem sys;
};
struct frk_measure {
  DualMeasure mu;
};
struct frk_report {
  Report rep;
};

namespace {

thread_local std::string t_last_error;

frk_status fail(frk_status st, const char* msg) {
  t_last_error = msg;
  return st;
}

/// Unparseable input text (as opposed to well-formed but invalid values).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs `fn` and maps C++ exceptions onto status codes. length_error is the
/// size-cap signal throughout the core library.
template <typename Fn>
frk_status guarded(Fn&& fn) {
  try {
    fn();
    return FRK_OK;
  } catch (const std::length_error& e) {
    return fail(FRK_ERR_SIZE_CAP, e.what());
  } catch (const std::domain_error& e) {
    return fail(FRK_ERR_DOMAIN, e.what());
  } catch (const ParseError& e) {
    return fail(FRK_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FRK_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FRK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FRK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FRK_ERR_INTERNAL, e.what());
  }
}

template <typename Fn>
frk_status parse_guarded(Fn&& fn) {
  // Same mapping, but invalid_argument means unparseable text here.
  try {
    fn();
    return FRK_OK;
  } catch (const std::invalid_argument& e) {
    return fail(FRK_ERR_PARSE, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

frk_status out_string(const std::string& s, char** out) {
  *out = dup_string(s);
  return *out ? FRK_OK : fail(FRK_ERR_INTERNAL, "out of memory");
}

frk_status require(bool cond, const char* msg) {
  return cond ? FRK_OK : fail(FRK_ERR_INVALID_ARGUMENT, msg);
}

Rational parse_exponent(const char* text, const char* which) {
  if (!text) throw std::invalid_argument(std::string(which) + " exponent is null");
  const auto r = parse_rational(text);
  if (!r)
    throw std::invalid_argument(std::string(which) + " is not a rational literal: " + text);
  return *r;
}

/// Produce a report while capturing wall time on it (timing is advisory and
/// never part of the serialized report).
template <typename Fn>
frk_status timed_report(frk_report** out, Fn&& make) {
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    Report rep = make();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    rep.set_elapsed_seconds(dt.count());
    *out = new frk_report{std::move(rep)};
  });
}

}  // namespace

extern "C" {

const char* frk_version(void) { return FRK_VERSION; }

const char* frk_last_error(void) { return t_last_error.c_str(); }

void frk_string_free(char* s) { std::free(s); }

/* ---- groups ---------------------------------------------------------- */

frk_status frk_group_cyclic(int64_t modulus, int rank, uint64_t size_cap, frk_group** out) {
  if (frk_status st = require(out != nullptr, "out is null")) return st;
  *out = nullptr;
  return guarded([&] {
    *out = new frk_group{Group::cyclic(modulus, rank, size_cap ? size_cap : kDefaultSizeCap)};
  });
}

frk_status frk_group_finite_field(int64_t p, int degree, const int64_t* poly, int rank,
                                  uint64_t size_cap, frk_group** out) {
  if (frk_status st = require(out != nullptr, "out is null")) return st;
  *out = nullptr;
  return guarded([&] {
    const uint64_t cap = size_cap ? size_cap : kDefaultSizeCap;
    if (!poly) {
      if (degree != 1)
        throw std::invalid_argument("a modulus polynomial is required when degree > 1");
      *out = new frk_group{Group::prime_field(p, rank, cap)};
      return;
    }
    std::vector<std::int64_t> coeffs(poly, poly + degree + 1);
    *out = new frk_group{Group::finite_field(p, degree, std::move(coeffs), rank, cap)};
  });
}

void frk_group_free(frk_group* g) { delete g; }

frk_status frk_group_cardinality(const frk_group* g, uint64_t* out) {
  if (frk_status st = require(g && out, "null argument")) return st;
  *out = g->g->size();
  return FRK_OK;
}

frk_status frk_group_describe(const frk_group* g, char** out) {
  if (frk_status st = require(g && out, "null argument")) return st;
  return out_string(g->g->label(), out);
}

/* ---- ball systems ---------------------------------------------------- */

frk_status frk_system_build(const frk_group* g, frk_system** out) {
  if (frk_status st = require(g && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] { *out = new frk_system{LPSystem::build(g->g)}; });
}

void frk_system_free(frk_system* s) { delete s; }

frk_status frk_system_scale_count(const frk_system* s, size_t* out) {
  if (frk_status st = require(s && out, "null argument")) return st;
  *out = s->sys.scale_count();
  return FRK_OK;
}

frk_status frk_system_scales(const frk_system* s, int64_t* primal, size_t cap, size_t* count) {
  if (frk_status st = require(s && count, "null argument")) return st;
  const auto& scales = s->sys.scales().primal;
  *count = scales.size();
  if (!primal) return FRK_OK;
  if (cap < scales.size()) return fail(FRK_ERR_INVALID_ARGUMENT, "scale buffer too small");
  for (size_t i = 0; i < scales.size(); ++i) primal[i] = scales[i];
  return FRK_OK;
}

frk_status frk_system_constants(const frk_system* s, double* c1, double* c2, double* c3) {
  if (frk_status st = require(s != nullptr, "system is null")) return st;
  const LPConstants& c = s->sys.constants();
  if (c1) *c1 = c.c1;
  if (c2) *c2 = c.c2;
  if (c3) *c3 = c.c3;
  return FRK_OK;
}

frk_status frk_system_check(const frk_system* s, uint64_t seed, frk_report** out) {
  if (frk_status st = require(s && out, "null argument")) return st;
  *out = nullptr;
  return timed_report(out, [&] {
    AxiomCheckOptions opts;
    opts.seed = seed;
    Report rep = verify_axioms(s->sys, opts);
    rep.merge(verify_conditions(s->sys));
    return rep;
  });
}

/* ---- measures --------------------------------------------------------- */

frk_status frk_measure_paraboloid(const frk_group* g, frk_measure** out) {
  if (frk_status st = require(g && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] { *out = new frk_measure{DualMeasure::paraboloid(g->g)}; });
}

frk_status frk_measure_graph(const frk_group* g, const char* text, frk_measure** out) {
  if (frk_status st = require(g && text && out, "null argument")) return st;
  *out = nullptr;
  Polynomial h;
  if (frk_status st = parse_guarded([&] { h = Polynomial::parse(text); })) return st;
  return guarded([&] { *out = new frk_measure{DualMeasure::graph(g->g, h)}; });
}

frk_status frk_measure_from_weights(const frk_group* g, const char* weights_json,
                                    frk_measure** out) {
  if (frk_status st = require(g && weights_json && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    const auto j = nlohmann::json::parse(weights_json);
    if (!j.is_object()) throw ParseError("weights must be a JSON object");
    std::vector<DualMeasure::Atom> atoms;
    atoms.reserve(j.size());
    for (const auto& [key, value] : j.items()) {
      std::uint64_t point = 0;
      try {
        std::size_t used = 0;
        point = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("weight key is not an index: " + key);
      }
      atoms.push_back({point, value.get<double>()});
    }
    *out = new frk_measure{DualMeasure::from_weights(g->g, std::move(atoms))};
  });
}

void frk_measure_free(frk_measure* m) { delete m; }

frk_status frk_measure_mass(const frk_measure* m, double* out) {
  if (frk_status st = require(m && out, "null argument")) return st;
  *out = m->mu.mass();
  return FRK_OK;
}

frk_status frk_measure_constants(const frk_measure* m, const frk_system* s, const char* a,
                                 const char* b, double* A, double* B) {
  if (frk_status st = require(m && s && a && b, "null argument")) return st;
  Rational ra, rb;
  if (frk_status st = parse_guarded([&] {
        ra = parse_exponent(a, "a");
        rb = parse_exponent(b, "b");
      }))
    return st;
  return guarded([&] {
    if (!(*m->mu.group() == *s->sys.group()))
      throw std::invalid_argument("measure and system live on different groups");
    const MeasureProfile mp = measure_profile(m->mu, s->sys, ra, rb);
    if (A) *A = mp.A;
    if (B) *B = mp.B;
  });
}

frk_status frk_measure_analyze(const frk_measure* m, const frk_system* s, const char* a,
                               const char* b, frk_report** out) {
  if (frk_status st = require(m && s && a && b && out, "null argument")) return st;
  *out = nullptr;
  Rational ra, rb;
  if (frk_status st = parse_guarded([&] {
        ra = parse_exponent(a, "a");
        rb = parse_exponent(b, "b");
      }))
    return st;
  return timed_report(out, [&] {
    if (!(*m->mu.group() == *s->sys.group()))
      throw std::invalid_argument("measure and system live on different groups");
    return measure_analyze(m->mu, s->sys, ra, rb);
  });
}

/* ---- exponents -------------------------------------------------------- */

frk_status frk_exponent_profile(int rank, const char* a, const char* b, frk_exponents* out) {
  if (frk_status st = require(a && b && out, "null argument")) return st;
  Rational ra, rb;
  if (frk_status st = parse_guarded([&] {
        ra = parse_exponent(a, "a");
        rb = parse_exponent(b, "b");
      }))
    return st;
  return guarded([&] {
    const ExponentProfile p = exponent_profile(rank, ra, rb);
    auto put = [](const Rational& r, int64_t& num, int64_t& den) {
      num = r.numerator();
      den = r.denominator();
    };
    put(p.r0, out->r0_num, out->r0_den);
    put(p.theta, out->theta_num, out->theta_den);
    put(p.sigma, out->sigma_num, out->sigma_den);
    put(p.tau, out->tau_num, out->tau_den);
    put(p.conv_r0, out->conv_r0_num, out->conv_r0_den);
    put(p.conv_s0, out->conv_s0_num, out->conv_s0_den);
  });
}

frk_status frk_cbar_constant(int rank, const char* a, const char* b, double c1, double c2,
                             double c3, double A, double B, double* out) {
  if (frk_status st = require(a && b && out, "null argument")) return st;
  Rational ra, rb;
  if (frk_status st = parse_guarded([&] {
        ra = parse_exponent(a, "a");
        rb = parse_exponent(b, "b");
      }))
    return st;
  return guarded([&] {
    const ExponentProfile p = exponent_profile(rank, ra, rb);
    SystemConstants sc;
    sc.c1 = c1;
    sc.c2 = c2;
    sc.c3 = c3;
    sc.A = A;
    sc.B = B;
    *out = cbar_constant(p, sc, 1.0);
  });
}

/* ---- verification ----------------------------------------------------- */

void frk_scan_options_init(frk_scan_options* opts) {
  if (!opts) return;
  const ScanStrategy def;
  opts->mode = 0;
  opts->seed = def.seed;
  opts->samples = def.samples;
  opts->exhaustive_cap = def.exhaustive_cap;
  opts->lorentz_samples = def.lorentz_samples;
}

frk_status frk_verify(const frk_measure* m, const frk_system* s, const char* a, const char* b,
                      const frk_scan_options* opts, frk_report** out) {
  if (frk_status st = require(m && s && a && b && out, "null argument")) return st;
  *out = nullptr;
  Rational ra, rb;
  if (frk_status st = parse_guarded([&] {
        ra = parse_exponent(a, "a");
        rb = parse_exponent(b, "b");
      }))
    return st;
  ScanStrategy strat;
  if (opts) {
    switch (opts->mode) {
      case 0: strat.mode = ScanStrategy::Mode::Auto; break;
      case 1: strat.mode = ScanStrategy::Mode::Exhaustive; break;
      case 2: strat.mode = ScanStrategy::Mode::Random; break;
      default: return fail(FRK_ERR_INVALID_ARGUMENT, "mode must be 0, 1 or 2");
    }
    strat.seed = opts->seed;
    strat.samples = opts->samples;
    strat.exhaustive_cap = opts->exhaustive_cap;
    strat.lorentz_samples = opts->lorentz_samples;
  }
  return timed_report(out, [&] { return verify_measure(m->mu, s->sys, ra, rb, strat); });
}

/* ---- reports ---------------------------------------------------------- */

void frk_report_free(frk_report* r) { delete r; }

frk_status frk_report_passed(const frk_report* r, int* out) {
  if (frk_status st = require(r && out, "null argument")) return st;
  *out = r->rep.passed() ? 1 : 0;
  return FRK_OK;
}

frk_status frk_report_record_count(const frk_report* r, size_t* out) {
  if (frk_status st = require(r && out, "null argument")) return st;
  *out = r->rep.records().size();
  return FRK_OK;
}

frk_status frk_report_json(const frk_report* r, char** out) {
  if (frk_status st = require(r && out, "null argument")) return st;
  std::string text;
  if (frk_status st = guarded([&] { text = r->rep.to_json_text(); })) return st;
  return out_string(text, out);
}

frk_status frk_report_csv(const frk_report* r, int with_header, char** out) {
  if (frk_status st = require(r && out, "null argument")) return st;
  std::string text;
  if (frk_status st = guarded([&] { text = r->rep.to_csv(with_header != 0); })) return st;
  return out_string(text, out);
}

frk_status frk_report_elapsed_seconds(const frk_report* r, double* out) {
  if (frk_status st = require(r && out, "null argument")) return st;
  *out = r->rep.elapsed_seconds();
  return FRK_OK;
}

}  // extern "C"
