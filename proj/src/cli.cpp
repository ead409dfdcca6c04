#include "recur/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "recur/baker.hpp"
#include "recur/errors.hpp"
#include "recur/family.hpp"
#include "recur/search.hpp"

namespace recur {

namespace {

struct Options {
  Bits precision = kDefaultPrecision;
  long max_denominator = 64;
  std::string mode = "tightened";
  std::string out;
  int threads = 1;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": malformed JSON (" + e.what() + ")");
  }
}

RecurrenceSpec read_spec(const std::string& path) {
  try {
    RecurrenceSpec s = spec_from_json(read_json(path));
    s.validate();
    return s;
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::vector<BigInt> int_list(const std::string& text) {
  std::vector<BigInt> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    BigInt v;
    if (item.empty() || v.set_str(item, 10) != 0) throw InputError("not an integer list: " + text);
    out.push_back(v);
  }
  return out;
}

CertifyConfig certify_config(const Options& o) {
  if (o.precision < 64 || o.precision > precision_ceiling()) {
    throw InputError("--precision-bits must lie in [64, " + std::to_string(precision_ceiling()) + "]");
  }
  if (o.max_denominator < 1) throw InputError("--max-denominator must be positive");
  if (o.threads < 1) throw InputError("--threads must be positive");
  return CertifyConfig{o.precision, o.max_denominator, ledger_mode_from_string(o.mode)};
}

nlohmann::json hits_json(const std::vector<CommonValueHit>& hits) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& h : hits) arr.push_back(to_json(h));
  return arr;
}

nlohmann::json analyze(const RecurrenceSpec& spec, Bits prec) {
  nlohmann::json j;
  j["spec"] = to_json(spec);
  j["hash"] = spec_hash(spec);
  j["char_poly"] = char_poly(spec).to_string();
  j["backward_extendable"] = spec.backward_extendable();
  DominanceReport rep = dominance_profile(char_poly(spec), prec);
  j["dominance"] = to_json(rep);
  if (rep.kind != DominanceKind::Other) {
    BinetDecomposition binet = binet_data(spec, rep, prec);
    nlohmann::json b = to_json(binet);
    b["dominant_coefficient_nonzero"] = dominant_coefficient_nonzero(spec, binet);
    j["binet"] = b;
  } else {
    j["binet"] = nullptr;
  }
  j["precision_bits"] = prec;
  return j;
}

// Re-runs certify with the settings stored in a certificate file.
std::pair<nlohmann::json, BoundCertificate> load_certificate(const std::string& path, const Options& o) {
  nlohmann::json cj = read_json(path);
  if (!cj.is_object() || cj.value("schema", "") != kCertificateSchema) {
    throw InputError(path + ": not a " + std::string(kCertificateSchema) + " certificate");
  }
  Options stored = o;
  stored.precision = cj.at("precision_bits").get<Bits>();
  stored.mode = cj.at("mode").get<std::string>();
  stored.max_denominator = cj.value("max_denominator", o.max_denominator);
  RecurrenceSpec sa = spec_from_json(cj.at("pair").at("a").at("spec"));
  RecurrenceSpec sb = spec_from_json(cj.at("pair").at("b").at("spec"));
  BoundCertificate cert = certify(sa, sb, certify_config(stored));
  return {std::move(cj), std::move(cert)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective bounds for equal values of a real-dominant and a complex-dominant linear recurrence", "recur"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", o.precision, "Working precision in bits")->capture_default_str();
    sub->add_option("--max-denominator", o.max_denominator, "Largest p, q tried for the dependence witness")
        ->capture_default_str();
    sub->add_option("--mode", o.mode, "Ledger mode: tightened or paper_faithful")->capture_default_str();
    sub->add_option("--out", o.out, "Write the JSON result here instead of stdout");
    sub->add_option("--threads", o.threads, "Worker threads for grid sweeps")->capture_default_str();
  };

  std::string spec_a, spec_b, cert_path, family_name, params_path, pad_a, pad_b, init_a, init_b;
  long a = 0, b = 0, p = 1, q = 1, n_range = 20, m_range = 20, self_n = 8;
  int sign = 1;
  std::string f0 = "0", f1 = "1", f2 = "1";
  bool negative = false;

  CLI::App* c_analyze = app.add_subcommand("analyze", "Dominance and Binet summary of one recurrence");
  c_analyze->add_option("spec", spec_a, "Recurrence spec JSON")->required();
  common(c_analyze);

  CLI::App* c_certify = app.add_subcommand("certify", "Check every hypothesis and emit a bound certificate");
  c_certify->add_option("specA", spec_a, "Spec with a dominant real root")->required();
  c_certify->add_option("specB", spec_b, "Spec with a dominant complex pair")->required();
  common(c_certify);

  CLI::App* c_family = app.add_subcommand("family", "Build a recurrence pair from a parametric family");
  c_family->add_option("case", family_name, "case-i, case-ii or bravo")->required();
  c_family->add_option("--params", params_path, "Family parameters as JSON (overrides the flags)");
  c_family->add_option("--a", a, "Parameter a");
  c_family->add_option("--b", b, "Parameter b");
  c_family->add_option("--p", p, "Case I exponent p")->capture_default_str();
  c_family->add_option("--q", q, "Case I exponent q")->capture_default_str();
  c_family->add_option("--sign", sign, "Case I sign of the real root")->capture_default_str();
  c_family->add_option("--pad-a", pad_a, "Monic padding of A, comma-separated, constant term first");
  c_family->add_option("--pad-b", pad_b, "Monic padding of B, comma-separated, constant term first");
  c_family->add_option("--initial-a", init_a, "Initial terms of A, comma-separated");
  c_family->add_option("--initial-b", init_b, "Initial terms of B, comma-separated");
  c_family->add_option("--f0", f0, "Bravo f_0")->capture_default_str();
  c_family->add_option("--f1", f1, "Bravo f_1")->capture_default_str();
  c_family->add_option("--f2", f2, "Bravo f_2")->capture_default_str();
  common(c_family);

  CLI::App* c_search = app.add_subcommand("search", "Exact common values a_n = b_m");
  c_search->add_option("specA", spec_a, "First spec")->required();
  c_search->add_option("specB", spec_b, "Second spec")->required();
  c_search->add_option("--rangeA", n_range, "Largest |n|")->capture_default_str();
  c_search->add_option("--rangeB", m_range, "Largest |m|")->capture_default_str();
  c_search->add_flag("--negative", negative, "Include negative indices");
  c_search->add_option("--certificate", cert_path, "Check the exponent-gap laws against this certificate");
  common(c_search);

  CLI::App* c_self = app.add_subcommand("self", "Repeated values f_n = f_m over [-N, N]");
  c_self->add_option("spec", spec_a, "Spec with |p_0| = 1")->required();
  c_self->add_option("--N", self_n, "Window half-width")->capture_default_str();
  common(c_self);

  CLI::App* c_verify = app.add_subcommand("verify", "Reproduce a certificate and sweep the main inequality");
  c_verify->add_option("certificate", cert_path, "Certificate JSON")->required();
  c_verify->add_option("--rangeA", n_range, "Largest n")->capture_default_str();
  c_verify->add_option("--rangeB", m_range, "Largest m")->capture_default_str();
  common(c_verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*c_analyze) {
      CertifyConfig cfg = certify_config(o);
      emit(analyze(read_spec(spec_a), cfg.precision), o.out, out);
      return kExitOk;
    }
    if (*c_certify) {
      CertifyConfig cfg = certify_config(o);
      RecurrenceSpec sa = read_spec(spec_a), sb = read_spec(spec_b);
      try {
        emit(to_json(certify(sa, sb, cfg)), o.out, out);
      } catch (const HypothesisFailed& e) {
        emit({{"status", "rejected"}, {"hypothesis", e.which()}, {"detail", e.what()}}, o.out, out);
        err << "rejected: " << e.what() << "\n";
        return kExitHypothesis;
      }
      return kExitOk;
    }
    if (*c_family) {
      CertifyConfig cfg = certify_config(o);
      FamilyParams prm;
      if (!params_path.empty()) {
        nlohmann::json j = read_json(params_path);
        j["family"] = family_name;
        prm = family_params_from_json(j);
      } else {
        prm.family = family_case_from_string(family_name);
        prm.a = a;
        prm.b = b;
        prm.p = p;
        prm.q = q;
        prm.sign = sign;
        if (!pad_a.empty()) prm.pad_a = IntPoly(int_list(pad_a));
        if (!pad_b.empty()) prm.pad_b = IntPoly(int_list(pad_b));
        prm.initial_a = prm.family == FamilyCase::Bravo ? int_list(f0 + "," + f1 + "," + f2) : int_list(init_a);
        prm.initial_b = int_list(init_b);
      }
      FamilyPair pair;
      try {
        pair = build_family(prm, cfg.precision);
      } catch (const ConditionFailed& e) {
        emit({{"status", "rejected"}, {"clause", e.clause()}, {"detail", e.what()}}, "", out);
        err << "rejected: " << e.what() << "\n";
        return kExitHypothesis;
      }
      if (o.out.empty()) {
        emit(to_json(pair), "", out);
      } else {
        emit(to_json(pair.a), o.out + ".a.json", out);
        emit(to_json(pair.b), o.out + ".b.json", out);
        emit({{"a", o.out + ".a.json"}, {"b", o.out + ".b.json"}, {"checks", pair.checks}}, "", out);
      }
      return kExitOk;
    }
    if (*c_search) {
      certify_config(o);
      if (n_range < 0 || m_range < 0) throw InputError("ranges must be nonnegative");
      RecurrenceSpec sa = read_spec(spec_a), sb = read_spec(spec_b);
      SearchConfig sc;
      sc.threads = o.threads;
      std::vector<CommonValueHit> hits = enumerate_common_values(sa, sb, n_range, m_range, negative, sc);
      nlohmann::json j{{"pair", {{"a", spec_hash(sa)}, {"b", spec_hash(sb)}}},
                       {"range", {{"N", n_range}, {"M", m_range}, {"negative", negative}}},
                       {"hits", hits_json(hits)}};
      if (!cert_path.empty()) {
        auto [cj, cert] = load_certificate(cert_path, o);
        if (spec_hash(cert.spec_a) != spec_hash(sa) || spec_hash(cert.spec_b) != spec_hash(sb)) {
          throw InputError("certificate is for a different pair");
        }
        j["certificate_hash"] = fnv1a_hex(cj.dump());
        j["hit_law"] = to_json(check_hit_law(cert, hits));
      }
      j["banner"] = kDeskScaleBanner;
      emit(j, o.out, out);
      return kExitOk;
    }
    if (*c_self) {
      certify_config(o);
      if (self_n < 0) throw InputError("--N must be nonnegative");
      RecurrenceSpec s = read_spec(spec_a);
      SearchConfig sc;
      nlohmann::json groups = nlohmann::json::array();
      for (const auto& g : self_intersections(s, self_n, sc)) groups.push_back(to_json(g));
      emit({{"spec", spec_hash(s)}, {"N", self_n}, {"groups", groups}}, o.out, out);
      return kExitOk;
    }
    if (*c_verify) {
      if (n_range < 0 || m_range < 0) throw InputError("ranges must be nonnegative");
      certify_config(o);
      auto [cj, cert] = load_certificate(cert_path, o);
      const RecurrenceSpec& sa = cert.spec_a;
      const RecurrenceSpec& sb = cert.spec_b;
      const bool reproduced = to_json(cert).dump() == cj.dump();
      SearchConfig sc;
      sc.threads = o.threads;
      InequalityReport rep = verify_no_violation(cert, n_range, m_range, sc);
      std::vector<CommonValueHit> hits = enumerate_common_values(sa, sb, n_range, m_range, false, sc);
      HitLawReport law = check_hit_law(cert, hits);
      emit({{"certificate_hash", fnv1a_hex(cj.dump())},
            {"reproduced", reproduced},
            {"hits", hits_json(hits)},
            {"hit_law", to_json(law)},
            {"inequality", to_json(rep)}},
           o.out, out);
      if (!reproduced || !rep.consistent || law.gap_violations > 0 || law.weak_violations > 0) {
        err << "verification failed\n";
        return kExitHypothesis;
      }
      return rep.undecided > 0 || law.undecided > 0 ? kExitUndecided : kExitOk;
    }
  } catch (const HypothesisFailed& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const DependenceUnknown& e) {
    emit({{"status", "undecided"}, {"detail", e.what()}}, "", out);
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const PrecisionExceeded& e) {
    err << "undecided: precision ceiling reached: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NotBackwardExtendable& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MemoryGuardExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace recur
