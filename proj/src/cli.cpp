#include "qforms/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qforms/error.hpp"
#include "qforms/global.hpp"
#include "qforms/hilbert.hpp"
#include "qforms/hyperbolic.hpp"
#include "qforms/local.hpp"
#include "qforms/subform.hpp"

namespace qforms::cli {

namespace {

Json form_json(const DiagonalForm& q) {
  Json a = Json::array();
  for (const auto& x : q.entries()) a.push_back(to_string(x));
  return a;
}

Json places_json(const std::vector<Place>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v.to_string());
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, origin + ": " + e.what());
  }
}

DiagonalForm form_from_json(const Json& doc, const std::string& origin) {
  const Json& arr = doc.is_object() && doc.contains("form") ? doc["form"] : doc;
  if (!arr.is_array() || arr.empty()) {
    fail(ErrorKind::ParseError, origin + ": expected a non-empty array of rationals");
  }
  std::vector<Rational> e;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& x = arr[i];
    if (x.is_string()) {
      e.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      e.emplace_back(x.get<long>());
    } else {
      fail(ErrorKind::ParseError, origin + ": entry " + std::to_string(i) + " is not a rational");
    }
  }
  return DiagonalForm(std::move(e));
}

DiagonalForm form_arg(const std::string& s) {
  if (!s.empty() && s[0] == '@') {
    const std::string path = s.substr(1);
    return form_from_json(parse_json_text(read_file(path), path), path);
  }
  return DiagonalForm::parse(s);
}

std::vector<std::uint64_t> prime_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Place v = Place::parse(item);
    if (v.is_infinite()) fail(ErrorKind::ParseError, "expected a prime, got 'inf'");
    out.push_back(v.p());
  }
  return out;
}

Json tits_json(const TitsIndex& t) {
  const char* fam = t.family == TitsFamily::B ? "B" : t.family == TitsFamily::DInner ? "1D" : "2D";
  return {{"symbol", t.symbol()}, {"family", fam}, {"n", t.n}, {"witt_index", t.witt_index}, {"split", t.split}};
}

Json optional_class(const std::optional<SquareClass>& c) {
  return c ? Json(c->to_string()) : Json(nullptr);
}

struct Response {
  Json result;
  std::optional<Json> certificate;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return 1;
    case ErrorKind::SearchExhausted: return 3;
    default: return 2;
  }
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Quadratic forms over Q: invariants, subforms and hyperbolic commensurability", "qforms"};
  app.require_subcommand(1);
  std::function<Response()> action;

  std::string f1, f2, place_s, a_s, b_s, cert_s, primes_s, sig_s, minus_s, det_s;
  int j = 0, n = 0, dim = 0;
  std::uint64_t prime_bound = 0;
  std::vector<std::string> constraints;

  auto place_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--place,-p", place_s, "inf or a prime");
    if (required) o->required();
  };
  auto place = [&]() { return Place::parse(place_s); };

  {
    auto* s = app.add_subcommand("invariants", "global invariant profile");
    s->add_option("form", f1)->required();
    s->callback([&] {
      action = [&] {
        const auto q = form_arg(f1);
        const auto inv = global_invariants(q);
        Json hasse = Json::object();
        for (const auto& [v, c] : inv.hasse) hasse[v.to_string()] = c;
        Json local = Json::array();
        for (const auto& v : q.support()) {
          const auto hv = hasse_variants(q, v);
          Json row = {{"place", v.to_string()},
                      {"det", to_string(LocalClass::of(q.det(), v).representative())},
                      {"hasse", hv.c},
                      {"hasse_om", hv.c_om}};
          row["hasse_hw"] = hv.eps_hw ? Json(*hv.eps_hw) : Json(nullptr);
          local.push_back(row);
        }
        return Response{{{"form", form_json(q)},
                         {"dim", inv.dim},
                         {"det", inv.det.to_string()},
                         {"disc", inv.disc.to_string()},
                         {"signature", {inv.signature.plus, inv.signature.minus}},
                         {"hasse", hasse},
                         {"local", local}},
                        std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("hilbert", "Hilbert symbol (a,b) at a place, or its ramification set");
    s->add_option("a", a_s)->required();
    s->add_option("b", b_s)->required();
    place_opt(s, false);
    s->callback([&] {
      action = [&] {
        const Rational a = parse_rational(a_s), b = parse_rational(b_s);
        if (!place_s.empty()) return Response{{{"symbol", hilbert_symbol(a, b, place())}}, std::nullopt};
        return Response{{{"ramified", places_json(hilbert_support(a, b))}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("isometric", "isometry over Q or over Q_v");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    place_opt(s, false);
    s->callback([&] {
      action = [&] {
        const auto q1 = form_arg(f1), q2 = form_arg(f2);
        const bool r = place_s.empty() ? globally_isometric(q1, q2) : local_isometric(q1, q2, place());
        return Response{r, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("isotropic", "isotropy over Q (with a witness when small) or over Q_v");
    s->add_option("form", f1)->required();
    place_opt(s, false);
    s->callback([&] {
      action = [&] {
        const auto q = form_arg(f1);
        if (!place_s.empty()) return Response{{{"isotropic", local_isotropic(q, place())}}, std::nullopt};
        const auto res = globally_isotropic(q);
        Json w = nullptr;
        if (res.witness) {
          w = Json::array();
          for (const auto& x : *res.witness) w.push_back(to_string(x));
        }
        return Response{{{"isotropic", res.isotropic}, {"witness", w}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("witt", "Witt index over Q_v");
    s->add_option("form", f1)->required();
    place_opt(s, true);
    s->callback([&] {
      action = [&] { return Response{local_witt_index(form_arg(f1), place()), std::nullopt}; };
    });
  }
  {
    auto* s = app.add_subcommand("tits-index", "Tits index of SO(q) over Q_v");
    s->add_option("form", f1)->required();
    place_opt(s, true);
    s->callback([&] {
      action = [&] { return Response{tits_json(tits_index(form_arg(f1), place())), std::nullopt}; };
    });
  }
  {
    auto* s = app.add_subcommand("similar", "a scalar lambda with lambda*q1 isometric to q2");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->callback([&] {
      action = [&] {
        const auto l = similar(form_arg(f1), form_arg(f2));
        return Response{{{"similar", l.has_value()}, {"lambda", optional_class(l)}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("isogroupic", "isomorphism of the special orthogonal groups");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->callback([&] {
      action = [&] {
        const auto g = isogroupic(form_arg(f1), form_arg(f2));
        const char* v = g.verdict == IsogroupyVerdict::Yes  ? "Yes"
                        : g.verdict == IsogroupyVerdict::No ? "No"
                                                            : "UnknownEvenDim";
        return Response{{{"verdict", v}, {"lambda", optional_class(g.lambda)}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("subform", "whether r is a subform of q");
    s->add_option("r", f1)->required();
    s->add_option("q", f2)->required();
    s->callback([&] {
      action = [&] { return Response{is_subform(form_arg(f1), form_arg(f2)), std::nullopt}; };
    });
  }
  using Builder = std::function<SubformWitness(const DiagonalForm&, const DiagonalForm&, Place)>;
  for (auto [name, build] : {std::pair<const char*, Builder>{"witness-odd", distinguishing_subform_odd},
                             std::pair<const char*, Builder>{"witness-even1", distinguishing_subform_even_codim1},
                             std::pair<const char*, Builder>{"witness-even2", distinguishing_subform_even_codim2}}) {
    auto* s = app.add_subcommand(name, "distinguishing subform with certificate");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    place_opt(s, true);
    s->callback([&, build = build] {
      action = [&, build] {
        const auto w = build(form_arg(f1), form_arg(f2), place());
        return Response{{{"r", form_json(w.r)}, {"t", form_json(w.t)}}, to_json(w.certificate)};
      };
    });
  }
  {
    auto* s = app.add_subcommand("witness-real", "deletion subform distinguishing the real signatures");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->add_option("--j", j, "subform dimension")->required();
    s->callback([&] {
      action = [&] {
        const auto w = real_distinguishing_subform(form_arg(f1), form_arg(f2), j);
        return Response{{{"which", w.which}, {"indices", w.indices}, {"r", form_json(w.certificate.r)}},
                        to_json(w.certificate)};
      };
    });
  }
  {
    auto* s = app.add_subcommand("verify-cert", "replay a certificate (JSON text or @path)");
    s->add_option("certificate", cert_s)->required();
    s->callback([&] {
      action = [&] {
        const bool file = !cert_s.empty() && cert_s[0] == '@';
        const std::string text = file ? read_file(cert_s.substr(1)) : cert_s;
        Json doc = parse_json_text(text, file ? cert_s.substr(1) : "certificate");
        if (doc.is_object() && doc.contains("certificate") && doc["certificate"].is_object()) {
          doc = doc["certificate"];
        }
        return Response{verify_certificate(certificate_from_json(doc)), std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("transfer", "complement t with r + t isometric to q (codim >= 3)");
    s->add_option("r", f1)->required();
    s->add_option("q", f2)->required();
    s->callback([&] {
      action = [&] {
        const auto r = form_arg(f1), q = form_arg(f2);
        const auto t = transfer_subform(r, q);
        return Response{{{"t", form_json(t)}, {"recomposed", globally_isometric(direct_sum(r, t), q)}},
                        std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("commensurable", "commensurability of two admissible forms");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->callback([&] {
      action = [&] { return Response{commensurable(form_arg(f1), form_arg(f2)), std::nullopt}; };
    });
  }
  {
    auto* s = app.add_subcommand("dichotomy", "shared subspaces or a distinguishing certificate");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->callback([&] {
      action = [&] {
        const auto rep = dichotomy_report(form_arg(f1), form_arg(f2));
        Json range = nullptr;
        if (rep.dims_equal && rep.shared_lo <= rep.shared_hi) range = {rep.shared_lo, rep.shared_hi};
        Json result = {{"dims_equal", rep.dims_equal},
                       {"commensurable", rep.commensurable},
                       {"shared_range", range},
                       {"codim1_witness", rep.codim1_witness ? Json(true) : Json(false)},
                       {"codim2_witness", rep.codim2_witness ? Json(true) : Json(false)}};
        std::optional<Json> cert;
        if (rep.codim1_witness) cert = to_json(*rep.codim1_witness);
        if (rep.codim2_witness) cert = to_json(*rep.codim2_witness);
        return Response{result, cert};
      };
    });
  }
  {
    auto* s = app.add_subcommand("contains", "totally geodesic containment of q1 in q2");
    s->add_option("q1", f1)->required();
    s->add_option("q2", f2)->required();
    s->callback([&] {
      action = [&] {
        const auto res = contains_as_subspace(form_arg(f1), form_arg(f2));
        const char* v = res.verdict == Containment::Yes  ? "Yes"
                        : res.verdict == Containment::No ? "No"
                                                         : "InconclusiveCodimLE2";
        return Response{{{"verdict", v},
                         {"lambda", optional_class(res.lambda)},
                         {"obstruction", res.obstruction ? Json(res.obstruction->to_string()) : Json(nullptr)}},
                        std::nullopt};
      };
    });
  }
  {
    auto* m = app.add_subcommand("maclachlan", "commensurability classes of even-dimensional orbifolds");
    m->require_subcommand(1);
    auto* tp = m->add_subcommand("to-primes", "prime set of an odd-dimensional admissible form");
    tp->add_option("form", f1)->required();
    tp->callback([&] {
      action = [&] {
        const auto c = maclachlan_form_to_primes(form_arg(f1));
        const auto& a = *c.audit;
        return Response{{{"n", c.n},
                         {"primes", c.primes},
                         {"audit",
                          {{"e_s", a.e_s}, {"e_r", a.e_r}, {"f_s", a.f_s}, {"f_r", a.f_r}, {"consistent", a.consistent}}}},
                        std::nullopt};
      };
    });
    auto* tf = m->add_subcommand("to-form", "witness form for a prime set");
    tf->add_option("--n", n)->required();
    tf->add_option("--primes", primes_s, "comma-separated, may be empty");
    tf->callback([&] {
      action = [&] {
        const auto q = maclachlan_primes_to_form(n, prime_list(primes_s));
        return Response{{{"form", form_json(q)}}, std::nullopt};
      };
    });
    auto* en = m->add_subcommand("enumerate", "all classes with primes up to a bound");
    en->add_option("--n", n)->required();
    en->add_option("--prime-bound", prime_bound)->required();
    en->callback([&] {
      action = [&] {
        const auto classes = maclachlan_enumerate(n, prime_bound);
        Json list = Json::array();
        for (const auto& c : classes) list.push_back({{"primes", c.primes}, {"witness", form_json(*c.witness)}});
        return Response{{{"n", n}, {"count", classes.size()}, {"classes", list}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("synthesize", "a form with prescribed dimension, det, signature and Hasse set");
    s->add_option("--dim", dim)->required();
    s->add_option("--det", det_s)->required();
    s->add_option("--signature", sig_s, "plus,minus")->required();
    s->add_option("--minus-set", minus_s, "finite places with c = -1");
    s->callback([&] {
      action = [&] {
        SynthesisProfile p;
        p.dim = dim;
        p.det = squarefree_part(parse_rational(det_s));
        const auto comma = sig_s.find(',');
        if (comma == std::string::npos) fail(ErrorKind::ParseError, "signature must be 'plus,minus'");
        try {
          p.signature = {std::stoi(sig_s.substr(0, comma)), std::stoi(sig_s.substr(comma + 1))};
        } catch (const std::exception&) {
          fail(ErrorKind::ParseError, "signature must be 'plus,minus'");
        }
        for (auto q : prime_list(minus_s)) p.minus_set.push_back(Place::prime(q));
        const auto form = synthesize_form(p);
        return Response{{{"form", form_json(form)}}, std::nullopt};
      };
    });
  }
  {
    auto* s = app.add_subcommand("square-exists", "a squarefree integer in prescribed local classes");
    s->add_option("--at", constraints, "place:rational, repeatable")->required();
    s->callback([&] {
      action = [&] {
        std::vector<LocalClass> cs;
        for (const auto& c : constraints) {
          const auto colon = c.find(':');
          if (colon == std::string::npos) fail(ErrorKind::ParseError, "constraint '" + c + "' must be place:value");
          const Place v = Place::parse(c.substr(0, colon));
          cs.push_back(LocalClass::of(parse_rational(c.substr(colon + 1)), v));
        }
        return Response{{{"value", to_string(square_existence(cs))}}, std::nullopt};
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(out, {{"ok", false}, {"error", {{"kind", "ParseError"}, {"message", e.what()}}}});
    return 1;
  } catch (const Error& e) {
    emit(out, {{"ok", false}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    return exit_code(e.kind());
  }
  if (!action) {
    emit(out, {{"ok", false}, {"error", {{"kind", "ParseError"}, {"message", "no command"}}}});
    return 1;
  }
  try {
    const Response r = action();
    Json doc = {{"ok", true}, {"result", r.result}};
    if (r.certificate) doc["certificate"] = *r.certificate;
    emit(out, doc);
    return 0;
  } catch (const Error& e) {
    emit(out, {{"ok", false}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    return exit_code(e.kind());
  }
}

}  // namespace qforms::cli
