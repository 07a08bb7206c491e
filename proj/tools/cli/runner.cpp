#include "runner.hpp"

#include <msch/bundle.hpp>
#include <msch/error.hpp>
#include <msch/invariants.hpp>
#include <msch/monoid.hpp>
#include <msch/scheme.hpp>

#include <json.hpp>

#include <future>
#include <memory>
#include <mutex>
#include <sstream>

namespace msch::cli {

namespace {

using json = nlohmann::ordered_json;

struct Output {
    std::vector<std::string> lines;
    json data = json::object();
    std::optional<std::string> error;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string coords(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
    return out + ")";
}

json coords_json(const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

class Environment {
  public:
    Environment(const Manifest& m, const Options& o) : m_(m), o_(o) {}

    const Manifest& manifest() const { return m_; }
    const Options& options() const { return o_; }

    std::shared_ptr<const Scheme> scheme(const std::string& name) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(name);
            if (it != cache_.end()) return it->second;
        }
        auto built = std::make_shared<const Scheme>(build(name));
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(name, built).first->second;
    }

  private:
    const Manifest& m_;
    const Options& o_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const Scheme>> cache_;

    Scheme build(const std::string& name) {
        if (const MonoidDef* md = m_.monoid(name)) return spec(md->presentation);
        const SchemeDef& d = *m_.scheme(name);
        switch (d.kind) {
        case SchemeDef::Kind::Spec: return spec(m_.monoid(d.first)->presentation);
        case SchemeDef::Kind::Projective: return projective_space(d.dimension);
        case SchemeDef::Kind::Product: return product(*scheme(d.first), *scheme(d.second));
        case SchemeDef::Kind::Glue: break;
        }
        std::vector<MonoidPresentation> charts;
        std::vector<std::string> names;
        std::map<std::string, std::size_t> index;
        for (const auto& c : d.charts) {
            index[c.name] = charts.size();
            charts.push_back(m_.monoid(c.monoid)->presentation);
            names.push_back(c.name);
        }
        std::vector<Overlap> overlaps;
        for (const auto& o : d.overlaps)
            overlaps.push_back(
                Overlap{index[o.first], index[o.second], m_.monoid(o.monoid)->presentation, o.from_first, o.from_second});
        return glue(charts, overlaps, names);
    }
};

void group_lines(Output& out, const Scheme& x, const AbSheaf& f) {
    json points = json::array();
    for (std::size_t p = 0; p < x.size(); ++p) {
        out.lines.push_back(x.space().label(p) + ": " + f.stalk(p).to_string());
        points.push_back({{"point", x.space().label(p)}, {"group", f.stalk(p).to_string()}});
    }
    json maps = json::array();
    for (const auto& [lo, hi] : x.space().covers()) {
        const AbMap& r = f.restriction(hi, lo);
        std::string kind = is_isomorphism(r) ? "isomorphism"
                           : is_injective(r) ? "injective"
                           : is_surjective(r) ? "surjective"
                                              : "neither";
        out.lines.push_back(x.space().label(hi) + " -> " + x.space().label(lo) + ": " + kind);
        maps.push_back({{"from", x.space().label(hi)}, {"to", x.space().label(lo)}, {"kind", kind}});
    }
    out.data["stalks"] = points;
    out.data["restrictions"] = maps;
}

void verdict(Output& out, const Scheme& x, const SchemeVerdict& v) {
    std::string line = yes_no(v.holds);
    if (!v.holds && v.point) line += " at " + x.space().label(*v.point);
    if (!v.holds && !v.detail.empty()) line += ": " + v.detail;
    if (v.bound) line += " (bound " + std::to_string(v.bound) + ")";
    out.lines.push_back(line);
    out.data["holds"] = v.holds;
    if (v.point) out.data["point"] = x.space().label(*v.point);
    if (v.bound) out.data["bound"] = v.bound;
}

void check(Output& out, Environment& env, const std::string& prop, const Scheme& x) {
    std::size_t bound = env.options().bound;
    out.data["property"] = prop;
    if (prop == "s-smooth") {
        try {
            SSmoothResult r = is_s_smooth(x);
            out.data["holds"] = r.s_smooth;
            if (r.s_smooth) {
                std::string list;
                json coll = json::array();
                for (std::size_t p = 0; p < x.size(); ++p) {
                    const AbGroup& g = r.flasque.collection[p];
                    if (g.is_trivial()) continue;
                    std::string gs = g.to_string() == "Z^1" ? "Z" : g.to_string();
                    list += (list.empty() ? "" : ", ") + gs + " at " + x.space().label(p);
                    coll.push_back({{"point", x.space().label(p)}, {"group", g.to_string()}});
                }
                out.lines.push_back("true; collection: " + (list.empty() ? std::string("0") : list));
                out.data["collection"] = coll;
            } else {
                std::string at = r.flasque.failed_point ? x.space().label(*r.flasque.failed_point) : "?";
                out.lines.push_back("false; not s-flasque at " + at);
                out.data["point"] = at;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotSCancellative) throw;
            out.lines.push_back("false; not s-cancellative");
            out.data["holds"] = false;
        }
    } else if (prop == "s-cancellative") {
        verdict(out, x, is_s_cancellative_scheme(x));
    } else if (prop == "cancellative") {
        verdict(out, x, is_cancellative_scheme(x, bound));
    } else if (prop == "smooth") {
        verdict(out, x, is_smooth_scheme(x, bound));
    } else if (prop == "torsion-free") {
        verdict(out, x, is_torsion_free_scheme(x, bound));
    } else if (prop == "seminormal") {
        SchemeVerdict v;
        v.bound = bound;
        for (std::size_t p = 0; p < x.size() && v.holds; ++p) {
            SeminormalResult r = is_seminormal(x.stalk_monoid(p), bound);
            if (!r.seminormal) {
                v.holds = false;
                v.point = p;
                if (r.witness) v.detail = "witness " + coords(*r.witness);
            }
        }
        verdict(out, x, v);
    } else if (prop == "separated") {
        auto c = x.separation();
        std::string line = yes_no(c.separated);
        if (c.witness)
            line += "; " + x.space().label(c.witness->first) + " and " + x.space().label(c.witness->second) +
                    " meet without a greatest point";
        out.lines.push_back(line);
        out.data["holds"] = c.separated;
    } else if (prop == "connected") {
        out.lines.push_back(yes_no(x.is_connected()));
        out.data["holds"] = x.is_connected();
    }
}

void class_group(Output& out, const ClassGroup& c, std::optional<std::size_t> bound) {
    std::string head = c.group.to_string();
    if (bound) head += " (bound " + std::to_string(*bound) + ")";
    out.lines.push_back(head);
    out.lines.push_back("divisors: " + c.divisors.to_string());
    out.lines.push_back("pic: " + c.pic.to_string() + (c.matches_pic ? " (isomorphic)" : " (differs)"));
    out.data["group"] = c.group.to_string();
    if (bound) out.data["bound"] = *bound;
    out.data["divisors"] = c.divisors.to_string();
    out.data["pic"] = c.pic.to_string();
    out.data["matches_pic"] = c.matches_pic;
}

BundleCocycle resolve_bundle(const BundleDef& b, const Scheme& x) {
    BundleCocycle c;
    c.rank = b.rank;
    c.charts = x.charts();
    for (const auto& [ij, t] : b.transitions) {
        if (ij.first >= c.charts.size() || ij.second >= c.charts.size())
            throw Error(ErrorCode::InvalidArgument, "chart index out of range in transition " +
                                                        std::to_string(ij.first) + " " + std::to_string(ij.second));
        auto m = x.space().meet(c.charts[ij.first], c.charts[ij.second]);
        if (!m) throw Error(ErrorCode::NotSeparated, "charts meet without a greatest point");
        const MonoidPresentation& p = x.stalk(*m);
        Transition tr{{}, t.perm};
        for (const auto& w : t.units) {
            Exponents e(p.size(), 0);
            for (const auto& [g, k] : w) {
                auto i = p.index_of(g);
                if (!i) throw Error(ErrorCode::InvalidArgument, "'" + g + "' is not a generator at " + x.space().label(*m));
                e[*i] += k;
            }
            tr.units.push_back(e);
        }
        c.transitions[ij] = tr;
    }
    return c;
}

void oracle(Output& out, const Scheme& x) {
    if (!x.separation().separated) {
        out.lines.push_back("oracle: skipped (not separated)");
        out.data["oracle"] = "skipped";
        return;
    }
    AbSheaf u = units_sheaf(x);
    CochainComplex b = reduced_cech(u).complex;
    std::size_t top = std::max(x.dimension() + 1, b.length());
    for (std::size_t i = 0; i <= top; ++i)
        if (sheaf_cohomology(u, i) != cohomology(b, i))
            throw Error(ErrorCode::InvalidArgument, "cochain models disagree in degree " + std::to_string(i));
    out.lines.push_back("oracle: cochain models agree in degrees 0.." + std::to_string(top));
    out.data["oracle"] = "agree";
}

Output execute(Environment& env, const Task& t) {
    Output out;
    const Manifest& m = env.manifest();
    auto scheme_arg = [&](std::size_t k) { return env.scheme(t.args[k]); };
    bool uses_cohomology = false;
    std::shared_ptr<const Scheme> xs;
    try {
        if (t.name == "spec") {
            FinitePoset p;
            if (const MonoidDef* md = m.monoid(t.args[0]))
                p = spectrum(md->presentation).poset;
            else
                p = scheme_arg(0)->space();
            out.lines.push_back(std::to_string(p.size()) + " points");
            json pts = json::array(), edges = json::array();
            for (auto z : p.height_order()) {
                out.lines.push_back("  " + p.label(z) + " height " + std::to_string(p.height(z)));
                pts.push_back({{"point", p.label(z)}, {"height", p.height(z)}});
            }
            out.lines.push_back("hasse edges:");
            for (const auto& [lo, hi] : p.covers()) {
                out.lines.push_back("  " + p.label(lo) + " < " + p.label(hi));
                edges.push_back({p.label(lo), p.label(hi)});
            }
            out.data["points"] = pts;
            out.data["hasse"] = edges;
        } else if (t.name == "export") {
            std::istringstream in(export_algebra(m.monoid(t.args[0])->presentation));
            for (std::string line; std::getline(in, line);) out.lines.push_back(line);
            out.data["algebra"] = out.lines;
        } else if (t.name == "decompose") {
            const BundleDef& b = *m.bundle(t.args[0]);
            xs = env.scheme(b.scheme);
            uses_cohomology = true;
            BundleDecomposition d = decompose_bundle(*xs, resolve_bundle(b, *xs));
            std::string list;
            json cls = json::array();
            for (const auto& c : d.classes) {
                list += (list.empty() ? "" : ", ") + coords(c);
                cls.push_back(coords_json(c));
            }
            out.lines.push_back("classes: " + list + " in " + d.pic.to_string());
            out.lines.push_back(std::string("certificate: ") + (d.verified ? "verified" : "failed"));
            out.data["pic"] = d.pic.to_string();
            out.data["classes"] = cls;
            out.data["certificate"] = d.verified;
            if (!d.verified) out.error = "certificate did not verify";
        } else {
            std::size_t k = t.name == "check" ? 1 : 0;
            xs = scheme_arg(k);
            const Scheme& x = *xs;
            if (t.name == "describe") {
                std::string charts;
                for (auto c : x.charts()) charts += (charts.empty() ? "" : ", ") + x.space().label(c);
                out.lines = {"points: " + std::to_string(x.size()), "charts: " + charts,
                             "dimension: " + std::to_string(x.dimension()), "connected: " + yes_no(x.is_connected()),
                             "separated: " + yes_no(x.separation().separated)};
                out.data["points"] = x.size();
                out.data["charts"] = x.charts().size();
                out.data["dimension"] = x.dimension();
                out.data["connected"] = x.is_connected();
                out.data["separated"] = x.separation().separated;
            } else if (t.name == "units") {
                group_lines(out, x, units_sheaf(x));
            } else if (t.name == "quotient") {
                group_lines(out, x, s_quotient_sheaf(x));
            } else if (t.name == "pic") {
                uses_cohomology = true;
                AbGroup g = pic(x);
                out.lines.push_back(g.to_string());
                out.data["group"] = g.to_string();
            } else if (t.name == "cohomology") {
                uses_cohomology = true;
                std::optional<std::size_t> deg = env.options().degree;
                if (t.args.size() > 1) deg = std::stoul(t.args[1]);
                std::size_t lo = deg ? *deg : 0, hi = deg ? *deg : x.dimension();
                json groups = json::object();
                for (std::size_t i = lo; i <= hi; ++i) {
                    AbGroup g = unit_cohomology(x, i);
                    out.lines.push_back("H^" + std::to_string(i) + ": " + g.to_string());
                    groups[std::to_string(i)] = g.to_string();
                }
                out.data["degrees"] = groups;
            } else if (t.name == "class-group") {
                uses_cohomology = true;
                class_group(out, s_class_group(x), std::nullopt);
            } else if (t.name == "cartier") {
                uses_cohomology = true;
                CartierClassGroup c = cartier_class_group(x, env.options().bound);
                class_group(out, c.classes, c.bound);
            } else if (t.name == "vanishing") {
                uses_cohomology = true;
                VanishingReport r = vanishing_check(x);
                json groups = json::object();
                for (const auto& [i, g] : r.degrees) {
                    out.lines.push_back("H^" + std::to_string(i) + ": " + g.to_string());
                    groups[std::to_string(i)] = g.to_string();
                }
                std::string smooth = r.s_smooth_known ? yes_no(r.s_smooth) : "undetermined";
                out.lines.push_back("s-smooth: " + smooth);
                out.lines.push_back(std::string("vanishing above degree 1: ") +
                                    (r.violated ? "violated" : r.s_smooth ? "holds" : "not required"));
                out.data["degrees"] = groups;
                out.data["s_smooth"] = smooth;
                out.data["violated"] = r.violated;
                if (r.violated) out.error = "higher unit cohomology does not vanish";
            } else if (t.name == "check") {
                check(out, env, t.args[0], x);
            }
        }
        if (env.options().check_oracles && uses_cohomology && xs) oracle(out, *xs);
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

Report run(const Manifest& m, const Options& options) {
    Environment env(m, options);
    std::vector<Output> outputs(m.tasks.size());
    if (options.parallel) {
        std::vector<std::future<Output>> futures;
        for (const auto& t : m.tasks) futures.push_back(std::async(std::launch::async, [&env, &t] { return execute(env, t); }));
        for (std::size_t i = 0; i < futures.size(); ++i) outputs[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < m.tasks.size(); ++i) outputs[i] = execute(env, m.tasks[i]);
    }

    Report r;
    std::ostringstream text;
    json tasks = json::array();
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const Output& o = outputs[i];
        if (i) text << "\n";
        text << "== " << m.tasks[i].to_string() << "\n";
        for (const auto& l : o.lines) text << l << "\n";
        if (o.error) {
            text << "error: " << *o.error << "\n";
            r.exit_code = 1;
        }
        json entry = {{"task", m.tasks[i].to_string()}, {"status", o.error ? "error" : "ok"}};
        if (o.error) entry["error"] = *o.error;
        entry["result"] = o.data;
        entry["lines"] = o.lines;
        tasks.push_back(entry);
    }
    json doc;
    doc["flags"] = {{"bound", options.bound},
                    {"degree", options.degree ? json(*options.degree) : json(nullptr)},
                    {"check_oracles", options.check_oracles},
                    {"parallel", options.parallel}};
    doc["tasks"] = tasks;
    doc["exit_code"] = r.exit_code;
    r.text = text.str();
    r.json = doc.dump(2) + "\n";
    return r;
}

} // namespace msch::cli
