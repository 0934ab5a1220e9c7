#include "hgs/cli.hpp"

#include "hgs/enumerate.hpp"
#include "hgs/error.hpp"
#include "hgs/freeness.hpp"
#include "hgs/graph6.hpp"
#include "hgs/hereditary.hpp"
#include "hgs/structure.hpp"
#include "hgs/universal.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

namespace hgs::cli {

using json = nlohmann::ordered_json;

namespace {

double round6(double x)
{
    return std::round(x * 1e6) / 1e6;
}

std::string read_file(const std::string& path, const char* flag)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError(std::string(flag) + ": cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class T>
T need(const std::optional<T>& v, const char* flag)
{
    if (!v)
        throw UsageError("missing " + std::string(flag));
    return *v;
}

std::vector<int> parse_list(const std::string& text, const char* flag)
{
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
        }
        if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
            throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

VertexSet parse_set(const std::string& text, const char* flag, int n)
{
    if (text.empty())
        throw UsageError("missing " + std::string(flag));
    VertexSet s;
    for (int v : parse_list(text, flag)) {
        if (v < 0 || v >= n)
            throw UsageError(std::string(flag) + ": vertex " + std::to_string(v) + " outside [0," + std::to_string(n) + ")");
        s = s.with(v);
    }
    return s;
}

Graph load_graph(const RunConfig& c)
{
    if (!c.g6.empty())
        return graph6_decode(c.g6);
    if (c.graph.empty())
        throw UsageError("missing --graph or --g6");
    const auto graphs = graph6_decode_lines(read_file(c.graph, "--graph"));
    if (graphs.empty())
        throw InvalidArgument("--graph", "no graph in '" + c.graph + "'");
    return graphs.front();
}

PropertySpec load_spec(const RunConfig& c)
{
    if (c.forbidden.empty())
        throw UsageError("missing --forbidden");
    return PropertySpec::from_graph6(read_file(c.forbidden, "--forbidden"));
}

PartLabeling labels_from(const std::vector<int>& labels, std::optional<int> r, const char* where)
{
    int parts = 0;
    for (int l : labels) {
        if (l < 0)
            throw InvalidArgument(where, "negative part label");
        parts = std::max(parts, l + 1);
    }
    if (r) {
        if (*r < parts)
            throw InvalidArgument(where, "labels exceed r");
        parts = *r;
    }
    return PartLabeling(parts, labels);
}

PartLabeling load_parts(const RunConfig& c, int n)
{
    if (c.parts.empty())
        throw UsageError("missing --parts");
    const auto labels = parse_list(c.parts, "--parts");
    if (static_cast<int>(labels.size()) != n)
        throw UsageError("--parts: expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    return labels_from(labels, c.r, "--parts");
}

json set_json(VertexSet s)
{
    json a = json::array();
    s.for_each([&](int v) { a.push_back(v); });
    return a;
}

VertexSet set_from_json(const json& j)
{
    VertexSet s;
    for (const auto& v : j) {
        const int x = v.get<int>();
        if (x < 0 || x >= max_order)
            throw InvalidArgument("certificate", "vertex out of range");
        s = s.with(x);
    }
    return s;
}

json table(std::vector<std::string> columns)
{
    json t;
    t["columns"] = std::move(columns);
    t["rows"] = json::array();
    return t;
}

json config_echo(const RunConfig& c)
{
    json j;
    auto str = [&](const char* key, const std::string& v) {
        if (!v.empty())
            j[key] = v;
    };
    auto num = [&](const char* key, const auto& v) {
        if (v)
            j[key] = *v;
    };
    str("forbidden", c.forbidden);
    str("graph", c.graph);
    str("g6", c.g6);
    str("bip", c.bip);
    str("certificate", c.certificate);
    str("parts", c.parts);
    str("a_set", c.a_set);
    str("b_set", c.b_set);
    str("chain", c.chain);
    str("pattern", c.pattern);
    num("n", c.n);
    num("n_max", c.n_max);
    num("m", c.m);
    num("k", c.k);
    num("r", c.r);
    num("r_max", c.r_max);
    num("x", c.x);
    num("t", c.t);
    num("a", c.a);
    num("alpha", c.alpha);
    num("eps", c.eps);
    j["mode"] = c.mode;
    j["side"] = c.side;
    j["form"] = c.form;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["decompose_max_n"] = c.decompose_max_n;
    return j;
}

json packing_json(const PackingReport& rep)
{
    json j;
    j["k"] = rep.k;
    j["excluded"] = set_json(rep.excluded);
    j["pieces"] = json::array();
    for (const auto& p : rep.pieces) {
        json piece;
        piece["level"] = p.level;
        piece["vertices"] = set_json(p.vertices);
        piece["layers"] = json::array();
        for (VertexSet l : p.layers)
            piece["layers"].push_back(set_json(l));
        piece["placement"] = p.placement;
        j["pieces"].push_back(piece);
    }
    j["residual"] = json::array();
    for (VertexSet s : rep.residual)
        j["residual"].push_back(set_json(s));
    j["skipped_levels"] = rep.skipped_levels;
    j["search_order"] = rep.search_order;
    return j;
}

PackingReport packing_from_json(const json& j)
{
    PackingReport rep;
    rep.k = j.at("k").get<int>();
    rep.excluded = set_from_json(j.at("excluded"));
    for (const auto& p : j.at("pieces")) {
        PackingPiece piece;
        piece.level = p.at("level").get<int>();
        piece.vertices = set_from_json(p.at("vertices"));
        for (const auto& l : p.at("layers"))
            piece.layers.push_back(set_from_json(l));
        piece.placement = p.at("placement").get<std::vector<int>>();
        rep.pieces.push_back(std::move(piece));
    }
    for (const auto& s : j.at("residual"))
        rep.residual.push_back(set_from_json(s));
    rep.skipped_levels = j.value("skipped_levels", std::vector<int>{});
    return rep;
}

json decomposition_json(const Graph& g, const DecompositionCertificate& cert)
{
    json j;
    j["kind"] = "decomposition";
    j["graph6"] = graph6_encode(g);
    j["n"] = g.order();
    j["r"] = cert.r;
    j["k"] = cert.k;
    j["alpha"] = cert.alpha;
    j["eps_out"] = cert.eps_out;
    j["a"] = set_json(cert.a);
    j["parts"] = json::array();
    for (VertexSet s : cert.parts)
        j["parts"].push_back(set_json(s));
    j["a_size"] = cert.a.size();
    j["budget"] = round6(cert.budget);
    j["budget_met"] = cert.budget_met;
    const auto& prov = cert.provenance;
    json p;
    p["parts_source"] = prov.parts_source;
    p["initial_parts"] = prov.initial_parts.labels();
    p["bad_set"] = set_json(prov.bad_set.set);
    p["bad_set_maximum"] = prov.bad_set.maximum;
    p["adjusted_parts"] = prov.adjustment.labeling.labels();
    p["moved"] = prov.adjustment.moved;
    p["symmetric_difference"] = prov.adjustment.symmetric_difference;
    p["adjustment_valid"] = prov.adjustment.valid();
    p["adjustment_diagnosis"] = prov.adjustment.diagnosis;
    p["packing"] = packing_json(prov.packing);
    j["provenance"] = p;
    return j;
}

json packing_certificate(const Graph& g, const PartLabeling& parts, const PackingReport& rep)
{
    json j;
    j["kind"] = "packing";
    j["graph6"] = graph6_encode(g);
    j["parts"] = parts.labels();
    j["r"] = parts.part_count();
    j["packing"] = packing_json(rep);
    return j;
}

json sparsening_certificate(const Graph& g, const PartLabeling& parts, const SparseningOutput& out)
{
    json j;
    j["kind"] = "sparsening";
    j["graph6"] = graph6_encode(g);
    j["parts"] = parts.labels();
    j["r"] = parts.part_count();
    j["form"] = out.form == SparseningForm::classes ? "classes" : "flipped";
    j["t"] = out.t;
    j["b_prime"] = set_json(out.b_prime);
    j["classes"] = json::array();
    for (const auto& part_classes : out.classes) {
        json row = json::array();
        for (VertexSet s : part_classes)
            row.push_back(set_json(s));
        j["classes"].push_back(row);
    }
    return j;
}

// ---- commands --------------------------------------------------------------

json cmd_construct(const RunConfig& c)
{
    const int k = need(c.k, "--k");
    json res;
    if (!c.r && c.pattern.empty()) {
        const UniversalGraph u = construct_universal(k);
        res["graph6"] = graph6_encode(u.graph);
        res["order"] = u.graph.order();
        res["edges"] = u.graph.edge_count();
        res["a"] = set_json(u.a);
        res["b"] = set_json(u.b);
        res["verified"] = shatters(u.graph, u.a, u.b).has_value();
        return res;
    }
    const int r = c.r ? *c.r : static_cast<int>(c.pattern.size());
    const LayeredUniversal u = c.pattern.empty() ? construct_generalized_universal(r, k)
                                                 : construct_universal_star(r, k, VPattern::parse(c.pattern));
    res["graph6"] = graph6_encode(u.graph);
    res["order"] = u.graph.order();
    res["edges"] = u.graph.edge_count();
    res["layer_sizes"] = json::array();
    bool ok = true;
    VertexSet prefix;
    for (VertexSet l : u.layers) {
        res["layer_sizes"].push_back(l.size());
        if (!prefix.empty())
            ok = ok && shatters(u.graph, l, prefix).has_value();
        prefix |= l;
    }
    if (u.pattern)
        res["pattern"] = u.pattern->to_string();
    res["verified"] = ok;
    return res;
}

json cmd_shatter(const RunConfig& c)
{
    const Graph g = load_graph(c);
    const VertexSet a = parse_set(c.a_set, "--a-set", g.order());
    const VertexSet b = parse_set(c.b_set, "--b-set", g.order());
    json res;
    const auto w = shatters(g, a, b);
    res["shatters"] = w.has_value();
    if (w) {
        res["shattered"] = set_json(w->shattered);
        res["realizers"] = w->realizers;
    }
    return res;
}

json cmd_chi_c(const RunConfig& c)
{
    const PropertySpec spec = load_spec(c);
    const ColouringNumber cn = colouring_number(spec, c.r_max ? *c.r_max : max_colouring_cap);
    json res;
    res["colouring_number"] = cn.r;
    res["witness"] = cn.witness ? json(cn.witness->to_string()) : json(nullptr);
    res["at_cap"] = cn.at_cap;
    res["degenerate"] = cn.degenerate;
    res["forbidden"] = json::array();
    for (const Graph& f : spec.forbidden())
        res["forbidden"].push_back(graph6_encode(f));
    return res;
}

json cmd_speed(const RunConfig& c)
{
    const PropertySpec spec = load_spec(c);
    int lo = 0, hi = 0;
    if (c.n) {
        lo = hi = *c.n;
    } else {
        lo = 1;
        hi = need(c.n_max, "--n or --n-max");
    }
    json res;
    json t = table({"n", "count", "entropy"});
    for (int n = lo; n <= hi; ++n) {
        const SpeedRow row = speed(spec, n, c.threads);
        t["rows"].push_back({n, row.count, row.entropy ? json(round6(*row.entropy)) : json(nullptr)});
        if (lo == hi) {
            res["n"] = n;
            res["count"] = row.count;
            res["entropy"] = row.entropy ? json(round6(*row.entropy)) : json(nullptr);
        }
    }
    res["table"] = t;
    return res;
}

json cmd_census(const RunConfig& c)
{
    const PropertySpec spec = load_spec(c);
    const int n_max = need(c.n_max, "--n-max");
    if (n_max < 1 || n_max > max_enumeration_order)
        throw UsageError("--n-max: must be in [1, 8]");
    const ColouringNumber cn = colouring_number(spec);
    const int r = cn.r;
    const int k = c.k ? *c.k : 2;
    const double alpha = c.alpha ? *c.alpha : 0.25;
    const double eps = c.eps ? *c.eps : 0.5;

    // Patterns H(r', v) inside the property, r' <= r: the lower bound of the
    // counting argument takes the best of these.
    std::vector<VPattern> inside;
    for (int rr = 1; rr <= r; ++rr)
        for (unsigned code = 0; code < (1u << rr); ++code) {
            const VPattern v = VPattern::from_code(rr, code);
            if (hrv_inside(spec, v))
                inside.push_back(v);
        }

    json res;
    res["colouring_number"] = r;
    res["witness"] = cn.witness ? json(cn.witness->to_string()) : json(nullptr);
    res["k"] = k;
    res["alpha"] = alpha;
    res["eps"] = eps;
    json t = table({"n", "count", "entropy", "hrv_lower", "hrv_pattern", "log2_count", "abt_log2_lower",
        "abt_log2_upper", "decomposed", "budget_met", "budget_fraction", "max_bad_set"});
    for (int n = 1; n <= n_max; ++n) {
        const SpeedRow row = speed(spec, n, c.threads);
        std::uint64_t best = 0;
        std::string best_v;
        for (const VPattern& v : inside) {
            const std::uint64_t cnt = count_hrv(n, v.length(), v, c.threads);
            if (cnt > best) {
                best = cnt;
                best_v = v.to_string();
            }
        }
        json abt_lo = nullptr, abt_hi = nullptr;
        if (r >= 1) {
            const AbtBounds ab = abt_bounds(n, r, eps);
            abt_lo = round6(ab.log2_lower);
            abt_hi = round6(ab.log2_upper);
        }
        json decomposed = nullptr, met = nullptr, fraction = nullptr, max_b = nullptr;
        if (r >= 1 && n <= c.decompose_max_n && n >= r) {
            std::atomic<std::uint64_t> done{0}, ok{0};
            std::atomic<int> biggest{0};
            const std::uint64_t total = std::uint64_t{1} << pair_count(n);
            parallel_ranges(total, c.threads ? c.threads : thread_count(),
                [&](int, std::uint64_t begin, std::uint64_t end) {
                    GraphStream s(n, [&](const Graph& g) { return is_member(spec, g); }, begin, end);
                    std::uint64_t local_done = 0, local_ok = 0;
                    int local_big = 0;
                    while (auto g = s.next()) {
                        DecomposeOptions opt;
                        opt.eps_out = eps;
                        const DecompositionCertificate cert = decompose(*g, r, k, alpha, opt);
                        ++local_done;
                        if (cert.budget_met)
                            ++local_ok;
                        local_big = std::max(local_big, cert.provenance.bad_set.set.size());
                    }
                    done += local_done;
                    ok += local_ok;
                    int prev = biggest.load();
                    while (local_big > prev && !biggest.compare_exchange_weak(prev, local_big)) {
                    }
                });
            decomposed = done.load();
            met = ok.load();
            fraction = done ? json(round6(static_cast<double>(ok) / static_cast<double>(done))) : json(nullptr);
            max_b = biggest.load();
        }
        t["rows"].push_back({n, row.count, row.entropy ? json(round6(*row.entropy)) : json(nullptr), best, best_v,
            row.count ? json(round6(std::log2(static_cast<double>(row.count)))) : json(nullptr), abt_lo, abt_hi,
            decomposed, met, fraction, max_b});
        if (best > row.count)
            throw StepFailed("census", "count_hrv exceeds |P_n| at n = " + std::to_string(n));
    }
    res["table"] = t;
    return res;
}

json cmd_count_free(const RunConfig& c)
{
    const int m = need(c.m, "--m");
    const int n = need(c.n, "--n");
    const int k = need(c.k, "--k");
    UkMode mode;
    if (c.mode == "whole")
        mode = UkMode::whole;
    else if (c.mode == "cross")
        mode = UkMode::cross;
    else
        throw UsageError("--mode: expected whole or cross");
    const std::uint64_t count = count_uk_free_bipartite(m, n, k, mode, c.threads);
    json res;
    res["count"] = count;
    res["total"] = std::uint64_t{1} << (m * n);
    res["log2_count"] = round6(std::log2(static_cast<double>(count)));
    return res;
}

json cmd_count_attach(const RunConfig& c)
{
    const int a = need(c.a, "--a");
    const int n = need(c.n, "--n");
    const AttachmentCount ac = count_nonshattering_attachments(a, n);
    json res;
    res["exact"] = ac.exact;
    res["printed_bound"] = ac.printed_bound;
    res["corrected_bound"] = ac.corrected_bound;
    res["within_printed"] = ac.exact <= ac.printed_bound;
    res["within_corrected"] = ac.exact <= ac.corrected_bound;
    return res;
}

json cmd_separated(const RunConfig& c)
{
    if (c.bip.empty())
        throw UsageError("missing --bip");
    const BipGraph g = BipGraph::parse(read_file(c.bip, "--bip"));
    const int x = need(c.x, "--x");
    Side side;
    if (c.side == "a")
        side = Side::a;
    else if (c.side == "b")
        side = Side::b;
    else
        throw UsageError("--side: expected a or b");
    const SeparatedSubset s = max_separated_subset(g, side, x);
    const int k = c.k ? *c.k : 3;
    json res;
    res["m"] = g.m();
    res["n"] = g.n();
    res["members"] = set_json(s.members);
    res["size"] = s.members.size();
    res["exact"] = s.exact;
    const double bound = separated_subset_bound(g.m(), g.n(), x, k);
    res["bound"] = round6(bound);
    res["within_bound"] = s.members.size() <= bound;
    return res;
}

json cmd_sparsen(const RunConfig& c)
{
    const Graph g = load_graph(c);
    const PartLabeling parts = load_parts(c, g.order());
    const VertexSet b = parse_set(c.b_set, "--b-set", g.order());
    SparseningOptions opt;
    if (c.form == "classes")
        opt.form = SparseningForm::classes;
    else if (c.form == "flipped")
        opt.form = SparseningForm::flipped;
    else
        throw UsageError("--form: expected classes or flipped");
    if (!c.chain.empty())
        opt.chain = parse_list(c.chain, "--chain");
    const SparseningOutput out = extract_clone_classes(g, parts, b, need(c.alpha, "--alpha"), need(c.t, "--t"), c.seed, opt);
    std::string why;
    const bool ok = verify_sparsening(g, parts, out, &why);
    json res;
    res["b_prime"] = set_json(out.b_prime);
    res["delta"] = round6(out.delta);
    res["chain"] = out.chain;
    res["declared_threshold"] = out.declared_threshold;
    res["asymptotic_size_met"] = out.asymptotic_size_met;
    res["condition_a"] = out.condition_a;
    res["condition_b"] = out.condition_b;
    res["steps"] = json::array();
    for (const auto& s : out.steps)
        res["steps"].push_back({{"part", s.part}, {"target", s.target}, {"source", s.source},
            {"degenerate", s.degenerate}, {"iterations", s.iterations}, {"removed", s.removed},
            {"distinguishing_attempts", s.distinguishing_attempts}, {"size_bound_met", s.size_bound_met}});
    res["verified"] = ok;
    if (!ok)
        res["failure"] = why;
    res["certificate"] = sparsening_certificate(g, parts, out);
    return res;
}

json cmd_pack(const RunConfig& c)
{
    const Graph g = load_graph(c);
    const PartLabeling parts = load_parts(c, g.order());
    const PackingReport rep = extract_universal_packing(g, parts, need(c.k, "--k"));
    std::string why_s, why_m;
    json res;
    res["pieces"] = rep.pieces.size();
    res["covered"] = rep.covered().size();
    res["structure_ok"] = check_packing_structure(g, parts, rep, &why_s);
    res["maximal"] = verify_packing_maximality(g, parts, rep, &why_m);
    if (!why_s.empty())
        res["structure_failure"] = why_s;
    if (!why_m.empty())
        res["maximality_failure"] = why_m;
    res["certificate"] = packing_certificate(g, parts, rep);
    return res;
}

json cmd_decompose(const RunConfig& c)
{
    const Graph g = load_graph(c);
    DecomposeOptions opt;
    if (c.eps)
        opt.eps_out = *c.eps;
    int r = 0;
    if (!c.parts.empty()) {
        opt.parts_hint = load_parts(c, g.order());
        r = opt.parts_hint->part_count();
    } else {
        r = need(c.r, "--r");
    }
    const DecompositionCertificate cert = decompose(g, r, need(c.k, "--k"), need(c.alpha, "--alpha"), opt);
    json res;
    res["a_size"] = cert.a.size();
    res["budget"] = round6(cert.budget);
    res["budget_met"] = cert.budget_met;
    res["verified"] = verify_decomposition(g, cert, std::nullopt);
    res["certificate"] = decomposition_json(g, cert);
    return res;
}

json cmd_verify(const RunConfig& c, int& exit_code)
{
    if (c.certificate.empty())
        throw UsageError("missing --certificate");
    json cert;
    try {
        cert = json::parse(read_file(c.certificate, "--certificate"));
    } catch (const json::parse_error& e) {
        throw InvalidArgument("verify", std::string("certificate is not JSON: ") + e.what());
    }
    if (cert.contains("results") && cert["results"].contains("certificate"))
        cert = cert["results"]["certificate"]; // a whole report was passed
    json res;
    std::string why;
    bool ok = false;
    try {
        const std::string kind = cert.at("kind").get<std::string>();
        const Graph g = graph6_decode(cert.at("graph6").get<std::string>());
        res["kind"] = kind;
        if (kind == "decomposition") {
            DecompositionCertificate d;
            d.k = cert.at("k").get<int>();
            d.r = cert.at("r").get<int>();
            d.a = set_from_json(cert.at("a"));
            for (const auto& s : cert.at("parts"))
                d.parts.push_back(set_from_json(s));
            std::optional<double> budget;
            if (c.eps)
                budget = *c.eps;
            ok = verify_decomposition(g, d, budget, &why);
        } else if (kind == "packing") {
            const PartLabeling parts = labels_from(cert.at("parts").get<std::vector<int>>(), cert.at("r").get<int>(), "verify");
            if (parts.order() != g.order())
                throw InvalidArgument("verify", "part labels do not match the graph");
            const PackingReport rep = packing_from_json(cert.at("packing"));
            ok = check_packing_structure(g, parts, rep, &why) && verify_packing_maximality(g, parts, rep, &why);
        } else if (kind == "sparsening") {
            const PartLabeling parts = labels_from(cert.at("parts").get<std::vector<int>>(), cert.at("r").get<int>(), "verify");
            if (parts.order() != g.order())
                throw InvalidArgument("verify", "part labels do not match the graph");
            SparseningOutput out;
            out.form = cert.at("form").get<std::string>() == "flipped" ? SparseningForm::flipped : SparseningForm::classes;
            out.t = cert.at("t").get<int>();
            out.b_prime = set_from_json(cert.at("b_prime"));
            for (const auto& row : cert.at("classes")) {
                std::vector<VertexSet> cls;
                for (const auto& s : row)
                    cls.push_back(set_from_json(s));
                out.classes.push_back(cls);
            }
            ok = verify_sparsening(g, parts, out, &why);
        } else {
            throw InvalidArgument("verify", "unknown certificate kind '" + kind + "'");
        }
    } catch (const json::exception& e) {
        throw InvalidArgument("verify", std::string("malformed certificate: ") + e.what());
    }
    res["valid"] = ok;
    if (!ok)
        res["failure"] = why;
    exit_code = ok ? 0 : 1;
    return res;
}

std::string scalar_text(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string csv_cell(const json& v)
{
    std::string s = scalar_text(v);
    if (v.is_null())
        return "";
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"')
                q += '"';
            q += ch;
        }
        return q + "\"";
    }
    return s;
}

} // namespace

Format parse_format(const std::string& name)
{
    if (name == "json")
        return Format::json;
    if (name == "csv")
        return Format::csv;
    if (name == "text")
        return Format::text;
    throw UsageError("--format: expected json, csv or text");
}

Report run(const RunConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    json results;
    const std::string& cmd = config.command;
    if (cmd == "construct")
        results = cmd_construct(config);
    else if (cmd == "shatter")
        results = cmd_shatter(config);
    else if (cmd == "chi-c")
        results = cmd_chi_c(config);
    else if (cmd == "speed")
        results = cmd_speed(config);
    else if (cmd == "census")
        results = cmd_census(config);
    else if (cmd == "count-free")
        results = cmd_count_free(config);
    else if (cmd == "count-attach")
        results = cmd_count_attach(config);
    else if (cmd == "separated")
        results = cmd_separated(config);
    else if (cmd == "sparsen")
        results = cmd_sparsen(config);
    else if (cmd == "pack")
        results = cmd_pack(config);
    else if (cmd == "decompose")
        results = cmd_decompose(config);
    else if (cmd == "verify")
        results = cmd_verify(config, rep.exit_code);
    else
        throw UsageError("unknown command '" + cmd + "'");
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    rep.doc["tool"] = "hgs";
    rep.doc["version"] = tool_version;
    rep.doc["schema"] = schema_version;
    rep.doc["command"] = cmd;
    rep.doc["config"] = config_echo(config);
    rep.doc["results"] = std::move(results);
    rep.doc["timing_ms"] = std::round(ms * 1000) / 1000;
    return rep;
}

std::string Report::render(Format format) const
{
    const json& results = doc.at("results");
    std::ostringstream out;
    if (format == Format::json) {
        out << doc.dump(2) << '\n';
        return out.str();
    }
    if (format == Format::csv) {
        if (results.contains("table")) {
            const json& t = results["table"];
            bool first = true;
            for (const auto& col : t["columns"]) {
                out << (first ? "" : ",") << col.get<std::string>();
                first = false;
            }
            out << '\n';
            for (const auto& row : t["rows"]) {
                first = true;
                for (const auto& cell : row) {
                    out << (first ? "" : ",") << csv_cell(cell);
                    first = false;
                }
                out << '\n';
            }
        } else {
            out << "key,value\n";
            for (const auto& [key, v] : results.items())
                if (!v.is_structured())
                    out << key << ',' << csv_cell(v) << '\n';
        }
        return out.str();
    }
    out << doc.at("command").get<std::string>() << " (hgs " << doc.at("version").get<std::string>()
        << ", seed " << doc.at("config").at("seed").dump() << ")\n";
    for (const auto& [key, v] : results.items()) {
        if (key == "table" || key == "certificate")
            continue;
        out << "  " << key << ": " << scalar_text(v) << '\n';
    }
    if (results.contains("table")) {
        const json& t = results["table"];
        std::vector<std::size_t> width;
        for (const auto& col : t["columns"])
            width.push_back(col.get<std::string>().size());
        for (const auto& row : t["rows"])
            for (std::size_t i = 0; i < row.size(); ++i)
                width[i] = std::max(width[i], scalar_text(row[i]).size());
        const auto& cols = t["columns"];
        std::size_t i = 0;
        for (i = 0; i < cols.size(); ++i)
            out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cols[i].get<std::string>();
        out << '\n';
        for (const auto& row : t["rows"]) {
            for (i = 0; i < row.size(); ++i)
                out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << scalar_text(row[i]);
            out << '\n';
        }
    }
    if (results.contains("certificate"))
        out << "  certificate: " << results["certificate"].dump() << '\n';
    return out.str();
}

} // namespace hgs::cli
