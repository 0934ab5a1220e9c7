#include "hgs/cli.hpp"
#include "hgs/error.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using hgs::cli::RunConfig;

void add_graph_inputs(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--graph", c.graph, "File with a graph6 line");
    sub->add_option("--g6", c.g6, "Graph in graph6, inline");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hereditary graph property toolkit: universal graphs, speeds, decompositions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hgs::cli::tool_version);

    RunConfig c;
    std::string format = "json";
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", c.threads, "Worker threads (0: HGS_THREADS or hardware)");
    app.add_option("--seed", c.seed, "Random seed");
    app.fallthrough();

    auto* construct = app.add_subcommand("construct", "Build U(k), U(r,k) or U*_v(r,k)");
    construct->add_option("--k", c.k, "Universal level")->required();
    construct->add_option("--r", c.r, "Layer count");
    construct->add_option("--pattern", c.pattern, "Pattern v as a 0/1 string");

    auto* shatter = app.add_subcommand("shatter", "Test whether A shatters B");
    add_graph_inputs(shatter, c);
    shatter->add_option("--a-set", c.a_set, "Comma-separated vertices of A")->required();
    shatter->add_option("--b-set", c.b_set, "Comma-separated vertices of B")->required();

    auto* chi = app.add_subcommand("chi-c", "Colouring number of a property");
    chi->add_option("--forbidden", c.forbidden, "File of forbidden graphs, graph6 per line")->required();
    chi->add_option("--r-max", c.r_max, "Search cap");

    auto* speed = app.add_subcommand("speed", "Exact |P_n| and entropy");
    speed->add_option("--forbidden", c.forbidden)->required();
    speed->add_option("--n", c.n, "Single order");
    speed->add_option("--n-max", c.n_max, "Orders 1..n-max");

    auto* census = app.add_subcommand("census", "Counts, lower bounds and decomposition budgets per n");
    census->add_option("--forbidden", c.forbidden)->required();
    census->add_option("--n-max", c.n_max)->required();
    census->add_option("--k", c.k, "Universal level (default 2)");
    census->add_option("--alpha", c.alpha, "Clone threshold (default 0.25)");
    census->add_option("--eps", c.eps, "Budget exponent (default 0.5)");
    census->add_option("--decompose-max-n", c.decompose_max_n, "Largest n for the decomposition census");

    auto* free = app.add_subcommand("count-free", "Count U(k)-free bipartite patterns");
    free->add_option("--m", c.m)->required();
    free->add_option("--n", c.n)->required();
    free->add_option("--k", c.k)->required();
    free->add_option("--mode", c.mode, "whole or cross")->check(CLI::IsMember({"whole", "cross"}));

    auto* attach = app.add_subcommand("count-attach", "Count attachments that do not shatter A");
    attach->add_option("--a", c.a)->required();
    attach->add_option("--n", c.n)->required();

    auto* sep = app.add_subcommand("separated", "Largest x-separated subset of one side");
    sep->add_option("--bip", c.bip, "Bipartite graph text file")->required();
    sep->add_option("--x", c.x)->required();
    sep->add_option("--side", c.side)->check(CLI::IsMember({"a", "b"}));
    sep->add_option("--k", c.k, "Level for the bound (default 3)");

    auto* sparsen = app.add_subcommand("sparsen", "Extract clone classes over a bad set");
    add_graph_inputs(sparsen, c);
    sparsen->add_option("--parts", c.parts, "Comma-separated part labels")->required();
    sparsen->add_option("--b-set", c.b_set)->required();
    sparsen->add_option("--alpha", c.alpha)->required();
    sparsen->add_option("--t", c.t)->required();
    sparsen->add_option("--form", c.form)->check(CLI::IsMember({"classes", "flipped"}));
    sparsen->add_option("--chain", c.chain, "Comma-separated stage targets");

    auto* pack = app.add_subcommand("pack", "Greedy packing of layered universal graphs");
    add_graph_inputs(pack, c);
    pack->add_option("--parts", c.parts)->required();
    pack->add_option("--k", c.k)->required();

    auto* decomp = app.add_subcommand("decompose", "Exceptional set plus U(k)-free parts");
    add_graph_inputs(decomp, c);
    decomp->add_option("--r", c.r);
    decomp->add_option("--k", c.k)->required();
    decomp->add_option("--alpha", c.alpha)->required();
    decomp->add_option("--parts", c.parts, "Initial part labels (skips the partitioner)");
    decomp->add_option("--eps", c.eps, "Budget exponent");

    auto* verify = app.add_subcommand("verify", "Re-check a certificate");
    verify->add_option("--certificate", c.certificate, "JSON certificate or report")->required();
    verify->add_option("--eps", c.eps, "Also require |A| <= n^(1-eps)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        c.format = hgs::cli::parse_format(format);
        const auto report = hgs::cli::run(c);
        std::cout << report.render(c.format);
        return report.exit_code;
    } catch (const hgs::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const hgs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
