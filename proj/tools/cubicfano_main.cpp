// cubicfano: point counts, line counts and Hodge numbers for cubic
// hypersurfaces and their Fano varieties of lines.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cubicfano/commands.hpp"

namespace {

using cubicfano::Integer;
using cubicfano::cli::CubicSource;
using cubicfano::cli::OutputFormat;
using cubicfano::cli::RunConfig;

struct Flags {
    std::string named;
    std::string file;
    bool random = false;
    bool json = false;
    std::string chi = "0", sing = "0", chi_r = "0", chi_c = "0", chi_r_sing = "0";
    std::string parity = "even";
};

void add_cubic_flags(CLI::App *sub, RunConfig &cfg, Flags &flags) {
    sub->add_option("--p", cfg.p, "prime field size");
    sub->add_option("--dim", cfg.dim, "dimension d of the cubic in P^{d+1}");
    auto *named = sub->add_option("--named", flags.named, "built-in cubic: fermat, node, random");
    auto *file = sub->add_option("--file", flags.file, "cubic file (cubic d=<d> p=<p> header, then monomial lines)");
    auto *random = sub->add_flag("--random", flags.random, "seeded random reduced cubic");
    sub->add_option("--seed", cfg.seed, "seed for --random");
    named->excludes(file)->excludes(random);
    file->excludes(random);
    sub->add_option("--threads", cfg.threads, "worker threads for the scans (results do not depend on it)");
}

Integer parse_integer(const std::string &text, const char *flag) {
    try {
        return Integer(text);
    } catch (const std::exception &) {
        throw CLI::ValidationError(flag, "expected an integer, got '" + text + "'");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cubic hypersurfaces and their Fano varieties of lines"};
    app.require_subcommand(1);
    RunConfig cfg;
    Flags flags;
    app.add_flag("--json", flags.json, "machine-readable output");

    auto *lines = app.add_subcommand("lines", "count lines by brute force and by the point-count formula");
    add_cubic_flags(lines, cfg, flags);
    auto *verify = app.add_subcommand("verify", "check the Hilb^2 and Sym^2 counting relations by brute force");
    add_cubic_flags(verify, cfg, flags);
    auto *zeta = app.add_subcommand("zeta", "Sym^m point counts from the zeta function, m <= 3");
    add_cubic_flags(zeta, cfg, flags);
    zeta->add_option("--order", cfg.order, "truncation order (1..3)");

    auto *hodge = app.add_subcommand("hodge", "Hodge numbers of a smooth cubic and its Fano variety");
    hodge->add_option("--dim", cfg.dim, "dimension d >= 2")->required();

    auto *euler = app.add_subcommand("euler", "chi(F(Y)) from chi(Y) and chi(Sing Y)");
    euler->add_option("--chi", flags.chi, "chi(Y)")->required();
    euler->add_option("--sing", flags.sing, "chi(Sing Y)");

    auto *real = app.add_subcommand("real", "chi_R(F(Y)) for a real cubic");
    real->add_option("--chiR", flags.chi_r, "chi of Y(R)")->required();
    real->add_option("--chiC", flags.chi_c, "chi of Y(C)")->required();
    real->add_option("--parity", flags.parity, "parity of dim Y")
        ->check(CLI::IsMember({"even", "odd"}))
        ->required();
    real->add_option("--chiR-sing", flags.chi_r_sing, "chi of Sing(Y)(R)");

    auto *symbolic = app.add_subcommand("symbolic", "run the class-ring identity suite");
    symbolic->add_option("--suite", cfg.suite, "rearrangement, projective, ex-sing, inverse or all");
    symbolic->add_option("--seed", cfg.seed, "seed for the randomized identities");

    for (auto *sub : {lines, verify, zeta, hodge, euler, real, symbolic}) {
        sub->add_flag("--json", flags.json, "machine-readable output");
    }

    try {
        app.parse(argc, argv);
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!flags.named.empty()) {
            cfg.source = CubicSource::named;
            cfg.named = flags.named;
            if (cfg.named == "random") {
                cfg.source = CubicSource::random;
            }
        } else if (!flags.file.empty()) {
            cfg.source = CubicSource::file;
            cfg.file = flags.file;
        } else if (flags.random) {
            cfg.source = CubicSource::random;
        }
        cfg.format = flags.json ? OutputFormat::json : OutputFormat::table;
        cfg.chi = parse_integer(flags.chi, "--chi");
        cfg.sing = parse_integer(flags.sing, "--sing");
        cfg.chi_r = parse_integer(flags.chi_r, "--chiR");
        cfg.chi_c = parse_integer(flags.chi_c, "--chiC");
        cfg.chi_r_sing = parse_integer(flags.chi_r_sing, "--chiR-sing");
        cfg.parity = flags.parity == "odd" ? cubicfano::realize::Parity::odd : cubicfano::realize::Parity::even;
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }
    return cubicfano::cli::run(cfg);
}
