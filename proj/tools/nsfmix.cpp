#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>

#include "nsf/config.hpp"
#include "nsf/mms.hpp"
#include "nsf/runner.hpp"
#include "nsf/util.hpp"

namespace {

void usage(std::FILE* out) {
    std::fputs(
        "usage: nsfmix <subcommand> <config> [options]\n"
        "\n"
        "subcommands\n"
        "  run <config>       integrate to t_end; writes records.csv, snapshots,\n"
        "                     audit.txt, summary.txt and summary.kv to output_dir\n"
        "  audit <config>     constitutive audit only; prints the report\n"
        "  mms <config>       manufactured-solution convergence studies (the\n"
        "                     temporal study wants a coarse grid, e.g. points=16)\n"
        "  validate <config>  parse and validate; prints the parameter digest\n"
        "\n"
        "options\n"
        "  --output-dir DIR   override output_dir\n"
        "  --cadence N        override cadence\n"
        "  --seed N           override seed\n"
        "  --max-steps N      override max_steps\n"
        "  --levels K         refinement levels for mms (default 3)\n"
        "\n"
        "exit codes: 0 ok, 1 config or audit failure, 2 positivity loss,\n"
        "3 entropy-production sign violation.\n"
        "\n"
        "NSFMIX_THREADS caps worker threads. This build executes sweeps on one\n"
        "thread and keeps all reductions in a fixed order, so results are\n"
        "bitwise reproducible for a given config and seed.\n",
        out);
}

struct Options {
    std::string subcommand;
    std::string config_path;
    int levels = 3;
};

long long parse_integer(const std::string& flag, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size())
        throw std::invalid_argument(flag + " expects an integer, got '" + value + "'");
    return parsed;
}

// Applies command-line overrides onto the loaded config, then re-validates.
nsf::RunConfig load_with_overrides(const Options& opt, int argc, char** argv, int first_flag) {
    nsf::RunConfig cfg = nsf::load_config(opt.config_path);
    for (int i = first_flag; i < argc; ++i) {
        const std::string flag = argv[i];
        if (i + 1 >= argc) throw std::invalid_argument("missing value for " + flag);
        const std::string value = argv[++i];
        if (flag == "--levels")
            continue;  // consumed by parse_levels
        if (flag == "--output-dir")
            cfg.output_dir = value;
        else if (flag == "--cadence")
            cfg.cadence = static_cast<int>(parse_integer(flag, value));
        else if (flag == "--seed")
            cfg.seed = static_cast<std::uint64_t>(parse_integer(flag, value));
        else if (flag == "--max-steps")
            cfg.max_steps = parse_integer(flag, value);
        else
            throw std::invalid_argument("unknown flag " + flag);
    }
    cfg.validate();
    return cfg;
}

int parse_levels(const Options& opt, int argc, char** argv, int first_flag) {
    int levels = opt.levels;
    for (int i = first_flag; i < argc; ++i)
        if (std::string(argv[i]) == "--levels") {
            if (i + 1 >= argc) throw std::invalid_argument("missing value for --levels");
            levels = static_cast<int>(parse_integer("--levels", argv[i + 1]));
            if (levels < 3) throw std::invalid_argument("--levels must be >= 3");
            ++i;
        }
    return levels;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc >= 2 && (std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h")) {
        usage(stdout);
        return 0;
    }
    if (argc < 3) {
        usage(stderr);
        return 1;
    }
    Options opt;
    opt.subcommand = argv[1];
    opt.config_path = argv[2];
    const int first_flag = 3;

    try {
        if (opt.subcommand == "validate") {
            const nsf::RunConfig cfg = load_with_overrides(opt, argc, argv, first_flag);
            std::printf("ok parameter_digest=%016llx\n",
                        static_cast<unsigned long long>(nsf::config_digest(cfg)));
            return 0;
        }
        if (opt.subcommand == "audit") {
            const nsf::RunConfig cfg = load_with_overrides(opt, argc, argv, first_flag);
            const nsf::AuditReport rep = nsf::constitutive_audit(cfg);
            std::fputs(rep.text().c_str(), stdout);
            return rep.all_passed() ? 0 : 1;
        }
        if (opt.subcommand == "mms") {
            const nsf::RunConfig cfg = load_with_overrides(opt, argc, argv, first_flag);
            const int levels = parse_levels(opt, argc, argv, first_flag);
            const nsf::MmsReport spatial = nsf::mms_spatial_study(cfg, levels);
            std::fputs(spatial.text("spatial refinement (dt from the stability bound)").c_str(),
                       stdout);
            const nsf::MmsReport temporal = nsf::mms_temporal_study(cfg, levels);
            std::fputs(temporal.text("temporal refinement (fixed grid, halved dt)").c_str(),
                       stdout);
            return 0;
        }
        if (opt.subcommand == "run") {
            const nsf::RunConfig cfg = load_with_overrides(opt, argc, argv, first_flag);
            const nsf::RunResult result = nsf::run(cfg);
            std::fputs(result.summary.c_str(), stdout);
            return result.exit_code;
        }
        std::fprintf(stderr, "nsfmix: unknown subcommand '%s'\n", opt.subcommand.c_str());
        usage(stderr);
        return 1;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "nsfmix: %s\n", err.what());
        return 1;
    }
}
