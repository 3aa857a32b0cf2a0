#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dzh/errors.hpp"
#include "report.hpp"

namespace {

void add_config_flags(CLI::App& app, dzh::report::Config& c, std::string& variant)
{
    app.add_option("--q", c.q, "residue field size (q = p or p^2, 4 | q-1)")->capture_default_str();
    app.add_option("--precision", c.precision, "relative precision of series (>= 16)")->capture_default_str();
    app.add_option("--variant", variant, "stabilizer, parahoric or both")->capture_default_str();
    app.add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--format", c.format, "text or json")->capture_default_str();
    app.add_option("--window-words", c.window.max_word, "maximal word length in the window")->capture_default_str();
    app.add_option("--window-z", c.window.max_z, "maximal |z exponent| in the window")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    dzh::report::Config cfg;
    std::string variant = "both";
    std::string section;

    CLI::App app{"dzhecke: verification driver for the depth-zero Hecke algebra example"};
    app.require_subcommand(1);
    add_config_flags(app, cfg, variant);
    auto* report = app.add_subcommand("report", "run every check");
    auto* verify = app.add_subcommand("verify", "run one section");
    verify->add_option("section", section, "section name")->required();
    auto* dump = app.add_subcommand("dump-constants", "structure constants of the example algebra as CSV");
    for (auto* sub : {report, verify, dump}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.variants = dzh::report::parse_variant(variant);
        cfg.validate();
        if (*dump) {
            std::cout << dzh::report::dump_constants_csv(cfg);
            return 0;
        }
        std::vector<std::string> sections;
        if (*verify) sections.push_back(section);
        dzh::report::Report r = dzh::report::run_all(cfg, sections);
        std::cout << (cfg.format == "json" ? dzh::report::emit_json(r) : dzh::report::emit_text(r));
        return r.all_passed() ? 0 : 1;
    } catch (const dzh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
