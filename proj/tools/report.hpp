#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dzh/weyl.hpp"

namespace dzh::report {

enum class VariantSelection : std::uint8_t { Stabilizer, Parahoric, Both };

struct Config {
    std::uint32_t q = 5;
    int precision = 40;
    VariantSelection variants = VariantSelection::Both;
    std::uint64_t seed = 1;
    std::string format = "text";
    Window window{};

    // ConfigError on an inadmissible q, precision < 16, bad window or format.
    void validate() const;
    bool selects(SubgroupVariant v) const;
    nlohmann::json to_json() const;
};

VariantSelection parse_variant(const std::string& s);
const char* variant_selection_name(VariantSelection v);

enum class Status : std::uint8_t { Pass, Fail, Skipped, OutOfScope };
const char* status_name(Status s);

struct Check {
    std::string id;
    std::string module;
    std::string anchor;
    nlohmann::json inputs;
    std::string expected;
    std::string got;
    Status status = Status::Fail;
};

struct Report {
    Config config;
    std::vector<Check> checks;

    int count(Status s) const;
    bool all_passed() const { return count(Status::Fail) == 0; }
};

// Section names in run order.
const std::vector<std::string>& section_names();

// Runs the given sections (all when empty). Module errors mark the check
// failed and the run continues. Deterministic for a fixed config.
Report run_all(const Config& c, const std::vector<std::string>& sections = {});

std::string emit_json(const Report& r);
// Header line plus one line per check.
std::string emit_text(const Report& r);

// Structure constants of the example algebra over the window, CSV.
std::string dump_constants_csv(const Config& c);

}  // namespace dzh::report
