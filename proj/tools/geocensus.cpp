#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "geocensus/cli.hpp"

int main(int argc, char** argv)
{
    spdlog::set_default_logger(spdlog::stderr_color_mt("geocensus"));
    spdlog::set_level(spdlog::level::warn);
    // GEOCENSUS_LOG=debug (or any spdlog level spec) raises verbosity.
    if (const char* level = std::getenv("GEOCENSUS_LOG")) {
        spdlog::cfg::helpers::load_levels(level);
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    return geocensus::cli::run(args, std::cout, std::cerr);
}
