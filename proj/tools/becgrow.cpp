// becgrow: command-line front end for the condensate growth library.
// All logic lives in becgrowth/cli_app.hpp so tests can drive the same
// command paths in-process.

#include <string>
#include <vector>

#include <becgrowth/cli_app.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return becgrowth::run_cli(args);
}
