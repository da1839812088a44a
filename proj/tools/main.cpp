#include <string>
#include <vector>

#include "pushout/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pushout::cli::run(args);
}
