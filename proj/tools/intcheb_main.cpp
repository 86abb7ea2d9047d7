#include <string>
#include <vector>

#include "intcheb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return intcheb::cli::run(args);
}
