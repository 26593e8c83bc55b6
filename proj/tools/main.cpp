#include <string>
#include <vector>

#include "emfwd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return emfwd::cli::run(args);
}
