#include <vector>

#include "diskflow/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return diskflow::run_cli(std::move(args));
}
