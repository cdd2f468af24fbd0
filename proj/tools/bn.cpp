#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "bn/cli.hpp"

int main(int argc, char** argv) {
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        return bn::cli::run(std::move(args), std::cin, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
