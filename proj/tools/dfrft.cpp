#include "jxfrft/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return jxfrft::cli::main_entry(argc, argv, std::cout, std::cerr);
}
