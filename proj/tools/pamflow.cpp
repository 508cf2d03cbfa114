#include <string>
#include <vector>

#include "pamflow/pipeline.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pamflow::pipeline::main_entry(args);
}
