#include "tcpda/cli.hpp"

int main(int argc, char** argv) {
    return tcpda::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
