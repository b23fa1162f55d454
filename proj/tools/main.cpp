#include "qbell/cli.hpp"

int main(int argc, char** argv) {
    return qbell::cli::run_command({argv + 1, argv + argc});
}
