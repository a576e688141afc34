#include "cmag/cli.hpp"

int main(int argc, char** argv)
{
    return cmag::cli::run(argc, argv);
}
