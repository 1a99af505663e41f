#include "qcmdpc/cli.hpp"

int main(int argc, char** argv)
{
    return qcmdpc::run_cli(argc, argv);
}
