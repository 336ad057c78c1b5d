#include "smtjsim/cli.hpp"

int main(int argc, char** argv) { return smtjsim::run_main(argc, argv); }
