#include <betatau/cli.hpp>

int main(int argc, char** argv) { return betatau::cli::run(argc, argv); }
