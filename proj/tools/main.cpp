#include <iostream>

#include "common.hpp"
#include "hd/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ideal right-angled polyhedra toolkit"};
  app.require_subcommand(1);
  cli::add_enumerate(app);
  cli::add_realize(app);
  cli::add_render(app);
  cli::add_drill(app);
  cli::add_deform(app);
  cli::add_bounds(app);
  cli::add_brooks(app);
  cli::add_dual_check(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cli::CheckFailed& e) {
    std::cerr << "check failed: " << e.what << '\n';
    return 1;
  } catch (const hd::Error& e) {
    std::cerr << "error (" << hd::to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == hd::ErrorKind::InvalidInput ? 2 : 1;
  }
  return 0;
}
