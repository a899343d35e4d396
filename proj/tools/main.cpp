#include <iostream>

#include <CLI11.hpp>

#include "heisenleib/cli.hpp"

namespace {

using heisenleib::CommandRequest;

struct Flags {
  std::string format = "text";
  std::string field = "R";
};

void common(CLI::App* sub, CommandRequest& req, Flags& flags) {
  sub->add_option("--format", flags.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  sub->add_option("-o,--output", req.output, "write the report to a file");
}

void with_field(CLI::App* sub, Flags& flags) {
  sub->add_option("--field", flags.field, "C or R")->check(CLI::IsMember({"C", "R"}));
}

void with_params(CLI::App* sub, CommandRequest& req) {
  sub->add_option("--param", req.params, "name=value, repeatable")->allow_extra_args(false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leibniz algebras with Heisenberg nilradical"};
  app.require_subcommand(1);
  CommandRequest req;
  Flags flags;

  for (const char* name : {"verify", "series", "annihilator", "fingerprint"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("file", req.inputs, "algebra or extension spec JSON")->required();
    common(sub, req, flags);
  }
  {
    auto* sub = app.add_subcommand("nilradical", "certify a candidate nilradical");
    sub->add_option("file", req.inputs)->required();
    sub->add_option("--span", req.span, "basis indices of the candidate")->delimiter(',');
    with_field(sub, flags);
    common(sub, req, flags);
  }
  {
    auto* sub = app.add_subcommand("derive", "replay the constraint cascade");
    sub->add_option("--n", req.n)->check(CLI::PositiveNumber);
    sub->add_option("--f", req.f)->check(CLI::PositiveNumber);
    sub->add_option("--a1", req.a1)->check(CLI::IsMember({0, 1}));
    common(sub, req, flags);
  }
  auto* catalog = app.add_subcommand("catalog", "classification catalog");
  catalog->require_subcommand(1);
  {
    auto* sub = catalog->add_subcommand("list");
    with_field(sub, flags);
    common(sub, req, flags);
  }
  {
    auto* sub = catalog->add_subcommand("build");
    sub->add_option("id", req.id)->required();
    with_params(sub, req);
    with_field(sub, flags);
    common(sub, req, flags);
  }
  {
    auto* sub = catalog->add_subcommand("verify");
    sub->add_option("--id", req.id);
    with_field(sub, flags);
    common(sub, req, flags);
  }
  {
    auto* sub = app.add_subcommand("witness", "change of basis from a real family to a complex one");
    sub->add_option("ids", req.inputs, "<real-id> <complex-id>")->expected(2)->required();
    with_params(sub, req);
    common(sub, req, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : heisenleib::exit_status::parse_error;
  }

  for (auto* sub : app.get_subcommands()) {
    req.subcommand = sub->get_name();
    for (auto* inner : sub->get_subcommands()) req.subcommand += "-" + inner->get_name();
  }
  req.format = flags.format == "machine" ? heisenleib::Format::Machine : heisenleib::Format::Text;
  req.field = heisenleib::parse_field(flags.field);
  req.max_dim = heisenleib::max_dim_from_env();
  return heisenleib::run(req, std::cout, std::cerr);
}
