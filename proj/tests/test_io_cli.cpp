#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "heisenleib/catalog.hpp"
#include "heisenleib/cli.hpp"
#include "heisenleib/io.hpp"
#include "support.hpp"

using namespace heisenleib;

namespace {

const std::string kData = HEISENLEIB_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_request(CommandRequest req) {
  std::ostringstream out, err;
  const int status = run(req, out, err);
  return {status, out.str(), err.str()};
}

CommandRequest request(const std::string& sub, std::vector<std::string> inputs = {}) {
  CommandRequest r;
  r.subcommand = sub;
  r.inputs = std::move(inputs);
  return r;
}

std::string parse_context(const std::string& text) {
  try {
    parse_algebra_json(text);
  } catch (const ParseError& e) {
    return e.context;
  }
  return "accepted";
}

}  // namespace

TEST_CASE("algebra files round trip") {
  for (const StructTensor& t : {heisenberg(2), build_entry("H1a0C", {{"r", Scalar(1)}}, Field::Complex),
                                build_entry("H1a1C-diag", {{"A", Scalar::i()}}, Field::Complex)}) {
    const std::string text = algebra_to_json(t);
    const StructTensor back = parse_algebra_json(text);
    CHECK(back == t);
    CHECK(back.labels() == t.labels());
    CHECK(algebra_to_json(back) == text);
  }
  const std::string text = algebra_to_json(heisenberg(1));
  CHECK(text.find("\"dim\"") < text.find("\"constants\""));
}

TEST_CASE("spec files round trip") {
  const ExtensionSpec s = entry_spec("H2a1C", {}, Field::Complex);
  const ExtensionSpec back = parse_spec_json(spec_to_json(s));
  CHECK(build_extension(back) == build_extension(s));
  const LoadedInput in = load_input(read_text_file(data("h2a1.json")), 16);
  REQUIRE(in.spec.has_value());
  CHECK(in.tensor.dim() == 5);
  CHECK_THROWS_AS(load_input(read_text_file(data("h2a1.json")), 4), DomainError);
}

TEST_CASE("parse errors name their location") {
  CHECK(parse_context("{\"dim\": 2,\n \"constants\": [ }") == "line 2");
  CHECK(parse_context(R"({"constants": []})") == "dim");
  CHECK(parse_context(R"({"dim": 2, "constants": [{"i": 0, "j": 0, "k": 5, "c": "1"}]})") == "constants[0].k");
  CHECK(parse_context(R"({"dim": 2, "constants": [{"i": 0, "j": 0, "k": 1, "c": "x"}]})") == "constants[0].c");
  CHECK(parse_context(R"({"dim": 2, "field": {"sqrt": 4}, "constants": []})") == "field.sqrt");
  CHECK(parse_context(R"j({"dim": 2, "constants": [{"i": 0, "j": 0, "k": 1, "c": "1/1+1/1*sqrt(2)"}]})j") ==
        "constants[0].c");
  CHECK(parse_context(R"j({"dim": 2, "field": {"sqrt": 2}, "constants": [{"i": 0, "j": 0, "k": 1, "c": "sqrt(2)"}]})j") ==
        "accepted");
  CHECK(parse_context(
            R"({"dim": 2, "constants": [{"i": 0, "j": 0, "k": 1, "c": "1"}, {"i": 0, "j": 0, "k": 1, "c": "2"}]})") ==
        "constants[1].k");
  CHECK_THROWS_AS(read_text_file(data("missing.json")), ParseError);
}

TEST_CASE("verify subcommand") {
  Outcome o = run_request(request("verify", {data("h1.json")}));
  CHECK(o.status == exit_status::ok);
  CHECK(o.out.find("leibniz: ok, lie: yes, nilpotent: yes") != std::string::npos);

  o = run_request(request("verify", {data("broken.json")}));
  CHECK(o.status == exit_status::check_failed);
  CHECK(o.out.find("(S,P,B)") != std::string::npos);

  o = run_request(request("verify", {data("malformed.json")}));
  CHECK(o.status == exit_status::parse_error);
  CHECK(o.err.find("line") != std::string::npos);

  o = run_request(request("verify", {data("invalid_spec.json")}));
  CHECK(o.status == exit_status::validation_error);

  o = run_request(request("verify", {data("missing.json")}));
  CHECK(o.status == exit_status::parse_error);
}

TEST_CASE("series, annihilator and fingerprint") {
  Outcome o = run_request(request("series", {data("h1a0c.json")}));
  CHECK(o.status == 0);
  CHECK(o.out.find("[3, 1, 0]") != std::string::npos);
  o = run_request(request("annihilator", {data("h1a0c.json")}));
  CHECK(o.status == 0);
  CHECK(o.out.find("span(H)") != std::string::npos);
  CommandRequest fp = request("fingerprint", {data("h1.json")});
  fp.format = Format::Machine;
  o = run_request(fp);
  CHECK(o.status == 0);
  CHECK(o.out.find("\"ann_left_dim\":1") != std::string::npos);
}

TEST_CASE("nilradical subcommand") {
  CommandRequest r = request("nilradical", {data("h1a0c.json")});
  r.field = Field::Complex;
  Outcome o = run_request(r);
  CHECK(o.status == 0);
  CHECK(o.out.find("proved") != std::string::npos);

  r.span = {1, 2};
  o = run_request(r);
  CHECK(o.status == exit_status::check_failed);
}

TEST_CASE("catalog subcommands") {
  CommandRequest list = request("catalog-list");
  list.field = Field::Real;
  Outcome o = run_request(list);
  CHECK(o.status == 0);
  CHECK(o.out.find("H1a1R") != std::string::npos);

  CommandRequest build = request("catalog-build");
  build.id = "H1a0C";
  build.params = {"r=1"};
  build.field = Field::Complex;
  o = run_request(build);
  CHECK(o.status == 0);
  CHECK(parse_algebra_json(o.out) == build_entry("H1a0C", {{"r", Scalar(1)}}, Field::Complex));

  build.params = {"r=5"};
  CHECK(run_request(build).status == exit_status::validation_error);
  build.id = "nope";
  o = run_request(build);
  CHECK(o.status == exit_status::validation_error);
  CHECK(o.err.find("H1a0C") != std::string::npos);

  CommandRequest verify = request("catalog-verify");
  verify.field = Field::Real;
  o = run_request(verify);
  CHECK(o.status == 0);
  std::size_t reports = 0;
  for (const auto& e : catalog_entries(Field::Real)) reports += sample_parameters(e).size();
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = o.out.find("\nok   ", pos)) != std::string::npos; ++pos) ++lines;
  if (o.out.rfind("ok   ", 0) == 0) ++lines;
  CHECK(lines == reports);
}

TEST_CASE("derive and witness") {
  CommandRequest d = request("derive");
  d.n = 1;
  d.f = 1;
  d.a1 = 1;
  Outcome o = run_request(d);
  CHECK(o.status == 0);
  CHECK(o.out.find("sigma2_1_1 := 0") != std::string::npos);
  d.format = Format::Machine;
  o = run_request(d);
  CHECK(o.status == 0);
  CHECK(o.out.find("\"stage\"") != std::string::npos);

  CommandRequest w = request("witness", {"H1a1R", "H1a1C-diag"});
  w.params = {"C=1"};
  o = run_request(w);
  CHECK(o.status == 0);
  CHECK(o.out.find("reproduces the complex tensor: yes") != std::string::npos);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "heisenleib_out_test.txt";
  CommandRequest r = request("verify", {data("h1.json")});
  r.output = path.string();
  const Outcome o = run_request(r);
  CHECK(o.status == 0);
  CHECK(o.out.empty());
  CHECK(read_text_file(path.string()).find("leibniz: ok") != std::string::npos);
  std::filesystem::remove(path);
}
