// hhl: build and verify HHL complexes from a lattice map psi.
//
// Exit codes: 0 success / verified, 1 input error, 2 verification failure
// (the report is still written).

#include "hhl/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using hhl::io::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return hhl::io::read_file(path);
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw hhl::Error(hhl::ErrorKind::InvalidInput, "cannot write " + out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string strata_text(const hhl::StrataComplex& s) {
  std::ostringstream out;
  const auto f = s.f_vector();
  out << "census";
  for (std::size_t m = 0; m < f.size(); ++m) out << (m ? "," : " ") << f[m];
  out << "\n";
  out << "euler_characteristic " << s.euler_characteristic() << "\n";
  for (const auto& st : s.strata) {
    out << "stratum " << st.id << " dim " << st.type.dim << " walls [";
    for (std::size_t i = 0; i < st.type.walls.size(); ++i) out << (i ? "," : "") << st.type.walls[i] + 1;
    out << "] ceilings [";
    for (std::size_t i = 0; i < st.type.ceilings.size(); ++i) out << (i ? "," : "") << st.type.ceilings[i];
    out << "] point (";
    for (std::size_t i = 0; i < st.interior_point.size(); ++i) out << (i ? "," : "") << hhl::exact::to_string(st.interior_point[i]);
    out << ")\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and verify HHL complexes of a lattice map psi"};
  app.require_subcommand(1);
  std::string input_path, out_path;
  long window = -1;
  bool integral = false, geometric = false, as_json = false;
  std::string format = "json";

  auto* strata = app.add_subcommand("strata", "Enumerate the strata of the torus stratification");
  strata->add_option("input", input_path, "Job file (JSON), or - for stdin")->required();
  strata->add_flag("--json", as_json, "Emit the complex document instead of text");

  auto* complex = app.add_subcommand("complex", "Emit the complex document (JSON)");
  complex->add_option("input", input_path)->required();
  complex->add_option("-o,--output", out_path, "Output file");

  auto* verify = app.add_subcommand("verify", "Verify exactness degree by degree on a window");
  verify->add_option("input", input_path)->required();
  verify->add_option("--window", window, "Window bound B on free coordinates")->check(CLI::NonNegativeNumber);
  verify->add_flag("--integral", integral, "Certify H_0 free of rank 1 over Z");
  verify->add_flag("--geometric", geometric, "Cross-check with the geometric cellular complex");
  verify->add_option("-o,--output", out_path);

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of C[C cap M] on a window");
  hilbert->add_option("input", input_path)->required();
  hilbert->add_option("--window", window)->check(CLI::NonNegativeNumber);
  hilbert->add_option("-o,--output", out_path);

  auto* exporter = app.add_subcommand("export", "Export the complex");
  exporter->add_option("input", input_path)->required();
  exporter->add_option("--format", format)->check(CLI::IsMember({"json", "m2", "svg"}));
  exporter->add_option("-o,--output", out_path);

  auto* convert = app.add_subcommand("convert-gs", "Convert a gs block into (n, k, psi, fan, group)");
  convert->add_option("input", input_path)->required();
  convert->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const hhl::io::JobInput job = hhl::io::parse_input_text(read_input(input_path));
    const hhl::io::ResolvedJob r = hhl::io::resolve(job);
    const long b = window >= 0 ? window : job.window.value_or(3);

    if (convert->parsed()) {
      write_output(dump(hhl::io::job_to_json(hhl::io::job_from_resolved(r))), out_path);
      return 0;
    }
    if (hilbert->parsed()) {
      json values = json::array();
      std::size_t total = 0;
      for (const auto& [l, v] : hhl::hilbert_function(r.input, b)) {
        values.push_back({{"degree", hhl::io::label_json(l)}, {"value", v}});
        total += static_cast<std::size_t>(v);
      }
      write_output(dump({{"window", b}, {"values", values}, {"total", total}}), out_path);
      return 0;
    }

    const hhl::StrataComplex s = hhl::enumerate_strata(r.input);
    if (strata->parsed() && !as_json) {
      write_output(strata_text(s), "");
      return 0;
    }
    if (exporter->parsed() && format == "svg") {
      write_output(hhl::io::export_svg(s), out_path);
      return 0;
    }
    const hhl::HHLComplex c = hhl::build_affine_complex(s);
    if (verify->parsed()) {
      const hhl::VerifyOptions opt{b, integral || job.integral, geometric};
      const auto report = hhl::verify_resolution(c, opt);
      write_output(dump(hhl::io::report_to_json(report)), out_path);
      std::cerr << "verify: " << (report.pass ? "pass" : "FAIL") << " (" << report.entries.size() << " degrees)\n";
      return report.pass ? 0 : 2;
    }
    const auto doc = hhl::io::make_document(c, r.group);
    if (exporter->parsed() && format == "m2") {
      write_output(hhl::io::export_m2(doc), out_path);
      return 0;
    }
    write_output(dump(hhl::io::document_to_json(doc, &s)), out_path);
    return 0;
  } catch (const hhl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
