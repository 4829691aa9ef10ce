#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "folres/error.hpp"
#include "folres/session.hpp"

#ifndef FOLRES_SESSIONS_DIR
#define FOLRES_SESSIONS_DIR "sessions"
#endif
#ifndef FOLRES_GOLDEN_DIR
#define FOLRES_GOLDEN_DIR "tests/golden"
#endif

namespace fs = std::filesystem;
using namespace folres;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<session::Script> load(const fs::path& p) {
  try {
    return session::parse_session(read_file(p));
  } catch (const ParseError& e) {
    std::cerr << p.string() << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
  }
  return std::nullopt;
}

int run(const fs::path& file, const std::string& json_out, bool text) {
  auto script = load(file);
  if (!script) return 2;
  auto result = session::run_session(*script);
  std::string json = session::to_json(result).dump(2) + "\n";
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    out << json;
  }
  if (text)
    std::cout << session::render_text(result);
  else if (json_out.empty())
    std::cout << json;
  if (result.error) std::cerr << file.string() << ": " << *result.error << "\n";
  return result.asserts_passed ? 0 : 1;
}

int check(const fs::path& file) {
  auto script = load(file);
  if (!script) return 2;
  std::cout << script->statements.size() << " statements\n";
  return 0;
}

int golden(const fs::path& sessions, const fs::path& goldens, bool update) {
  int failures = 0;
  for (const char* name : {"good", "bad"}) {
    fs::path src = sessions / (std::string(name) + ".fol");
    fs::path ref = goldens / (std::string(name) + ".json");
    auto script = load(src);
    if (!script) return 2;
    auto result = session::run_session(*script);
    std::string json = session::to_json(result).dump(2) + "\n";
    if (update) {
      std::ofstream(ref, std::ios::binary) << json;
      std::cout << "wrote " << ref.string() << "\n";
      continue;
    }
    bool same = fs::exists(ref) && read_file(ref) == json;
    bool ok = same && result.asserts_passed;
    std::cout << (ok ? "ok   " : "FAIL ") << name << (same ? "" : " (report differs from golden)")
              << (result.asserts_passed ? "" : " (assertion failed)") << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foliated resolution sessions"};
  app.require_subcommand(1);

  std::string file, json_out;
  bool text = false;
  auto* run_cmd = app.add_subcommand("run", "run a session and print its report");
  run_cmd->add_option("file", file, "session file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--json", json_out, "write the JSON report here");
  run_cmd->add_flag("--text", text, "print the text rendering");

  std::string check_file;
  auto* check_cmd = app.add_subcommand("check", "parse a session without running it");
  check_cmd->add_option("file", check_file, "session file")->required()->check(CLI::ExistingFile);

  std::string sessions_dir = FOLRES_SESSIONS_DIR, golden_dir = FOLRES_GOLDEN_DIR;
  bool update = false;
  auto* golden_cmd = app.add_subcommand("golden", "run the bundled sessions against their golden reports");
  golden_cmd->add_option("--sessions", sessions_dir, "directory with good.fol and bad.fol");
  golden_cmd->add_option("--golden", golden_dir, "directory with good.json and bad.json");
  golden_cmd->add_flag("--update", update, "rewrite the golden reports");

  CLI11_PARSE(app, argc, argv);
  if (*run_cmd) return run(file, json_out, text);
  if (*check_cmd) return check(check_file);
  return golden(sessions_dir, golden_dir, update);
}
