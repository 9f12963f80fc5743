#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sqgd/commands.hpp"
#include "sqgd/csv.hpp"
#include "sqgd/snapshot.hpp"

using namespace sqgd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sqgd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "sqgd_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::vector<std::string> small_run(const fs::path& dir) {
  return {"run", "--n", "16", "--k_max", "4", "--t_end", "0.3", "--A", "1.5", "--sample_every", "0.1",
          "--output_dir", dir.string()};
}

}  // namespace

TEST_CASE("run with t_end = 0 writes a single row") {
  const fs::path dir = scratch("t0");
  const Result r = cli({"run", "--n", "16", "--k_max", "4", "--t_end", "0", "--output_dir", dir.string()});
  CHECK(r.code == 0);
  const auto rows = read_csv(dir / "diagnostics.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "0");
  CHECK(fs::exists(dir / "final.bin"));
  CHECK(fs::exists(dir / "snap_000000.bin"));
}

TEST_CASE("single-mode run decays exactly") {
  const fs::path dir = scratch("single");
  const Result r = cli({"run", "--n", "32", "--init", "single_mode", "--A", "0", "--t_end", "1",
                        "--sample_every", "0.25", "--output_dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "diagnostics.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows.back()[0] == "1");
  const double l2 = std::stod(rows.back()[1]);
  CHECK(std::abs(l2 - std::exp(-1.0) * std::sqrt(2.0) * std::numbers::pi) <= 1e-8);
  CHECK(rows.back()[8].empty());
}

TEST_CASE("identical configurations give byte-identical output") {
  const fs::path a = scratch("rep_a");
  const fs::path b = scratch("rep_b");
  REQUIRE(cli(small_run(a)).code == 0);
  REQUIRE(cli(small_run(b)).code == 0);
  CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
  CHECK(slurp(a / "final.bin") == slurp(b / "final.bin"));
  CHECK(slurp(a / "snap_000002.bin") == slurp(b / "snap_000002.bin"));
}

TEST_CASE("run exit codes") {
  const fs::path dir = scratch("codes");
  SUBCASE("L2 growth") {
    const Result r = cli({"run", "--n", "32", "--t_end", "2", "--step_mode", "fixed", "--dt", "0.1", "--dt_max", "1",
                          "--target_linf", "20", "--sample_every", "0.1", "--snapshot_every", "0",
                          "--output_dir", dir.string()});
    CHECK(r.code == exit_code::l2_growth);
    CHECK(r.err.find("L2 norm increased") != std::string::npos);
  }
  SUBCASE("blow-up") {
    const Result r = cli({"run", "--n", "32", "--t_end", "2", "--step_mode", "fixed", "--dt", "0.1", "--dt_max", "1",
                          "--target_linf", "200", "--sample_every", "0", "--output_dir", dir.string()});
    CHECK(r.code == exit_code::blow_up);
    CHECK(r.err.find("blow-up") != std::string::npos);
  }
  SUBCASE("usage") {
    CHECK(cli({"run", "--n", "7", "--output_dir", dir.string()}).code == exit_code::usage);
    CHECK(cli({"run", "--step_mode", "rk4", "--output_dir", dir.string()}).code == exit_code::usage);
    CHECK(cli({"run", "--no_such_flag", "1"}).code == exit_code::usage);
    CHECK(cli({"frobnicate"}).code == exit_code::usage);
    CHECK(cli({}).code == exit_code::usage);
    CHECK(cli({"run", "--help"}).code == exit_code::ok);
  }
}

TEST_CASE("config file with flag precedence") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.ini");
    f << "n=16\nk_max=4\nt_end=0.2\nA=3\nsample_every=0.1\noutput_dir=" << (dir / "from_file").string() << "\n";
  }
  REQUIRE(cli({"run", "--config", (dir / "run.ini").string(), "--A", "0.5"}).code == 0);
  const std::string effective = slurp(dir / "from_file" / "config.ini");
  CHECK(effective.find("n=16\n") != std::string::npos);
  CHECK(effective.find("A=0.5\n") != std::string::npos);
  CHECK(read_csv(dir / "from_file" / "diagnostics.csv").size() == 4);

  // the written config.ini replays the same run
  REQUIRE(cli({"run", "--config", (dir / "from_file" / "config.ini").string(), "--output_dir",
               (dir / "replay").string()}).code == 0);
  CHECK(slurp(dir / "from_file" / "diagnostics.csv") == slurp(dir / "replay" / "diagnostics.csv"));
  CHECK(slurp(dir / "from_file" / "final.bin") == slurp(dir / "replay" / "final.bin"));

  {
    std::ofstream f(dir / "bad.ini");
    f << "n=16\nbogus=1\n";
  }
  CHECK(cli({"run", "--config", (dir / "bad.ini").string()}).code == exit_code::usage);
  CHECK(cli({"run", "--config", (dir / "missing.ini").string()}).code == exit_code::usage);
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  SUBCASE("empty list gives a header-only summary") {
    const Result r = cli({"sweep", "--n", "16", "--k_max", "4", "--output_dir", dir.string()});
    CHECK(r.code == 0);
    CHECK(slurp(dir / "summary.csv") == "A,max_linf,max_bmin,final_l2\n");
  }
  SUBCASE("single A reproduces the run") {
    const fs::path single = scratch("sweep_single");
    REQUIRE(cli(small_run(single)).code == 0);
    auto args = small_run(dir);
    args[0] = "sweep";
    args.insert(args.end(), {"--A_list", "1.5"});
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(dir / "A_1.5" / "diagnostics.csv") == slurp(single / "diagnostics.csv"));
    CHECK(slurp(dir / "A_1.5" / "final.bin") == slurp(single / "final.bin"));
    const auto rows = read_csv(dir / "summary.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][3] == read_csv(single / "diagnostics.csv").back()[1]);
  }
  SUBCASE("rows sorted by A, independent of thread count") {
    std::vector<std::string> args = {"sweep", "--n", "16", "--k_max", "4", "--t_end", "0.2", "--certify_every", "1",
                                     "--target_linf", "0.01", "--A_list", "2,0,1", "--output_dir", dir.string()};
    args.insert(args.end(), {"--threads", "3"});
    REQUIRE(cli(args).code == 0);
    const std::string parallel = slurp(dir / "summary.csv");
    args.back() = "1";
    const fs::path serial = scratch("sweep_serial");
    args[args.size() - 3] = serial.string();
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(serial / "summary.csv") == parallel);
    const auto rows = read_csv(dir / "summary.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][0] == "0");
    CHECK(rows[2][0] == "1");
    CHECK(rows[3][0] == "2");
    CHECK_FALSE(rows[1][2].empty());
  }
}

TEST_CASE("certify") {
  const fs::path dir = scratch("certify");
  fs::create_directories(dir);
  SUBCASE("constant snapshot") {
    write_snapshot(dir / "c.bin", ScalarField::constant(Grid(16), 0.3), 0.0, 0.0);
    const Result r = cli({"certify", "--snapshot", (dir / "c.bin").string()});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::string row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == csv::certificate_header());
    CHECK(row.rfind("0,", 0) == 0);
  }
  SUBCASE("matches the in-run b_min") {
    REQUIRE(cli({"run", "--n", "24", "--k_max", "6", "--target_linf", "0.01", "--t_end", "0.2", "--sample_every",
                 "0.1", "--certify_every", "1", "--output_dir", (dir / "run").string()})
                .code == 0);
    const auto rows = read_csv(dir / "run" / "diagnostics.csv");
    for (int k = 0; k < 3; ++k) {
      char name[32];
      std::snprintf(name, sizeof(name), "snap_%06d.bin", k);
      const Result r = cli({"certify", "--snapshot", (dir / "run" / name).string()});
      REQUIRE(r.code == 0);
      const std::string row = r.out.substr(r.out.find('\n') + 1);
      const double b = std::stod(row.substr(0, row.find(',')));
      const double in_run = std::stod(rows[static_cast<std::size_t>(k) + 1][8]);
      CHECK(std::abs(b - in_run) <= 1e-6 * in_run);
    }
  }
  SUBCASE("corrupt or missing snapshots") {
    auto bytes = encode_snapshot(ScalarField(Grid(16)), 0.0, 0.0);
    bytes[1] = 'X';
    std::ofstream(dir / "bad.bin", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                          static_cast<std::streamsize>(bytes.size()));
    CHECK(cli({"certify", "--snapshot", (dir / "bad.bin").string()}).code == exit_code::usage);
    CHECK(cli({"certify", "--snapshot", (dir / "none.bin").string()}).code == exit_code::usage);
    CHECK(cli({"certify"}).code == exit_code::usage);
  }
}

TEST_CASE("audit") {
  const fs::path dir = scratch("audit");
  fs::create_directories(dir);
  write_snapshot(dir / "zero.bin", ScalarField(Grid(16)), 0.0, 0.0);
  const Result zero = cli({"audit", "--snapshot", (dir / "zero.bin").string(), "--B", "0", "--A", "2"});
  REQUIRE(zero.code == 0);
  std::istringstream lines(zero.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == csv::audit_header());
  const auto cells = read_csv([&] {
    std::ofstream(dir / "row.csv") << row << '\n';
    return dir / "row.csv";
  }())[0];
  for (std::size_t k = 7; k < cells.size(); ++k) CHECK(std::stod(cells[k]) == 0.0);

  // at positive B the margin is -omega_B(dx), but every measured increment still vanishes
  const Result unit = cli({"audit", "--snapshot", (dir / "zero.bin").string(), "--B", "1", "--A", "2"});
  REQUIRE(unit.code == 0);
  const AuditReport lib = audit_breakthrough(ScalarField(Grid(16)), 1.0, 2.0, ModulusParams{});
  CHECK(lib.lhs_breakthrough < 0.0);
  CHECK(lib.disp_increment == 0.0);
  CHECK(lib.flow_increment == 0.0);
  CHECK(lib.pair_rate == 0.0);
  CHECK(unit.out == csv::audit_header() + "\n" + csv::audit_row(lib) + "\n");

  InitSpec spec;
  spec.seed = 4;
  spec.k_max = 6;
  spec.target_linf = 0.01;
  const ScalarField f = generate_initial(spec, Grid(24));
  write_snapshot(dir / "f.bin", f, 0.0, 1.0);
  const Result r = cli({"audit", "--snapshot", (dir / "f.bin").string(), "--B", "0.05", "--A", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out == csv::audit_header() + "\n" + csv::audit_row(audit_breakthrough(f, 0.05, 1.0, ModulusParams{})) + "\n");

  CHECK(cli({"audit", "--snapshot", (dir / "f.bin").string(), "--B", "-1"}).code == exit_code::usage);
  CHECK(cli({"audit", "--snapshot", (dir / "f.bin").string()}).code == exit_code::usage);
}

TEST_CASE("installed executable") {
  const char* path = std::getenv("SQGD_CLI_PATH");
#ifdef SQGD_CLI_PATH
  if (path == nullptr) path = SQGD_CLI_PATH;
#endif
  if (path == nullptr) {
    MESSAGE("sqgd executable not built; skipping");
    return;
  }
  const fs::path dir = scratch("exe");
  auto run = [&](const std::string& args) {
    const int status = std::system((std::string(path) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("run --n 16 --k_max 4 --t_end 0.1 --output_dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(run("certify --snapshot " + (dir / "final.bin").string()) == 0);
  CHECK(run("run --n 9") == 2);
  CHECK(run("--help") == 0);
}
