#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SSIMLAB_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture_path() {
  return std::string(SSIMLAB_DATA_DIR) + "/fixture_256.pgm";
}

std::string tmp_dir(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  const RunResult sub = run_cli("func-convergence --help");
  CHECK(sub.code == 0);
  CHECK(sub.output.find("--steps") != std::string::npos);
}

TEST_CASE("usage mistakes exit with the config code") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("compare onlyone.pgm").code == 2);
  CHECK(run_cli("func-convergence --no-such-flag").code == 2);
}

TEST_CASE("bad option values exit with the config code") {
  const RunResult r = run_cli("func-convergence --steps banana --out " +
                              tmp_dir("ssimlab_cli_none"));
  CHECK(r.code == 2);
  CHECK(r.output.find("steps") != std::string::npos);
  CHECK(run_cli("func-convergence --window-anchor diagonal").code == 2);
}

TEST_CASE("unknown config file keys exit with the config code") {
  const std::string cfg = tmp_dir("ssimlab_cli_bad.cfg");
  {
    std::ofstream out(cfg);
    out << "wavelength=7\n";
  }
  const RunResult r = run_cli("func-convergence --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.output.find("wavelength") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("a one-step ladder is a numeric failure") {
  const RunResult r =
      run_cli("func-convergence --function f1 --method bilinear --steps 0.4 "
              "--window-size 3 --eval-step 0.05 --out " +
              tmp_dir("ssimlab_cli_one"));
  CHECK(r.code == 1);
  CHECK(r.output.find("need >= 2 refinement levels") != std::string::npos);
}

TEST_CASE("func-convergence writes per-method files") {
  const std::string out = tmp_dir("ssimlab_cli_func");
  std::filesystem::remove_all(out);
  const RunResult r =
      run_cli("func-convergence --function f1 --method bilinear --method "
              "bicubic --steps 0.4,0.2 --eval-step 0.05 --window-size 3 "
              "--out " + out);
  CHECK(r.code == 0);
  CHECK(r.output.find("f1 / bilinear") != std::string::npos);
  CHECK(r.output.find("r_bar") != std::string::npos);
  CHECK(std::filesystem::exists(out + "/func_f1_bilinear.csv"));
  CHECK(std::filesystem::exists(out + "/func_f1_bicubic.csv"));
  CHECK(std::filesystem::exists(out + "/func_f1_bilinear.meta.txt"));
  std::filesystem::remove_all(out);
}

TEST_CASE("config file values are overridden by flags") {
  const std::string cfg = tmp_dir("ssimlab_cli_ok.cfg");
  {
    std::ofstream out(cfg);
    out << "steps=0.4,0.2\n"
        << "eval_step=0.05\n"
        << "window_size=9\n";
  }
  const std::string out_dir = tmp_dir("ssimlab_cli_cfg");
  std::filesystem::remove_all(out_dir);
  const RunResult r = run_cli("func-convergence --config " + cfg +
                              " --function f1 --method bilinear "
                              "--window-size 3 --out " + out_dir);
  CHECK(r.code == 0);
  bool meta_has_window3 = false;
  std::ifstream meta(out_dir + "/func_f1_bilinear.meta.txt");
  for (std::string line; std::getline(meta, line);) {
    if (line == "window_size=3") meta_has_window3 = true;
  }
  CHECK(meta_has_window3);
  std::remove(cfg.c_str());
  std::filesystem::remove_all(out_dir);
}

TEST_CASE("compare reports a perfect match against itself") {
  const RunResult r =
      run_cli("compare " + fixture_path() + " " + fixture_path());
  CHECK(r.code == 0);
  CHECK(r.output.find("ssim") != std::string::npos);
  CHECK(r.output.find("wssim") != std::string::npos);
  CHECK(r.output.find("lower bound") != std::string::npos);
  CHECK(r.output.find("ssim            1") != std::string::npos);
}

TEST_CASE("compare with a missing input is a config failure") {
  CHECK(run_cli("compare /nonexistent_a.pgm /nonexistent_b.pgm").code == 2);
}

TEST_CASE("verify-bounds passes at desk scale") {
  const RunResult r = run_cli("verify-bounds --trials 40");
  CHECK(r.code == 0);
  CHECK(r.output.find("result=PASS") != std::string::npos);
  CHECK(r.output.find("upper_global_failures=0") != std::string::npos);
}

TEST_CASE("image-convergence runs the fixture ladder") {
  const std::string out = tmp_dir("ssimlab_cli_image");
  std::filesystem::remove_all(out);
  const RunResult r = run_cli("image-convergence --image " + fixture_path() +
                              " --sizes 40,80 --out " + out);
  CHECK(r.code == 0);
  CHECK(r.output.find("bilinear") != std::string::npos);
  CHECK(r.output.find("bicubic") != std::string::npos);
  CHECK(std::filesystem::exists(out + "/image_fixture_256.csv"));
  CHECK(std::filesystem::exists(out + "/image_fixture_256.meta.txt"));
  std::filesystem::remove_all(out);
}
