// Writes the shipped GL(2) coefficient fixtures into a directory.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gl3gl2/gl2.hpp"

namespace fs = std::filesystem;
using namespace gl3gl2;

static void emit(const fs::path& dir, const std::string& name, const gl2::FormGL2& f) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  gl2::write_fixture(out, f);
  std::cerr << name << ": k=" << f.weight << " q=" << f.level << " N=" << f.size() << " eps=" << f.eps << '\n';
}

int main(int argc, char** argv) {
  CLI::App app{"generate GL(2) fixture files"};
  std::string dir = "fixtures";
  std::int64_t n_max = 10000;
  app.add_option("--out", dir, "output directory");
  app.add_option("--N", n_max, "number of coefficients")->check(CLI::Range(16, 1'000'000));
  CLI11_PARSE(app, argc, argv);

  fs::create_directories(dir);
  const auto t0 = std::chrono::steady_clock::now();
  emit(dir, "level11_k2.txt", gl2::eta_quotient_coeffs(gl2::eta_level11(), n_max));
  emit(dir, "level5_k4.txt", gl2::eta_quotient_coeffs(gl2::eta_level5_weight4(), n_max));
  emit(dir, "level37_k2.txt", gl2::point_count_form(gl2::curve_37a(), n_max));
  for (int k : {12, 16}) {
    const auto basis = gl2::level1_basis(k, n_max);
    emit(dir, "level1_k" + std::to_string(k) + ".txt", basis.at(0));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "done in " << secs << " s\n";
}
